"""Command-line front door.

Thin client over the service layer: every command builds the same
request models the HTTP API accepts and either calls the handlers in
process (default) or posts them to a running server (--server).

Exit codes: 2 bad parameters/usage, 3 capacity exceeded, 4 design
precondition failed or infeasible, 1 table check mismatch.
"""

from __future__ import annotations

import csv
import io
import json
import sys
from pathlib import Path

import click

from . import service
from .errors import (
    CapacityError,
    DesignInfeasibleError,
    PreconditionError,
    PtpolarError,
)
from .pretransform import PreTransform, crc, custom, pac, pc
from .code import CodeSpec

EXIT_USAGE = 2
EXIT_CAPACITY = 3
EXIT_PRECONDITION = 4


def _fail(code: int, message: str):
    click.echo(f"error: {message}", err=True)
    sys.exit(code)


def _call(ctx, endpoint: str, handler, request=None):
    """Dispatch in process or over HTTP; returns a plain dict."""
    server = ctx.obj.get("server")
    if server:
        import httpx

        url = server.rstrip("/") + endpoint
        if request is None:
            resp = httpx.get(url, timeout=600.0)
        else:
            resp = httpx.post(url, json=request.model_dump(), timeout=600.0)
        if resp.status_code == 413:
            _fail(EXIT_CAPACITY, resp.json().get("detail", "capacity exceeded"))
        if resp.status_code == 409:
            _fail(EXIT_PRECONDITION, resp.json().get("detail", "precondition failed"))
        if resp.status_code >= 400:
            _fail(EXIT_USAGE, resp.json().get("detail", resp.text))
        return resp.json()
    try:
        out = handler() if request is None else handler(request)
    except CapacityError as e:
        _fail(EXIT_CAPACITY, str(e))
    except (PreconditionError, DesignInfeasibleError) as e:
        _fail(EXIT_PRECONDITION, str(e))
    except PtpolarError as e:
        _fail(EXIT_USAGE, str(e))
    return out if isinstance(out, dict) else out.model_dump()


def _load_spec(path: str) -> service.CodeSpecModel:
    spec = CodeSpec.from_json(Path(path).read_text())
    return service.CodeSpecModel.from_spec(spec)


def _spec_from_options(ctx, spec_file, family, n, k, erasure_prob):
    if spec_file:
        return _load_spec(spec_file)
    if family is None or n is None or k is None:
        raise click.UsageError("provide --spec FILE or --family/--n/--k")
    req = service.ConstructRequest(family=family, n=n, K=k, erasure_prob=erasure_prob)
    return service.CodeSpecModel(**_call(ctx, "/construct", service.construct, req))


def _transform_from_options(transform_file, entries, N):
    if transform_file:
        T = PreTransform.from_json(Path(transform_file).read_text())
        return service.TransformModel.from_transform(T)
    if entries:
        pairs = []
        for item in entries.split(","):
            i, j = item.split(":")
            pairs.append((int(i), int(j)))
        return service.TransformModel(N=N, kind="custom", entries=pairs)
    return None


def _emit(data: dict, fmt: str):
    if fmt == "json":
        click.echo(json.dumps(data, sort_keys=True))
    else:
        for key, value in data.items():
            click.echo(f"{key}: {value}")


@click.group()
@click.option("--server", default=None, metavar="URL",
              help="Send requests to a running ptpolar server instead of computing in process.")
@click.pass_context
def main(ctx, server):
    """Construct polar/RM codes, compute exact weight spectra and design
    minimum-weight-reducing pre-transformations."""
    ctx.ensure_object(dict)
    ctx.obj["server"] = server


@main.command()
@click.option("--family", type=click.Choice(["rm", "polar"]), required=True)
@click.option("--n", type=int, required=True, help="Kronecker exponent; N = 2^n.")
@click.option("--k", type=int, required=True, help="Code dimension.")
@click.option("--erasure-prob", type=float, default=0.5, show_default=True)
@click.option("--output", "-o", type=click.Path(), default=None,
              help="Write the code spec document to a file.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_context
def construct(ctx, family, n, k, erasure_prob, output, fmt):
    """Build a code spec and print or save it (1-based info set)."""
    req = service.ConstructRequest(family=family, n=n, K=k, erasure_prob=erasure_prob)
    data = _call(ctx, "/construct", service.construct, req)
    if output:
        Path(output).write_text(json.dumps(data, sort_keys=True))
        click.echo(f"wrote {output}")
    else:
        _emit(data, fmt)


@main.command()
@click.option("--kind", type=click.Choice(["custom", "pac", "crc", "pc"]), required=True)
@click.option("--n-len", "N", type=int, default=None, help="Transform size N (custom/pac/pc).")
@click.option("--entries", default=None, metavar="I:J,I:J",
              help="Strictly-upper ones for kind=custom.")
@click.option("--poly", default=None,
              help="pac: coefficient bits c0..cd (e.g. 1011); crc: generator polynomial bits, highest degree first (e.g. 1011 = x^3+x+1).")
@click.option("--spec", "spec_file", type=click.Path(exists=True), default=None,
              help="Code spec file (required for kind=crc).")
@click.option("--equation", "equations", multiple=True, metavar="J=I+I",
              help="Parity wiring for kind=pc, e.g. 17=8+12 (repeatable).")
@click.option("--output", "-o", type=click.Path(), required=True)
def transform(kind, N, entries, poly, spec_file, equations, output):
    """Build a pre-transformation matrix and save it as a T file."""
    try:
        if kind == "custom":
            if N is None or not entries:
                raise click.UsageError("custom needs --n-len and --entries")
            pairs = [tuple(int(x) for x in item.split(":")) for item in entries.split(",")]
            T = custom(N, pairs)
        elif kind == "pac":
            if N is None or not poly:
                raise click.UsageError("pac needs --n-len and --poly")
            T = pac(N, [int(c) for c in poly])
        elif kind == "crc":
            if not spec_file or not poly:
                raise click.UsageError("crc needs --spec and --poly")
            spec = CodeSpec.from_json(Path(spec_file).read_text())
            T = crc(spec, int(poly, 2))
        else:
            if N is None or not equations:
                raise click.UsageError("pc needs --n-len and --equation")
            eqs = []
            for eq in equations:
                target, sources = eq.split("=")
                eqs.append((int(target), [int(s) for s in sources.split("+")]))
            T = pc(N, eqs)
    except PtpolarError as e:
        _fail(EXIT_USAGE, str(e))
    Path(output).write_text(T.to_json())
    click.echo(f"wrote {output} ({len(T.entries)} entries)")


_CODE_OPTIONS = [
    click.option("--spec", "spec_file", type=click.Path(exists=True), default=None,
                 help="Code spec file; alternative to --family/--n/--k."),
    click.option("--family", type=click.Choice(["rm", "polar"]), default=None),
    click.option("--n", type=int, default=None),
    click.option("--k", type=int, default=None),
    click.option("--erasure-prob", type=float, default=0.5, show_default=True),
    click.option("--transform", "transform_file", type=click.Path(exists=True),
                 default=None, help="T file to apply."),
    click.option("--entries", default=None, metavar="I:J,I:J",
                 help="Inline custom T entries."),
]


def _with_code_options(fn):
    for opt in reversed(_CODE_OPTIONS):
        fn = opt(fn)
    return fn


@main.command()
@_with_code_options
@click.option("--workers", type=int, default=1, show_default=True)
@click.option("--cap", type=int, default=26, show_default=True,
              help="Maximum K enumerated exhaustively.")
@click.option("--method", type=click.Choice(["auto", "fast", "gray", "naive"]),
              default="auto", show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "csv", "json"]), default="text")
@click.pass_context
def spectrum(ctx, spec_file, family, n, k, erasure_prob, transform_file, entries,
             workers, cap, method, fmt):
    """Exhaustive weight spectrum over all 2^K codewords."""
    spec = _spec_from_options(ctx, spec_file, family, n, k, erasure_prob)
    T = _transform_from_options(transform_file, entries, 1 << spec.n)
    req = service.SpectrumRequest(spec=spec, transform=T, workers=workers,
                                  cap=cap, method=method)
    data = _call(ctx, "/spectrum", service.spectrum, req)
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["weight", "count"])
        for w, c in data["counts"]:
            writer.writerow([w, c])
        click.echo(buf.getvalue(), nl=False)
    elif fmt == "json":
        click.echo(json.dumps(data, sort_keys=True))
    else:
        click.echo(f"N={data['N']} K={data['K']}")
        click.echo(f"d_min={data['dmin']} N_min={data['nmin']} "
                   f"second_least={data['second_least']}")
        for w, c in data["counts"]:
            click.echo(f"  weight {w}: {c}")


@main.command()
@_with_code_options
@click.option("--cap", type=int, default=26, show_default=True)
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_context
def verify(ctx, spec_file, family, n, k, erasure_prob, transform_file, entries,
           cap, fmt):
    """Check that the pre-transformation did not reduce d_min."""
    spec = _spec_from_options(ctx, spec_file, family, n, k, erasure_prob)
    T = _transform_from_options(transform_file, entries, 1 << spec.n)
    if T is None:
        raise click.UsageError("verify needs --transform or --entries")
    req = service.VerifyRequest(spec=spec, transform=T, cap=cap)
    data = _call(ctx, "/verify", service.verify, req)
    _emit(data, fmt)
    if not data["holds"]:
        sys.exit(1)


@main.command()
@_with_code_options
@click.option("--mode", type=click.Choice(["theorem2", "theorem3"]), default="theorem2",
              show_default=True)
@click.option("--columns", default=None, metavar="C,C",
              help="Frozen columns of the weight-2 combination (theorem2).")
@click.option("--p", type=int, default=2, show_default=True,
              help="Maximum combination weight (theorem3).")
@click.option("--budget", type=int, default=3, show_default=True,
              help="Maximum frozen-subset size searched (theorem3).")
@click.option("--cap", type=int, default=26, show_default=True)
@click.option("--save-transform", type=click.Path(), default=None,
              help="Write the designed T file.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_context
def design(ctx, spec_file, family, n, k, erasure_prob, transform_file, entries,
           mode, columns, p, budget, cap, save_transform, fmt):
    """Design a pre-transformation reducing the minimum-weight count."""
    spec = _spec_from_options(ctx, spec_file, family, n, k, erasure_prob)
    cols = [int(c) for c in columns.split(",")] if columns else None
    if mode == "theorem2" and not cols:
        raise click.UsageError("theorem2 needs --columns")
    req = service.DesignRequest(spec=spec, mode=mode, columns=cols, p=p,
                                max_combo_size=budget, cap=cap)
    data = _call(ctx, "/design", service.design, req)
    if save_transform:
        T = service.TransformModel(**data["transform"]).to_transform()
        Path(save_transform).write_text(T.to_json())
    if fmt == "json":
        click.echo(json.dumps(data, sort_keys=True))
    else:
        click.echo(f"feasible: {data['feasible']}")
        if data["chosen"]:
            c = data["chosen"]
            click.echo(f"chosen info index {c['info_index']} columns {c['columns']} "
                       f"support {c['support']} w={c['w']}")
        click.echo(f"baseline: d_min={data['dmin_base']} N_min={data['nmin_base']}")
        click.echo(f"predicted N_min={data['predicted_nmin']} "
                   f"verified N_min={data['verified_nmin']} "
                   f"verified d_min={data['verified_dmin']}")


@main.command()
@click.option("--check", is_flag=True,
              help="Exit nonzero unless every value matches the known-good values.")
@click.option("--format", "fmt", type=click.Choice(["text", "json"]), default="text")
@click.pass_context
def tables(ctx, check, fmt):
    """Reproduce the RM(32,16) pattern-count and design tables."""
    data = _call(ctx, "/tables", service.tables)
    if fmt == "json":
        click.echo(json.dumps(data, sort_keys=True))
    else:
        b = data["baseline"]
        click.echo(f"baseline RM({b['N']},{b['K']}): d_min={b['dmin']} "
                   f"N_min={b['nmin']} second_least={b['second_least']}")
        click.echo("pattern counts, support (1, N/2+1): "
                   + " ".join(f"w[{i}]={w}" for i, w in data["table1"]))
        click.echo("single-entry designs: "
                   + " ".join(f"T[{d['info_index']},17]->N_min={d['nmin']}"
                              for d in data["table2"]))
        click.echo("pattern counts, support (2, N/2+2): "
                   + " ".join(f"w[{i}]={w}" for i, w in data["table3"]))
        click.echo("two-entry designs: "
                   + " ".join(f"T[{d['info_index']},17/18]->N_min={d['nmin']}"
                              for d in data["table4"]))
    if check:
        from .tables import reference_tables

        mismatches = reference_tables().mismatches() if not ctx.obj.get("server") else _check_dict(data)
        for m in mismatches:
            click.echo(f"MISMATCH: {m}", err=True)
        if mismatches:
            sys.exit(1)
        click.echo("all table values match")


def _check_dict(data: dict) -> list[str]:
    from .tables import EXPECTED_BASELINE, EXPECTED_DESIGNED_NMIN, EXPECTED_W

    out = []
    for key, want in EXPECTED_BASELINE.items():
        if data["baseline"][key] != want:
            out.append(f"baseline {key}: got {data['baseline'][key]}, expected {want}")
    for label in ("table1", "table3"):
        for i, w in data[label]:
            if w != EXPECTED_W:
                out.append(f"{label} w at index {i}: got {w}, expected {EXPECTED_W}")
    for label in ("table2", "table4"):
        for d in data[label]:
            if d["nmin"] != EXPECTED_DESIGNED_NMIN:
                out.append(f"{label} nmin at index {d['info_index']}: got {d['nmin']}, "
                           f"expected {EXPECTED_DESIGNED_NMIN}")
    return out


@main.command()
@click.option("--host", default="127.0.0.1", show_default=True)
@click.option("--port", type=int, default=8000, show_default=True)
def serve(host, port):
    """Run the HTTP service."""
    import uvicorn

    uvicorn.run("ptpolar.service:app", host=host, port=port)


if __name__ == "__main__":
    main()
