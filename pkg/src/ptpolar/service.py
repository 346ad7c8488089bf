"""HTTP service exposing code construction, spectra, verification,
design and the RM(32,16) table reproduction.

The CLI drives the exact same request/response models, either in
process or against a running server.
"""

from __future__ import annotations

from typing import Literal, Optional

from fastapi import FastAPI, HTTPException
from pydantic import BaseModel, Field

from . import code as code_mod
from . import design as design_mod
from . import pretransform as pt_mod
from . import spectrum as spectrum_mod
from .errors import (
    CapacityError,
    DesignInfeasibleError,
    PreconditionError,
    PtpolarError,
)
from .tables import reference_tables


class CodeSpecModel(BaseModel):
    n: int
    K: int
    family: str = "custom"
    info_set: list[int]

    @classmethod
    def from_spec(cls, spec: code_mod.CodeSpec) -> "CodeSpecModel":
        return cls(**spec.to_dict())

    def to_spec(self) -> code_mod.CodeSpec:
        return code_mod.CodeSpec.from_dict(self.model_dump())


class TransformModel(BaseModel):
    N: int
    kind: str = "custom"
    entries: list[tuple[int, int]] = Field(default_factory=list)

    @classmethod
    def from_transform(cls, T: pt_mod.PreTransform) -> "TransformModel":
        return cls(N=T.N, kind=T.kind, entries=T.sorted_entries())

    def to_transform(self) -> pt_mod.PreTransform:
        return pt_mod.custom(self.N, self.entries, kind=self.kind)


class ConstructRequest(BaseModel):
    family: Literal["rm", "polar"]
    n: int
    K: int
    erasure_prob: float = 0.5


class SpectrumRequest(BaseModel):
    spec: CodeSpecModel
    transform: Optional[TransformModel] = None
    workers: int = 1
    cap: int = spectrum_mod.DEFAULT_ENUM_CAP
    method: str = "auto"


class SpectrumResponse(BaseModel):
    N: int
    K: int
    dmin: int
    nmin: int
    second_least: Optional[int]
    counts: list[tuple[int, int]]


class VerifyRequest(BaseModel):
    spec: CodeSpecModel
    transform: TransformModel
    cap: int = spectrum_mod.DEFAULT_ENUM_CAP


class VerifyResponse(BaseModel):
    dmin_base: int
    dmin_transformed: int
    holds: bool


class DesignRequest(BaseModel):
    spec: CodeSpecModel
    mode: Literal["theorem2", "theorem3"]
    columns: Optional[list[int]] = None      # theorem2
    p: int = 2                               # theorem3
    max_combo_size: int = 3                  # theorem3
    cap: int = spectrum_mod.DEFAULT_ENUM_CAP


class PatternCountModel(BaseModel):
    info_index: int
    columns: list[int]
    support: list[int]
    w: int


class DesignResponse(BaseModel):
    feasible: bool
    chosen: Optional[PatternCountModel]
    transform: TransformModel
    dmin_base: int
    nmin_base: int
    predicted_nmin: int
    verified_nmin: int
    verified_dmin: int
    wj_table: list[PatternCountModel]


def _pattern_model(pc: design_mod.PatternCount) -> PatternCountModel:
    return PatternCountModel(
        info_index=pc.info_index,
        columns=list(pc.columns),
        support=list(pc.support),
        w=pc.w,
    )


def _spectrum_response(s: spectrum_mod.WeightSpectrum) -> SpectrumResponse:
    return SpectrumResponse(
        N=s.N,
        K=s.K,
        dmin=s.d_min,
        nmin=s.N_min,
        second_least=s.second_least,
        counts=[(w, s.counts[w]) for w in sorted(s.counts)],
    )


def _design_response(r: design_mod.DesignResult) -> DesignResponse:
    return DesignResponse(
        feasible=r.feasible,
        chosen=_pattern_model(r.chosen) if r.chosen else None,
        transform=TransformModel.from_transform(r.transform),
        dmin_base=r.dmin_base,
        nmin_base=r.nmin_base,
        predicted_nmin=r.predicted_nmin,
        verified_nmin=r.verified_nmin,
        verified_dmin=r.verified_dmin,
        wj_table=[_pattern_model(pc) for pc in r.wj_table],
    )


# ---------------------------------------------------------------- handlers
# Plain functions raising domain errors; the CLI calls these directly,
# the HTTP layer wraps them with status-code mapping.

def construct(req: ConstructRequest) -> CodeSpecModel:
    if req.family == "rm":
        spec = code_mod.rm_construct(req.n, req.K)
    else:
        spec = code_mod.polar_construct(req.n, req.K, req.erasure_prob)
    return CodeSpecModel.from_spec(spec)


def spectrum(req: SpectrumRequest) -> SpectrumResponse:
    spec = req.spec.to_spec()
    T = req.transform.to_transform() if req.transform else None
    s = spectrum_mod.enumerate_spectrum(
        spec, T, method=req.method, workers=req.workers, cap=req.cap
    )
    return _spectrum_response(s)


def verify(req: VerifyRequest) -> VerifyResponse:
    report = spectrum_mod.verify_dmin_preserved(
        req.spec.to_spec(), req.transform.to_transform(), cap=req.cap
    )
    return VerifyResponse(
        dmin_base=report.dmin_base,
        dmin_transformed=report.dmin_transformed,
        holds=report.holds,
    )


def design(req: DesignRequest) -> DesignResponse:
    spec = req.spec.to_spec()
    if req.mode == "theorem2":
        if not req.columns:
            raise PtpolarError("theorem2 design requires a column set")
        result = design_mod.theorem2_design(spec, req.columns, cap=req.cap)
    else:
        result = design_mod.theorem3_search(
            spec, req.p, max_combo_size=req.max_combo_size, cap=req.cap
        )
    return _design_response(result)


def tables() -> dict:
    return reference_tables().to_dict()


# ---------------------------------------------------------------- HTTP app

def _http(fn, *args):
    try:
        return fn(*args)
    except CapacityError as e:
        raise HTTPException(status_code=413, detail=str(e))
    except PreconditionError as e:
        raise HTTPException(status_code=409, detail=str(e))
    except DesignInfeasibleError as e:
        raise HTTPException(status_code=409, detail=str(e))
    except PtpolarError as e:
        raise HTTPException(status_code=422, detail=str(e))


app = FastAPI(title="ptpolar", description="Pre-transformed polar/RM code analysis")


@app.get("/health")
def health():
    return {"status": "ok"}


@app.post("/construct", response_model=CodeSpecModel)
def construct_endpoint(req: ConstructRequest):
    return _http(construct, req)


@app.post("/spectrum", response_model=SpectrumResponse)
def spectrum_endpoint(req: SpectrumRequest):
    return _http(spectrum, req)


@app.post("/verify", response_model=VerifyResponse)
def verify_endpoint(req: VerifyRequest):
    return _http(verify, req)


@app.post("/design", response_model=DesignResponse)
def design_endpoint(req: DesignRequest):
    return _http(design, req)


@app.get("/tables")
def tables_endpoint():
    return _http(tables)
