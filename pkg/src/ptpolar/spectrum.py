"""Exact weight spectra by exhaustive enumeration over all 2^K messages.

Three interchangeable paths:

* ``fast``  — numpy blocked doubling over precomputed unit codewords
  (N <= 64, the default);
* ``gray``  — Gray-code walk flipping one unit codeword per step
  (any N, pure Python ints);
* ``naive`` — re-encode every message through the full pipeline
  (the oracle the other two are checked against).

All paths produce identical counts; partitioned multi-worker runs merge
per-chunk counts by addition and are bit-identical to a single worker.
"""

from __future__ import annotations

import csv
import io
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .code import CodeSpec
from .errors import CapacityError, ParameterError
from .pretransform import PreTransform, encode_value, identity

DEFAULT_ENUM_CAP = 26
DEFAULT_CODEBOOK_CAP = 1 << 22

_INNER_BITS = 18


@dataclass(frozen=True)
class WeightSpectrum:
    N: int
    K: int
    counts: dict[int, int]

    @property
    def total(self) -> int:
        return 1 << self.K

    @property
    def d_min(self) -> int:
        return min(w for w, c in self.counts.items() if w > 0 and c > 0)

    @property
    def N_min(self) -> int:
        return self.counts[self.d_min]

    @property
    def second_least(self) -> int | None:
        """Smallest weight strictly above d_min, or None if absent."""
        above = [w for w, c in self.counts.items() if c > 0 and w > self.d_min]
        return min(above) if above else None

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "K": self.K,
            "dmin": self.d_min,
            "Nmin": self.N_min,
            "second_least": self.second_least,
            "counts": [[w, self.counts[w]] for w in sorted(self.counts)],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    def to_csv(self) -> str:
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["weight", "count"])
        for w in sorted(self.counts):
            writer.writerow([w, self.counts[w]])
        return buf.getvalue()


class CodebookEntry(NamedTuple):
    message: int   # packed K-bit message
    u: int         # packed N-bit pre-transform input U
    codeword: int  # packed N-bit codeword X


@dataclass(frozen=True)
class MinWeightCodebook:
    N: int
    K: int
    d_min: int
    entries: tuple[CodebookEntry, ...]


@dataclass(frozen=True)
class DminReport:
    dmin_base: int
    dmin_transformed: int

    @property
    def holds(self) -> bool:
        return self.dmin_transformed >= self.dmin_base


def _unit_codewords(spec: CodeSpec, T: PreTransform) -> list[int]:
    """Codewords of the K unit messages; every enumeration is an XOR
    combination of these (encoding is linear in the message)."""
    return [encode_value(spec, T, 1 << b) for b in range(spec.K)]


def _doubling_array(gens: list[int]) -> np.ndarray:
    arr = np.zeros(1, dtype=np.uint64)
    for g in gens:
        arr = np.concatenate([arr, arr ^ np.uint64(g)])
    return arr


def _doubling_values(gens: list[int]) -> list[int]:
    vals = [0]
    for g in gens:
        vals += [v ^ g for v in vals]
    return vals


def _counts_fast(gens: list[int], N: int, outer_slice: slice | None = None) -> list[int]:
    inner = _doubling_array(gens[:_INNER_BITS])
    outer = _doubling_values(gens[_INNER_BITS:])
    if outer_slice is not None:
        outer = outer[outer_slice]
    counts = np.zeros(N + 1, dtype=np.int64)
    for o in outer:
        w = np.bitwise_count(inner ^ np.uint64(o))
        counts += np.bincount(w, minlength=N + 1)
    return counts.tolist()


def _counts_gray(gens: list[int], N: int, start: int, stop: int) -> list[int]:
    counts = [0] * (N + 1)
    g = start ^ (start >> 1)
    x = 0
    b = 0
    while g >> b:
        if (g >> b) & 1:
            x ^= gens[b]
        b += 1
    for t in range(start, stop):
        counts[x.bit_count()] += 1
        nt = t + 1
        if nt < stop:
            x ^= gens[(nt & -nt).bit_length() - 1]
    return counts


def _counts_naive(spec: CodeSpec, T: PreTransform, N: int) -> list[int]:
    counts = [0] * (N + 1)
    for m in range(1 << spec.K):
        counts[encode_value(spec, T, m).bit_count()] += 1
    return counts


def _fast_chunk(args) -> list[int]:
    gens, N, lo, hi = args
    return _counts_fast(gens, N, slice(lo, hi))


def _gray_chunk(args) -> list[int]:
    gens, N, start, stop = args
    return _counts_gray(gens, N, start, stop)


def _merge(chunks, N: int) -> list[int]:
    total = [0] * (N + 1)
    for c in chunks:
        for w, v in enumerate(c):
            total[w] += v
    return total


def enumerate_spectrum(
    spec: CodeSpec,
    T: PreTransform | None = None,
    *,
    method: str = "auto",
    workers: int = 1,
    cap: int = DEFAULT_ENUM_CAP,
) -> WeightSpectrum:
    """Exact weight distribution over all 2^K codewords."""
    if spec.K > cap:
        raise CapacityError(
            f"K={spec.K} exceeds enumeration cap {cap}; raise the cap explicitly"
        )
    if T is None:
        T = identity(spec.N)
    if method == "auto":
        method = "fast" if spec.N <= 64 else "gray"
    if method not in ("fast", "gray", "naive"):
        raise ParameterError(f"unknown enumeration method {method!r}")
    if method == "fast" and spec.N > 64:
        raise ParameterError("fast path packs codewords into 64-bit words; use gray for N > 64")

    N = spec.N
    if method == "naive":
        counts = _counts_naive(spec, T, N)
    else:
        gens = _unit_codewords(spec, T)
        if workers <= 1:
            if method == "fast":
                counts = _counts_fast(gens, N)
            else:
                counts = _counts_gray(gens, N, 0, 1 << spec.K)
        else:
            if method == "fast":
                n_outer = 1 << max(0, spec.K - _INNER_BITS)
                bounds = _even_bounds(n_outer, workers)
                jobs = [(gens, N, lo, hi) for lo, hi in bounds]
                fn = _fast_chunk
            else:
                bounds = _even_bounds(1 << spec.K, workers)
                jobs = [(gens, N, lo, hi) for lo, hi in bounds]
                fn = _gray_chunk
            with ProcessPoolExecutor(max_workers=workers) as pool:
                chunks = list(pool.map(fn, jobs))
            counts = _merge(chunks, N)

    return WeightSpectrum(
        N=N, K=spec.K, counts={w: c for w, c in enumerate(counts) if c}
    )


def _even_bounds(total: int, parts: int) -> list[tuple[int, int]]:
    parts = min(parts, total) or 1
    step, extra = divmod(total, parts)
    bounds = []
    lo = 0
    for i in range(parts):
        hi = lo + step + (1 if i < extra else 0)
        bounds.append((lo, hi))
        lo = hi
    return bounds


def min_weight_codebook(
    spec: CodeSpec,
    T: PreTransform | None = None,
    *,
    cap: int = DEFAULT_ENUM_CAP,
    max_entries: int = DEFAULT_CODEBOOK_CAP,
) -> MinWeightCodebook:
    """All (message, U, codeword) triples achieving the minimum weight."""
    if T is None:
        T = identity(spec.N)
    spectrum = enumerate_spectrum(spec, T, cap=cap)
    d_min = spectrum.d_min
    if spectrum.N_min > max_entries:
        raise CapacityError(
            f"codebook too large: N_min={spectrum.N_min} exceeds {max_entries}"
        )
    gens = _unit_codewords(spec, T)
    u_deltas = [1 << (pos - 1) for pos in spec.info_set]
    entries = []
    x = 0
    u = 0
    g = 0  # message at Gray step t is t ^ (t >> 1); walk keeps x, u in sync
    total = 1 << spec.K
    for t in range(total):
        if x.bit_count() == d_min:
            entries.append(CodebookEntry(message=g, u=u, codeword=x))
        nt = t + 1
        if nt < total:
            b = (nt & -nt).bit_length() - 1
            x ^= gens[b]
            u ^= u_deltas[b]
            g ^= 1 << b
    entries.sort(key=lambda e: e.message)
    return MinWeightCodebook(N=spec.N, K=spec.K, d_min=d_min, entries=tuple(entries))


def verify_dmin_preserved(
    spec: CodeSpec, T: PreTransform, *, cap: int = DEFAULT_ENUM_CAP
) -> DminReport:
    """Compare enumerated d_min with and without the pre-transformation."""
    base = enumerate_spectrum(spec, None, cap=cap)
    transformed = enumerate_spectrum(spec, T, cap=cap)
    return DminReport(dmin_base=base.d_min, dmin_transformed=transformed.d_min)
