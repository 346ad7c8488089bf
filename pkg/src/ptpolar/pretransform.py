"""Unit-diagonal upper-triangular pre-transformations.

Only the strictly-upper ones are stored; the diagonal is implicit.
Constructors cover hand-written sparse matrices, convolutional
(Toeplitz) matrices, CRC feed-in columns and explicit parity wirings.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .bitlinalg import BitVector, kronecker_power
from .code import CodeSpec, place_message
from .errors import ParameterError, ShapeError, TriangularityError

KINDS = ("identity", "custom", "pac", "crc", "pc")


@dataclass(frozen=True)
class PreTransform:
    N: int
    entries: frozenset[tuple[int, int]]
    kind: str = "custom"
    # row -> packed mask of target columns, built once for apply()
    _row_masks: dict = field(default=None, repr=False, compare=False)

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParameterError(f"unknown kind {self.kind!r}")
        masks: dict[int, int] = {}
        for i, j in self.entries:
            if not 1 <= i < j <= self.N:
                raise TriangularityError(
                    f"entry ({i},{j}) is not strictly upper within N={self.N}"
                )
            masks[i] = masks.get(i, 0) | (1 << (j - 1))
        object.__setattr__(self, "_row_masks", masks)

    def sorted_entries(self) -> list[tuple[int, int]]:
        return sorted(self.entries)

    def to_dict(self) -> dict:
        return {
            "N": self.N,
            "kind": self.kind,
            "entries": [list(e) for e in self.sorted_entries()],
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "PreTransform":
        return custom(d["N"], [tuple(e) for e in d["entries"]], kind=d.get("kind", "custom"))

    @classmethod
    def from_json(cls, s: str) -> "PreTransform":
        return cls.from_dict(json.loads(s))


def identity(N: int) -> PreTransform:
    return PreTransform(N, frozenset(), kind="identity")


def custom(N: int, entries: Iterable[tuple[int, int]], kind: str = "custom") -> PreTransform:
    entries = list(entries)
    if len(entries) != len(set(entries)):
        raise ParameterError("duplicate transform entries")
    return PreTransform(N, frozenset(entries), kind=kind)


def pac(N: int, poly: Sequence[int]) -> PreTransform:
    """Upper-triangular Toeplitz matrix from convolution coefficients.

    ``poly[t]`` places T[i, i+t]; rows are truncated at column N.
    """
    if not poly or poly[0] != 1:
        raise TriangularityError("convolution polynomial must start with 1")
    if len(poly) > N:
        raise ParameterError(f"polynomial degree {len(poly) - 1} >= N={N}")
    entries = set()
    for t, c in enumerate(poly[1:], start=1):
        if c:
            for i in range(1, N - t + 1):
                entries.add((i, i + t))
    return PreTransform(N, frozenset(entries), kind="pac")


def _crc_remainder(value: int, degree: int, poly: int) -> int:
    """Remainder of the bit-polynomial `value` modulo `poly` (monic, given degree)."""
    for bit in range(value.bit_length() - 1, degree - 1, -1):
        if (value >> bit) & 1:
            value ^= poly << (bit - degree)
    return value


def crc(spec: CodeSpec, poly: int, r: int | None = None) -> PreTransform:
    """CRC feed-in transform: the last r information indices host the
    remainder of the first K-r data bits.

    ``poly`` is the generator polynomial as a bitmask (e.g. 0b1011 for
    x^3+x+1); the first data bit is the highest-degree message
    coefficient, and remainder bits are hosted highest degree first.
    """
    degree = poly.bit_length() - 1
    if degree < 1:
        raise ParameterError("CRC polynomial must have degree >= 1")
    if r is None:
        r = degree
    if r != degree:
        raise ParameterError(f"r={r} does not match polynomial degree {degree}")
    if spec.K <= r:
        raise ParameterError(f"K={spec.K} must exceed CRC length r={r}")
    data_positions = spec.info_set[: spec.K - r]
    crc_positions = spec.info_set[spec.K - r:]
    entries = set()
    for t, i in enumerate(data_positions):
        # unit data message: x^(K-r-1-t), shifted up by r for the CRC append
        rem = _crc_remainder(1 << (spec.K - r - 1 - t + r), degree, poly)
        for s, j in enumerate(crc_positions):
            if (rem >> (r - 1 - s)) & 1:
                entries.add((i, j))
    return PreTransform(spec.N, frozenset(entries), kind="crc")


def pc(N: int, equations: Iterable[tuple[int, Iterable[int]]]) -> PreTransform:
    """Parity wiring: each target column carries the XOR of its sources."""
    entries = set()
    targets = set()
    for j, sources in equations:
        if j in targets:
            raise ParameterError(f"duplicate parity target column {j}")
        targets.add(j)
        for i in sources:
            if i >= j:
                raise TriangularityError(
                    f"parity source {i} not strictly above target {j}"
                )
            entries.add((i, j))
    return PreTransform(N, frozenset(entries), kind="pc")


def apply(T: PreTransform, U: BitVector) -> BitVector:
    """V = U * T over GF(2); unit-diagonal triangularity keeps the
    first nonzero position of U fixed."""
    if U.length != T.N:
        raise ShapeError(f"vector length {U.length} != N={T.N}")
    out = U.value
    for i, mask in T._row_masks.items():
        if (U.value >> (i - 1)) & 1:
            out ^= mask
    return BitVector(T.N, out)


def encode_value(spec: CodeSpec, T: PreTransform, msg_value: int) -> int:
    """Codeword X = U * T * H_N for a message given as a packed int."""
    U = place_message(spec, BitVector(spec.K, msg_value))
    V = apply(T, U)
    H = kronecker_power(spec.n)
    x = 0
    v = V.value
    while v:
        low = v & -v
        x ^= H.row_value(low.bit_length())
        v ^= low
    return x


def encode(spec: CodeSpec, T: PreTransform, msg: BitVector) -> BitVector:
    if msg.length != spec.K:
        raise ShapeError(f"message length {msg.length} != K={spec.K}")
    if T.N != spec.N:
        raise ShapeError(f"transform size {T.N} != N={spec.N}")
    return BitVector(spec.N, encode_value(spec, T, msg.value))
