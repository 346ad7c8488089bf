"""Code construction: RM by row weight, polar by BEC reliability."""

from __future__ import annotations

import json
from dataclasses import dataclass

from .bitlinalg import BitVector
from .errors import ParameterError, ShapeError

FAMILIES = ("rm", "polar", "custom")


@dataclass(frozen=True)
class CodeSpec:
    """Block length 2^n, dimension K, sorted 1-based information set."""

    n: int
    K: int
    info_set: tuple[int, ...]
    family: str = "custom"

    def __post_init__(self):
        N = 1 << self.n
        if not 1 <= self.K <= N:
            raise ParameterError(f"K={self.K} outside 1..{N}")
        if len(self.info_set) != self.K:
            raise ParameterError(
                f"info_set has {len(self.info_set)} indices, expected K={self.K}"
            )
        if list(self.info_set) != sorted(set(self.info_set)):
            raise ParameterError("info_set must be strictly ascending")
        if self.info_set[0] < 1 or self.info_set[-1] > N:
            raise ParameterError(f"info_set indices outside 1..{N}")
        if self.family not in FAMILIES:
            raise ParameterError(f"unknown family {self.family!r}")

    @property
    def N(self) -> int:
        return 1 << self.n

    def frozen_set(self) -> tuple[int, ...]:
        info = set(self.info_set)
        return tuple(j for j in range(1, self.N + 1) if j not in info)

    def to_dict(self) -> dict:
        return {
            "n": self.n,
            "K": self.K,
            "family": self.family,
            "info_set": list(self.info_set),
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def from_dict(cls, d: dict) -> "CodeSpec":
        return cls(
            n=d["n"], K=d["K"], info_set=tuple(d["info_set"]),
            family=d.get("family", "custom"),
        )

    @classmethod
    def from_json(cls, s: str) -> "CodeSpec":
        return cls.from_dict(json.loads(s))


def rm_construct(n: int, K: int) -> CodeSpec:
    """Pick the K indices with the largest generator-row weight.

    Row m has weight 2^popcount(m-1).  Ties inside a weight class are
    broken toward the larger index, which matches polar reliability
    ordering within the class.
    """
    N = 1 << n
    if not 1 <= K <= N:
        raise ParameterError(f"K={K} outside 1..{N}")
    ranked = sorted(range(1, N + 1), key=lambda m: ((m - 1).bit_count(), m))
    return CodeSpec(n=n, K=K, info_set=tuple(sorted(ranked[-K:])), family="rm")


def bhattacharyya_profile(n: int, erasure_prob: float = 0.5) -> list[float]:
    """BEC Bhattacharyya parameters of the N synthetic channels.

    One level of the recursion maps z to the pair (2z - z^2, z^2);
    the i-th output (1-based) corresponds to bit u_i.
    """
    if not 0.0 < erasure_prob < 1.0:
        raise ParameterError(f"erasure_prob {erasure_prob} outside (0,1)")
    z = [erasure_prob]
    for _ in range(n):
        nxt = []
        for v in z:
            nxt.append(2.0 * v - v * v)
            nxt.append(v * v)
        z = nxt
    return z


def polar_construct(n: int, K: int, erasure_prob: float = 0.5) -> CodeSpec:
    """Pick the K most reliable indices under the BEC recursion.

    Ties (equal Bhattacharyya value) are broken toward the larger index.
    """
    N = 1 << n
    if not 1 <= K <= N:
        raise ParameterError(f"K={K} outside 1..{N}")
    z = bhattacharyya_profile(n, erasure_prob)
    ranked = sorted(range(1, N + 1), key=lambda m: (z[m - 1], -m))
    return CodeSpec(
        n=n, K=K, info_set=tuple(sorted(ranked[:K])), family="polar"
    )


def place_message(spec: CodeSpec, msg: BitVector) -> BitVector:
    """Scatter msg bits to the information positions, zeros elsewhere."""
    if msg.length != spec.K:
        raise ShapeError(f"message length {msg.length} != K={spec.K}")
    value = 0
    for b, pos in enumerate(spec.info_set):
        if (msg.value >> b) & 1:
            value |= 1 << (pos - 1)
    return BitVector(spec.N, value)
