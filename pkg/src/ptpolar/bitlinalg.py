"""Packed binary vectors and the Kronecker-power generator matrix.

Bit vectors are stored as Python ints: bit ``i-1`` of ``value`` holds
position ``i`` (1-based, matching the row/column convention used
everywhere in the public API).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator

from .errors import CapacityError, ParameterError, ShapeError

# Largest supported Kronecker exponent; spectrum enumeration dominates
# cost long before the matrix itself does.
MAX_KRON_EXPONENT = 20

# Below this size rows are materialized on first access and kept.
_MATERIALIZE_LIMIT = 1 << 16


@dataclass(frozen=True)
class BitVector:
    """Immutable fixed-length bit vector packed into an int."""

    length: int
    value: int

    def __post_init__(self):
        if self.length < 0:
            raise ParameterError(f"negative length {self.length}")
        if self.value < 0 or self.value >> self.length:
            raise ParameterError(
                f"value has bits beyond length {self.length}"
            )

    @classmethod
    def zero(cls, length: int) -> "BitVector":
        return cls(length, 0)

    @classmethod
    def from_support(cls, length: int, positions: Iterable[int]) -> "BitVector":
        value = 0
        for p in positions:
            if not 1 <= p <= length:
                raise ParameterError(f"position {p} outside 1..{length}")
            value |= 1 << (p - 1)
        return cls(length, value)

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        value = 0
        length = 0
        for b in bits:
            if b:
                value |= 1 << length
            length += 1
        return cls(length, value)

    def get(self, position: int) -> int:
        """Bit at 1-based `position`."""
        if not 1 <= position <= self.length:
            raise ParameterError(f"position {position} outside 1..{self.length}")
        return (self.value >> (position - 1)) & 1

    def support(self) -> tuple[int, ...]:
        """Sorted 1-based positions of set bits."""
        v = self.value
        out = []
        while v:
            low = v & -v
            out.append(low.bit_length())
            v ^= low
        return tuple(out)

    def weight(self) -> int:
        return self.value.bit_count()

    def __xor__(self, other: "BitVector") -> "BitVector":
        if self.length != other.length:
            raise ShapeError(
                f"length mismatch: {self.length} != {other.length}"
            )
        return BitVector(self.length, self.value ^ other.value)

    def __iter__(self) -> Iterator[int]:
        for i in range(self.length):
            yield (self.value >> i) & 1

    def __str__(self) -> str:
        return "".join(str(b) for b in self)


def weight(v: BitVector) -> int:
    return v.weight()


def xor(a: BitVector, b: BitVector) -> BitVector:
    return a ^ b


def row_value(n: int, m: int) -> int:
    """Row ``m`` (1-based) of the n-th Kronecker power, as a packed int.

    Built by recursive doubling: appending a kernel factor either keeps
    the row in the low half or duplicates it into the high half,
    depending on the corresponding bit of ``m-1``.
    """
    N = 1 << n
    if not 1 <= m <= N:
        raise ParameterError(f"row index {m} outside 1..{N}")
    r = 1
    mm = m - 1
    for k in range(n):
        if (mm >> k) & 1:
            r |= r << (1 << k)
    return r


def row_support(n: int, m: int) -> set[int]:
    """Support of row ``m``: the columns j with (j-1) a submask of (m-1).

    Cost proportional to the row weight, independent of N.
    """
    N = 1 << n
    if not 1 <= m <= N:
        raise ParameterError(f"row index {m} outside 1..{N}")
    mask = m - 1
    out = set()
    sub = mask
    while True:
        out.add(sub + 1)
        if sub == 0:
            break
        sub = (sub - 1) & mask
    return out


class GeneratorMatrix:
    """The N x N binary matrix F^(kron n), exposed row by row.

    Rows are cached for small N and computed on demand above
    ``_MATERIALIZE_LIMIT``.
    """

    def __init__(self, n: int):
        if n < 0:
            raise ParameterError(f"negative exponent {n}")
        if n > MAX_KRON_EXPONENT:
            raise CapacityError(
                f"exponent {n} exceeds cap {MAX_KRON_EXPONENT}"
            )
        self.n = n
        self.N = 1 << n
        self._cache: dict[int, int] = {} if self.N <= _MATERIALIZE_LIMIT else None

    def row_value(self, m: int) -> int:
        if self._cache is not None:
            v = self._cache.get(m)
            if v is None:
                v = row_value(self.n, m)
                self._cache[m] = v
            return v
        return row_value(self.n, m)

    def row(self, m: int) -> BitVector:
        return BitVector(self.N, self.row_value(m))

    @property
    def rows(self) -> list[BitVector]:
        return [self.row(m) for m in range(1, self.N + 1)]


@lru_cache(maxsize=None)
def kronecker_power(n: int) -> GeneratorMatrix:
    """Shared generator matrix for exponent ``n`` (0 <= n <= cap)."""
    return GeneratorMatrix(n)
