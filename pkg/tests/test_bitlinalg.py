import random

import pytest
from hypothesis import given, strategies as st

from ptpolar.bitlinalg import (
    MAX_KRON_EXPONENT,
    BitVector,
    kronecker_power,
    row_support,
    row_value,
    weight,
    xor,
)
from ptpolar.errors import CapacityError, ParameterError, ShapeError


def kronecker_direct(n):
    """Oracle: recursive block construction [[H,0],[H,H]] as lists of rows."""
    rows = [[1]]
    for _ in range(n):
        size = len(rows)
        top = [r + [0] * size for r in rows]
        bottom = [r + r for r in rows]
        rows = top + bottom
    return rows


class TestKroneckerPower:
    def test_n1_rows(self):
        H = kronecker_power(1)
        assert str(H.row(1)) == "10"
        assert str(H.row(2)) == "11"

    def test_n0_identity(self):
        H = kronecker_power(0)
        assert H.N == 1
        assert str(H.row(1)) == "1"

    def test_n2_row_weights(self):
        H = kronecker_power(2)
        assert [H.row(m).weight() for m in range(1, 5)] == [1, 2, 2, 4]

    @pytest.mark.parametrize("n", range(5))
    def test_matches_direct_block_construction(self, n):
        H = kronecker_power(n)
        direct = kronecker_direct(n)
        for m in range(1, H.N + 1):
            assert list(H.row(m)) == direct[m - 1]

    @pytest.mark.parametrize("n", [3, 5, 8])
    def test_weight_formula(self, n):
        H = kronecker_power(n)
        for m in range(1, H.N + 1):
            assert H.row(m).weight() == 1 << (m - 1).bit_count()

    def test_first_and_last_rows(self):
        H = kronecker_power(5)
        assert H.row(1).support() == (1,)
        assert H.row(32).support() == tuple(range(1, 33))

    def test_cap(self):
        with pytest.raises(CapacityError, match=str(MAX_KRON_EXPONENT)):
            kronecker_power(MAX_KRON_EXPONENT + 1)

    def test_large_row_lazy(self):
        # above the materialization limit rows still come out right
        assert row_value(17, 1) == 1
        assert row_value(17, 1 << 17) == (1 << (1 << 17)) - 1


class TestRowSupport:
    def test_half_plus_one(self):
        assert row_support(5, 17) == {1, 17}

    def test_all_ones_row(self):
        assert row_support(5, 32) == set(range(1, 33))

    def test_submask_row(self):
        assert row_support(5, 18) == {1, 2, 17, 18}

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_matches_rows(self, n):
        H = kronecker_power(n)
        for m in range(1, H.N + 1):
            assert row_support(n, m) == set(H.row(m).support())

    def test_out_of_range(self):
        with pytest.raises(ParameterError):
            row_support(3, 9)
        with pytest.raises(ParameterError):
            row_support(3, 0)


class TestBitVector:
    def test_xor_example(self):
        a = BitVector.from_bits([1, 1, 0, 0])
        b = BitVector.from_bits([1, 0, 1, 0])
        assert str(xor(a, b)) == "0110"

    def test_xor_zero_identity(self):
        v = BitVector.from_support(8, [2, 5, 7])
        assert xor(v, BitVector.zero(8)) == v

    def test_rows_17_18_xor(self):
        H = kronecker_power(5)
        assert xor(H.row(17), H.row(18)).support() == (2, 18)

    def test_length_mismatch(self):
        with pytest.raises(ShapeError):
            xor(BitVector.zero(4), BitVector.zero(5))

    def test_weight_examples(self):
        H = kronecker_power(5)
        assert weight(BitVector.zero(32)) == 0
        assert weight(H.row(8)) == 8
        assert weight(H.row(16)) == 16

    def test_overlap_identity(self):
        H = kronecker_power(4)
        for _ in range(50):
            a, b = H.row(random.randint(1, 16)), H.row(random.randint(1, 16))
            overlap = len(set(a.support()) & set(b.support()))
            assert weight(xor(a, b)) == weight(a) + weight(b) - 2 * overlap

    def test_value_beyond_length_rejected(self):
        with pytest.raises(ParameterError):
            BitVector(3, 0b1000)


@given(st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1), st.integers(0, 2**16 - 1))
def test_xor_algebra(a, b, c):
    va, vb, vc = (BitVector(16, x) for x in (a, b, c))
    assert xor(xor(va, vb), vc) == xor(va, xor(vb, vc))
    assert xor(va, vb) == xor(vb, va)
    assert xor(xor(va, vb), vb) == va


class TestLeadingRowDominance:
    """w(h^(m) xor any combination of later rows) >= w(h^(m))."""

    def test_exhaustive_n4(self):
        H = kronecker_power(2)
        for m in range(1, 5):
            for coeffs in range(1 << (4 - m)):
                x = H.row_value(m)
                for k in range(m + 1, 5):
                    if (coeffs >> (k - m - 1)) & 1:
                        x ^= H.row_value(k)
                assert x.bit_count() >= H.row(m).weight()

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_randomized(self, n):
        rng = random.Random(7 * n)
        H = kronecker_power(n)
        for _ in range(1000):
            m = rng.randint(1, H.N)
            x = H.row_value(m)
            base = x.bit_count()
            for k in range(m + 1, H.N + 1):
                if rng.random() < 0.5:
                    x ^= H.row_value(k)
            assert x.bit_count() >= base
