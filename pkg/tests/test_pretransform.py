import random

import pytest
from hypothesis import given, settings, strategies as st

from ptpolar.bitlinalg import BitVector, kronecker_power
from ptpolar.code import rm_construct
from ptpolar.errors import ParameterError, ShapeError, TriangularityError
from ptpolar.pretransform import (
    PreTransform,
    apply,
    crc,
    custom,
    encode,
    identity,
    pac,
    pc,
)
from ptpolar.spectrum import enumerate_spectrum


def random_upper_transform(N, rng, density=0.15):
    entries = [
        (i, j)
        for i in range(1, N)
        for j in range(i + 1, N + 1)
        if rng.random() < density
    ]
    return custom(N, entries)


def crc_remainder_oracle(data_bits, poly_bits):
    """Long division over GF(2): data bits (MSB first) with r appended
    zeros, reduced by the generator polynomial bit list."""
    r = len(poly_bits) - 1
    work = list(data_bits) + [0] * r
    for i in range(len(data_bits)):
        if work[i]:
            for k, p in enumerate(poly_bits):
                work[i + k] ^= p
    return work[-r:]


class TestCustom:
    def test_table2_design(self):
        T = custom(32, [(8, 17)])
        assert T.sorted_entries() == [(8, 17)]

    def test_empty_is_identity(self):
        T = custom(8, [])
        for v in range(256):
            u = BitVector(8, v)
            assert apply(T, u) == u

    def test_table4_design(self):
        T = custom(32, [(8, 17), (8, 18)])
        assert T.sorted_entries() == [(8, 17), (8, 18)]

    def test_rejects_lower_entries(self):
        with pytest.raises(TriangularityError):
            custom(8, [(5, 5)])
        with pytest.raises(TriangularityError):
            custom(8, [(6, 2)])

    def test_rejects_duplicates(self):
        with pytest.raises(ParameterError):
            custom(8, [(1, 2), (1, 2)])


class TestPac:
    def test_trivial_polynomial(self):
        assert pac(8, [1]).entries == frozenset()

    def test_superdiagonal(self):
        assert pac(4, [1, 1]).sorted_entries() == [(1, 2), (2, 3), (3, 4)]

    def test_toeplitz_rows(self):
        T = pac(8, [1, 0, 1, 1])
        row1 = sorted(j for i, j in T.entries if i == 1)
        row6 = sorted(j for i, j in T.entries if i == 6)
        assert row1 == [3, 4]  # plus the implicit diagonal 1
        assert row6 == [8]     # column 9 truncated

    def test_full_toeplitz_oracle(self):
        poly = [1, 1, 0, 1, 1]
        N = 12
        T = pac(N, poly)
        expected = {
            (i, i + t)
            for t, c in enumerate(poly)
            if c and t > 0
            for i in range(1, N - t + 1)
        }
        assert T.entries == frozenset(expected)

    def test_not_unit_diagonal(self):
        with pytest.raises(TriangularityError):
            pac(8, [0, 1])


class TestCrc:
    def test_parity_polynomial(self):
        # x+1: the single check bit is the parity of all data bits
        spec = rm_construct(5, 16)
        T = crc(spec, 0b11)
        data = spec.info_set[:15]
        assert T.entries == frozenset((i, 32) for i in data)

    def test_zero_message_zero_crc(self):
        spec = rm_construct(4, 8)
        T = crc(spec, 0b1011)
        assert apply(T, BitVector.zero(16)) == BitVector.zero(16)

    def test_against_long_division_oracle(self):
        spec = rm_construct(4, 7)  # 4 data bits + 3 CRC bits
        T = crc(spec, 0b1011)      # x^3 + x + 1
        r = 3
        data_positions = spec.info_set[:4]
        crc_positions = spec.info_set[4:]
        rng = random.Random(11)
        for _ in range(32):
            data = [rng.randint(0, 1) for _ in range(4)]
            expected = crc_remainder_oracle(data, [1, 0, 1, 1])
            u = BitVector.from_support(
                16, [p for p, b in zip(data_positions, data) if b]
            )
            v = apply(T, u)
            got = [v.get(p) for p in crc_positions]
            assert got == expected

    def test_k_too_small(self):
        with pytest.raises(ParameterError):
            crc(rm_construct(3, 2), 0b111)


class TestPc:
    def test_empty_is_identity(self):
        assert pc(32, []).entries == frozenset()

    def test_single_equation(self):
        T = pc(32, [(17, {8, 12})])
        u = BitVector.from_support(32, [8])
        assert apply(T, u).support() == (8, 17)
        u2 = BitVector.from_support(32, [8, 12])
        assert apply(T, u2).support() == (8, 12)  # parity cancels

    def test_matches_custom(self):
        assert pc(32, [(17, {8}), (18, {8})]).entries == custom(
            32, [(8, 17), (8, 18)]
        ).entries

    def test_source_below_target(self):
        with pytest.raises(TriangularityError):
            pc(32, [(17, {18})])

    def test_duplicate_target(self):
        with pytest.raises(ParameterError):
            pc(32, [(17, {8}), (17, {12})])


class TestApply:
    def test_identity(self):
        T = identity(16)
        for v in (0, 1, 0xBEEF):
            assert apply(T, BitVector(16, v)).value == v

    def test_paper_single_entry(self):
        T = custom(32, [(8, 17)])
        u = BitVector.from_support(32, [8])
        assert apply(T, u).support() == (8, 17)

    def test_shape_error(self):
        with pytest.raises(ShapeError):
            apply(identity(8), BitVector.zero(9))

    @settings(max_examples=200)
    @given(st.integers(1, 2**16 - 1), st.integers(0, 2**40))
    def test_first_nonzero_preserved(self, value, seed):
        rng = random.Random(seed)
        T = random_upper_transform(16, rng)
        u = BitVector(16, value)
        v = apply(T, u)
        assert (v.value & -v.value) == (u.value & -u.value)


class TestEncode:
    def test_zero_message(self):
        spec = rm_construct(5, 16)
        assert encode(spec, identity(32), BitVector.zero(16)).value == 0

    def test_single_info_bit_identity(self):
        spec = rm_construct(5, 16)
        x = encode(spec, identity(32), BitVector(16, 1))
        H = kronecker_power(5)
        assert x == H.row(8)
        assert x.weight() == 8

    def test_single_info_bit_designed(self):
        spec = rm_construct(5, 16)
        T = custom(32, [(8, 17)])
        x = encode(spec, T, BitVector(16, 1))
        H = kronecker_power(5)
        assert x == H.row(8) ^ H.row(17)
        assert x.weight() == 8  # supports overlap exactly at column 1

    def test_linearity(self):
        spec = rm_construct(4, 8)
        T = pac(16, [1, 0, 1, 1])
        rng = random.Random(5)
        for _ in range(100):
            a, b = rng.randrange(256), rng.randrange(256)
            xa = encode(spec, T, BitVector(8, a))
            xb = encode(spec, T, BitVector(8, b))
            xab = encode(spec, T, BitVector(8, a ^ b))
            assert (xa ^ xb) == xab

    @pytest.mark.parametrize("builder", [
        lambda: custom(16, [(2, 7), (3, 16)]),
        lambda: pac(16, [1, 1, 0, 1]),
        lambda: crc(rm_construct(4, 8), 0b1011),
        lambda: pc(16, [(9, {4, 6}), (11, {7})]),
    ])
    def test_apply_injective(self, builder):
        T = builder()
        seen = {apply(T, BitVector(16, v)).value for v in range(1 << 16)}
        assert len(seen) == 1 << 16


class TestSerialization:
    def test_roundtrip(self):
        T = pac(16, [1, 0, 1, 1])
        T2 = PreTransform.from_json(T.to_json())
        assert T2.N == T.N and T2.entries == T.entries

    def test_byte_stable(self):
        T = custom(8, [(1, 3), (2, 5), (1, 8)])
        assert T.to_json() == PreTransform.from_json(T.to_json()).to_json()


class TestDminNeverDrops:
    """End-to-end distance preservation across random transforms."""

    @pytest.mark.parametrize("n", [3, 4, 5])
    def test_random_transforms(self, n):
        rng = random.Random(n * 31)
        N = 1 << n
        for _ in range(10):
            K = rng.randint(1, min(N, 12))
            spec = rm_construct(n, K)
            base = enumerate_spectrum(spec).d_min
            for _ in range(5):
                T = random_upper_transform(N, rng, density=0.3)
                assert enumerate_spectrum(spec, T).d_min >= base
