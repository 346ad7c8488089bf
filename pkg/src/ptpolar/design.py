"""Pre-transformation design: pick one information row and a frozen-row
combination so that the minimum-weight codeword count drops while the
minimum distance is provably preserved.

The weight-2 path counts (0,0) bit patterns on the combination support
over the minimum-weight codebook; the general search enumerates small
frozen-column subsets whose row combination has weight at most p.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations

from .bitlinalg import BitVector, kronecker_power
from .code import CodeSpec
from .errors import (
    ConsistencyError,
    DesignInfeasibleError,
    ParameterError,
    PreconditionError,
)
from .pretransform import PreTransform, custom, identity
from .spectrum import (
    DEFAULT_ENUM_CAP,
    MinWeightCodebook,
    enumerate_spectrum,
    min_weight_codebook,
)


@dataclass(frozen=True)
class PatternCount:
    info_index: int
    columns: tuple[int, ...]
    support: tuple[int, ...]
    w: int


@dataclass(frozen=True)
class DesignResult:
    chosen: PatternCount | None
    transform: PreTransform
    dmin_base: int
    nmin_base: int
    predicted_nmin: int
    verified_nmin: int
    verified_dmin: int
    wj_table: tuple[PatternCount, ...]

    @property
    def feasible(self) -> bool:
        return self.chosen is not None


def combination_support(n: int, columns) -> BitVector:
    """XOR of the selected generator rows, as a bit vector."""
    columns = sorted(set(columns))
    if not columns:
        raise ParameterError("column set must be nonempty")
    H = kronecker_power(n)
    x = 0
    for c in columns:
        x ^= H.row_value(c)
    return BitVector(H.N, x)


def count_pattern(
    codebook: MinWeightCodebook, info_index: int, support
) -> PatternCount:
    """Count minimum-weight codewords that the designed row would push
    out of the minimum set: message bit at `info_index` set and both
    support positions clear.

    The (1,1) pattern would lower the weight below d_min, which the
    triangularity argument forbids; finding one means the codebook or
    encoder is broken.
    """
    support = tuple(sorted(support))
    if len(support) != 2:
        raise ParameterError(
            f"pattern counting needs a weight-2 support, got {support}"
        )
    a, b = support
    u_mask = 1 << (info_index - 1)
    mask_a = 1 << (a - 1)
    mask_b = 1 << (b - 1)
    w = 0
    for entry in codebook.entries:
        if not entry.u & u_mask:
            continue
        has_a = bool(entry.codeword & mask_a)
        has_b = bool(entry.codeword & mask_b)
        if has_a and has_b:
            raise ConsistencyError(
                f"(1,1) pattern at support {support} with bit {info_index} set: "
                "weight would drop below the minimum"
            )
        if not has_a and not has_b:
            w += 1
    return PatternCount(info_index=info_index, columns=(), support=support, w=w)


def _check_gap(spec: CodeSpec, required_gap: int, cap: int):
    base = enumerate_spectrum(spec, None, cap=cap)
    second = base.second_least
    if second is None or second <= base.d_min + required_gap:
        raise PreconditionError(
            f"second-least weight {second} is not larger than "
            f"d_min {base.d_min} + {required_gap}",
            d_min=base.d_min,
            second_least=second,
        )
    return base


def theorem2_design(
    spec: CodeSpec,
    columns,
    *,
    cap: int = DEFAULT_ENUM_CAP,
) -> DesignResult:
    """Weight-2 combination design: for each qualifying information
    index count the improvable codewords, pick the best, emit T and
    verify the predicted count by re-enumeration."""
    columns = tuple(sorted(set(columns)))
    if not columns:
        raise ParameterError("column set must be nonempty")
    frozen = set(spec.frozen_set())
    bad = [c for c in columns if c not in frozen]
    if bad:
        raise ParameterError(f"columns {bad} are not frozen indices")

    base = _check_gap(spec, 2, cap)
    comb = combination_support(spec.n, columns)
    support = comb.support()
    if len(support) != 2:
        raise ParameterError(
            f"combination of columns {columns} has weight {len(support)}, "
            "need exactly 2"
        )

    candidates = [i for i in spec.info_set if i < min(columns)]
    if not candidates:
        raise DesignInfeasibleError(
            f"no information index below min column {min(columns)}"
        )

    codebook = min_weight_codebook(spec, None, cap=cap)
    table = tuple(
        PatternCount(
            info_index=i,
            columns=columns,
            support=support,
            w=count_pattern(codebook, i, support).w,
        )
        for i in candidates
    )
    chosen = max(table, key=lambda pc: (pc.w, -pc.info_index))

    T = custom(spec.N, [(chosen.info_index, c) for c in columns])
    predicted = base.N_min - chosen.w
    designed = enumerate_spectrum(spec, T, cap=cap)
    return DesignResult(
        chosen=chosen,
        transform=T,
        dmin_base=base.d_min,
        nmin_base=base.N_min,
        predicted_nmin=predicted,
        verified_nmin=designed.N_min,
        verified_dmin=designed.d_min,
        wj_table=table,
    )


def theorem3_search(
    spec: CodeSpec,
    p: int,
    *,
    max_combo_size: int = 3,
    cap: int = DEFAULT_ENUM_CAP,
    allowed_columns=None,
) -> DesignResult:
    """General search over frozen-column subsets (size <= max_combo_size)
    whose row combination has weight in (0, p].

    Requires second_least > d_min + p: XOR with a weight-q vector moves
    any codeword weight by at most q <= p, so no heavier codeword can
    fall into the minimum set and the predicted count is exact.

    For each information index the count of minimum-weight codewords
    that leave the minimum set is maximized; the global maximizer (ties:
    smaller info index, then lexicographically smaller column set)
    defines T.  An empty candidate pool yields an infeasible result,
    not an error.  `allowed_columns` restricts the frozen columns the
    search may use.
    """
    if p < 1:
        raise ParameterError(f"p={p} must be >= 1")
    if max_combo_size < 1:
        raise ParameterError(f"max_combo_size={max_combo_size} must be >= 1")

    base = _check_gap(spec, p, cap)
    d_min = base.d_min
    codebook = min_weight_codebook(spec, None, cap=cap)
    frozen = spec.frozen_set()
    if allowed_columns is not None:
        frozen = tuple(c for c in frozen if c in set(allowed_columns))
    H = kronecker_power(spec.n)

    best: PatternCount | None = None
    table: list[PatternCount] = []
    for info_index in spec.info_set:
        cols_avail = [c for c in frozen if c > info_index]
        u_mask = 1 << (info_index - 1)
        for size in range(1, max_combo_size + 1):
            for cols in combinations(cols_avail, size):
                comb = 0
                for c in cols:
                    comb ^= H.row_value(c)
                cw = comb.bit_count()
                if not 0 < cw <= p:
                    continue
                w = 0
                for entry in codebook.entries:
                    if not entry.u & u_mask:
                        continue
                    moved = (entry.codeword ^ comb).bit_count()
                    if moved < d_min:
                        raise ConsistencyError(
                            f"codeword weight dropped to {moved} < d_min {d_min} "
                            f"for columns {cols}"
                        )
                    if moved > d_min:
                        w += 1
                pc = PatternCount(
                    info_index=info_index,
                    columns=cols,
                    support=BitVector(spec.N, comb).support(),
                    w=w,
                )
                table.append(pc)
                if (
                    best is None
                    or pc.w > best.w
                    or (
                        pc.w == best.w
                        and (pc.info_index, pc.columns)
                        < (best.info_index, best.columns)
                    )
                ):
                    best = pc

    if best is None:
        T = identity(spec.N)
        return DesignResult(
            chosen=None,
            transform=T,
            dmin_base=d_min,
            nmin_base=base.N_min,
            predicted_nmin=base.N_min,
            verified_nmin=base.N_min,
            verified_dmin=d_min,
            wj_table=tuple(table),
        )

    T = custom(spec.N, [(best.info_index, c) for c in best.columns])
    predicted = base.N_min - best.w
    designed = enumerate_spectrum(spec, T, cap=cap)
    return DesignResult(
        chosen=best,
        transform=T,
        dmin_base=d_min,
        nmin_base=base.N_min,
        predicted_nmin=predicted,
        verified_nmin=designed.N_min,
        verified_dmin=designed.d_min,
        wj_table=tuple(table),
    )
