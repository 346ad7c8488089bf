"""One-shot RM(32,16) reproduction: baseline spectrum, both weight-2
pattern tables and the five single- and two-entry designs.

Used by the CLI `tables` command and the service /tables endpoint; the
`check` path compares every number against the known-good values.
"""

from __future__ import annotations

from dataclasses import dataclass

from .code import rm_construct
from .design import combination_support, count_pattern
from .pretransform import custom
from .spectrum import enumerate_spectrum, min_weight_codebook

EXPECTED_BASELINE = {"dmin": 8, "nmin": 620, "second_least": 12}
EXPECTED_W = 128
EXPECTED_DESIGNED_NMIN = 492


@dataclass(frozen=True)
class DesignRow:
    info_index: int
    entries: tuple[tuple[int, int], ...]
    nmin: int
    dmin: int


@dataclass(frozen=True)
class ReferenceTables:
    baseline: dict
    pattern_counts_single: tuple[tuple[int, int], ...]  # (info_index, w)
    designs_single: tuple[DesignRow, ...]
    pattern_counts_pair: tuple[tuple[int, int], ...]
    designs_pair: tuple[DesignRow, ...]

    def to_dict(self) -> dict:
        return {
            "baseline": self.baseline,
            "table1": [list(t) for t in self.pattern_counts_single],
            "table2": [
                {"info_index": d.info_index, "entries": [list(e) for e in d.entries],
                 "nmin": d.nmin, "dmin": d.dmin}
                for d in self.designs_single
            ],
            "table3": [list(t) for t in self.pattern_counts_pair],
            "table4": [
                {"info_index": d.info_index, "entries": [list(e) for e in d.entries],
                 "nmin": d.nmin, "dmin": d.dmin}
                for d in self.designs_pair
            ],
        }

    def mismatches(self) -> list[str]:
        """Deviations from the known-good values; empty when correct."""
        out = []
        for key, want in EXPECTED_BASELINE.items():
            got = self.baseline[key]
            if got != want:
                out.append(f"baseline {key}: got {got}, expected {want}")
        for label, counts in (
            ("table1", self.pattern_counts_single),
            ("table3", self.pattern_counts_pair),
        ):
            for idx, w in counts:
                if w != EXPECTED_W:
                    out.append(f"{label} w at index {idx}: got {w}, expected {EXPECTED_W}")
        for label, designs in (
            ("table2", self.designs_single),
            ("table4", self.designs_pair),
        ):
            for d in designs:
                if d.nmin != EXPECTED_DESIGNED_NMIN:
                    out.append(
                        f"{label} nmin at index {d.info_index}: got {d.nmin}, "
                        f"expected {EXPECTED_DESIGNED_NMIN}"
                    )
                if d.dmin != EXPECTED_BASELINE["dmin"]:
                    out.append(
                        f"{label} dmin at index {d.info_index}: got {d.dmin}, "
                        f"expected {EXPECTED_BASELINE['dmin']}"
                    )
        return out


def _design_rows(spec, candidates, columns):
    rows = []
    for i in candidates:
        T = custom(spec.N, [(i, c) for c in columns])
        s = enumerate_spectrum(spec, T)
        rows.append(
            DesignRow(
                info_index=i,
                entries=tuple((i, c) for c in columns),
                nmin=s.N_min,
                dmin=s.d_min,
            )
        )
    return tuple(rows)


def reference_tables() -> ReferenceTables:
    spec = rm_construct(5, 16)
    base = enumerate_spectrum(spec)
    codebook = min_weight_codebook(spec)
    half = spec.N // 2
    candidates = [i for i in spec.info_set if i <= half]

    single_support = combination_support(spec.n, {half + 1}).support()
    pair_support = combination_support(spec.n, {half + 1, half + 2}).support()
    counts_single = tuple(
        (i, count_pattern(codebook, i, single_support).w) for i in candidates
    )
    counts_pair = tuple(
        (i, count_pattern(codebook, i, pair_support).w) for i in candidates
    )

    return ReferenceTables(
        baseline={
            "N": spec.N,
            "K": spec.K,
            "dmin": base.d_min,
            "nmin": base.N_min,
            "second_least": base.second_least,
        },
        pattern_counts_single=counts_single,
        designs_single=_design_rows(spec, candidates, (half + 1,)),
        pattern_counts_pair=counts_pair,
        designs_pair=_design_rows(spec, candidates, (half + 1, half + 2)),
    )
