"""Minimal graded free resolutions, Betti tables, and unit-cancellation
minimization of chain complexes of free modules.

Levels are computed as syzygies of trimmed generators; trimming at every
level forces all differential entries into the maximal ideal, so the
result is the minimal resolution and the twists are the Betti numbers.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .groebner import (
    Ideal,
    TermKey,
    Vec,
    minimal_vec_generators,
    schreyer_key,
    syzygy_module,
)
from .hilbert import dim_ambient
from .ring import Monomial, Poly, PolyRing, grevlex_key


def top_key(shifts: Sequence[int]) -> TermKey:
    """Degree-compatible term-over-position order on a twisted free module."""
    sh = tuple(shifts)

    def key(comp: int, mono: Monomial) -> tuple:
        return (sum(mono) + sh[comp], grevlex_key(mono), -comp)

    return key


def apply_columns(cols: Sequence[Vec], ring: PolyRing, v: Vec) -> Vec:
    """Image of v under the map whose columns are cols."""
    out = Vec(ring, {})
    for c, p in v.comps.items():
        out = out.add(cols[c].poly_mul(p))
    return out


class GradedComplex:
    """Chain of free modules F_0 <- F_1 <- ... given by twist lists and
    differentials; diffs[k] maps level k+1 into level k, with columns as
    vectors over the level-k components."""

    __slots__ = ("ring", "twists", "diffs")

    def __init__(self, ring: PolyRing, twists: list[list[int]], diffs: list[list[Vec]]):
        if len(diffs) != len(twists) - 1:
            raise ValueError("need one differential between consecutive levels")
        self.ring = ring
        self.twists = twists
        self.diffs = diffs

    def __repr__(self) -> str:
        shape = " <- ".join(str(len(t)) for t in self.twists)
        return f"GradedComplex({shape})"

    @property
    def length(self) -> int:
        return len(self.twists) - 1

    def check_homogeneous(self) -> bool:
        for k, cols in enumerate(self.diffs):
            src, tgt = self.twists[k + 1], self.twists[k]
            if len(cols) != len(src):
                return False
            for j, col in enumerate(cols):
                for c, p in col.comps.items():
                    if not p.is_homogeneous() or p.degree != src[j] - tgt[c]:
                        return False
        return True

    def check_composites(self) -> bool:
        for k in range(len(self.diffs) - 1):
            for col in self.diffs[k + 1]:
                if apply_columns(self.diffs[k], self.ring, col):
                    return False
        return True

    def is_minimal(self) -> bool:
        for k, cols in enumerate(self.diffs):
            src, tgt = self.twists[k + 1], self.twists[k]
            for j, col in enumerate(cols):
                for c in col.comps:
                    if src[j] == tgt[c]:
                        return False
        return True

    def euler_dim(self, v: int) -> int:
        """Alternating sum of graded dimensions over levels >= 1; for the
        resolution of a submodule this equals the submodule's dimension in
        degree v."""
        total = 0
        for j in range(1, len(self.twists)):
            s = sum(dim_ambient(self.ring.nvars, v - t) for t in self.twists[j])
            total += s if j % 2 else -s
        return total

    def betti(self) -> "BettiTable":
        return BettiTable.from_twists(self.twists[1:])


@dataclass(frozen=True)
class BettiTable:
    """Multiplicities (level j, twist k) -> count, level 1 = generators."""

    entries: tuple[tuple[tuple[int, int], int], ...]

    @classmethod
    def from_twists(cls, levels: Sequence[Sequence[int]]) -> "BettiTable":
        acc: dict[tuple[int, int], int] = {}
        for j, twists in enumerate(levels, start=1):
            for t in twists:
                acc[(j, t)] = acc.get((j, t), 0) + 1
        return cls(tuple(sorted(acc.items())))

    @classmethod
    def from_rows(cls, rows: Iterable[Sequence[int]]) -> "BettiTable":
        acc: dict[tuple[int, int], int] = {}
        for j, k, mult in rows:
            if mult:
                acc[(j, k)] = acc.get((j, k), 0) + mult
        return cls(tuple(sorted(acc.items())))

    def as_dict(self) -> dict[tuple[int, int], int]:
        return dict(self.entries)

    def json_rows(self) -> list[list[int]]:
        return [[j, k, m] for (j, k), m in self.entries]

    def max_level(self) -> int:
        return max((j for (j, _), _ in self.entries), default=0)

    def twists_at(self, j: int) -> list[int]:
        out: list[int] = []
        for (jj, k), m in self.entries:
            if jj == j:
                out.extend([k] * m)
        return out

    def total(self, j: int) -> int:
        return sum(m for (jj, _), m in self.entries if jj == j)

    def regularity(self) -> int:
        """Castelnuovo-Mumford regularity of the resolved submodule."""
        return max(k - (j - 1) for (j, k), _ in self.entries)

    def twist_power_sum(self, power: int) -> int:
        """Alternating sum over levels of the twist powers, sign +

        for odd levels: sum_j (-1)^(j-1) sum_i k_{j,i}^power."""
        total = 0
        for (j, k), m in self.entries:
            term = m * k**power
            total += term if j % 2 else -term
        return total

    def arrow_text(self, name: str = "I") -> str:
        parts = []
        for j in range(self.max_level(), 0, -1):
            counts: dict[int, int] = {}
            for t in self.twists_at(j):
                counts[t] = counts.get(t, 0) + 1
            frag = " (+) ".join(
                f"R({-t})" + (f"^{m}" if m > 1 else "")
                for t, m in sorted(counts.items())
            )
            parts.append(frag)
        return "0 -> " + " -> ".join(parts) + f" -> {name} -> 0"

    def text(self) -> str:
        """Grid with one row per twist and one column per level."""
        if not self.entries:
            return "(zero)"
        levels = range(1, self.max_level() + 1)
        twists = sorted({k for (_, k), _ in self.entries})
        d = self.as_dict()
        width = max(6, max(len(str(m)) for m in d.values()) + 2)
        head = "twist".rjust(6) + "".join(f"j={j}".rjust(width) for j in levels)
        lines = [head]
        for k in twists:
            row = str(k).rjust(6)
            for j in levels:
                m = d.get((j, k), 0)
                row += (str(m) if m else ".").rjust(width)
            lines.append(row)
        return "\n".join(lines)


def free_resolution(ring: PolyRing, gens: Sequence[Vec], ambient: Sequence[int],
                    max_levels: int | None = None) -> GradedComplex:
    """Minimal free resolution of the submodule generated by gens inside
    the free module with the given twists."""
    limit = max_levels if max_levels is not None else ring.nvars + 1
    twists: list[list[int]] = [list(ambient)]
    diffs: list[list[Vec]] = []
    cur = minimal_vec_generators(ring, list(gens), list(ambient))
    cur_shifts = list(ambient)
    cur_key = top_key(cur_shifts)
    while cur:
        diffs.append(cur)
        twists.append([v.degree(cur_shifts) for v in cur])
        if len(diffs) > limit:
            raise RuntimeError("resolution exceeded the expected length")
        rows = syzygy_module(cur, cur_key, shifts=cur_shifts)
        next_shifts = twists[-1]
        rows = minimal_vec_generators(ring, rows, next_shifts)
        leads = [v.lead(cur_key)[:2] for v in cur]
        cur_key = schreyer_key(cur_key, leads)
        cur_shifts = next_shifts
        cur = rows
    return GradedComplex(ring, twists, diffs)


def ideal_resolution(ideal: Ideal) -> GradedComplex:
    """Minimal free resolution of I as a submodule of R."""
    return free_resolution(ideal.ring, [Vec.from_poly(g) for g in ideal.gens], [0])


def minimize_complex(gc: GradedComplex) -> GradedComplex:
    """Cancel unit entries until every differential lands in the maximal
    ideal; the result is homotopy-equivalent with the same homology."""
    ring = gc.ring
    twists = [list(t) for t in gc.twists]
    diffs = [list(cols) for cols in gc.diffs]

    def find_unit() -> tuple[int, int, int] | None:
        for k, cols in enumerate(diffs):
            for j, col in enumerate(cols):
                for c, p in col.comps.items():
                    if twists[k + 1][j] == twists[k][c] and len(p) == 1 and p.degree == 0:
                        return (k, j, c)
        return None

    while True:
        found = find_unit()
        if found is None:
            break
        k, j, i = found
        cols = diffs[k]
        u = cols[j].comps[i].lc()
        inv = ring.cinv(u)
        new_cols = []
        for s, col in enumerate(cols):
            if s == j:
                continue
            a_is = col.comps.get(i)
            if a_is is not None:
                col = col.sub_poly_mul(cols[j], a_is.scale(inv))
            new_cols.append(col)
        # reindex away component i of level k
        remap = {c: (c if c < i else c - 1) for c in range(len(twists[k])) if c != i}
        diffs[k] = [
            Vec(ring, {remap[c]: p for c, p in col.comps.items()})
            for col in new_cols
        ]
        del twists[k + 1][j]
        del twists[k][i]
        if k + 1 < len(diffs):
            remap_up = {c: (c if c < j else c - 1) for c in range(len(twists[k + 1]) + 1) if c != j}
            diffs[k + 1] = [
                Vec(ring, {remap_up[c]: p for c, p in col.comps.items() if c != j})
                for col in diffs[k + 1]
            ]
        if k > 0:
            diffs[k - 1] = [col for s, col in enumerate(diffs[k - 1]) if s != i]
    # drop empty tail levels
    while len(twists) > 1 and not twists[-1]:
        twists.pop()
        diffs.pop()
    return GradedComplex(ring, twists, diffs)
