"""Buchberger engine for graded submodules of free modules, ideals included.

A module term is a (component, monomial) pair; orders are key functions on
such pairs, so one loop serves ideal bases, elimination orders (colon,
intersection, kernel extraction), and Schreyer-style syzygy levels.  All
inputs are assumed homogeneous; pair handling uses the Gebauer-Moeller
criteria with degree-ascending selection.
"""

from __future__ import annotations

import hashlib
import heapq
import random
from typing import Callable, Iterable, Sequence

from . import hilbert
from .linalg import as_matrix, rank, solve
from .ring import (
    Monomial,
    Poly,
    PolyRing,
    grevlex_key,
    mono_div,
    mono_divides,
    mono_lcm,
    mono_mul,
    monomials_of_degree,
)

TermKey = Callable[[int, Monomial], tuple]


def ideal_key(comp: int, mono: Monomial) -> tuple:
    return grevlex_key(mono)


def pot_key(priorities: Sequence[int]) -> TermKey:
    """Position-over-term order: components compared by priority first, so
    the GB elements supported away from high-priority components generate
    the corresponding elimination submodule."""
    pri = tuple(priorities)

    def key(comp: int, mono: Monomial) -> tuple:
        return (pri[comp], grevlex_key(mono), -comp)

    return key


def schreyer_key(prev_key: TermKey, prev_leads: Sequence[tuple[int, Monomial]]) -> TermKey:
    """Order induced by leading terms one level down: compare the images
    mono * lead(g_comp), break ties by smaller component."""
    leads = tuple(prev_leads)

    def key(comp: int, mono: Monomial) -> tuple:
        pc, pm = leads[comp]
        return (prev_key(pc, mono_mul(mono, pm)), -comp)

    return key


class Vec:
    """Element of a free module: sparse map component -> nonzero Poly."""

    __slots__ = ("ring", "comps")

    def __init__(self, ring: PolyRing, comps: dict[int, Poly]):
        self.ring = ring
        self.comps = comps

    @classmethod
    def from_poly(cls, f: Poly, comp: int = 0) -> "Vec":
        return cls(f.ring, {comp: f} if f else {})

    @classmethod
    def unit(cls, ring: PolyRing, comp: int) -> "Vec":
        return cls(ring, {comp: ring.one()})

    def __bool__(self) -> bool:
        return bool(self.comps)

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Vec) and self.ring == other.ring and self.comps == other.comps

    def __repr__(self) -> str:
        inner = ", ".join(f"e{c}*({p})" for c, p in sorted(self.comps.items()))
        return f"<{inner}>" if inner else "<0>"

    def lead(self, key: TermKey) -> tuple[int, Monomial, object]:
        """(component, monomial, coeff) of the largest term under key."""
        best = None
        best_key = None
        for c, p in self.comps.items():
            m = p.lm()
            k = key(c, m)
            if best_key is None or k > best_key:
                best_key, best = k, (c, m, p.lc())
        if best is None:
            raise ValueError("zero vector has no lead")
        return best

    def degree(self, shifts: Sequence[int]) -> int:
        if not self.comps:
            return -1
        c, p = next(iter(self.comps.items()))
        return p.degree + shifts[c]

    def is_homogeneous(self, shifts: Sequence[int]) -> bool:
        if not all(p.is_homogeneous() for p in self.comps.values()):
            return False
        degs = {p.degree + shifts[c] for c, p in self.comps.items()}
        return len(degs) <= 1

    def add(self, other: "Vec") -> "Vec":
        comps = dict(self.comps)
        for c, p in other.comps.items():
            q = comps.get(c)
            s = p if q is None else q + p
            if s:
                comps[c] = s
            elif c in comps:
                del comps[c]
        return Vec(self.ring, comps)

    def sub_mul(self, other: "Vec", mono: Monomial, coeff) -> "Vec":
        """self - coeff * mono * other."""
        neg = self.ring.cneg(coeff)
        comps = dict(self.comps)
        for c, p in other.comps.items():
            t = p.mul_term(mono, neg)
            q = comps.get(c)
            s = t if q is None else q + t
            if s:
                comps[c] = s
            elif c in comps:
                del comps[c]
        return Vec(self.ring, comps)

    def scale(self, coeff) -> "Vec":
        out = {c: p.scale(coeff) for c, p in self.comps.items()}
        return Vec(self.ring, {c: p for c, p in out.items() if p})

    def mul_term(self, mono: Monomial, coeff) -> "Vec":
        out = {}
        for c, p in self.comps.items():
            q = p.mul_term(mono, coeff)
            if q:
                out[c] = q
        return Vec(self.ring, out)

    def poly_mul(self, poly: Poly) -> "Vec":
        out = {}
        for c, p in self.comps.items():
            q = p * poly
            if q:
                out[c] = q
        return Vec(self.ring, out)

    def sub_poly_mul(self, other: "Vec", poly: Poly) -> "Vec":
        """self - poly * other."""
        comps = dict(self.comps)
        for c, p in other.comps.items():
            t = p * poly
            if not t:
                continue
            q = comps.get(c)
            s = -t if q is None else q - t
            if s:
                comps[c] = s
            elif c in comps:
                del comps[c]
        return Vec(self.ring, comps)

    def drop_term(self, comp: int, mono: Monomial) -> "Vec":
        comps = dict(self.comps)
        p = comps[comp]
        terms = dict(p.terms)
        del terms[mono]
        if terms:
            comps[comp] = Poly(self.ring, terms)
        else:
            del comps[comp]
        return Vec(self.ring, comps)


class _Basis:
    """Growing GB with a per-component divisor index and parallel cofactors."""

    __slots__ = ("key", "vecs", "leads", "by_comp", "cofs")

    def __init__(self, key: TermKey, track: bool):
        self.key = key
        self.vecs: list[Vec] = []
        self.leads: list[tuple[int, Monomial]] = []
        self.by_comp: dict[int, list[int]] = {}
        self.cofs: list[Vec] | None = [] if track else None

    def add(self, v: Vec, cof: Vec | None) -> int:
        c, m, _ = v.lead(self.key)
        idx = len(self.vecs)
        self.vecs.append(v)
        self.leads.append((c, m))
        self.by_comp.setdefault(c, []).append(idx)
        if self.cofs is not None:
            self.cofs.append(cof)
        return idx

    def find_divisor(self, comp: int, mono: Monomial, skip: int | None = None) -> int | None:
        for idx in self.by_comp.get(comp, ()):
            if idx != skip and mono_divides(self.leads[idx][1], mono):
                return idx
        return None

    def top_reduce(self, v: Vec, cof: Vec | None) -> tuple[Vec, Vec | None]:
        while v:
            c, m, coeff = v.lead(self.key)
            idx = self.find_divisor(c, m)
            if idx is None:
                break
            q = mono_div(m, self.leads[idx][1])
            v = v.sub_mul(self.vecs[idx], q, coeff)
            if cof is not None:
                cof = cof.sub_mul(self.cofs[idx], q, coeff)
        return v, cof

    def full_reduce(self, v: Vec, cof: Vec | None, skip: int | None = None) -> tuple[Vec, Vec | None]:
        """Normal form with every term reduced, optionally ignoring one
        basis element (used during interreduction)."""
        ring = v.ring
        kept: dict[int, dict] = {}
        work = v
        while work:
            c, m, coeff = work.lead(self.key)
            idx = self.find_divisor(c, m, skip=skip)
            if idx is not None:
                q = mono_div(m, self.leads[idx][1])
                work = work.sub_mul(self.vecs[idx], q, coeff)
                if cof is not None:
                    cof = cof.sub_mul(self.cofs[idx], q, coeff)
            else:
                kept.setdefault(c, {})[m] = coeff
                work = work.drop_term(c, m)
        out = Vec(ring, {c: Poly(ring, terms) for c, terms in kept.items()})
        return out, cof


class GroebnerResult:
    """Reduced monic GB; cofactor rows (when tracked) express each basis
    element over the input generators."""

    __slots__ = ("basis", "leads", "cofactors", "key")

    def __init__(self, basis: list[Vec], leads: list[tuple[int, Monomial]],
                 cofactors: list[Vec] | None, key: TermKey):
        self.basis = basis
        self.leads = leads
        self.cofactors = cofactors
        self.key = key

    def normal_form(self, v: Vec, track: bool = False) -> tuple[Vec, Vec | None]:
        """Remainder of v, plus (when tracked) u with v = sum u_k basis_k +
        remainder."""
        scratch = _Basis(self.key, track)
        for k, g in enumerate(self.basis):
            scratch.add(g, Vec.unit(v.ring, k) if track else None)
        rem, neg_cof = scratch.full_reduce(v, Vec(v.ring, {}) if track else None)
        if not track:
            return rem, None
        return rem, neg_cof.scale(v.ring.cnorm(-1))


def module_groebner(gens: Sequence[Vec], key: TermKey, shifts: Sequence[int] | None = None,
                    rank1: bool = False, track: bool = False,
                    prune: bool = True) -> GroebnerResult:
    """Reduced Groebner basis of the submodule generated by gens.

    rank1 enables the coprime-lead criterion (sound for ideals only);
    prune=False disables all pair elimination, as a slow reference mode.
    """
    nonzero = [(i, g) for i, g in enumerate(gens) if g]
    if not nonzero:
        return GroebnerResult([], [], [] if track else None, key)
    ring = nonzero[0][1].ring
    if shifts is None:
        maxc = max(max(v.comps) for _, v in nonzero)
        shifts = [0] * (maxc + 1)

    basis = _Basis(key, track)
    heap: list[tuple] = []
    alive: set[tuple[int, int]] = set()

    def pair_entry(i: int, j: int) -> tuple:
        ci, mi = basis.leads[i]
        _, mj = basis.leads[j]
        l = mono_lcm(mi, mj)
        return (sum(l) + shifts[ci], grevlex_key(l), ci, i, j)

    def update(t: int) -> None:
        ct, mt = basis.leads[t]
        cand = [i for i in range(t) if basis.leads[i][0] == ct]
        if prune:
            lcms = {i: mono_lcm(basis.leads[i][1], mt) for i in cand}
            survivors = [
                i for i in cand
                if not any(
                    lcms[j] != lcms[i] and mono_divides(lcms[j], lcms[i])
                    for j in cand
                )
            ]
            classes: dict[Monomial, list[int]] = {}
            for i in survivors:
                classes.setdefault(lcms[i], []).append(i)
            new_pairs = []
            for l, members in classes.items():
                if rank1 and any(l == mono_mul(basis.leads[i][1], mt) for i in members):
                    continue
                new_pairs.append(members[0])
            for (i, j) in list(alive):
                ci, mi = basis.leads[i]
                if ci != ct:
                    continue
                l = mono_lcm(mi, basis.leads[j][1])
                if (
                    mono_divides(mt, l)
                    and mono_lcm(mi, mt) != l
                    and mono_lcm(basis.leads[j][1], mt) != l
                ):
                    alive.discard((i, j))
        else:
            new_pairs = cand
        for i in new_pairs:
            alive.add((i, t))
            heapq.heappush(heap, pair_entry(i, t))

    def insert(v: Vec, cof: Vec | None) -> None:
        v, cof = basis.top_reduce(v, cof)
        if not v:
            return
        inv = ring.cinv(v.lead(key)[2])
        v = v.scale(inv)
        if cof is not None:
            cof = cof.scale(inv)
        t = basis.add(v, cof)
        update(t)

    def lead_key(item):
        idx, v = item
        c, m, _ = v.lead(key)
        return (v.degree(shifts), key(c, m), idx)

    for idx, g in sorted(nonzero, key=lead_key):
        insert(g, Vec.unit(ring, idx) if track else None)

    while heap:
        entry = heapq.heappop(heap)
        i, j = entry[3], entry[4]
        if (i, j) not in alive:
            continue
        alive.discard((i, j))
        ci, mi = basis.leads[i]
        _, mj = basis.leads[j]
        l = mono_lcm(mi, mj)
        s = basis.vecs[i].mul_term(mono_div(l, mi), 1).sub_mul(
            basis.vecs[j], mono_div(l, mj), 1
        )
        cof = None
        if track:
            cof = basis.cofs[i].mul_term(mono_div(l, mi), 1).sub_mul(
                basis.cofs[j], mono_div(l, mj), 1
            )
        insert(s, cof)

    # minimalize: drop any element whose lead is divisible by another kept lead
    order = sorted(range(len(basis.vecs)), key=lambda i: key(*basis.leads[i]))
    kept: list[int] = []
    for i in order:
        ci, mi = basis.leads[i]
        if not any(
            basis.leads[j][0] == ci and mono_divides(basis.leads[j][1], mi)
            for j in kept
        ):
            kept.append(i)

    final = _Basis(key, track)
    for i in kept:
        final.add(basis.vecs[i], basis.cofs[i] if track else None)
    # one tail-reduction pass over fixed leads yields the reduced GB
    for pos in range(len(final.vecs)):
        v, cof = final.full_reduce(final.vecs[pos],
                                   final.cofs[pos] if track else None, skip=pos)
        final.vecs[pos] = v
        final.leads[pos] = v.lead(key)[:2]
        if track:
            final.cofs[pos] = cof
    return GroebnerResult(list(final.vecs), list(final.leads),
                          list(final.cofs) if track else None, key)


def syzygy_module(gens: Sequence[Vec], key: TermKey,
                  shifts: Sequence[int] | None = None) -> list[Vec]:
    """Generators of the syzygy module of gens, as vectors with components
    indexing gens.

    Every same-component S-pair of the final GB is reduced to zero with
    cofactor tracking, so the output generates the whole syzygy module;
    redundant rows are expected, callers trim.
    """
    nonzero = [i for i, g in enumerate(gens) if g]
    if not nonzero:
        return []
    ring = gens[nonzero[0]].ring
    res = module_groebner([gens[i] for i in nonzero], key, shifts=shifts, track=True)
    k = len(res.basis)

    def remap(row: Vec) -> Vec:
        return Vec(ring, {nonzero[c]: p for c, p in row.comps.items()})

    syz: list[Vec] = []

    # tau rows: S-pairs of the GB reduce to zero; their cofactor residue is
    # a syzygy of the inputs
    scratch = _Basis(key, True)
    for pos in range(k):
        scratch.add(res.basis[pos], res.cofactors[pos])
    for i in range(k):
        for j in range(i + 1, k):
            ci, mi = res.leads[i]
            cj, mj = res.leads[j]
            if ci != cj:
                continue
            l = mono_lcm(mi, mj)
            s = res.basis[i].mul_term(mono_div(l, mi), 1).sub_mul(
                res.basis[j], mono_div(l, mj), 1
            )
            cof = res.cofactors[i].mul_term(mono_div(l, mi), 1).sub_mul(
                res.cofactors[j], mono_div(l, mj), 1
            )
            s, cof = scratch.top_reduce(s, cof)
            if s:
                raise AssertionError("S-pair of a GB failed to reduce to zero")
            if cof:
                syz.append(remap(cof))

    # rows of (identity - B A) catch relations hidden by redundant inputs
    for pos, i in enumerate(nonzero):
        rem, b_row = res.normal_form(gens[i], track=True)
        if rem:
            raise AssertionError("generator fails to reduce over its own GB")
        row = Vec.unit(ring, i)
        for gk, p in b_row.comps.items():
            arow = res.cofactors[gk]
            for c, q in arow.comps.items():
                prod = p * q
                if not prod:
                    continue
                tgt = nonzero[c]
                cur = row.comps.get(tgt)
                s = -prod if cur is None else cur - prod
                if s:
                    row.comps[tgt] = s
                elif tgt in row.comps:
                    del row.comps[tgt]
        if row:
            syz.append(row)
    return syz


class Ideal:
    """Homogeneous ideal with cached reduced GB and graded bookkeeping."""

    __slots__ = ("ring", "gens", "_gb", "_numerator", "_graded_cache")

    def __init__(self, ring: PolyRing, gens: Iterable[Poly]):
        self.ring = ring
        self.gens = [g for g in gens if g]
        for g in self.gens:
            if not g.is_homogeneous():
                raise ValueError(f"inhomogeneous generator: {g}")
        self._gb: list[Poly] | None = None
        self._numerator: dict[int, int] | None = None
        self._graded_cache: dict[int, int] = {}

    def __repr__(self) -> str:
        return f"Ideal({len(self.gens)} gens over {self.ring!r})"

    def groebner(self) -> list[Poly]:
        if self._gb is None:
            res = module_groebner(
                [Vec.from_poly(g) for g in self.gens], ideal_key, shifts=[0], rank1=True
            )
            gb = [v.comps[0] for v in res.basis]
            gb.sort(key=lambda f: grevlex_key(f.lm()))
            self._gb = gb
        return self._gb

    def lead_monomials(self) -> list[Monomial]:
        return [g.lm() for g in self.groebner()]

    def _gb_result(self) -> GroebnerResult:
        gb = self.groebner()
        return GroebnerResult([Vec.from_poly(g) for g in gb],
                              [(0, g.lm()) for g in gb], None, ideal_key)

    def normal_form(self, f: Poly) -> Poly:
        if not self.groebner():
            return f
        rem, _ = self._gb_result().normal_form(Vec.from_poly(f))
        return rem.comps.get(0, self.ring.zero())

    def contains(self, f: Poly) -> bool:
        return not self.normal_form(f)

    def contains_ideal(self, other: "Ideal") -> bool:
        return all(self.contains(g) for g in other.gens)

    def equals(self, other: "Ideal") -> bool:
        return self.groebner() == other.groebner()

    def is_zero(self) -> bool:
        return not self.gens

    def numerator(self) -> dict[int, int]:
        """Hilbert series numerator of R/I over (1-t)^nvars."""
        if self._numerator is None:
            self._numerator = hilbert.hilbert_numerator(self.lead_monomials(), self.ring.nvars)
        return self._numerator

    def graded_dim(self, d: int) -> int:
        """dim_k I_d."""
        if d < 0:
            return 0
        cached = self._graded_cache.get(d)
        if cached is None:
            quot = hilbert.hilbert_function(self.numerator(), self.ring.nvars, d)
            cached = hilbert.dim_ambient(self.ring.nvars, d) - quot
            self._graded_cache[d] = cached
        return cached

    def quotient_dim(self, d: int) -> int:
        """dim_k (R/I)_d."""
        return hilbert.dim_ambient(self.ring.nvars, d) - self.graded_dim(d)

    def hilbert_polynomial(self):
        """Hilbert polynomial of R/I, ascending Fraction coefficients."""
        return hilbert.hilbert_polynomial(self.numerator(), self.ring.nvars)

    def dimension(self) -> int:
        """Krull dimension of R/I."""
        return hilbert.polynomial_degree(self.hilbert_polynomial()) + 1

    def sum(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, self.gens + other.gens)

    def multiply(self, other: "Ideal") -> "Ideal":
        return Ideal(self.ring, [f * g for f in self.gens for g in other.gens])

    def substitute(self, images: Sequence[Poly]) -> "Ideal":
        return Ideal(self.ring, [g.substitute(images) for g in self.gens])

    def colon_poly(self, f: Poly) -> "Ideal":
        """I : (f) by eliminating the leading component of a rank-2 module."""
        if not f:
            raise ValueError("colon by zero")
        ring = self.ring
        gens = [Vec(ring, {0: g}) for g in self.gens]
        gens.append(Vec(ring, {0: f, 1: ring.one()}))
        res = module_groebner(gens, pot_key([1, 0]), shifts=[0, f.degree])
        return Ideal(ring, [v.comps[1] for v in res.basis if 0 not in v.comps])

    def intersect(self, other: "Ideal") -> "Ideal":
        ring = self.ring
        gens = [Vec(ring, {0: g, 1: g}) for g in self.gens]
        gens += [Vec(ring, {1: h}) for h in other.gens]
        res = module_groebner(gens, pot_key([0, 1]), shifts=[0, 0])
        return Ideal(ring, [v.comps[0] for v in res.basis if 1 not in v.comps])

    def quotient(self, other: "Ideal") -> "Ideal":
        """I : J, as the intersection of the generator-wise colons."""
        if not other.gens:
            raise ValueError("colon by the zero ideal")
        acc: Ideal | None = None
        for f in other.gens:
            piece = self.colon_poly(f)
            acc = piece if acc is None else acc.intersect(piece)
        return acc

    def minimal_generators(self) -> list[Poly]:
        return minimal_generators(self.ring, self.gens)

    def saturate(self, seed: int = 0, tries: int = 10) -> "Ideal":
        """Saturation with respect to the irrelevant maximal ideal.

        In sufficiently generic coordinates, stripping powers of the last
        variable from a grevlex GB saturates with respect to that variable,
        and that already equals the full saturation; equality of Hilbert
        polynomials certifies the outcome, otherwise the coordinates are
        reseeded.
        """
        if not self.gens:
            return self
        ring = self.ring
        n = ring.nvars
        for attempt in range(tries):
            if attempt == 0:
                bwd = None
                moved = self
            else:
                fwd, bwd = random_coordinate_change(ring, seed=(seed, attempt))
                moved = self.substitute(fwd)
            stripped = []
            for g in moved.groebner():
                low = min(m[n - 1] for m in g.terms)
                if low:
                    div = tuple(0 if i < n - 1 else low for i in range(n))
                    stripped.append(Poly(ring, {mono_div(m, div): c for m, c in g.terms.items()}))
                else:
                    stripped.append(g)
            cand = Ideal(ring, stripped)
            if hilbert.hilbert_polynomial(cand.numerator(), n) == moved.hilbert_polynomial():
                return cand if bwd is None else cand.substitute(bwd)
        raise RuntimeError("saturation failed to certify after reseeding")

    def is_saturated(self) -> bool:
        sat = self.saturate()
        return all(self.contains(g) for g in sat.groebner())


def minimal_vec_generators(ring: PolyRing, rows: Sequence[Vec],
                           shifts: Sequence[int]) -> list[Vec]:
    """Trim homogeneous module generators to a minimal generating set.

    Degree by degree, a candidate is redundant exactly when it lies in the
    span of the monomial multiples of everything kept so far; one rref per
    degree decides all candidates of that degree at once."""
    from .linalg import independent_columns

    nonzero = [v for v in rows if v]
    if not nonzero:
        return []
    p = ring.char

    def lead_sort(v: Vec) -> tuple:
        c, p_ = min(v.comps.items())
        return (v.degree(shifts), c, grevlex_key(p_.lm()))

    nonzero.sort(key=lead_sort)
    kept: list[Vec] = []
    for d in sorted({v.degree(shifts) for v in nonzero}):
        cands = [v for v in nonzero if v.degree(shifts) == d]
        basis_index: dict[tuple[int, Monomial], int] = {}
        for c, sh in enumerate(shifts):
            for m in monomials_of_degree(ring.nvars, d - sh):
                basis_index[(c, m)] = len(basis_index)
        nrows = len(basis_index)

        def column(v: Vec, mult: Monomial) -> list:
            col = [0] * nrows
            for c, poly in v.comps.items():
                for m, cf in poly.terms.items():
                    col[basis_index[(c, mono_mul(m, mult))]] = cf
            return col

        cols: list[list] = []
        for v in kept:
            for m in monomials_of_degree(ring.nvars, d - v.degree(shifts)):
                cols.append(column(v, m))
        base = len(cols)
        for v in cands:
            cols.append(column(v, ring.zero_mono))
        mat = as_matrix([[col[i] for col in cols] for i in range(nrows)], p,
                        shape=(nrows, len(cols)))
        pivots = set(independent_columns(mat, p))
        kept.extend(v for k, v in enumerate(cands) if base + k in pivots)
    return kept


def minimal_generators(ring: PolyRing, gens: Sequence[Poly]) -> list[Poly]:
    """Trim homogeneous ideal generators to a minimal generating set."""
    rows = minimal_vec_generators(ring, [Vec.from_poly(g) for g in gens], [0])
    return [v.comps[0] for v in rows]


def random_coordinate_change(ring: PolyRing, seed) -> tuple[list[Poly], list[Poly]]:
    """Deterministic invertible linear substitution and its inverse, both as
    images of the variables."""
    digest = hashlib.blake2b(f"change:{seed}:{ring.nvars}:{ring.char}".encode(),
                             digest_size=8).digest()
    rng = random.Random(int.from_bytes(digest, "big"))
    n = ring.nvars
    p = ring.char
    bound = p if p else 101
    while True:
        mat = [[rng.randrange(bound) for _ in range(n)] for _ in range(n)]
        a = as_matrix(mat, p)
        if rank(a, p) < n:
            continue
        inv = solve(a, as_matrix([[1 if i == j else 0 for j in range(n)] for i in range(n)], p), p)
        fwd = ring.linear_change(mat)
        bwd = ring.linear_change([[int(inv[i, j]) if p else inv[i, j] for j in range(n)] for i in range(n)])
        return fwd, bwd
