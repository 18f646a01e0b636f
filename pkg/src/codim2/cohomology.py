"""Graded Ext groups, sheaf cohomology tables, and finite-length modules.

For a saturated ideal I of an n-dimensional subscheme X of P^{n+2} the
sheaf cohomology of the ideal sheaf is read off from graded local duality:
with N = n + 3 variables,

    H^i_m(I)_v  ~  Ext^{N-i}_R(I, R(-N))^dual in degree -v,

and H^0_m(I) = H^1_m(I) = 0 for saturated I, so h^0 of the twisted ideal
sheaf at v is dim I_v while for i >= 1 it equals
dim Ext^{N-1-i}_R(I, R(-N)) in degree -v.  Each Ext group is computed
degree by degree as cohomology of the Hom complex of a minimal free
resolution, entirely by exact linear algebra over the coefficient field.

The intermediate cohomology rows (1 <= i <= n) come from finite-length
modules; ext_module materialises them with bases and commuting variable
actions so they can be dualised, resolved, and mapped between.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Mapping, Protocol, Sequence

import numpy as np

from .groebner import Ideal, Vec, minimal_vec_generators, syzygy_module
from .linalg import (
    LinearSolver,
    eye_matrix,
    matmul,
    nullspace,
    quotient_basis,
    quotient_coords,
    rank,
    zeros_matrix,
)
from .resolution import GradedComplex, free_resolution, ideal_resolution, top_key
from .ring import (
    Monomial,
    Poly,
    PolyRing,
    dim_graded_piece,
    mono_mul,
    monomials_of_degree,
)


@lru_cache(maxsize=None)
def _mono_index(nvars: int, d: int) -> dict[Monomial, int]:
    return {m: i for i, m in enumerate(monomials_of_degree(nvars, d))}


def multiplication_matrix(ring: PolyRing, f: Poly, d: int) -> np.ndarray:
    """Matrix of multiplication by the form f from R_d to R_{d + deg f},
    over the grevlex-descending monomial bases."""
    if not f.terms:
        raise ValueError("zero form has no well-defined target degree")
    if not f.is_homogeneous():
        raise ValueError("multiplication matrices need homogeneous forms")
    src = monomials_of_degree(ring.nvars, d)
    idx = _mono_index(ring.nvars, d + f.degree)
    out = zeros_matrix(len(idx), len(src), ring.char)
    for j, m in enumerate(src):
        for mono, c in f.terms.items():
            i = idx[mono_mul(mono, m)]
            out[i, j] = ring.cnorm(out[i, j] + c)
    return out


class ModuleView(Protocol):
    """Graded pieces of a module together with the action of forms."""

    ring: PolyRing

    def piece_dim(self, v: int) -> int: ...

    def action(self, f: Poly, v: int) -> np.ndarray: ...


class FreeModuleView:
    """Pieces of a twisted free module; twists list the generator degrees,
    so twists=[N] is R(-N)."""

    def __init__(self, ring: PolyRing, twists: Sequence[int]):
        self.ring = ring
        self.twists = list(twists)

    def piece_dim(self, v: int) -> int:
        return sum(dim_graded_piece(self.ring.nvars, v - a) for a in self.twists)

    def action(self, f: Poly, v: int) -> np.ndarray:
        rows = self.piece_dim(v + f.degree)
        cols = self.piece_dim(v)
        out = zeros_matrix(rows, cols, self.ring.char)
        r = c = 0
        for a in self.twists:
            block = multiplication_matrix(self.ring, f, v - a)
            out[r:r + block.shape[0], c:c + block.shape[1]] = block
            r += block.shape[0]
            c += block.shape[1]
        return out


class IdealView:
    """Pieces of a homogeneous ideal, with explicit polynomial bases.

    A degree-d basis is extracted from the monomial multiples of the
    generators by one column reduction; the accompanying solver converts
    any element of I_d into coordinates."""

    def __init__(self, ideal: Ideal):
        self.ideal = ideal
        self.ring = ideal.ring
        self._pieces: dict[int, tuple[list[Poly], LinearSolver | None]] = {}

    def _coords(self, f: Poly, d: int) -> np.ndarray:
        idx = _mono_index(self.ring.nvars, d)
        v = zeros_matrix(len(idx), 1, self.ring.char)
        for mono, c in f.terms.items():
            v[idx[mono], 0] = c
        return v[:, 0]

    def piece(self, d: int) -> tuple[list[Poly], LinearSolver | None]:
        if d not in self._pieces:
            gens = [g for g in self.ideal.gens if g.terms]
            cands: list[Poly] = []
            for g in gens:
                for mono in monomials_of_degree(self.ring.nvars, d - g.degree):
                    cands.append(g.mul_term(mono, self.ring.cnorm(1)))
            if not cands:
                self._pieces[d] = ([], None)
            else:
                mat = np.stack([self._coords(f, d) for f in cands], axis=1)
                from .linalg import independent_columns

                keep = independent_columns(mat, self.ring.char)
                basis = [cands[j] for j in keep]
                solver = LinearSolver(mat[:, keep], self.ring.char) if keep else None
                self._pieces[d] = (basis, solver)
        return self._pieces[d]

    def piece_dim(self, d: int) -> int:
        return len(self.piece(d)[0])

    def basis(self, d: int) -> list[Poly]:
        return self.piece(d)[0]

    def coordinates(self, f: Poly, d: int) -> np.ndarray:
        """Coordinates of f over the degree-d basis; f must lie in I_d."""
        basis, solver = self.piece(d)
        if solver is None:
            if f.terms:
                raise ValueError("element outside the zero piece")
            return zeros_matrix(0, 1, self.ring.char)[:, 0]
        x = solver.solve(self._coords(f, d))
        if x is None:
            raise ValueError("element does not lie in the ideal piece")
        return x

    def action(self, f: Poly, d: int) -> np.ndarray:
        basis, _ = self.piece(d)
        d2 = d + f.degree
        rows = self.piece_dim(d2)
        out = zeros_matrix(rows, len(basis), self.ring.char)
        for j, b in enumerate(basis):
            out[:, j] = self.coordinates(f * b, d2)
        return out


class QuotientView:
    """Pieces of R/I over the standard-monomial bases of a fixed
    Groebner basis; actions go through normal forms."""

    def __init__(self, ideal: Ideal):
        self.ideal = ideal
        self.ring = ideal.ring
        self._bases: dict[int, tuple[tuple[Monomial, ...], dict[Monomial, int]]] = {}

    def _standard(self, d: int) -> tuple[tuple[Monomial, ...], dict[Monomial, int]]:
        if d not in self._bases:
            from .ring import mono_divides

            leads = self.ideal.lead_monomials()
            monos = tuple(
                m for m in monomials_of_degree(self.ring.nvars, d)
                if not any(mono_divides(l, m) for l in leads)
            )
            self._bases[d] = (monos, {m: i for i, m in enumerate(monos)})
        return self._bases[d]

    def piece_dim(self, d: int) -> int:
        return len(self._standard(d)[0])

    def action(self, f: Poly, d: int) -> np.ndarray:
        monos, _ = self._standard(d)
        d2 = d + f.degree
        _, idx2 = self._standard(d2)
        out = zeros_matrix(len(idx2), len(monos), self.ring.char)
        for j, m in enumerate(monos):
            nf = self.ideal.normal_form(f.mul_term(m, self.ring.cnorm(1)))
            for mono, c in nf.terms.items():
                out[idx2[mono], j] = c
        return out


class FiniteModuleView:
    """View adapter for an explicit finite-length graded module."""

    def __init__(self, module: "FiniteLengthGradedModule"):
        self.module = module
        self.ring = module.ring

    def piece_dim(self, v: int) -> int:
        return self.module.piece_dim(v)

    def action(self, f: Poly, v: int) -> np.ndarray:
        return self.module.act_poly(f, v)


class FiniteLengthGradedModule:
    """A finite-length graded module given by its pieces and the matrices
    of the variable actions M_v -> M_{v+1}.

    dims maps degrees to piece dimensions; actions[t][v] is the matrix of
    x_t from the degree-v piece to the degree-(v+1) piece.  Missing action
    entries default to zero matrices of the right shape."""

    __slots__ = ("ring", "dims", "actions", "_resolution")

    def __init__(self, ring: PolyRing, dims: Mapping[int, int],
                 actions: Sequence[Mapping[int, np.ndarray]] | None = None):
        self.ring = ring
        clean = {v: int(d) for v, d in dims.items() if d}
        self.dims: dict[int, int] = dict(sorted(clean.items()))
        acts: list[dict[int, np.ndarray]] = []
        for t in range(ring.nvars):
            given = actions[t] if actions is not None else {}
            kept: dict[int, np.ndarray] = {}
            for v, mat in given.items():
                shape = (self.piece_dim(v + 1), self.piece_dim(v))
                if mat.shape != shape:
                    raise ValueError(
                        f"action of x{t} at degree {v} has shape {mat.shape}, expected {shape}")
                if shape[0] and shape[1]:
                    kept[v] = mat
            acts.append(kept)
        self.actions = acts
        self._resolution: GradedComplex | None = None

    @classmethod
    def zero(cls, ring: PolyRing) -> "FiniteLengthGradedModule":
        return cls(ring, {}, None)

    @classmethod
    def simple(cls, ring: PolyRing, degree: int = 0) -> "FiniteLengthGradedModule":
        """One-dimensional module concentrated in the given degree, all
        variables acting by zero."""
        return cls(ring, {degree: 1}, None)

    @property
    def support(self) -> list[int]:
        return list(self.dims)

    @property
    def is_zero(self) -> bool:
        return not self.dims

    @property
    def total_dim(self) -> int:
        return sum(self.dims.values())

    def window(self) -> tuple[int, int] | None:
        if not self.dims:
            return None
        keys = list(self.dims)
        return keys[0], keys[-1]

    def piece_dim(self, v: int) -> int:
        return self.dims.get(v, 0)

    def action_matrix(self, t: int, v: int) -> np.ndarray:
        mat = self.actions[t].get(v)
        if mat is None:
            return zeros_matrix(self.piece_dim(v + 1), self.piece_dim(v), self.ring.char)
        return mat

    def act_monomial(self, mono: Monomial, v: int) -> np.ndarray:
        out = eye_matrix(self.piece_dim(v), self.ring.char)
        cur = v
        for t, e in enumerate(mono):
            for _ in range(e):
                out = matmul(self.action_matrix(t, cur), out, self.ring.char)
                cur += 1
        return out

    def act_poly(self, f: Poly, v: int) -> np.ndarray:
        if not f.terms:
            raise ValueError("zero form has no well-defined target degree")
        if not f.is_homogeneous():
            raise ValueError("module actions need homogeneous forms")
        out = zeros_matrix(self.piece_dim(v + f.degree), self.piece_dim(v), self.ring.char)
        for mono, c in f.terms.items():
            step = self.act_monomial(mono, v)
            if self.ring.char:
                out = (out + c * step) % self.ring.char
            else:
                out = out + c * step
        return out

    def check_actions(self) -> bool:
        """All pairs of variable actions commute on every piece."""
        p = self.ring.char
        for v in self.dims:
            for t in range(self.ring.nvars):
                for u in range(t + 1, self.ring.nvars):
                    a = matmul(self.action_matrix(u, v + 1), self.action_matrix(t, v), p)
                    b = matmul(self.action_matrix(t, v + 1), self.action_matrix(u, v), p)
                    if a.shape != b.shape or not np.array_equal(a, b):
                        return False
        return True

    def dual(self) -> "FiniteLengthGradedModule":
        """Graded dual: piece at v is the dual of the piece at -v, and x_t
        acts by the transpose of its action into degree -v."""
        dims = {-v: d for v, d in self.dims.items()}
        actions: list[dict[int, np.ndarray]] = []
        for t in range(self.ring.nvars):
            acts: dict[int, np.ndarray] = {}
            for w in dims:
                mat = self.actions[t].get(-w - 1)
                if mat is not None:
                    acts[w] = mat.T.copy()
            actions.append(acts)
        return FiniteLengthGradedModule(self.ring, dims, actions)

    def shift(self, t: int) -> "FiniteLengthGradedModule":
        """Degree shift M(t), whose piece at v is the piece of M at v + t."""
        dims = {v - t: d for v, d in self.dims.items()}
        actions = [
            {v - t: mat for v, mat in self.actions[s].items()}
            for s in range(self.ring.nvars)
        ]
        return FiniteLengthGradedModule(self.ring, dims, actions)

    def truncate(self, lo: int | None = None, hi: int | None = None) -> "FiniteLengthGradedModule":
        """Keep only the pieces with lo <= v <= hi (either bound optional)."""
        keep = {v: d for v, d in self.dims.items()
                if (lo is None or v >= lo) and (hi is None or v <= hi)}
        actions = [
            {v: mat for v, mat in self.actions[t].items()
             if v in keep and (v + 1) in keep}
            for t in range(self.ring.nvars)
        ]
        return FiniteLengthGradedModule(self.ring, keep, actions)

    def min_generators(self) -> list[tuple[int, np.ndarray]]:
        """Degrees and piece vectors of a minimal generating set: in each
        degree, representatives of the cokernel of the variable actions
        out of the previous piece."""
        gens: list[tuple[int, np.ndarray]] = []
        p = self.ring.char
        for v, d in self.dims.items():
            blocks = [self.action_matrix(t, v - 1) for t in range(self.ring.nvars)]
            sub = np.concatenate(blocks, axis=1) if blocks else zeros_matrix(d, 0, p)
            reps, _ = quotient_basis(eye_matrix(d, p), sub, p)
            for r in reps:
                e = zeros_matrix(d, 1, p)[:, 0]
                e[r] = 1 if p else e[r] + 1
                gens.append((v, e))
        return gens

    def free_resolution(self) -> GradedComplex:
        """Minimal free resolution of the module; level 0 is the cover on
        the minimal generators, computed once and cached."""
        if self._resolution is None:
            self._resolution = self._resolve()
        return self._resolution

    def _cover_matrix(self, gens: list[tuple[int, np.ndarray]], w: int) -> np.ndarray:
        p = self.ring.char
        cols: list[np.ndarray] = []
        for vg, vec in gens:
            for mono in monomials_of_degree(self.ring.nvars, w - vg):
                cols.append(matmul(self.act_monomial(mono, vg),
                                   vec.reshape(-1, 1), p)[:, 0])
        if not cols:
            return zeros_matrix(self.piece_dim(w), 0, p)
        return np.stack(cols, axis=1)

    def _resolve(self) -> GradedComplex:
        p = self.ring.char
        gens = self.min_generators()
        twists = [vg for vg, _ in gens]
        if not gens:
            return GradedComplex(self.ring, [[]], [])
        hi = max(self.dims)
        relations: list[Vec] = []
        for w in range(min(twists), hi + 2):
            ker = nullspace(self._cover_matrix(gens, w), p)
            for k in range(ker.shape[1]):
                comps: dict[int, Poly] = {}
                col = 0
                for g, (vg, _) in enumerate(gens):
                    terms: dict[Monomial, object] = {}
                    for mono in monomials_of_degree(self.ring.nvars, w - vg):
                        c = ker[col, k]
                        col += 1
                        if c:
                            terms[mono] = c
                    if terms:
                        comps[g] = self.ring.from_terms(terms)
                relations.append(Vec(self.ring, comps))
        return free_resolution(self.ring, relations, twists)


def multiplication_map(module: FiniteLengthGradedModule, form: Poly) -> dict[int, np.ndarray]:
    """Matrices of multiplication by a form on every supported piece."""
    return {v: module.act_poly(form, v) for v in module.support}


class ExtCalculator:
    """Degreewise cohomology of Hom(F_., N) for a complex of free modules.

    twists[k] lists the generator degrees of F_k and diffs[k] holds the
    columns of F_{k+1} -> F_k, exactly as produced by free_resolution
    (after stripping the ambient level when resolving a submodule).
    Differential ranks are cached, so adjacent Ext computations share
    their linear algebra."""

    def __init__(self, ring: PolyRing, twists: Sequence[Sequence[int]],
                 diffs: Sequence[Sequence[Vec]], view: ModuleView):
        self.ring = ring
        self.twists = [list(t) for t in twists]
        self.diffs = [list(d) for d in diffs]
        self.view = view
        self._ranks: dict[tuple[int, int], int] = {}

    @classmethod
    def for_submodule(cls, res: GradedComplex, view: ModuleView) -> "ExtCalculator":
        """Ext of the submodule resolved by res (its level 0 is ambient)."""
        return cls(res.ring, res.twists[1:], res.diffs[1:], view)

    @classmethod
    def for_cokernel(cls, res: GradedComplex, view: ModuleView) -> "ExtCalculator":
        """Ext of the cokernel of the first differential of res."""
        return cls(res.ring, res.twists, res.diffs, view)

    @property
    def top(self) -> int:
        return len(self.twists) - 1

    def term_dim(self, k: int, w: int) -> int:
        if k < 0 or k > self.top:
            return 0
        return sum(self.view.piece_dim(w + a) for a in self.twists[k])

    def diff_matrix(self, k: int, w: int) -> np.ndarray:
        """Matrix of Hom(F_k, N)_w -> Hom(F_{k+1}, N)_w, the precomposition
        with the differential F_{k+1} -> F_k."""
        src = self.twists[k]
        tgt = self.twists[k + 1]
        cols = self.diffs[k]
        src_off = [0]
        for a in src:
            src_off.append(src_off[-1] + self.view.piece_dim(w + a))
        tgt_off = [0]
        for b in tgt:
            tgt_off.append(tgt_off[-1] + self.view.piece_dim(w + b))
        out = zeros_matrix(tgt_off[-1], src_off[-1], self.ring.char)
        for t, vec in enumerate(cols):
            if tgt_off[t + 1] == tgt_off[t]:
                continue
            for s, poly in vec.comps.items():
                if src_off[s + 1] == src_off[s]:
                    continue
                block = self.view.action(poly, w + src[s])
                out[tgt_off[t]:tgt_off[t + 1], src_off[s]:src_off[s + 1]] = block
        return out

    def diff_rank(self, k: int, w: int) -> int:
        if k < 0 or k >= len(self.diffs):
            return 0
        key = (k, w)
        if key not in self._ranks:
            if self.term_dim(k, w) == 0 or self.term_dim(k + 1, w) == 0:
                self._ranks[key] = 0
            else:
                self._ranks[key] = rank(self.diff_matrix(k, w), self.ring.char)
        return self._ranks[key]

    def ext_dim(self, j: int, w: int) -> int:
        """dim Ext^j in internal degree w."""
        if j < 0 or j > self.top:
            return 0
        return self.term_dim(j, w) - self.diff_rank(j, w) - self.diff_rank(j - 1, w)

    def ext_dims(self, j: int, window: tuple[int, int]) -> dict[int, int]:
        lo, hi = window
        return {w: self.ext_dim(j, w) for w in range(lo, hi + 1)}

    def _kernel_degree_bound(self, j: int) -> int:
        """A degree G such that ker(Hom(F_j,N) -> Hom(F_{j+1},N)) is
        generated in degrees <= G; beyond G a zero Ext^j piece certifies
        that all higher pieces vanish.  Needs a rank-one free view."""
        c = self.view.twists[0]  # type: ignore[attr-defined]
        src = self.twists[j]
        if j == len(self.diffs):
            return max(c - a for a in src)
        tgt = self.twists[j + 1]
        shifts_src = [c - a for a in src]
        shifts_tgt = [c - b for b in tgt]
        transpose: list[Vec] = []
        free_rows: list[int] = []
        for s in range(len(src)):
            comps = {
                t: self.diffs[j][t].comps[s]
                for t in range(len(tgt))
                if s in self.diffs[j][t].comps
            }
            if comps:
                transpose.append(Vec(self.ring, comps))
                free_rows.append(s)
            else:
                free_rows.append(-1)
        bound = max((shifts_src[s] for s, f in enumerate(free_rows) if f == -1),
                    default=None)
        live = [s for s, f in enumerate(free_rows) if f != -1]
        if transpose:
            syz = syzygy_module(transpose, top_key(shifts_tgt), shifts=shifts_tgt)
            live_shifts = [shifts_src[s] for s in live]
            syz = minimal_vec_generators(self.ring, syz, live_shifts)
            if syz:
                g = max(v.degree(live_shifts) for v in syz)
                bound = g if bound is None else max(bound, g)
        if bound is None:
            bound = min(shifts_src) - 1  # kernel is zero
        return bound

    def ext_module(self, j: int, window: tuple[int, int] | None = None) -> FiniteLengthGradedModule:
        """Ext^j as an explicit module with bases and variable actions.

        Without a window the support is certified: pieces are scanned from
        the lowest possible degree until past the kernel generator bound,
        which only terminates when Ext^j has finite length.  A window
        restricts the computation (and silently truncates the module)."""
        if not isinstance(self.view, FreeModuleView) or len(self.view.twists) != 1:
            raise ValueError("explicit Ext modules need a rank-one free target")
        p = self.ring.char
        if j < 0 or j > self.top or not self.twists[j]:
            return FiniteLengthGradedModule.zero(self.ring)
        c = self.view.twists[0]
        src = self.twists[j]
        aview = FreeModuleView(self.ring, [c - a for a in src])
        if window is not None:
            degrees = list(range(window[0], window[1] + 1))
        else:
            w_lo = min(c - a for a in src)
            bound = self._kernel_degree_bound(j)
            degrees = []
            w = w_lo
            while True:
                degrees.append(w)
                if w >= bound and self._ext_piece_dim_probe(j, w) == 0:
                    break
                if w > w_lo + 500:
                    raise RuntimeError("Ext module does not appear to have finite length")
                w += 1
        reps_at: dict[int, np.ndarray] = {}
        solver_at: dict[int, LinearSolver | None] = {}
        subdim_at: dict[int, int] = {}
        dims: dict[int, int] = {}
        for w in degrees:
            amb = aview.piece_dim(w)
            if amb == 0:
                reps_at[w] = zeros_matrix(0, 0, p)
                solver_at[w] = None
                subdim_at[w] = 0
                continue
            if j < len(self.diffs) and self.term_dim(j + 1, w):
                ker = nullspace(self.diff_matrix(j, w), p)
            else:
                ker = eye_matrix(amb, p)
            if j >= 1 and self.term_dim(j - 1, w):
                image = self.diff_matrix(j - 1, w)
            else:
                image = zeros_matrix(amb, 0, p)
            reps, solver = quotient_basis(ker, image, p)
            reps_at[w] = ker[:, reps]
            solver_at[w] = solver
            subdim_at[w] = image.shape[1]
            if reps:
                dims[w] = len(reps)
        actions: list[dict[int, np.ndarray]] = [{} for _ in range(self.ring.nvars)]
        for w in dims:
            if (w + 1) not in reps_at:
                continue  # window edge: the action out of it is truncated away
            tgt_dim = dims.get(w + 1, 0)
            for t in range(self.ring.nvars):
                moved = matmul(aview.action(self.ring.variable(t), w), reps_at[w], p)
                out = zeros_matrix(tgt_dim, dims[w], p)
                if tgt_dim:
                    solver = solver_at[w + 1]
                    assert solver is not None
                    for col in range(moved.shape[1]):
                        out[:, col] = quotient_coords(solver, subdim_at[w + 1], moved[:, col])
                actions[t][w] = out
        return FiniteLengthGradedModule(self.ring, dims, actions)

    def _ext_piece_dim_probe(self, j: int, w: int) -> int:
        return self.ext_dim(j, w)


def module_ext_dim(module: FiniteLengthGradedModule,
                   target: FiniteLengthGradedModule, i: int, degree: int = 0) -> int:
    """dim Ext^i(M, N) in one internal degree, for two explicit
    finite-length modules, via a synthesized minimal presentation of M."""
    res = module.free_resolution()
    calc = ExtCalculator.for_cokernel(res, FiniteModuleView(target))
    return calc.ext_dim(i, degree)


def module_hom_dim(module: FiniteLengthGradedModule,
                   target: FiniteLengthGradedModule, degree: int = 0) -> int:
    return module_ext_dim(module, target, 0, degree)


def initial_degree(ideal: Ideal) -> int:
    """Least degree of a nonzero piece; for a saturated ideal this is the
    least degree of a hypersurface through the subscheme."""
    degs = [g.degree for g in ideal.gens if g.terms]
    if not degs:
        raise ValueError("zero ideal has no initial degree")
    return min(degs)


def speciality_index(ideal: Ideal, resolution: GradedComplex | None = None) -> int:
    """Largest v with h^n of the structure sheaf twisted by v nonzero,
    located as the first nonvanishing degree of Ext^1(I, R(-N))."""
    res = resolution if resolution is not None else ideal_resolution(ideal)
    if res.length < 2:
        raise ValueError("expected a subscheme of codimension at least 2")
    ring = ideal.ring
    calc = ExtCalculator.for_submodule(res, FreeModuleView(ring, [ring.nvars]))
    w = ring.nvars - max(res.twists[2])
    limit = w + 500
    while calc.ext_dim(1, w) == 0:
        w += 1
        if w > limit:
            raise RuntimeError("no speciality found; is the ideal equidimensional?")
    return -w


@dataclass(frozen=True)
class CohomologyTable:
    """Integer table of h^i of the twisted ideal sheaf over a degree window,
    for i from 0 to n + 1."""

    n: int
    window: tuple[int, int]
    rows: dict[int, dict[int, int]]
    s_x: int
    e_x: int

    def h(self, i: int, v: int) -> int:
        if i < 0 or i > self.n + 1:
            raise ValueError(f"cohomological index {i} outside 0..{self.n + 1}")
        if v < self.window[0] or v > self.window[1]:
            raise ValueError(f"twist {v} outside window {self.window}")
        return self.rows[i].get(v, 0)

    def gamma(self, v: int) -> int:
        """Postulation: h^0 of the twisted ideal sheaf."""
        return self.h(0, v)

    def rho(self, i: int, v: int) -> int:
        """Intermediate cohomology h^i for 1 <= i <= n."""
        if not 1 <= i <= self.n:
            raise ValueError(f"intermediate index {i} outside 1..{self.n}")
        return self.h(i, v)

    def row(self, i: int) -> dict[int, int]:
        lo, hi = self.window
        return {v: self.h(i, v) for v in range(lo, hi + 1)}

    def to_json_dict(self) -> dict:
        return {
            "n": self.n,
            "window": list(self.window),
            "s": self.s_x,
            "e": self.e_x,
            "h": {
                str(i): {str(v): h for v, h in sorted(self.rows[i].items()) if h}
                for i in range(self.n + 2)
            },
        }

    @classmethod
    def from_rows(cls, n: int, window: tuple[int, int],
                  rows: Mapping[int, Mapping[int, int]]) -> "CohomologyTable":
        table = {i: {int(v): int(h) for v, h in rows.get(i, {}).items() if h}
                 for i in range(n + 2)}
        h0 = {v for v, h in table[0].items() if h}
        s = min(h0) if h0 else window[1] + 1
        top = {v for v, h in table[n + 1].items() if h}
        e = max(top) if top else window[0] - 1
        return cls(n=n, window=(int(window[0]), int(window[1])), rows=table, s_x=s, e_x=e)

    def text(self) -> str:
        lo, hi = self.window
        cols = list(range(lo, hi + 1))
        head = ["i\\v"] + [str(v) for v in cols]
        lines = [head]
        for i in range(self.n + 1, -1, -1):
            row = [f"h{i}"]
            for v in cols:
                val = self.rows[i].get(v, 0)
                row.append(str(val) if val else ".")
            lines.append(row)
        widths = [max(len(line[c]) for line in lines) for c in range(len(head))]
        return "\n".join(
            "  ".join(item.rjust(w) for item, w in zip(line, widths))
            for line in lines
        )


def cohomology_table(ideal: Ideal, window: tuple[int, int] | None = None,
                     resolution: GradedComplex | None = None) -> CohomologyTable:
    """Sheaf cohomology table of a saturated codimension-2 ideal.

    The h^0 row is the Hilbert function of the ideal; rows i >= 1 come
    from graded duality applied to the minimal free resolution.  The
    default window runs from s(X) - n - 4 to e(X) + n + 4, wide enough to
    show every nonzero intermediate value together with margins used by
    the invariant formulas."""
    ring = ideal.ring
    n = ring.nvars - 3
    if n < 1:
        raise ValueError("tables need subschemes of positive dimension")
    res = resolution if resolution is not None else ideal_resolution(ideal)
    s = initial_degree(ideal)
    e = speciality_index(ideal, res)
    if window is None:
        window = (s - n - 4, e + n + 4)
    lo, hi = window
    calc = ExtCalculator.for_submodule(res, FreeModuleView(ring, [ring.nvars]))
    rows: dict[int, dict[int, int]] = {i: {} for i in range(n + 2)}
    for v in range(lo, hi + 1):
        h0 = ideal.graded_dim(v)
        if h0:
            rows[0][v] = h0
    for i in range(1, n + 2):
        j = ring.nvars - 1 - i
        for v in range(lo, hi + 1):
            h = calc.ext_dim(j, -v)
            if h:
                rows[i][v] = h
    return CohomologyTable(n=n, window=(lo, hi), rows=rows, s_x=s, e_x=e)


def deficiency_modules(ideal: Ideal,
                       resolution: GradedComplex | None = None) -> dict[int, FiniteLengthGradedModule]:
    """The finite-length modules measuring the failure of arithmetic
    Cohen-Macaulayness: for each 1 <= i <= n, the module whose piece at v
    is H^i of the twisted ideal sheaf, returned with explicit bases and
    variable actions (the graded dual of the matching Ext module)."""
    ring = ideal.ring
    n = ring.nvars - 3
    res = resolution if resolution is not None else ideal_resolution(ideal)
    calc = ExtCalculator.for_submodule(res, FreeModuleView(ring, [ring.nvars]))
    out: dict[int, FiniteLengthGradedModule] = {}
    for i in range(1, n + 1):
        out[i] = calc.ext_module(ring.nvars - 1 - i).dual()
    return out


rao_modules = deficiency_modules
