"""Exact dense linear algebra over F_p (numpy int64) and Q (Fraction objects).

Every routine takes the characteristic explicitly; p = 0 switches to exact
rationals on numpy object arrays.  Entries of mod-p matrices are kept in
[0, p); p^2 stays far below int64 overflow for any sane prime.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np


def zeros_matrix(rows: int, cols: int, p: int) -> np.ndarray:
    if p:
        return np.zeros((rows, cols), dtype=np.int64)
    out = np.empty((rows, cols), dtype=object)
    out[:] = Fraction(0)
    return out


def eye_matrix(n: int, p: int) -> np.ndarray:
    out = zeros_matrix(n, n, p)
    for i in range(n):
        out[i, i] = 1 if p else Fraction(1)
    return out


def as_matrix(rows: Sequence[Sequence], p: int, shape: tuple[int, int] | None = None) -> np.ndarray:
    """Build a matrix from nested sequences; shape disambiguates empties."""
    if shape is not None and (shape[0] == 0 or shape[1] == 0):
        return zeros_matrix(shape[0], shape[1], p)
    if not len(rows):
        return zeros_matrix(0, 0 if shape is None else shape[1], p)
    if p:
        return np.array([[int(c) % p for c in row] for row in rows], dtype=np.int64)
    out = np.empty((len(rows), len(rows[0])), dtype=object)
    for i, row in enumerate(rows):
        for j, c in enumerate(row):
            out[i, j] = Fraction(c)
    return out


def matmul(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray:
    if a.shape[1] != b.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} x {b.shape}")
    if a.shape[0] == 0 or b.shape[1] == 0 or a.shape[1] == 0:
        return zeros_matrix(a.shape[0], b.shape[1], p)
    if p:
        # block the contraction so int64 accumulation cannot overflow
        step = max(1, (1 << 62) // (p * p))
        acc = np.zeros((a.shape[0], b.shape[1]), dtype=np.int64)
        for k0 in range(0, a.shape[1], step):
            acc = (acc + a[:, k0:k0 + step] @ b[k0:k0 + step, :]) % p
        return acc
    return a @ b


def _rref_mod(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    r = a % p
    rows, cols = r.shape
    pivots: list[int] = []
    pr = 0
    for c in range(cols):
        if pr == rows:
            break
        col = r[pr:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        j = pr + int(nz[0])
        if j != pr:
            r[[pr, j]] = r[[j, pr]]
        inv = pow(int(r[pr, c]), p - 2, p)
        r[pr] = r[pr] * inv % p
        mask = np.nonzero(r[:, c])[0]
        mask = mask[mask != pr]
        if mask.size:
            r[mask] = (r[mask] - np.outer(r[mask, c], r[pr])) % p
        pivots.append(c)
        pr += 1
    return r, pivots


def _rref_frac(a: np.ndarray) -> tuple[np.ndarray, list[int]]:
    r = a.copy()
    rows, cols = r.shape
    pivots: list[int] = []
    pr = 0
    for c in range(cols):
        if pr == rows:
            break
        j = next((i for i in range(pr, rows) if r[i, c] != 0), None)
        if j is None:
            continue
        if j != pr:
            r[[pr, j]] = r[[j, pr]]
        r[pr] = r[pr] * (Fraction(1) / r[pr, c])
        for i in range(rows):
            if i != pr and r[i, c] != 0:
                r[i] = r[i] - r[i, c] * r[pr]
        pivots.append(c)
        pr += 1
    return r, pivots


def rref(a: np.ndarray, p: int) -> tuple[np.ndarray, list[int]]:
    """Reduced row echelon form and the pivot column indices."""
    if a.shape[0] == 0 or a.shape[1] == 0:
        return a.copy(), []
    return _rref_mod(a, p) if p else _rref_frac(a)


def rank(a: np.ndarray, p: int) -> int:
    if a.shape[0] == 0 or a.shape[1] == 0:
        return 0
    if not p:
        return len(_rref_frac(a)[1])
    # forward elimination only; cheaper than full rref when just the rank
    # is wanted, which is the hot path of graded Hom-complex computations
    r = a % p
    if r.shape[0] < r.shape[1]:
        r = r.T.copy()
    rows, cols = r.shape
    pr = 0
    for c in range(cols):
        if pr == rows:
            break
        col = r[pr:, c]
        nz = np.nonzero(col)[0]
        if nz.size == 0:
            continue
        j = pr + int(nz[0])
        if j != pr:
            r[[pr, j]] = r[[j, pr]]
        inv = pow(int(r[pr, c]), p - 2, p)
        below = np.nonzero(r[pr + 1:, c])[0] + pr + 1
        if below.size:
            mult = r[below, c] * inv % p
            r[np.ix_(below, np.arange(c, cols))] = (
                r[np.ix_(below, np.arange(c, cols))]
                - np.outer(mult, r[pr, c:])
            ) % p
        pr += 1
    return pr


def independent_columns(a: np.ndarray, p: int) -> list[int]:
    """Indices of a maximal independent subset of columns (leftmost greedy)."""
    return rref(a, p)[1]


def nullspace(a: np.ndarray, p: int) -> np.ndarray:
    """Matrix whose columns form a basis of ker(a); shape (cols, nullity)."""
    rows, cols = a.shape
    if cols == 0:
        return zeros_matrix(0, 0, p)
    if rows == 0:
        return eye_matrix(cols, p)
    r, pivots = rref(a, p)
    free = [c for c in range(cols) if c not in set(pivots)]
    out = zeros_matrix(cols, len(free), p)
    one = 1 if p else Fraction(1)
    for k, f in enumerate(free):
        out[f, k] = one
        for i, c in enumerate(pivots):
            v = r[i, f]
            if p:
                out[c, k] = (-int(v)) % p
            else:
                out[c, k] = -v
    return out


def solve(a: np.ndarray, b: np.ndarray, p: int) -> np.ndarray | None:
    """One solution of a x = b (b a vector or matrix of columns); None if
    inconsistent."""
    vec = b.ndim == 1
    bb = b.reshape(-1, 1) if vec else b
    if a.shape[0] != bb.shape[0]:
        raise ValueError(f"shape mismatch {a.shape} vs {bb.shape}")
    rows, cols = a.shape
    if bb.shape[1] == 0:
        return zeros_matrix(cols, 0, p)
    if rows == 0:
        out = zeros_matrix(cols, bb.shape[1], p)
        return out.reshape(-1) if vec else out
    aug = np.concatenate([a, bb], axis=1)
    r, pivots = rref(aug, p)
    if any(c >= cols for c in pivots):
        return None
    out = zeros_matrix(cols, bb.shape[1], p)
    for i, c in enumerate(pivots):
        out[c] = r[i, cols:]
    return out.reshape(-1) if vec else out


def in_span(a: np.ndarray, v: np.ndarray, p: int) -> bool:
    """True iff v lies in the column space of a."""
    return solve(a, v, p) is not None


class LinearSolver:
    """Repeated exact solves against a fixed matrix M.

    Precomputes E with E M in rref, so each solve is one matrix-vector
    product plus consistency bookkeeping.
    """

    __slots__ = ("m", "p", "_r", "_e", "_pivots", "rank")

    def __init__(self, m: np.ndarray, p: int):
        self.m = m
        self.p = p
        rows = m.shape[0]
        aug = np.concatenate([m, eye_matrix(rows, p)], axis=1) if rows else zeros_matrix(0, m.shape[1], p)
        r, pivots = rref(aug, p) if rows else (aug, [])
        pivots = [c for c in pivots if c < m.shape[1]]
        self._r = r[:, : m.shape[1]]
        self._e = r[:, m.shape[1]:]
        self._pivots = pivots
        self.rank = len(pivots)

    def solve(self, v: np.ndarray) -> np.ndarray | None:
        """x with M x = v, or None."""
        p = self.p
        cols = self.m.shape[1]
        if self.m.shape[0] == 0:
            return zeros_matrix(cols, 1, p).reshape(-1)
        ev = matmul(self._e, v.reshape(-1, 1), p).reshape(-1)
        x = zeros_matrix(cols, 1, p).reshape(-1)
        for i, c in enumerate(self._pivots):
            x[c] = ev[i]
        # rows beyond the rank must contract to zero for consistency
        for i in range(self.rank, self.m.shape[0]):
            if ev[i] != 0:
                return None
        return x

    def in_span(self, v: np.ndarray) -> bool:
        return self.solve(v) is not None


def quotient_basis(space: np.ndarray, sub: np.ndarray, p: int) -> tuple[list[int], "LinearSolver"]:
    """Coordinates for space/sub where both are given by spanning columns.

    Returns (rep_indices, solver): rep_indices select columns of `space`
    whose classes form a basis of the quotient, and solver is built on
    [sub | space[:, rep_indices]] so that solving expresses any vector of
    `space` as sub-part + quotient coordinates (the trailing block).
    """
    if space.shape[0] != sub.shape[0]:
        raise ValueError("ambient dimension mismatch")
    joint = np.concatenate([sub, space], axis=1)
    _, pivots = rref(joint, p)
    reps = [c - sub.shape[1] for c in pivots if c >= sub.shape[1]]
    basis = np.concatenate([sub, space[:, reps]], axis=1)
    return reps, LinearSolver(basis, p)


def quotient_coords(solver: LinearSolver, sub_dim: int, v: np.ndarray) -> np.ndarray:
    """Quotient coordinates of v via a quotient_basis solver."""
    x = solver.solve(v)
    if x is None:
        raise ValueError("vector not in the ambient space")
    return x[sub_dim:]
