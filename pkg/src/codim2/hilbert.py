"""Hilbert series numerators, Hilbert functions and polynomials, and the
numerical character (degree, sectional genus, Euler characteristics) read
off from them.

The numerator of R/I over (1-t)^nvars depends only on the leading-term
monomial ideal, computed by the pivot-variable recursion
num(I) = num(I + (x)) + t * num(I : x).
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial
from typing import Sequence

from .ring import Monomial, mono_divides

Numerator = dict[int, int]


def dim_ambient(nvars: int, d: int) -> int:
    if d < 0:
        return 0
    return comb(d + nvars - 1, nvars - 1)


def _minimalize(monos: Sequence[Monomial]) -> list[Monomial]:
    out: list[Monomial] = []
    for m in sorted(set(monos), key=sum):
        if not any(mono_divides(k, m) for k in out):
            out.append(m)
    return out


def _add_shifted(acc: Numerator, other: Numerator, shift: int) -> None:
    for k, c in other.items():
        v = acc.get(k + shift, 0) + c
        if v:
            acc[k + shift] = v
        elif k + shift in acc:
            del acc[k + shift]


def _coprime(a: Monomial, b: Monomial) -> bool:
    return all(x == 0 or y == 0 for x, y in zip(a, b))


def _numerator_rec(monos: list[Monomial], nvars: int) -> Numerator:
    if not monos:
        return {0: 1}
    if any(sum(m) == 0 for m in monos):
        return {}
    if len(monos) <= 6 and all(
        _coprime(monos[i], monos[j])
        for i in range(len(monos))
        for j in range(i + 1, len(monos))
    ):
        acc: Numerator = {0: 1}
        for m in monos:
            d = sum(m)
            nxt: Numerator = {}
            _add_shifted(nxt, acc, 0)
            _add_shifted(nxt, {k: -c for k, c in acc.items()}, d)
            acc = nxt
        return acc
    counts = [sum(1 for m in monos if m[i] > 0) for i in range(nvars)]
    pivot = max(range(nvars), key=lambda i: counts[i])
    x = tuple(1 if i == pivot else 0 for i in range(nvars))
    plus = _minimalize([m for m in monos if m[pivot] == 0] + [x])
    colon = _minimalize(
        [tuple(e - 1 if i == pivot and e > 0 else e for i, e in enumerate(m)) for m in monos]
    )
    acc = _numerator_rec(plus, nvars)
    _add_shifted(acc, _numerator_rec(colon, nvars), 1)
    return acc


def hilbert_numerator(lead_monos: Sequence[Monomial], nvars: int) -> Numerator:
    """Numerator of the Hilbert series of R/I over (1-t)^nvars."""
    return _numerator_rec(_minimalize(lead_monos), nvars)


def hilbert_function(num: Numerator, nvars: int, d: int) -> int:
    """dim_k (R/I)_d."""
    if d < 0:
        return 0
    return sum(c * dim_ambient(nvars, d - k) for k, c in num.items() if k <= d)


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def _trim(coeffs: list[Fraction]) -> list[Fraction]:
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def hilbert_polynomial(num: Numerator, nvars: int) -> list[Fraction]:
    """Hilbert polynomial of R/I as ascending coefficients in v."""
    fact = factorial(nvars - 1)
    acc = [Fraction(0)] * nvars
    for k, c in num.items():
        # c * binom(v - k + nvars - 1, nvars - 1)
        term = [Fraction(c, fact)]
        for i in range(1, nvars):
            term = _poly_mul(term, [Fraction(i - k), Fraction(1)])
        for j, x in enumerate(term):
            acc[j] += x
    return _trim(acc)


def poly_eval(coeffs: Sequence[Fraction], v: int) -> Fraction:
    out = Fraction(0)
    for c in reversed(list(coeffs)):
        out = out * v + c
    return out


def poly_eval_int(coeffs: Sequence[Fraction], v: int) -> int:
    val = poly_eval(coeffs, v)
    if val.denominator != 1:
        raise ValueError(f"non-integer value {val} at {v}")
    return int(val)


def polynomial_degree(coeffs: Sequence[Fraction]) -> int:
    deg = -1
    for i, c in enumerate(coeffs):
        if c != 0:
            deg = i
    return deg


@dataclass(frozen=True)
class NumericalCharacter:
    """Degree, genus data, and Euler characteristics extracted from the
    Hilbert polynomial of a coordinate ring, by dimension of the scheme:

    dim 1: chi(O_X(v)) = d v + 1 - g
    dim 2: chi(O_X(v)) = (d/2) v^2 - (pi - 1 - d/2) v + chi(O_X)
    dim 3: chi(O_X(v)) = (d/6) v^3 + ((d+1-pi)/2) v^2
                         + (chi(O_S) + d/3 + (1-pi)/2) v + chi(O_X)
    """

    dim: int
    degree: int
    genus: int | None = None
    sectional_genus: int | None = None
    chi_structure: int | None = None
    chi_hyperplane: int | None = None

    def as_dict(self) -> dict:
        out = {"dim": self.dim, "degree": self.degree}
        if self.genus is not None:
            out["genus"] = self.genus
        if self.sectional_genus is not None:
            out["sectional_genus"] = self.sectional_genus
        if self.chi_structure is not None:
            out["chi_structure"] = self.chi_structure
        if self.chi_hyperplane is not None:
            out["chi_hyperplane"] = self.chi_hyperplane
        return out


def numerical_character(hp: Sequence[Fraction], nvars: int) -> NumericalCharacter:
    """Read the classical invariants off a Hilbert polynomial (of R/I)."""
    deg = polynomial_degree(hp)
    if deg < 1 or deg > 3:
        raise ValueError(f"no numerical character for dimension {deg}")

    def frac_int(x: Fraction) -> int:
        if x.denominator != 1:
            raise ValueError(f"non-integer invariant {x}")
        return int(x)

    if deg == 1:
        d = frac_int(hp[1])
        g = frac_int(1 - hp[0])
        return NumericalCharacter(dim=1, degree=d, genus=g)
    if deg == 2:
        d = frac_int(2 * hp[2])
        pi = frac_int(1 + Fraction(d, 2) - hp[1])
        chi = frac_int(hp[0])
        return NumericalCharacter(dim=2, degree=d, sectional_genus=pi, chi_structure=chi)
    d = frac_int(6 * hp[3])
    pi = frac_int(d + 1 - 2 * hp[2])
    chi_s = frac_int(hp[1] - Fraction(d, 3) - Fraction(1 - pi, 2))
    chi = frac_int(hp[0])
    return NumericalCharacter(
        dim=3, degree=d, sectional_genus=pi, chi_structure=chi, chi_hyperplane=chi_s
    )
