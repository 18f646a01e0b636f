"""Numerical invariants of codimension-2 subschemes and Hilbert-scheme
dimension estimates built from them.

The central quantity is the resolution-weighted cohomology sum

    delta^m(v) = sum_j (-1)^(j+1) sum_i h^m(I_X(n_{j,i} + v)),

where n_{j,i} runs over the twists of a free resolution of the saturated
ideal.  Euler-characteristic bookkeeping turns delta values into the
alternating sum of the graded Ext groups of the ideal, into chi of the
normal sheaf, and into dimension formulas and obstruction criteria for
the Hilbert scheme at the subscheme.

Two interchangeable data front-ends feed the formulas: SubschemeData
computes everything from a graded ideal, DeclaredSubschemeData consumes
a Betti table, finite cohomology rows, and degree/genus data exactly as
printed in a reference table.  Both expose a total cohomology accessor
h(i, v): row 0 comes from the resolution, rows 1..n from the deficiency
modules (declared rows are total by convention), and the top row from
the Euler identity, so delta is computable at every twist."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

from .cohomology import (
    ExtCalculator,
    FiniteLengthGradedModule,
    FiniteModuleView,
    FreeModuleView,
    IdealView,
    CohomologyTable,
    deficiency_modules,
    module_ext_dim,
    module_hom_dim,
)
from .groebner import Ideal
from .hilbert import (
    NumericalCharacter,
    numerical_character,
    poly_eval,
    poly_eval_int,
    polynomial_degree,
)
from .resolution import BettiTable, GradedComplex, ideal_resolution
from .ring import euler_OP


def _frac_int(x: Fraction, what: str) -> int:
    if x.denominator != 1:
        raise ValueError(f"{what} is not an integer: {x}")
    return int(x)


def chi_sheaf(char: NumericalCharacter, v: int) -> int:
    """chi(O_X(v)) from degree and genus data."""
    d = char.degree
    if char.dim == 1:
        return d * v + 1 - char.genus
    if char.dim == 2:
        pi = char.sectional_genus
        val = Fraction(d, 2) * v * v - (pi - 1 - Fraction(d, 2)) * v + char.chi_structure
        return _frac_int(val, f"chi(O_X({v}))")
    if char.dim == 3:
        pi = char.sectional_genus
        val = (
            Fraction(d, 6) * v**3
            + Fraction(d + 1 - pi, 2) * v**2
            + (char.chi_hyperplane + Fraction(d, 3) + Fraction(1 - pi, 2)) * v
            + char.chi_structure
        )
        return _frac_int(val, f"chi(O_X({v}))")
    raise ValueError(f"unsupported dimension {char.dim}")


def chi_normal(char: NumericalCharacter, v: int) -> int:
    """chi(N_X(v)) of the normal sheaf, by dimension of X."""
    d = char.degree
    if char.dim == 1:
        return 2 * d * v + 4 * d
    if char.dim == 2:
        pi = char.sectional_genus
        return d * v * v + 5 * d * v + 5 * (2 * d + pi - 1) - d * d + 2 * char.chi_structure
    if char.dim == 3:
        pi = char.sectional_genus
        chi_s = char.chi_hyperplane
        val = (
            Fraction(d, 3) * v**3
            + 3 * d * v**2
            + (2 * chi_s + 5 * (pi - 1) + Fraction(38 * d, 3) - d * d) * v
            + (6 * chi_s + 15 * (pi - 1) + 20 * d - 3 * d * d)
        )
        return _frac_int(val, f"chi(N_X({v}))")
    raise ValueError(f"unsupported dimension {char.dim}")


def _chi_poly(char: NumericalCharacter) -> list[Fraction]:
    """Ascending coefficients of the polynomial v -> chi(O_X(v))."""
    d = char.degree
    if char.dim == 1:
        return [Fraction(1 - char.genus), Fraction(d)]
    if char.dim == 2:
        pi = char.sectional_genus
        return [
            Fraction(char.chi_structure),
            Fraction(d, 2) - pi + 1,
            Fraction(d, 2),
        ]
    pi = char.sectional_genus
    return [
        Fraction(char.chi_structure),
        char.chi_hyperplane + Fraction(d, 3) + Fraction(1 - pi, 2),
        Fraction(d + 1 - pi, 2),
        Fraction(d, 6),
    ]


class SubschemeBase:
    """Shared accessor layer over Betti, cohomology, and character data."""

    n: int
    betti: BettiTable
    character: NumericalCharacter
    chi_poly: list[Fraction]
    ideal: Ideal | None

    @property
    def nvars(self) -> int:
        return self.n + 3

    def _h0(self, v: int) -> int:
        raise NotImplementedError

    def _row(self, i: int, v: int) -> int:
        raise NotImplementedError

    def h(self, i: int, v: int) -> int:
        """h^i of the twisted ideal sheaf, total in both arguments."""
        if i < 0 or i > self.n + 1:
            raise ValueError(f"cohomology index {i} outside 0..{self.n + 1}")
        if i == 0:
            return self._h0(v)
        if i <= self.n:
            return self._row(i, v)
        chi = euler_OP(self.nvars, v) - poly_eval_int(self.chi_poly, v)
        partial = sum((-1) ** j * self.h(j, v) for j in range(self.n + 1))
        top = (-1) ** (self.n + 1) * (chi - partial)
        if top < 0:
            raise ValueError(
                f"inconsistent data: negative h^{self.n + 1} = {top} at twist {v}")
        return top

    def h_structure(self, v: int) -> int:
        """h^n(O_X(v)), read off the top ideal-sheaf row."""
        return self.h(self.n + 1, v)

    def initial_degree(self) -> int:
        return min(k for (j, k), _ in self.betti.entries if j == 1)

    def speciality(self) -> int:
        """Largest twist with h^n(O_X(v)) nonzero."""
        v = self.betti.regularity()
        floor = v - 500
        while self.h(self.n + 1, v) == 0:
            v -= 1
            if v < floor:
                raise RuntimeError("no speciality index found; data not codim 2?")
        return v

    def is_acm(self) -> bool:
        raise NotImplementedError

    def row_support(self, i: int) -> tuple[int, int] | None:
        raise NotImplementedError

    def seminatural_cohomology(self) -> bool:
        """At most one nonvanishing h^i per twist, over every twist.

        Outside the scanned window only h^0 (far right) or the top row
        (far left) can survive, so a finite scan certifies the claim."""
        s = self.initial_degree()
        e = self.speciality()
        lo, hi = e, s
        for i in range(1, self.n + 1):
            sup = self.row_support(i)
            if sup is not None:
                lo, hi = min(lo, sup[0]), max(hi, sup[1])
        for v in range(lo - 1, hi + 2):
            live = sum(1 for i in range(self.n + 2) if self.h(i, v) != 0)
            if live > 1:
                return False
        return True

    def table(self, window: tuple[int, int] | None = None) -> CohomologyTable:
        if window is None:
            window = (self.speciality() - 1, max(
                self.betti.regularity(), self.initial_degree() + 2))
        lo, hi = window
        rows = {
            i: {v: self.h(i, v) for v in range(lo, hi + 1)}
            for i in range(self.n + 2)
        }
        return CohomologyTable.from_rows(self.n, window, rows)

    def as_declared_dict(self) -> dict:
        """JSON-ready declared form: Betti, finite rows, character."""
        rows: dict[str, dict[str, int]] = {}
        for i in range(1, self.n + 1):
            sup = self.row_support(i)
            if sup is None:
                continue
            rows[str(i)] = {
                str(v): self.h(i, v)
                for v in range(sup[0], sup[1] + 1)
                if self.h(i, v)
            }
        char: dict[str, int] = {"d": self.character.degree}
        if self.n == 1:
            char["pi_or_g"] = self.character.genus
            char["chiO"] = 1 - self.character.genus
        else:
            char["pi_or_g"] = self.character.sectional_genus
            char["chiO"] = self.character.chi_structure
            if self.n == 3:
                char["chiOS"] = self.character.chi_hyperplane
        return {
            "n": self.n,
            "betti": self.betti.json_rows(),
            "cohomology": rows,
            "char": char,
        }


class SubschemeData(SubschemeBase):
    """Invariant data computed from a saturated graded ideal.

    Rows 1..n are the certified deficiency modules, so every h(i, v) is
    answerable with no window bookkeeping.  Graded Hom and Ext groups of
    the ideal are computed on demand and cached."""

    def __init__(self, ideal: Ideal, resolution: GradedComplex | None = None):
        n = ideal.ring.nvars - 3
        if n < 1:
            raise ValueError("ambient space must be at least P^3")
        self.ideal = ideal
        self.n = n
        self.resolution = resolution if resolution is not None else ideal_resolution(ideal)
        self.betti = self.resolution.betti()
        hp = ideal.hilbert_polynomial()
        if polynomial_degree(hp) != n:
            raise ValueError(
                f"Hilbert polynomial has degree {polynomial_degree(hp)}, expected {n}")
        self.character = numerical_character(hp, ideal.ring.nvars)
        self.chi_poly = list(hp)
        self.rao = deficiency_modules(ideal, resolution=self.resolution)
        self._ideal_calc: ExtCalculator | None = None
        self._module_calcs: dict[int, ExtCalculator] = {}

    def _h0(self, v: int) -> int:
        return self.ideal.graded_dim(v)

    def _row(self, i: int, v: int) -> int:
        return self.rao[i].piece_dim(v)

    def is_acm(self) -> bool:
        return all(self.rao[i].is_zero for i in range(1, self.n + 1))

    def row_support(self, i: int) -> tuple[int, int] | None:
        return self.rao[i].window()

    def _calc(self) -> ExtCalculator:
        if self._ideal_calc is None:
            self._ideal_calc = ExtCalculator.for_submodule(
                self.resolution, IdealView(self.ideal))
        return self._ideal_calc

    def ext_ideal_ideal(self, i: int, v: int = 0) -> int:
        """dim Ext^i(I, I) in internal degree v."""
        return self._calc().ext_dim(i, v)

    def _deficiency_calc(self, j: int) -> ExtCalculator:
        if j not in self._module_calcs:
            self._module_calcs[j] = ExtCalculator.for_submodule(
                self.resolution, FiniteModuleView(self.rao[j]))
        return self._module_calcs[j]

    def ext_ideal_deficiency(self, i: int, j: int, v: int) -> int:
        """dim Ext^i(I, M_j) in internal degree v, M_j the j-th deficiency."""
        return self._deficiency_calc(j).ext_dim(i, v)

    def top_cohomology_module(self, lo: int, hi: int) -> FiniteLengthGradedModule:
        """The top cohomology row as an explicit module on [lo, hi]."""
        ring = self.ideal.ring
        calc = ExtCalculator.for_submodule(
            self.resolution, FreeModuleView(ring, [ring.nvars]))
        return calc.ext_module(1, window=(-hi, -lo)).dual().truncate(lo, hi)

    def hom_deficiency_chain(self) -> list[int]:
        """dims of Hom(M_i, M_{i+1})_0 for i = 1..n, the top row closing
        the chain, truncated to the degrees that can receive a map."""
        out = []
        for i in range(1, self.n):
            out.append(module_hom_dim(self.rao[i], self.rao[i + 1]))
        m_top = self.rao[self.n]
        if m_top.is_zero:
            out.append(0)
            return out
        lo, hi = m_top.window()
        res = m_top.free_resolution()
        hi = max([hi] + res.twists[1]) if len(res.twists) > 1 else hi
        target = self.top_cohomology_module(lo, hi)
        out.append(module_hom_dim(m_top, target))
        return out


class DeclaredSubschemeData(SubschemeBase):
    """Invariant data declared as printed: Betti rows, finite cohomology
    rows for 1 <= i <= n, and the degree/genus character.

    Row 0 is reconstructed from the Betti numbers and the top row from
    the Euler identity, so declared tables stay small.  Construction
    validates the declaration: the Betti numbers must reproduce the
    declared character's Hilbert polynomial, any redundantly declared
    row must match its reconstruction, and the Euler identity chain
    must close."""

    ideal = None

    def __init__(self, n: int, betti: BettiTable, rows: Mapping[int, Mapping[int, int]],
                 character: NumericalCharacter,
                 window: tuple[int, int] | None = None,
                 declared: Mapping[str, object] | None = None):
        if n < 1 or n > 3:
            raise ValueError(f"dimension {n} outside the supported range 1..3")
        self.n = n
        self.betti = betti
        self.character = character
        self.chi_poly = _chi_poly(character)
        self.window = window
        self.declared = dict(declared or {})
        self.rows = {
            i: {int(v): int(hv) for v, hv in (rows.get(i) or {}).items() if hv}
            for i in range(1, n + 1)
        }
        self._validate(rows)

    def _h0(self, v: int) -> int:
        total = 0
        for j in range(1, self.betti.max_level() + 1):
            sign = 1 if j % 2 == 1 else -1
            for k in self.betti.twists_at(j):
                total += sign * max(0, euler_OP(self.nvars, v - k)) if v - k >= 0 else 0
        return total

    def _row(self, i: int, v: int) -> int:
        row = self.rows[i]
        if v in row:
            return row[v]
        if self.window is not None and not (self.window[0] <= v <= self.window[1]):
            raise ValueError(
                f"declared cohomology window {self.window} does not cover "
                f"h^{i} at twist {v}")
        return 0

    def is_acm(self) -> bool:
        return all(not self.rows[i] for i in range(1, self.n + 1))

    def row_support(self, i: int) -> tuple[int, int] | None:
        row = self.rows[i]
        if not row:
            return None
        return (min(row), max(row))

    def _validate(self, given_rows: Mapping[int, Mapping[int, int]]) -> None:
        # the Betti numbers determine chi(O_X(v)); it must match the character
        for v in range(0, self.n + 3):
            from_betti = euler_OP(self.nvars, v) - sum(
                (1 if j % 2 == 1 else -1) * euler_OP(self.nvars, v - k)
                for j in range(1, self.betti.max_level() + 1)
                for k in self.betti.twists_at(j)
            )
            if from_betti != poly_eval_int(self.chi_poly, v):
                raise ValueError(
                    "declared Betti numbers and character disagree: "
                    f"chi(O_X({v})) = {from_betti} from the resolution, "
                    f"{poly_eval_int(self.chi_poly, v)} from the character")
        for key in (0, self.n + 1):
            extra = given_rows.get(key)
            if not extra:
                continue
            for v, hv in extra.items():
                if self.h(key, int(v)) != int(hv):
                    raise ValueError(
                        f"declared h^{key}({v}) = {hv} contradicts the "
                        f"reconstructed value {self.h(key, int(v))}")
        check = euler_identity_check(self)
        if not check.passed:
            raise ValueError(
                f"declared data violates the Euler identity chain: {check.members}")

    @classmethod
    def from_json_dict(cls, payload: Mapping) -> "DeclaredSubschemeData":
        try:
            n = int(payload["n"])
            betti = BettiTable.from_twists(_betti_levels(payload["betti"]))
            char_raw = payload["char"]
            d = int(char_raw["d"])
            pig = int(char_raw["pi_or_g"])
        except (KeyError, TypeError) as exc:
            raise ValueError(f"declared data missing required field: {exc}") from exc
        if n == 1:
            chi_o = int(char_raw.get("chiO", 1 - pig))
            if chi_o != 1 - pig:
                raise ValueError(f"curve chi(O) = {chi_o} but genus {pig} forces {1 - pig}")
            character = NumericalCharacter(dim=1, degree=d, genus=pig)
        elif n == 2:
            character = NumericalCharacter(
                dim=2, degree=d, sectional_genus=pig,
                chi_structure=int(char_raw["chiO"]))
        else:
            character = NumericalCharacter(
                dim=3, degree=d, sectional_genus=pig,
                chi_structure=int(char_raw["chiO"]),
                chi_hyperplane=int(char_raw["chiOS"]))
        rows: dict[int, dict[int, int]] = {}
        for key, row in (payload.get("cohomology") or {}).items():
            rows[int(key)] = {int(v): int(hv) for v, hv in row.items()}
        window = payload.get("window")
        if window is not None:
            window = (int(window[0]), int(window[1]))
        declared_keys = ("tangent_dim", "hilbert_dim", "smooth", "generic")
        declared = {k: payload[k] for k in declared_keys if k in payload}
        return cls(n, betti, rows, character, window=window, declared=declared)


def _betti_levels(rows: Sequence[Sequence[int]]) -> list[list[int]]:
    levels: dict[int, list[int]] = {}
    for j, k, mult in rows:
        levels.setdefault(int(j), []).extend([int(k)] * int(mult))
    if not levels:
        raise ValueError("empty Betti table")
    return [levels.get(j, []) for j in range(1, max(levels) + 1)]


def delta(data: SubschemeBase, m: int, v: int) -> int:
    """Alternating resolution-twist sum of the m-th cohomology row at
    shift v.  Adding matching free summands to consecutive levels of the
    resolution leaves the value unchanged."""
    total = 0
    for j in range(1, data.betti.max_level() + 1):
        sign = 1 if j % 2 == 1 else -1
        for k in data.betti.twists_at(j):
            total += sign * data.h(m, k + v)
    return total


@dataclass(frozen=True)
class IdentityCheck:
    """Values of every member of the Euler identity chain for the
    dimension at hand; they must all agree."""

    members: tuple[tuple[str, int], ...]
    passed: bool

    def value(self) -> int:
        return self.members[0][1]

    def as_dict(self) -> dict:
        return {"members": {k: v for k, v in self.members}, "passed": self.passed}


def euler_identity_check(data: SubschemeBase) -> IdentityCheck:
    """Evaluate the alternating-Ext / delta / chi(N) identity chain.

    Every member equals 1 - delta^0(0).  The graded-Ext member is only
    available on the symbolic front-end."""
    n = data.n
    c = n + 3
    members: list[tuple[str, int]] = [("1 - delta^0(0)", 1 - delta(data, 0, 0))]
    chi_n = chi_normal(data.character, 0)
    members.append((
        f"chi(N_X) {'-' if n % 2 else '+'} delta^0({-c})",
        chi_n + (-1) ** n * delta(data, 0, -c),
    ))
    if n == 1:
        members.append((
            "4d + delta^2(0) - delta^1(0)",
            4 * data.character.degree + delta(data, 2, 0) - delta(data, 1, 0),
        ))
        members.append((
            "1 + delta^2(-4) - delta^1(-4)",
            1 + delta(data, 2, -4) - delta(data, 1, -4),
        ))
    elif n == 2:
        members.append((
            "chi(N_X) - delta^3(0) + delta^2(0) - delta^1(0)",
            chi_n - delta(data, 3, 0) + delta(data, 2, 0) - delta(data, 1, 0),
        ))
        members.append((
            "1 + delta^3(-5) - delta^2(-5) + delta^1(-5)",
            1 + delta(data, 3, -5) - delta(data, 2, -5) + delta(data, 1, -5),
        ))
    if isinstance(data, SubschemeData):
        alt = sum(
            (-1) ** (i + 1) * data.ext_ideal_ideal(i) for i in range(1, n + 2))
        members.append(("alternating sum of ext^i(I,I)_0", alt))
    first = members[0][1]
    return IdentityCheck(tuple(members), all(v == first for _, v in members))


@dataclass(frozen=True)
class TangentInfo:
    """Dimension of the tangent space of the constant-cohomology Hilbert
    scheme, with the method that produced it."""

    dim: int
    method: str


@dataclass(frozen=True)
class SumextResult:
    """1 + delta^{n+1}(-n-3) minus the constant-cohomology tangent
    dimension; a biliaison invariant."""

    value: int | None
    status: str
    method: str
    base: int
    tangent_dim: int | None = None
    interval: tuple[int | None, int | None] | None = None
    cross_check: dict | None = None

    def as_dict(self) -> dict:
        out = {"status": self.status, "method": self.method, "base": self.base}
        if self.value is not None:
            out["value"] = self.value
        if self.tangent_dim is not None:
            out["tangent_dim"] = self.tangent_dim
        if self.interval is not None:
            out["interval"] = list(self.interval)
        if self.cross_check is not None:
            out["cross_check"] = self.cross_check
        return out


def _curve_module_sum(data: SubschemeData) -> tuple[int, dict]:
    m = data.rao[1]
    hom = module_hom_dim(m, m)
    ext1 = module_ext_dim(m, m, 1, 0)
    return hom - ext1, {"hom": hom, "ext1": ext1}


def sumext(data: SubschemeBase, tangent: TangentInfo | None = None) -> SumextResult:
    """The even-liaison invariant 1 + delta^{n+1}(-n-3) - dim(tangent).

    With no tangent information the curve case falls back on the
    deficiency module (hom minus ext^1 of M into itself, degree 0);
    otherwise only an interval from the ambient tangent space remains."""
    base = 1 + delta(data, data.n + 1, -data.n - 3)
    if tangent is None and isinstance(data, DeclaredSubschemeData):
        declared = data.declared.get("tangent_dim")
        if declared is None and data.declared.get("smooth") and \
                data.declared.get("hilbert_dim") is not None:
            declared = data.declared["hilbert_dim"]
        if declared is not None:
            tangent = TangentInfo(int(declared), "declared")
    if data.is_acm():
        result = SumextResult(0, "exact", "acm", base,
                              tangent_dim=tangent.dim if tangent else None)
        if tangent is not None and base - tangent.dim != 0:
            raise ValueError(
                f"tangent dimension {tangent.dim} contradicts the ACM value "
                f"{base} of the tangent space")
        return result
    cross = None
    if isinstance(data, SubschemeData) and data.n == 1:
        module_value, parts = _curve_module_sum(data)
        if tangent is None:
            return SumextResult(module_value, "exact", "curve-modules", base,
                                cross_check=parts)
        value = base - tangent.dim
        parts["agrees"] = module_value == value
        cross = parts
    if tangent is not None:
        return SumextResult(base - tangent.dim, "exact", tangent.method, base,
                            tangent_dim=tangent.dim, cross_check=cross)
    if isinstance(data, SubschemeData):
        ext1 = data.ext_ideal_ideal(1)
        slack = sum(data.hom_deficiency_chain())
        return SumextResult(None, "interval", "tangent-bounds", base,
                            interval=(base - ext1, base - ext1 + slack))
    return SumextResult(None, "interval", "undetermined", base,
                        interval=(None, None))


@dataclass(frozen=True)
class ObsumextResult:
    """1 + delta^{n+1}(-n-3) minus the local Hilbert-scheme dimension at
    constant cohomology; equals sumext exactly at smooth points."""

    value: int | None
    status: str
    certificate: str | None
    interval: tuple[int | None, int | None]

    def as_dict(self) -> dict:
        out: dict = {"status": self.status, "interval": list(self.interval)}
        if self.value is not None:
            out["value"] = self.value
        if self.certificate is not None:
            out["certificate"] = self.certificate
        return out


def _smoothness_certificate(data: SubschemeBase) -> str | None:
    """A verified reason the constant-cohomology locus is smooth here."""
    if data.is_acm():
        return "acm"
    if isinstance(data, DeclaredSubschemeData):
        if data.declared.get("smooth"):
            return "declared-smooth"
        if data.declared.get("generic"):
            return "declared-generic"
        return None
    if data.n == 1:
        m = data.rao[1]
        if module_ext_dim(m, m, 2, 0) == 0:
            return "module-deformations-smooth"
    elif data.n == 2:
        m1, m2 = data.rao[1], data.rao[2]
        if (module_ext_dim(m1, m1, 2, 0) == 0
                and module_ext_dim(m2, m2, 2, 0) == 0
                and module_ext_dim(m2, m1, 3, 0) == 0):
            return "module-deformations-smooth"
    return None


def obsumext_bounds(data: SubschemeBase,
                    sumext_result: SumextResult | None = None) -> ObsumextResult:
    """Bounds, and when certified the exact value, of the obstruction-side
    biliaison invariant.  Never guessed: exact only with a certificate."""
    sx = sumext_result if sumext_result is not None else sumext(data)
    if data.is_acm():
        return ObsumextResult(0, "exact", "acm", (0, 0))
    if isinstance(data, DeclaredSubschemeData):
        hd = data.declared.get("hilbert_dim")
        if hd is not None and (data.declared.get("smooth")
                               or data.declared.get("generic")
                               or data.seminatural_cohomology()):
            value = sx.base - int(hd)
            return ObsumextResult(value, "exact", "declared-dimension", (value, value))
    cert = _smoothness_certificate(data)
    if cert is not None and sx.value is not None:
        return ObsumextResult(sx.value, "exact", cert, (sx.value, sx.value))
    lower = sx.value if sx.value is not None else (
        sx.interval[0] if sx.interval else None)
    upper: int | None = None
    if isinstance(data, SubschemeData) and data.n == 1 and sx.value is not None:
        m = data.rao[1]
        upper = sx.value + module_ext_dim(m, m, 2, 0)
    return ObsumextResult(None, "interval", None, (lower, upper))


@dataclass(frozen=True)
class DimensionEstimate:
    value: int
    formula: str
    status: str
    note: str = ""

    def as_dict(self) -> dict:
        out = {"value": self.value, "formula": self.formula, "status": self.status}
        if self.note:
            out["note"] = self.note
        return out


@dataclass(frozen=True)
class ObstructionDiagnosis:
    verdict: str
    criterion: str
    conditions: tuple[tuple[str, bool], ...]
    dimension: int | None = None

    @property
    def unobstructed(self) -> bool:
        return self.verdict == "unobstructed"

    def as_dict(self) -> dict:
        out = {
            "verdict": self.verdict,
            "criterion": self.criterion,
            "conditions": {k: v for k, v in self.conditions},
        }
        if self.dimension is not None:
            out["dimension"] = self.dimension
        return out


def _vanishing_on_twists(data: SubschemeBase, i: int, level: int, shift: int) -> bool:
    return all(data.h(i, k + shift) == 0 for k in data.betti.twists_at(level))


def _sum_on_twists(data: SubschemeBase, i: int, level: int, shift: int) -> int:
    return sum(data.h(i, k + shift) for k in data.betti.twists_at(level))


def unobstructedness_check(data: SubschemeBase) -> ObstructionDiagnosis:
    """One-sided smoothness criteria for the Hilbert scheme at X.

    The symbolic front-end tests the actual Hom and Ext groups; the
    declared front-end tests the printed sufficient conditions, which
    bound those groups by rows of the cohomology table.  Failure means
    inconclusive, never obstructed."""
    n = data.n
    c = n + 3
    symbolic = isinstance(data, SubschemeData)
    if data.is_acm():
        dim = 1 + delta(data, n + 1, -c)
        return ObstructionDiagnosis(
            "unobstructed", "acm", (("deficiency modules vanish", True),), dim)

    if n == 1:
        if symbolic:
            conds = [
                ("Hom(I, M)_0 = 0", data.ext_ideal_deficiency(0, 1, 0) == 0),
                ("Hom(I, M)_{-4} = 0", data.ext_ideal_deficiency(0, 1, -4) == 0),
            ]
        else:
            conds = [
                ("h^1(I(n_{1,i})) all vanish", _vanishing_on_twists(data, 1, 1, 0)),
                ("h^1(I(n_{1,i}-4)) all vanish", _vanishing_on_twists(data, 1, 1, -4)),
            ]
        if all(ok for _, ok in conds):
            return ObstructionDiagnosis(
                "unobstructed", "curve-hom-vanishing", tuple(conds),
                1 - delta(data, 0, 0))
        return ObstructionDiagnosis("inconclusive", "curve-hom-vanishing", tuple(conds))

    if n == 2:
        if symbolic:
            conds = [
                ("Hom(I, M_1)_0 = 0", data.ext_ideal_deficiency(0, 1, 0) == 0),
                ("Ext^1(I, M_1)_{-5} = 0", data.ext_ideal_deficiency(1, 1, -5) == 0),
                ("Hom(I, M_2)_{-5} = 0", data.ext_ideal_deficiency(0, 2, -5) == 0),
            ]
            correction = data.ext_ideal_deficiency(0, 1, -5)
        else:
            conds = [
                ("h^1(I(n_{1,i})) all vanish", _vanishing_on_twists(data, 1, 1, 0)),
                ("h^1(I(n_{2,i}-5)) all vanish", _vanishing_on_twists(data, 1, 2, -5)),
                ("h^2(I(n_{1,i}-5)) all vanish", _vanishing_on_twists(data, 2, 1, -5)),
            ]
            correction = _sum_on_twists(data, 1, 1, -5)
            if correction:
                conds.append(("h^1(I(n_{1,i}-5)) all vanish (correction term)", False))
        if all(ok for _, ok in conds):
            dim = (1 + delta(data, 3, -5) - delta(data, 2, -5)
                   + delta(data, 1, -5) - correction)
            return ObstructionDiagnosis(
                "unobstructed", "surface-hom-ext-vanishing", tuple(conds), dim)
        return ObstructionDiagnosis(
            "inconclusive", "surface-hom-ext-vanishing", tuple(conds))

    if symbolic:
        conds = [
            ("Hom(I, M_1)_0 = 0", data.ext_ideal_deficiency(0, 1, 0) == 0),
            ("Ext^2(I, M_1)_{-6} = 0", data.ext_ideal_deficiency(2, 1, -6) == 0),
            ("Ext^1(I, M_2)_{-6} = 0", data.ext_ideal_deficiency(1, 2, -6) == 0),
            ("Hom(I, M_3)_{-6} = 0", data.ext_ideal_deficiency(0, 3, -6) == 0),
        ]
    else:
        conds = [
            ("h^1(I(n_{1,i})) all vanish", _vanishing_on_twists(data, 1, 1, 0)),
            ("h^3(I(n_{1,i}-6)) all vanish", _vanishing_on_twists(data, 3, 1, -6)),
            ("h^2(I(n_{2,i}-6)) all vanish", _vanishing_on_twists(data, 2, 2, -6)),
            ("h^1(I(n_{3,i}-6)) all vanish", _vanishing_on_twists(data, 1, 3, -6)),
        ]
    if not all(ok for _, ok in conds):
        return ObstructionDiagnosis(
            "inconclusive", "threefold-hom-ext-vanishing", tuple(conds))
    extra = [
        ("h^2(I(n_{1,i}-6)) all vanish", _vanishing_on_twists(data, 2, 1, -6)),
        ("h^1(I(n_{2,i}-6)) all vanish", _vanishing_on_twists(data, 1, 2, -6)),
        ("h^1(I(n_{1,i}-6)) all vanish", _vanishing_on_twists(data, 1, 1, -6)),
    ]
    dim: int | None = None
    if all(ok for _, ok in extra):
        dim = 1 - delta(data, 0, 0)
    elif symbolic:
        dim = data.ext_ideal_ideal(1)
    return ObstructionDiagnosis(
        "unobstructed", "threefold-hom-ext-vanishing", tuple(conds + extra), dim)


def h1_normal_vanishing(data: SubschemeBase) -> ObstructionDiagnosis:
    """Sufficient cohomological conditions for h^1 of the normal sheaf
    to vanish.  One-sided; only surfaces and 3-folds are covered."""
    n = data.n
    if n == 2:
        conds = [
            ("h^1(I(n_{2,i})) all vanish", _vanishing_on_twists(data, 1, 2, 0)),
            ("h^1(I(n_{2,i}-5)) all vanish", _vanishing_on_twists(data, 1, 2, -5)),
            ("h^2(I(n_{1,i})) all vanish", _vanishing_on_twists(data, 2, 1, 0)),
            ("h^2(I(n_{1,i}-5)) all vanish", _vanishing_on_twists(data, 2, 1, -5)),
        ]
    elif n == 3:
        conds = [
            ("h^1(I(n_{2,i})) all vanish", _vanishing_on_twists(data, 1, 2, 0)),
            ("h^2(I(n_{2,i}-6)) all vanish", _vanishing_on_twists(data, 2, 2, -6)),
            ("h^2(I(n_{1,i})) all vanish", _vanishing_on_twists(data, 2, 1, 0)),
            ("h^3(I(n_{1,i}-6)) all vanish", _vanishing_on_twists(data, 3, 1, -6)),
            ("h^1(I(n_{3,i}-6)) all vanish", _vanishing_on_twists(data, 1, 3, -6)),
        ]
    else:
        raise ValueError("normal-sheaf vanishing criterion needs a surface or 3-fold")
    verdict = "vanishes" if all(ok for _, ok in conds) else "inconclusive"
    return ObstructionDiagnosis(verdict, "normal-sheaf-h1", tuple(conds))


def dimension_estimates(data: SubschemeBase,
                        tangent: TangentInfo | None = None,
                        generic: bool = False,
                        sumext_result: SumextResult | None = None) -> list[DimensionEstimate]:
    """Every applicable Hilbert-scheme dimension formula, each tagged
    exact or lower-bound according to what its hypotheses certify."""
    n = data.n
    c = n + 3
    out: list[DimensionEstimate] = []
    diag = unobstructedness_check(data)
    sx = sumext_result if sumext_result is not None else sumext(data, tangent=tangent)

    if data.is_acm():
        out.append(DimensionEstimate(
            1 + delta(data, n + 1, -c), f"1 + delta^{n + 1}({-c})", "exact",
            "deficiency modules vanish"))
        return out

    if n == 1:
        lower = 1 - delta(data, 0, 0)
        if diag.unobstructed:
            out.append(DimensionEstimate(lower, "1 - delta^0(0)", "exact",
                                         diag.criterion))
        else:
            out.append(DimensionEstimate(lower, "1 - delta^0(0)", "lower bound"))
        if sx.value is not None:
            base = 1 + delta(data, 2, -4)
            status = "exact" if generic else "lower bound"
            note = "declared generic" if generic else "generic points attain it"
            out.append(DimensionEstimate(base - sx.value,
                                         "1 + delta^2(-4) - sumext", status, note))
        if generic and isinstance(data, SubschemeData):
            corr = data.ext_ideal_deficiency(0, 1, -4)
            value = (4 * data.character.degree + delta(data, 2, 0)
                     - delta(data, 1, 0) + corr)
            out.append(DimensionEstimate(
                value, "4d + delta^2(0) - delta^1(0) + hom(I,M)_{-4}",
                "exact", "declared generic"))
        return out

    if n == 2:
        chain = (1 + delta(data, 3, -5) - delta(data, 2, -5) + delta(data, 1, -5))
        out.append(DimensionEstimate(
            chain - _sum_on_twists(data, 1, 1, -5),
            "1 + delta^3(-5) - delta^2(-5) + delta^1(-5) - sum h^1(I(n_{1,i}-5))",
            "lower bound"))
        if diag.unobstructed and diag.dimension is not None:
            out.append(DimensionEstimate(
                diag.dimension,
                "1 + delta^3(-5) - delta^2(-5) + delta^1(-5) - hom(I,M_1)_{-5}",
                "exact", diag.criterion))
        if generic and isinstance(data, SubschemeData) \
                and data.ext_ideal_deficiency(0, 2, -5) == 0:
            corr = (data.ext_ideal_deficiency(0, 1, -5)
                    - data.ext_ideal_deficiency(1, 1, -5))
            out.append(DimensionEstimate(
                chain - corr,
                "chain - (hom - ext^1)(I,M_1)_{-5}", "exact", "declared generic"))
    else:
        if diag.unobstructed and diag.dimension is not None:
            out.append(DimensionEstimate(
                diag.dimension, "1 - delta^0(0)" if not isinstance(data, SubschemeData)
                else "ext^1(I,I)_0", "exact", diag.criterion))

    if sx.value is not None:
        base = 1 + delta(data, n + 1, -c)
        status = "exact" if generic else "lower bound"
        note = "declared generic" if generic else "generic points attain it"
        out.append(DimensionEstimate(
            base - sx.value, f"1 + delta^{n + 1}({-c}) - sumext", status, note))
    return out


@dataclass(frozen=True)
class InvariantReport:
    """Aggregate of every invariant the front-ends can certify."""

    n: int
    character: NumericalCharacter
    betti: BettiTable
    delta_table: dict[int, dict[int, int]]
    one_minus_delta0: int
    chi_normal_0: int
    identity: IdentityCheck
    sumext: SumextResult
    obsumext: ObsumextResult
    estimates: tuple[DimensionEstimate, ...]
    obstruction: ObstructionDiagnosis
    h1_normal: ObstructionDiagnosis | None
    seminatural: bool
    acm: bool

    def as_dict(self) -> dict:
        return {
            "n": self.n,
            "character": self.character.as_dict(),
            "betti": self.betti.json_rows(),
            "delta": {
                str(m): {str(v): val for v, val in row.items()}
                for m, row in self.delta_table.items()
            },
            "one_minus_delta0": self.one_minus_delta0,
            "chi_normal": self.chi_normal_0,
            "identity_chain": self.identity.as_dict(),
            "sumext": self.sumext.as_dict(),
            "obsumext": self.obsumext.as_dict(),
            "dimension_estimates": [e.as_dict() for e in self.estimates],
            "unobstructedness": self.obstruction.as_dict(),
            "h1_normal_sheaf": (
                self.h1_normal.as_dict() if self.h1_normal is not None else None),
            "seminatural_cohomology": self.seminatural,
            "acm": self.acm,
        }


def invariant_report(data: SubschemeBase,
                     tangent: TangentInfo | None = None,
                     generic: bool = False,
                     shifts: Sequence[int] | None = None) -> InvariantReport:
    """Run every invariant over the data and collect the results."""
    n = data.n
    if shifts is None:
        shifts = (0, -n - 3)
    table = {
        m: {v: delta(data, m, v) for v in shifts}
        for m in range(n + 2)
    }
    sx = sumext(data, tangent=tangent)
    return InvariantReport(
        n=n,
        character=data.character,
        betti=data.betti,
        delta_table=table,
        one_minus_delta0=1 - delta(data, 0, 0),
        chi_normal_0=chi_normal(data.character, 0),
        identity=euler_identity_check(data),
        sumext=sx,
        obsumext=obsumext_bounds(data, sumext_result=sx),
        estimates=tuple(dimension_estimates(
            data, tangent=tangent, generic=generic, sumext_result=sx)),
        obstruction=unobstructedness_check(data),
        h1_normal=h1_normal_vanishing(data) if n in (2, 3) else None,
        seminatural=data.seminatural_cohomology(),
        acm=data.is_acm(),
    )
