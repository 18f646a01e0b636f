"""Exact arithmetic substrate: prime-field coefficients, sparse homogeneous
polynomials, and the degree-reverse-lexicographic monomial order.

Monomials are plain exponent tuples; all coefficient arithmetic is exact
(ints mod p, or Fraction when the characteristic is 0).
"""

from __future__ import annotations

import hashlib
import random
import re
from fractions import Fraction
from functools import lru_cache
from math import comb
from typing import Iterable, Iterator, Sequence

Monomial = tuple[int, ...]

DEFAULT_CHAR = 32003


def mono_deg(m: Monomial) -> int:
    return sum(m)


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_divides(a: Monomial, b: Monomial) -> bool:
    """True iff a | b."""
    return all(x <= y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    """a / b; caller guarantees divisibility."""
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def grevlex_key(m: Monomial) -> tuple[int, ...]:
    """Tuple whose natural order is grevlex: total degree first, then the
    reversed exponent vector compared with reversed inequality."""
    return (sum(m), *(-e for e in reversed(m)))


@lru_cache(maxsize=4096)
def monomials_of_degree(nvars: int, d: int) -> tuple[Monomial, ...]:
    """All degree-d monomials in nvars variables, grevlex-descending."""
    if d < 0:
        return ()
    out: list[Monomial] = []

    def rec(prefix: list[int], rest: int, pos: int) -> None:
        if pos == nvars - 1:
            out.append(tuple(prefix + [rest]))
            return
        for e in range(rest, -1, -1):
            rec(prefix + [e], rest - e, pos + 1)

    rec([], d, 0)
    out.sort(key=grevlex_key, reverse=True)
    return tuple(out)


def dim_graded_piece(nvars: int, d: int) -> int:
    """dim_k R_d = C(d + nvars - 1, nvars - 1), zero in negative degrees."""
    if d < 0:
        return 0
    return comb(d + nvars - 1, nvars - 1)


def euler_OP(nvars: int, v: int) -> int:
    """chi(O_P(v)) = C(v + nvars - 1, nvars - 1) as a polynomial in v,
    evaluated exactly at any integer (negative included)."""
    num = 1
    for i in range(1, nvars):
        num *= v + i
    den = 1
    for i in range(1, nvars):
        den *= i
    q, r = divmod(num, den)
    assert r == 0
    return q


class PolyRing:
    """Coordinate ring k[x_0..x_{N-1}] of P^{N-1}, graded, grevlex order.

    char is a prime (arithmetic in Z/p) or 0 (exact rationals; expect
    coefficient blowup on anything beyond small inputs).
    """

    __slots__ = ("char", "nvars", "names", "zero_mono")

    def __init__(self, nvars: int, char: int = DEFAULT_CHAR, names: Sequence[str] | None = None):
        if nvars < 3:
            raise ValueError("need at least 3 variables (ambient P^2 or larger)")
        if char < 0 or char == 1:
            raise ValueError(f"invalid characteristic {char}")
        if char and not _is_prime(char):
            raise ValueError(f"characteristic {char} is not prime")
        self.char = char
        self.nvars = nvars
        self.names = tuple(names) if names is not None else tuple(f"x{i}" for i in range(nvars))
        if len(self.names) != nvars:
            raise ValueError("variable name count mismatch")
        self.zero_mono: Monomial = (0,) * nvars

    def __repr__(self) -> str:
        field = f"F_{self.char}" if self.char else "Q"
        return f"PolyRing({field}[{', '.join(self.names)}])"

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, PolyRing)
            and self.char == other.char
            and self.nvars == other.nvars
            and self.names == other.names
        )

    def __hash__(self) -> int:
        return hash((self.char, self.nvars, self.names))

    # -- coefficient field -------------------------------------------------

    def cnorm(self, c):
        if self.char:
            # int() guards against numpy integers sneaking in from matrix
            # coordinates; they break 3-argument pow in cinv
            return int(c) % self.char
        return Fraction(c)

    def cneg(self, c):
        if self.char:
            return (-c) % self.char
        return -c

    def cinv(self, c):
        if self.char:
            return pow(c, self.char - 2, self.char)
        return Fraction(1) / c

    # -- constructors --------------------------------------------------------

    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {self.zero_mono: self.cnorm(1)})

    def constant(self, c) -> "Poly":
        c = self.cnorm(c)
        return Poly(self, {self.zero_mono: c} if c else {})

    def variable(self, i: int) -> "Poly":
        m = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Poly(self, {m: self.cnorm(1)})

    def variables(self) -> list["Poly"]:
        return [self.variable(i) for i in range(self.nvars)]

    def monomial(self, exps: Monomial, c=1) -> "Poly":
        c = self.cnorm(c)
        return Poly(self, {tuple(exps): c} if c else {})

    def from_terms(self, terms: dict) -> "Poly":
        clean = {}
        for m, c in terms.items():
            c = self.cnorm(c)
            if c:
                clean[tuple(m)] = c
        return Poly(self, clean)

    def random_form(self, degree: int, seed: int | random.Random) -> "Poly":
        """Dense homogeneous form with coefficients drawn deterministically;
        never zero."""
        if degree < 0:
            raise ValueError("degree must be nonnegative")
        if isinstance(seed, random.Random):
            rng = seed
        else:
            digest = hashlib.blake2b(
                f"form:{seed}:{degree}:{self.nvars}:{self.char}".encode(), digest_size=8
            ).digest()
            rng = random.Random(int.from_bytes(digest, "big"))
        monos = monomials_of_degree(self.nvars, degree)
        bound = self.char if self.char else 2**31
        while True:
            terms = {}
            for m in monos:
                c = rng.randrange(bound)
                if c:
                    terms[m] = self.cnorm(c)
            if terms:
                return Poly(self, terms)

    def linear_change(self, mat: Sequence[Sequence[int]]) -> "list[Poly]":
        """Images of the variables under x_j -> sum_i mat[j][i] * x_i."""
        if len(mat) != self.nvars or any(len(row) != self.nvars for row in mat):
            raise ValueError("substitution matrix must be square of size nvars")
        return [
            Poly(self, {m: self.cnorm(c) for m, c in (
                (tuple(1 if t == i else 0 for t in range(self.nvars)), row[i])
                for i in range(self.nvars)) if self.cnorm(c)})
            for row in mat
        ]

    # -- parsing / printing --------------------------------------------------

    def parse(self, text: str) -> "Poly":
        return _parse_poly(self, text)

    def coeff_str(self, c) -> str:
        if self.char and c > self.char // 2:
            return str(c - self.char)
        return str(c)


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    for q in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37):
        x = pow(a, d, n)
        if x in (1, n - 1):
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


class Poly:
    """Sparse homogeneous-friendly polynomial: {monomial: nonzero coeff}.

    Treated as immutable; all operations return fresh instances.
    """

    __slots__ = ("ring", "terms", "_lt")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms
        self._lt = None

    # -- structure -----------------------------------------------------------

    def __bool__(self) -> bool:
        return bool(self.terms)

    def __len__(self) -> int:
        return len(self.terms)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Poly):
            return self.ring == other.ring and self.terms == other.terms
        if other == 0:
            return not self.terms
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.ring, frozenset(self.terms.items())))

    @property
    def degree(self) -> int:
        """Total degree (-1 for the zero polynomial)."""
        if not self.terms:
            return -1
        return max(sum(m) for m in self.terms)

    def is_homogeneous(self) -> bool:
        degs = {sum(m) for m in self.terms}
        return len(degs) <= 1

    def lt(self) -> tuple[Monomial, object]:
        """(leading monomial, leading coefficient) under grevlex."""
        if not self.terms:
            raise ValueError("zero polynomial has no leading term")
        if self._lt is None:
            m = max(self.terms, key=grevlex_key)
            self._lt = (m, self.terms[m])
        return self._lt

    def lm(self) -> Monomial:
        return self.lt()[0]

    def lc(self):
        return self.lt()[1]

    def monic(self) -> "Poly":
        if not self.terms:
            return self
        inv = self.ring.cinv(self.lc())
        if inv == 1:
            return self
        return self.scale(inv)

    def sorted_terms(self) -> list[tuple[Monomial, object]]:
        return sorted(self.terms.items(), key=lambda t: grevlex_key(t[0]), reverse=True)

    # -- arithmetic ------------------------------------------------------------

    def __add__(self, other: "Poly") -> "Poly":
        p = self.ring.char
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m)
            if acc is None:
                terms[m] = c
            else:
                acc = (acc + c) % p if p else acc + c
                if acc:
                    terms[m] = acc
                else:
                    del terms[m]
        return Poly(self.ring, terms)

    def __sub__(self, other: "Poly") -> "Poly":
        p = self.ring.char
        terms = dict(self.terms)
        for m, c in other.terms.items():
            acc = terms.get(m, 0)
            acc = (acc - c) % p if p else acc - c
            if acc:
                terms[m] = acc
            elif m in terms:
                del terms[m]
        return Poly(self.ring, terms)

    def __neg__(self) -> "Poly":
        neg = self.ring.cneg
        return Poly(self.ring, {m: neg(c) for m, c in self.terms.items()})

    def scale(self, c) -> "Poly":
        p = self.ring.char
        c = self.ring.cnorm(c)
        if not c:
            return self.ring.zero()
        if p:
            return Poly(self.ring, {m: cc * c % p for m, cc in self.terms.items()})
        return Poly(self.ring, {m: cc * c for m, cc in self.terms.items()})

    def mul_term(self, mono: Monomial, c) -> "Poly":
        p = self.ring.char
        c = self.ring.cnorm(c)
        if not c:
            return self.ring.zero()
        if p:
            return Poly(self.ring, {mono_mul(m, mono): cc * c % p for m, cc in self.terms.items()})
        return Poly(self.ring, {mono_mul(m, mono): cc * c for m, cc in self.terms.items()})

    def __mul__(self, other) -> "Poly":
        if isinstance(other, Poly):
            p = self.ring.char
            a, b = self.terms, other.terms
            if len(a) > len(b):
                a, b = b, a
            acc: dict[Monomial, object] = {}
            for m1, c1 in a.items():
                for m2, c2 in b.items():
                    m = mono_mul(m1, m2)
                    v = acc.get(m, 0) + c1 * c2
                    acc[m] = v % p if p else v
            return Poly(self.ring, {m: c for m, c in acc.items() if c})
        return self.scale(other)

    def __rmul__(self, other) -> "Poly":
        return self.scale(other)

    def __pow__(self, e: int) -> "Poly":
        if e < 0:
            raise ValueError("negative power")
        out = self.ring.one()
        base = self
        while e:
            if e & 1:
                out = out * base
            base = base * base if e > 1 else base
            e >>= 1
        return out

    def substitute(self, images: Sequence["Poly"]) -> "Poly":
        """Evaluate at x_i -> images[i] (ring endomorphism)."""
        ring = self.ring
        out = ring.zero()
        pow_cache: dict[tuple[int, int], Poly] = {}
        for m, c in self.terms.items():
            part = ring.constant(c)
            for i, e in enumerate(m):
                if not e:
                    continue
                key = (i, e)
                pw = pow_cache.get(key)
                if pw is None:
                    pw = images[i] ** e
                    pow_cache[key] = pw
                part = part * pw
            out = out + part
        return out

    # -- printing ------------------------------------------------------------

    def __repr__(self) -> str:
        return str(self)

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        ring = self.ring
        parts = []
        for m, c in self.sorted_terms():
            cs = ring.coeff_str(c)
            factors = [
                ring.names[i] + (f"^{e}" if e > 1 else "")
                for i, e in enumerate(m)
                if e
            ]
            if not factors:
                parts.append(cs)
            elif cs == "1":
                parts.append("*".join(factors))
            elif cs == "-1":
                parts.append("-" + "*".join(factors))
            else:
                parts.append(cs + "*" + "*".join(factors))
        out = parts[0]
        for term in parts[1:]:
            out += " - " + term[1:] if term.startswith("-") else " + " + term
        return out


def _tokenizer(ring: PolyRing) -> re.Pattern:
    # declared variable names take precedence (longest first) so juxtaposed
    # products like x0x1 split correctly
    names = sorted(ring.names, key=len, reverse=True)
    alts = "|".join(re.escape(n) for n in names)
    return re.compile(rf"\s*({alts}|\d+|[A-Za-z_][A-Za-z_0-9]*|\^|\*|\+|-|\(|\))")


def _parse_poly(ring: PolyRing, text: str) -> Poly:
    token_re = _tokenizer(ring)
    tokens: list[str] = []
    pos = 0
    while pos < len(text):
        m = token_re.match(text, pos)
        if not m:
            if text[pos:].strip():
                raise ValueError(f"cannot tokenize polynomial at: {text[pos:pos + 20]!r}")
            break
        tokens.append(m.group(1))
        pos = m.end()
    idx = 0
    var_index = {name: i for i, name in enumerate(ring.names)}

    def peek() -> str | None:
        return tokens[idx] if idx < len(tokens) else None

    def take() -> str:
        nonlocal idx
        tok = tokens[idx]
        idx += 1
        return tok

    def parse_sum() -> Poly:
        sign = 1
        while peek() in ("+", "-"):
            if take() == "-":
                sign = -sign
        acc = parse_product().scale(sign)
        while peek() in ("+", "-"):
            sign = 1
            while peek() in ("+", "-"):
                if take() == "-":
                    sign = -sign
            acc = acc + parse_product().scale(sign)
        return acc

    def parse_product() -> Poly:
        acc = parse_power()
        while True:
            nxt = peek()
            if nxt == "*":
                take()
                acc = acc * parse_power()
            elif nxt is not None and (nxt.isdigit() or nxt in var_index or nxt == "("):
                acc = acc * parse_power()  # juxtaposition
            else:
                return acc

    def parse_power() -> Poly:
        base = parse_atom()
        if peek() == "^":
            take()
            exp_tok = take()
            if not exp_tok.isdigit():
                raise ValueError(f"expected integer exponent, got {exp_tok!r}")
            return base ** int(exp_tok)
        return base

    def parse_atom() -> Poly:
        tok = take()
        if tok == "(":
            inner = parse_sum()
            if take() != ")":
                raise ValueError("unbalanced parentheses")
            return inner
        if tok.isdigit():
            return ring.constant(int(tok))
        if tok in var_index:
            return ring.variable(var_index[tok])
        raise ValueError(f"unknown variable {tok!r}")

    if not tokens:
        raise ValueError("empty polynomial")
    out = parse_sum()
    if idx != len(tokens):
        raise ValueError(f"trailing tokens: {' '.join(tokens[idx:])}")
    return out
