"""Exact multivariate Laurent-polynomial and rational-function arithmetic.

A Laurent polynomial is stored as a dict mapping integer exponent vectors
(one slot per generator, negative entries allowed) to nonzero arbitrary
precision integer coefficients.  All arithmetic is exact; there is no
floating-point mode.  Rational functions are pairs of Laurent polynomials
normalized so that the denominator is a genuine polynomial with positive
leading coefficient and no common factor with the numerator.

Generator order is fixed per context (for cluster seeds it is the vertex
order of the ambient quiver), and operations refuse to mix value families
with different generator lists.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd as _int_gcd
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Exponents = Tuple[int, ...]


class NotDivisible(ArithmeticError):
    """Raised when an exact Laurent division has a nonzero remainder."""


def _as_terms(terms: Mapping[Exponents, int]) -> Dict[Exponents, int]:
    return {e: c for e, c in terms.items() if c != 0}


class LaurentPoly:
    """Immutable Laurent polynomial with integer coefficients."""

    __slots__ = ("gens", "terms")

    def __init__(self, gens: Sequence[str], terms: Mapping[Exponents, int]):
        object.__setattr__(self, "gens", tuple(gens))
        clean = _as_terms(terms)
        for e in clean:
            if len(e) != len(self.gens):
                raise ValueError(
                    f"exponent vector {e} does not match {len(self.gens)} generators"
                )
        object.__setattr__(self, "terms", clean)

    def __setattr__(self, *_):
        raise AttributeError("LaurentPoly is immutable")

    # -- constructors ------------------------------------------------------

    @classmethod
    def zero(cls, gens: Sequence[str]) -> "LaurentPoly":
        return cls(gens, {})

    @classmethod
    def const(cls, gens: Sequence[str], value: int) -> "LaurentPoly":
        if value == 0:
            return cls.zero(gens)
        return cls(gens, {(0,) * len(gens): int(value)})

    @classmethod
    def monomial(cls, gens: Sequence[str], exps: Sequence[int], coeff: int = 1) -> "LaurentPoly":
        return cls(gens, {tuple(int(e) for e in exps): int(coeff)})

    @classmethod
    def var(cls, gens: Sequence[str], name: str, power: int = 1) -> "LaurentPoly":
        idx = list(gens).index(name)
        exps = [0] * len(gens)
        exps[idx] = power
        return cls.monomial(gens, exps)

    # -- predicates --------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def is_one(self) -> bool:
        return self.terms == {(0,) * len(self.gens): 1}

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def constant_term(self) -> int:
        return self.terms.get((0,) * len(self.gens), 0)

    # -- arithmetic --------------------------------------------------------

    def _check(self, other: "LaurentPoly") -> None:
        if self.gens != other.gens:
            raise ValueError(f"generator mismatch: {self.gens} vs {other.gens}")

    def __add__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) + c
        return LaurentPoly(self.gens, out)

    def __sub__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out = dict(self.terms)
        for e, c in other.terms.items():
            out[e] = out.get(e, 0) - c
        return LaurentPoly(self.gens, out)

    def __neg__(self) -> "LaurentPoly":
        return LaurentPoly(self.gens, {e: -c for e, c in self.terms.items()})

    def __mul__(self, other: "LaurentPoly") -> "LaurentPoly":
        self._check(other)
        out: Dict[Exponents, int] = {}
        for e1, c1 in self.terms.items():
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return LaurentPoly(self.gens, out)

    def scale(self, value: int) -> "LaurentPoly":
        if value == 0:
            return LaurentPoly.zero(self.gens)
        return LaurentPoly(self.gens, {e: c * value for e, c in self.terms.items()})

    def __pow__(self, n: int) -> "LaurentPoly":
        if n < 0:
            if not self.is_monomial():
                raise NotDivisible(f"negative power of non-monomial {self}")
            ((e, c),) = self.terms.items()
            if c * c != 1:
                raise NotDivisible(f"negative power of non-unit coefficient {c}")
            coeff = c if n % 2 else 1
            return LaurentPoly(self.gens, {tuple(n * x for x in e): coeff})
        result = LaurentPoly.const(self.gens, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, LaurentPoly)
            and self.gens == other.gens
            and self.terms == other.terms
        )

    def __hash__(self) -> int:
        return hash((self.gens, frozenset(self.terms.items())))

    # -- structure ---------------------------------------------------------

    def min_exponents(self) -> Exponents:
        """Componentwise minimum exponent over all terms (zero poly -> zeros)."""
        if not self.terms:
            return (0,) * len(self.gens)
        cols = zip(*self.terms.keys())
        return tuple(min(col) for col in cols)

    def leading(self) -> Tuple[Exponents, int]:
        """Lexicographically largest term; used for canonical signs."""
        e = max(self.terms)
        return e, self.terms[e]

    def shift(self, exps: Sequence[int]) -> "LaurentPoly":
        d = tuple(exps)
        return LaurentPoly(self.gens, {tuple(a + b for a, b in zip(e, d)): c for e, c in self.terms.items()})

    def poly_part(self) -> Tuple["LaurentPoly", Exponents]:
        """Split off the monomial content: self == part.shift(shift_exps)."""
        m = self.min_exponents()
        return self.shift(tuple(-x for x in m)), m

    # -- substitution / evaluation ------------------------------------------

    def subs_one(self, names: Iterable[str]) -> "LaurentPoly":
        """Set the given generators to 1 (used for F-polynomial extraction)."""
        idxs = {list(self.gens).index(n) for n in names}
        out: Dict[Exponents, int] = {}
        for e, c in self.terms.items():
            e2 = tuple(0 if i in idxs else x for i, x in enumerate(e))
            out[e2] = out.get(e2, 0) + c
        return LaurentPoly(self.gens, out)

    def rename_gens(self, gens: Sequence[str], mapping: Mapping[str, str]) -> "LaurentPoly":
        """Reinterpret over a new generator list, sending old name -> mapping[name]."""
        new_gens = tuple(gens)
        pos = {n: i for i, n in enumerate(new_gens)}
        out: Dict[Exponents, int] = {}
        for e, c in self.terms.items():
            e2 = [0] * len(new_gens)
            for old_i, x in enumerate(e):
                if x:
                    e2[pos[mapping.get(self.gens[old_i], self.gens[old_i])]] += x
            key = tuple(e2)
            out[key] = out.get(key, 0) + c
        return LaurentPoly(new_gens, out)

    def eval_fractions(self, values: Mapping[str, Fraction]) -> Fraction:
        total = Fraction(0)
        vals = [Fraction(values[g]) for g in self.gens]
        for e, c in self.terms.items():
            term = Fraction(c)
            for v, x in zip(vals, e):
                term *= v ** x
            total += term
        return total

    # -- serialization -------------------------------------------------------

    def to_string(self) -> str:
        """Canonical string: monomials sorted lex-descending, '^' powers, '*' products."""
        if not self.terms:
            return "0"
        pieces = []
        for e in sorted(self.terms, reverse=True):
            c = self.terms[e]
            factors = [
                f"{g}^{x}" if x != 1 else g
                for g, x in zip(self.gens, e)
                if x != 0
            ]
            body = "*".join(factors)
            mag = abs(c)
            if not body:
                text = str(mag)
            elif mag == 1:
                text = body
            else:
                text = f"{mag}*{body}"
            pieces.append(("- " if c < 0 else "+ ") + text)
        first = pieces[0]
        out = ("-" + first[2:]) if first.startswith("- ") else first[2:]
        for p in pieces[1:]:
            out += " " + p
        return out

    def to_json(self) -> list:
        return [[list(e), str(c)] for e, c in sorted(self.terms.items(), reverse=True)]

    @classmethod
    def from_json(cls, gens: Sequence[str], data: Iterable) -> "LaurentPoly":
        return cls(gens, {tuple(e): int(c) for e, c in data})

    def __repr__(self) -> str:
        return f"LaurentPoly({self.to_string()!r})"


# -- exact division ----------------------------------------------------------


def lp_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Return q with q*b == a, or raise NotDivisible.

    Both arguments are shifted to genuine polynomials first; the quotient of
    Laurent polynomials with matching componentwise-minimal exponents is again
    a polynomial, so ordinary lex-ordered division applies.
    """
    if b.is_zero():
        raise ZeroDivisionError("division by zero Laurent polynomial")
    if a.is_zero():
        return LaurentPoly.zero(a.gens)
    a._check(b)
    pa, sa = a.poly_part()
    pb, sb = b.poly_part()
    q = _poly_exact_div(pa, pb)
    return q.shift(tuple(x - y for x, y in zip(sa, sb)))


def _poly_exact_div(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    eb, cb = b.leading()
    rem = dict(a.terms)
    q: Dict[Exponents, int] = {}
    while rem:
        er = max(rem)
        cr = rem[er]
        eq = tuple(x - y for x, y in zip(er, eb))
        if any(x < 0 for x in eq) or cr % cb != 0:
            raise NotDivisible(f"{a.to_string()} not divisible by {b.to_string()}")
        cq = cr // cb
        q[eq] = cq
        for e2, c2 in b.terms.items():
            key = tuple(x + y for x, y in zip(eq, e2))
            val = rem.get(key, 0) - cq * c2
            if val:
                rem[key] = val
            else:
                rem.pop(key, None)
    return LaurentPoly(a.gens, q)


# -- multivariate gcd ---------------------------------------------------------
#
# Recursive primitive-part/content scheme over the integers.  Desk-scale
# instances stay small, so the primitive pseudo-remainder sequence suffices.


def _content_int(p: LaurentPoly) -> int:
    g = 0
    for c in p.terms.values():
        g = _int_gcd(g, abs(c))
        if g == 1:
            break
    return g


def _active_vars(p: LaurentPoly) -> list:
    n = len(p.gens)
    active = []
    for i in range(n):
        vals = {e[i] for e in p.terms}
        if vals and vals != {0}:
            active.append(i)
    return active


def _by_degree(p: LaurentPoly, var: int) -> Dict[int, LaurentPoly]:
    """Split p into coefficient polynomials keyed by the degree in gens[var]."""
    buckets: Dict[int, Dict[Exponents, int]] = {}
    for e, c in p.terms.items():
        d = e[var]
        key = tuple(0 if i == var else x for i, x in enumerate(e))
        buckets.setdefault(d, {})[key] = c
    return {d: LaurentPoly(p.gens, t) for d, t in buckets.items()}


def _from_degree(parts: Mapping[int, LaurentPoly], var: int, gens) -> LaurentPoly:
    out: Dict[Exponents, int] = {}
    for d, coeff in parts.items():
        for e, c in coeff.terms.items():
            key = tuple(x + d if i == var else x for i, x in enumerate(e))
            out[key] = out.get(key, 0) + c
    return LaurentPoly(gens, out)


def poly_gcd(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    """Gcd of two genuine polynomials (nonnegative exponents), positive leading sign."""
    if a.is_zero():
        g = b
    elif b.is_zero():
        g = a
    else:
        g = _gcd_rec(a, b)
    if g.is_zero():
        return g
    _, lead = g.leading()
    return g if lead > 0 else -g


def _gcd_rec(a: LaurentPoly, b: LaurentPoly) -> LaurentPoly:
    ca, cb = _content_int(a), _content_int(b)
    cg = _int_gcd(ca, cb)
    a = LaurentPoly(a.gens, {e: c // ca for e, c in a.terms.items()})
    b = LaurentPoly(b.gens, {e: c // cb for e, c in b.terms.items()})
    avars = set(_active_vars(a)) | set(_active_vars(b))
    if not avars:
        return LaurentPoly.const(a.gens, cg)
    var = max(avars)
    ac, ap = _poly_content_pp(a, var)
    bc, bp = _poly_content_pp(b, var)
    cont = _gcd_rec(ac, bc)
    prim = _prs_gcd(ap, bp, var)
    return (cont * prim).scale(cg)


def _poly_content_pp(p: LaurentPoly, var: int) -> Tuple[LaurentPoly, LaurentPoly]:
    parts = _by_degree(p, var)
    coeffs = list(parts.values())
    cont = coeffs[0]
    for c in coeffs[1:]:
        cont = _gcd_rec(cont, c)
        if cont.is_one():
            break
    if cont.is_one():
        return cont, p
    pp = _from_degree(
        {d: _poly_exact_div(c, cont) for d, c in parts.items()}, var, p.gens
    )
    return cont, pp


def _degree_in(p: LaurentPoly, var: int) -> int:
    return max(e[var] for e in p.terms)


def _pseudo_rem(a: LaurentPoly, b: LaurentPoly, var: int) -> LaurentPoly:
    """Pseudo-remainder of a by b as univariate polynomials in gens[var]."""
    da, db = _degree_in(a, var), _degree_in(b, var)
    bparts = _by_degree(b, var)
    lb = bparts[db]
    r = a
    while not r.is_zero():
        dr = _degree_in(r, var)
        if dr < db:
            break
        rparts = _by_degree(r, var)
        lr = rparts[dr]
        # lb * r - lr * x^(dr-db) * b
        shift = [0] * len(a.gens)
        shift[var] = dr - db
        r = lb * r - (lr * b).shift(tuple(shift))
    return r


def _prs_gcd(a: LaurentPoly, b: LaurentPoly, var: int) -> LaurentPoly:
    if _degree_in(a, var) < _degree_in(b, var):
        a, b = b, a
    while not b.is_zero():
        r = _pseudo_rem(a, b, var)
        a = b
        if r.is_zero():
            b = r
        else:
            _, b = _poly_content_pp(r, var)
            c = _content_int(b)
            b = LaurentPoly(b.gens, {e: x // c for e, x in b.terms.items()})
    _, pp = _poly_content_pp(a, var)
    c = _content_int(pp)
    return LaurentPoly(pp.gens, {e: x // c for e, x in pp.terms.items()})


# -- rational functions --------------------------------------------------------


class RationalFunction:
    """Quotient of Laurent polynomials, kept in reduced canonical form.

    Canonical form: the denominator is a genuine polynomial without monomial
    content, shares no factor with the numerator, and has positive
    lexicographic leading coefficient.  Equality is structural on the
    canonical form; cross-multiplication is exposed separately as an
    independent check.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: LaurentPoly, den: LaurentPoly, reduce: bool = True):
        if den.is_zero():
            raise ZeroDivisionError("rational function with zero denominator")
        num._check(den)
        if reduce:
            num, den = _rf_reduce(num, den)
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *_):
        raise AttributeError("RationalFunction is immutable")

    @classmethod
    def from_poly(cls, p: LaurentPoly) -> "RationalFunction":
        return cls(p, LaurentPoly.const(p.gens, 1), reduce=False)

    @classmethod
    def const(cls, gens: Sequence[str], value: int) -> "RationalFunction":
        return cls.from_poly(LaurentPoly.const(gens, value))

    @classmethod
    def var(cls, gens: Sequence[str], name: str, power: int = 1) -> "RationalFunction":
        return cls.from_poly(LaurentPoly.var(gens, name, power))

    @property
    def gens(self):
        return self.num.gens

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_one(self) -> bool:
        return self.num == self.den

    def __add__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den + other.num * self.den, self.den * other.den
        )

    def __sub__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(
            self.num * other.den - other.num * self.den, self.den * other.den
        )

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den, reduce=False)

    def __mul__(self, other: "RationalFunction") -> "RationalFunction":
        return RationalFunction(self.num * other.num, self.den * other.den)

    def __truediv__(self, other: "RationalFunction") -> "RationalFunction":
        if other.is_zero():
            raise ZeroDivisionError("division by zero rational function")
        return RationalFunction(self.num * other.den, self.den * other.num)

    def inverse(self) -> "RationalFunction":
        return RationalFunction.const(self.gens, 1) / self

    def __pow__(self, n: int) -> "RationalFunction":
        if n < 0:
            return self.inverse() ** (-n)
        out = RationalFunction.const(self.gens, 1)
        for _ in range(n):
            out = out * self
        return out

    def __eq__(self, other: object) -> bool:
        return (
            isinstance(other, RationalFunction)
            and self.num == other.num
            and self.den == other.den
        )

    def __hash__(self) -> int:
        return hash((self.num, self.den))

    def cross_equal(self, other: "RationalFunction") -> bool:
        """Equality by cross-multiplication, independent of canonical reduction."""
        return self.num * other.den == other.num * self.den

    def as_laurent(self) -> LaurentPoly:
        """Exact Laurent representative; raises NotDivisible if none exists."""
        return lp_exact_div(self.num, self.den)

    def eval_fractions(self, values: Mapping[str, Fraction]) -> Fraction:
        return self.num.eval_fractions(values) / self.den.eval_fractions(values)

    def to_string(self) -> str:
        if self.den.is_one():
            return self.num.to_string()
        return f"({self.num.to_string()}) / ({self.den.to_string()})"

    def to_json(self) -> dict:
        return {"num": self.num.to_json(), "den": self.den.to_json()}

    @classmethod
    def from_json(cls, gens: Sequence[str], data: dict) -> "RationalFunction":
        return cls(
            LaurentPoly.from_json(gens, data["num"]),
            LaurentPoly.from_json(gens, data["den"]),
        )

    def __repr__(self) -> str:
        return f"RationalFunction({self.to_string()!r})"


def _rf_reduce(num: LaurentPoly, den: LaurentPoly) -> Tuple[LaurentPoly, LaurentPoly]:
    if num.is_zero():
        return num, LaurentPoly.const(num.gens, 1)
    pn, sn = num.poly_part()
    pd, sd = den.poly_part()
    g = poly_gcd(pn, pd)
    if not g.is_one():
        pn = _poly_exact_div(pn, g)
        pd = _poly_exact_div(pd, g)
    ci = _int_gcd(_content_int(pn), _content_int(pd))
    if ci > 1:
        pn = LaurentPoly(pn.gens, {e: c // ci for e, c in pn.terms.items()})
        pd = LaurentPoly(pd.gens, {e: c // ci for e, c in pd.terms.items()})
    _, lead = pd.leading()
    if lead < 0:
        pn, pd = -pn, -pd
    shift = tuple(a - b for a, b in zip(sn, sd))
    return pn.shift(shift), pd


def rf_normalize(r: RationalFunction) -> RationalFunction:
    """Recompute the canonical representative (idempotent by construction)."""
    return RationalFunction(r.num, r.den)
