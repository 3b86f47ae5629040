"""Semifields for coefficient tuples: tropical and universal instances.

A tropical element is a Laurent monomial in the declared generators, stored
as its integer exponent vector; addition takes componentwise minima and
multiplication adds exponents.  A universal element is a subtraction-free
rational function; addition and multiplication are the ordinary ones.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence, Tuple

from .laurent import LaurentPoly, RationalFunction


class SemifieldMismatch(ValueError):
    """Raised when elements of different semifield instances are combined."""


@dataclass(frozen=True)
class TropicalElem:
    gens: Tuple[str, ...]
    exponents: Tuple[int, ...]

    def _check(self, other: "TropicalElem") -> None:
        if not isinstance(other, TropicalElem) or self.gens != other.gens:
            raise SemifieldMismatch(f"cannot combine {self!r} with {other!r}")

    def add(self, other: "TropicalElem") -> "TropicalElem":
        self._check(other)
        return TropicalElem(
            self.gens, tuple(min(a, b) for a, b in zip(self.exponents, other.exponents))
        )

    def mul(self, other: "TropicalElem") -> "TropicalElem":
        self._check(other)
        return TropicalElem(
            self.gens, tuple(a + b for a, b in zip(self.exponents, other.exponents))
        )

    def power(self, n: int) -> "TropicalElem":
        return TropicalElem(self.gens, tuple(n * a for a in self.exponents))

    def inverse(self) -> "TropicalElem":
        return self.power(-1)

    def sign(self) -> str:
        """Tropical sign: '+' if all exponents >= 0, '-' if all <= 0, else 'mixed'."""
        if all(a >= 0 for a in self.exponents):
            return "+"
        if all(a <= 0 for a in self.exponents):
            return "-"
        return "mixed"

    def to_string(self) -> str:
        if all(a == 0 for a in self.exponents):
            return "1"
        return "*".join(
            f"{g}^{a}" if a != 1 else g
            for g, a in zip(self.gens, self.exponents)
            if a != 0
        )


@dataclass(frozen=True)
class UniversalElem:
    value: RationalFunction

    def _check(self, other: "UniversalElem") -> None:
        if not isinstance(other, UniversalElem) or self.value.gens != other.value.gens:
            raise SemifieldMismatch(f"cannot combine {self!r} with {other!r}")

    def add(self, other: "UniversalElem") -> "UniversalElem":
        self._check(other)
        return UniversalElem(self.value + other.value)

    def mul(self, other: "UniversalElem") -> "UniversalElem":
        self._check(other)
        return UniversalElem(self.value * other.value)

    def power(self, n: int) -> "UniversalElem":
        return UniversalElem(self.value ** n)

    def inverse(self) -> "UniversalElem":
        return UniversalElem(self.value.inverse())

    def to_string(self) -> str:
        return self.value.to_string()


class TropicalSemifield:
    """Rank-r tropical semifield on named generators."""

    kind = "tropical"

    def __init__(self, gens: Sequence[str]):
        self.gens = tuple(gens)

    def one(self) -> TropicalElem:
        return TropicalElem(self.gens, (0,) * len(self.gens))

    def gen(self, name: str) -> TropicalElem:
        idx = self.gens.index(name)
        exps = [0] * len(self.gens)
        exps[idx] = 1
        return TropicalElem(self.gens, tuple(exps))

    def from_exponents(self, exps: Sequence[int]) -> TropicalElem:
        return TropicalElem(self.gens, tuple(int(e) for e in exps))


class UniversalSemifield:
    """Subtraction-free rational expressions on named generators."""

    kind = "universal"

    def __init__(self, gens: Sequence[str]):
        self.gens = tuple(gens)

    def one(self) -> UniversalElem:
        return UniversalElem(RationalFunction.const(self.gens, 1))

    def gen(self, name: str) -> UniversalElem:
        return UniversalElem(RationalFunction.var(self.gens, name))


def semifield_add(a, b):
    """Addition in whichever semifield both elements belong to."""
    if type(a) is not type(b):
        raise SemifieldMismatch(f"cannot add {a!r} and {b!r}")
    return a.add(b)


def semifield_one_plus(x, sign_power: int):
    """(1 (+) x^sign_power), the factor appearing in coefficient mutation."""
    if isinstance(x, TropicalElem):
        one = TropicalElem(x.gens, (0,) * len(x.gens))
        return one.add(x.power(sign_power))
    if isinstance(x, UniversalElem):
        one = UniversalElem(RationalFunction.const(x.value.gens, 1))
        return one.add(x.power(sign_power))
    raise SemifieldMismatch(f"unsupported semifield element {x!r}")
