"""Seeds and their mutation: A-variables, X-variables, coefficients, trackers.

A seed couples a weighted quiver with optional value channels:

* ``A``      Laurent polynomials in the initial cluster variables (one
             generator per vertex id); mutation divides exactly and a
             division failure is escalated, never swallowed.
* ``X``      reduced rational functions in the initial X-variables.
* ``coeffs`` a tuple in a semifield (tropical or universal).
* ``fpolys`` polynomial trackers with constant term one, maintained from
             the tropical principal coefficients.

Sequences execute left to right; constructors of named operator sequences
perform any reversal from composition order once, at construction.

Triviality of a mutation sequence is certified through its action on the
principal tropical point (the orbit criterion).  That criterion is taken as
the definition here; it is an assumption of the engine, not something it
re-proves.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from typing import Dict, List, Mapping, Optional, Sequence, Tuple, Union

from .laurent import LaurentPoly, NotDivisible, RationalFunction, lp_exact_div
from .quiver import QuiverError, WeightedQuiver
from .semifield import (
    SemifieldMismatch,
    TropicalElem,
    TropicalSemifield,
    UniversalElem,
    semifield_one_plus,
)


class SeedError(ValueError):
    pass


# -- mutation sequences ---------------------------------------------------------


@dataclass(frozen=True)
class Mutate:
    vertex: str


@dataclass(frozen=True)
class Permute:
    mapping: Tuple[Tuple[str, str], ...]

    @classmethod
    def of(cls, mapping: Mapping[str, str]) -> "Permute":
        return cls(tuple(sorted((a, b) for a, b in mapping.items() if a != b)))

    def as_dict(self) -> Dict[str, str]:
        return dict(self.mapping)

    def inverse(self) -> "Permute":
        return Permute.of({b: a for a, b in self.mapping})


Step = Union[Mutate, Permute]


@dataclass(frozen=True)
class MutationSequence:
    steps: Tuple[Step, ...]

    @classmethod
    def of(cls, steps: Sequence[Step]) -> "MutationSequence":
        return cls(tuple(steps))

    @classmethod
    def mutations(cls, vertices: Sequence[str]) -> "MutationSequence":
        return cls(tuple(Mutate(v) for v in vertices))

    def __add__(self, other: "MutationSequence") -> "MutationSequence":
        return MutationSequence(self.steps + other.steps)

    def __len__(self) -> int:
        return len(self.steps)

    def repeat(self, k: int) -> "MutationSequence":
        return MutationSequence(self.steps * k)

    def inverse(self) -> "MutationSequence":
        out: List[Step] = []
        for step in reversed(self.steps):
            out.append(step.inverse() if isinstance(step, Permute) else step)
        return MutationSequence(tuple(out))

    def mutation_count(self) -> int:
        return sum(1 for s in self.steps if isinstance(s, Mutate))

    def to_json(self) -> list:
        out = []
        for s in self.steps:
            if isinstance(s, Mutate):
                out.append({"mut": s.vertex})
            else:
                out.append({"perm": s.as_dict()})
        return out

    @classmethod
    def from_json(cls, data: Sequence[dict]) -> "MutationSequence":
        steps: List[Step] = []
        for item in data:
            if "mut" in item:
                steps.append(Mutate(item["mut"]))
            elif "perm" in item:
                steps.append(Permute.of(item["perm"]))
            else:
                raise SeedError(f"unknown sequence step {item!r}")
        return cls(tuple(steps))

    def dumps(self) -> str:
        return json.dumps(self.to_json())


# -- seeds -------------------------------------------------------------------------


@dataclass(frozen=True)
class Seed:
    quiver: WeightedQuiver
    A: Optional[Dict[str, LaurentPoly]] = None
    X: Optional[Dict[str, RationalFunction]] = None
    coeffs: Optional[Dict[str, object]] = None
    fpolys: Optional[Dict[str, LaurentPoly]] = None
    gens: Tuple[str, ...] = ()
    assert_signs: bool = False

    @classmethod
    def initial(
        cls,
        quiver: WeightedQuiver,
        track_A: bool = False,
        track_X: bool = False,
        coeffs: str = "none",
        track_F: bool = False,
    ) -> "Seed":
        """Seed at the initial cluster.

        ``coeffs`` is one of ``none``, ``principal`` (tropical, x_i = u_i) or
        ``universal``.  F-polynomial tracking requires principal coefficients.
        """
        gens = quiver.ids
        A = {v: LaurentPoly.var(gens, v) for v in gens} if track_A else None
        X = {v: RationalFunction.var(gens, v) for v in gens} if track_X else None
        co = None
        assert_signs = False
        if coeffs == "principal":
            semi = TropicalSemifield(gens)
            co = {v: semi.gen(v) for v in gens}
            assert_signs = True
        elif coeffs == "universal":
            from .semifield import UniversalSemifield

            semi = UniversalSemifield(gens)
            co = {v: semi.gen(v) for v in gens}
        elif coeffs != "none":
            raise SeedError(f"unknown coefficient mode {coeffs!r}")
        F = None
        if track_F:
            if coeffs != "principal":
                raise SeedError("F-polynomials require principal coefficients")
            F = {v: LaurentPoly.const(gens, 1) for v in quiver.unfrozen()}
        return cls(quiver, A, X, co, F, gens, assert_signs)

    # -- accessors -------------------------------------------------------------

    def c_vector(self, v: str) -> Tuple[int, ...]:
        x = self.coeffs[v]
        if not isinstance(x, TropicalElem):
            raise SeedError("c-vectors live in tropical coefficients")
        return x.exponents

    def c_matrix(self) -> Dict[str, Tuple[int, ...]]:
        return {v: self.c_vector(v) for v in self.quiver.ids}

    def tropical_sign(self, v: str) -> str:
        x = self.coeffs[v]
        if not isinstance(x, TropicalElem):
            raise SeedError("tropical sign requires tropical coefficients")
        return x.sign()

    # -- single mutation ---------------------------------------------------------

    def mutate(self, k: str) -> "Seed":
        q = self.quiver
        if k in q.frozen:
            raise QuiverError(f"mutation at frozen vertex {k}")
        new_q = q.mutate(k)

        A = None
        if self.A is not None:
            pos = LaurentPoly.const(self.gens, 1)
            neg = LaurentPoly.const(self.gens, 1)
            for j in q.ids:
                e = q.eps_int(k, j)
                if e > 0:
                    pos = pos * self.A[j] ** e
                elif e < 0:
                    neg = neg * self.A[j] ** (-e)
            try:
                new_ak = lp_exact_div(pos + neg, self.A[k])
            except NotDivisible as exc:
                raise SeedError(
                    f"exact division failed at {k}: Laurent property violated"
                ) from exc
            A = dict(self.A)
            A[k] = new_ak

        X = None
        if self.X is not None:
            X = {}
            xk = self.X[k]
            one = RationalFunction.const(self.gens, 1)
            for i in q.ids:
                if i == k:
                    X[i] = xk.inverse()
                    continue
                e = q.eps_int(i, k)
                if e == 0:
                    X[i] = self.X[i]
                else:
                    sgn = 1 if e > 0 else -1
                    X[i] = self.X[i] * (one + xk ** (-sgn)) ** (-e)

        co = None
        if self.coeffs is not None:
            co = {}
            xk = self.coeffs[k]
            for i in q.ids:
                if i == k:
                    co[i] = xk.inverse()
                    continue
                e = q.eps_int(i, k)
                if e == 0:
                    co[i] = self.coeffs[i]
                else:
                    sgn = 1 if e > 0 else -1
                    co[i] = self.coeffs[i].mul(semifield_one_plus(xk, -sgn).power(-e))
            if self.assert_signs:
                for i, x in co.items():
                    if isinstance(x, TropicalElem) and x.sign() == "mixed":
                        raise SeedError(f"sign-coherence violated at {i}: {x.exponents}")

        F = None
        if self.fpolys is not None:
            ck = self.coeffs[k].exponents
            xk_mono = LaurentPoly.monomial(self.gens, ck)
            one_plus = LaurentPoly.monomial(self.gens, tuple(min(0, c) for c in ck))
            pos = xk_mono
            neg = LaurentPoly.const(self.gens, 1)
            for j in q.ids:
                e = q.eps_int(k, j)
                fj = self.fpolys.get(j)
                if fj is None:
                    continue  # frozen vertices carry no F-polynomial
                if e > 0:
                    pos = pos * fj ** e
                elif e < 0:
                    neg = neg * fj ** (-e)
            new_fk = lp_exact_div(pos + neg, self.fpolys[k] * one_plus)
            if new_fk.constant_term() != 1 or any(
                x < 0 for e in new_fk.terms for x in e
            ):
                raise SeedError(f"F-polynomial at {k} lost normalization: {new_fk}")
            F = dict(self.fpolys)
            F[k] = new_fk

        return replace(self, quiver=new_q, A=A, X=X, coeffs=co, fpolys=F)

    def permute(self, mapping: Mapping[str, str]) -> "Seed":
        new_q = self.quiver.permute(mapping)

        def move(data):
            if data is None:
                return None
            return {mapping.get(v, v): x for v, x in data.items()}

        return replace(
            self,
            quiver=new_q,
            A=move(self.A),
            X=move(self.X),
            coeffs=move(self.coeffs),
            fpolys=move(self.fpolys),
        )

    def apply(self, seq: MutationSequence) -> "Seed":
        s = self
        for step in seq.steps:
            if isinstance(step, Mutate):
                s = s.mutate(step.vertex)
            else:
                s = s.permute(step.as_dict())
        return s

    # -- derived maps -------------------------------------------------------------

    def ensemble_map(self) -> Dict[str, RationalFunction]:
        """p*(X_k) = prod_i A_i^{eps_ki} over unfrozen k, in the seed's A-variables."""
        if self.A is None:
            raise SeedError("ensemble map requires A-variables")
        out = {}
        one = RationalFunction.const(self.gens, 1)
        for k in self.quiver.unfrozen():
            val = one
            for i in self.quiver.ids:
                e = self.quiver.eps_int(k, i)
                if e:
                    val = val * RationalFunction.from_poly(self.A[i]) ** e
            out[k] = val
        return out

    def dump(self) -> dict:
        out = {"quiver": self.quiver.to_json()}
        if self.A is not None:
            out["A"] = {v: p.to_string() for v, p in sorted(self.A.items())}
        if self.X is not None:
            out["X"] = {v: r.to_string() for v, r in sorted(self.X.items())}
        if self.coeffs is not None:
            out["coeffs"] = {v: x.to_string() for v, x in sorted(self.coeffs.items())}
        if self.fpolys is not None:
            out["fpolys"] = {v: p.to_string() for v, p in sorted(self.fpolys.items())}
        return out


# -- tropical points and green sequences ----------------------------------------------


@dataclass(frozen=True)
class TropicalPoint:
    """Point of the tropical X-space: one exponent vector per vertex."""

    gens: Tuple[str, ...]
    coords: Dict[str, Tuple[int, ...]]

    @classmethod
    def principal(cls, quiver: WeightedQuiver) -> "TropicalPoint":
        n = len(quiver.ids)
        return cls(
            quiver.ids,
            {
                v: tuple(1 if i == j else 0 for j in range(n))
                for i, v in enumerate(quiver.ids)
            },
        )

    @classmethod
    def lamination(cls, quiver: WeightedQuiver, vertex: str, sign: int) -> "TropicalPoint":
        """Basic lamination: single tropical generator, coordinate +-1 at vertex."""
        return cls(
            ("t",),
            {v: ((sign if v == vertex else 0),) for v in quiver.ids},
        )

    def as_seed(self, quiver: WeightedQuiver, assert_signs: bool = False) -> Seed:
        semi = TropicalSemifield(self.gens)
        co = {v: semi.from_exponents(e) for v, e in self.coords.items()}
        return Seed(quiver, coeffs=co, gens=self.gens, assert_signs=assert_signs)

    @classmethod
    def from_seed(cls, seed: Seed) -> "TropicalPoint":
        return cls(seed.gens, {v: seed.coeffs[v].exponents for v in seed.quiver.ids})


def tropical_sign(point: TropicalPoint, vertex: str) -> str:
    e = point.coords[vertex]
    if all(x >= 0 for x in e):
        return "+"
    if all(x <= 0 for x in e):
        return "-"
    return "mixed"


def is_green_sequence(
    quiver: WeightedQuiver, seq: MutationSequence
) -> Tuple[bool, bool, List[dict]]:
    """Run from principal coefficients; a step is green when it mutates at '+'.

    Returns (green, maximal_green, per-step sign trace).  Permutations relabel
    the tracked signs, so greenness is stable under relabeling.
    """
    seed = Seed.initial(quiver, coeffs="principal")
    trace: List[dict] = []
    green = True
    for step in seq.steps:
        if isinstance(step, Mutate):
            sign = seed.tropical_sign(step.vertex)
            trace.append({"mutate": step.vertex, "sign": sign})
            if sign != "+":
                green = False
            seed = seed.mutate(step.vertex)
        else:
            seed = seed.permute(step.as_dict())
            trace.append({"permute": step.as_dict()})
    maximal = green and all(
        seed.tropical_sign(v) == "-" for v in seed.quiver.unfrozen()
    )
    return green, maximal, trace


def is_trivial_sequence(quiver: WeightedQuiver, seq: MutationSequence) -> bool:
    """Periodicity criterion: the quiver and the principal tropical point return."""
    seed = Seed.initial(quiver, coeffs="principal").apply(seq)
    if not seed.quiver.same_labeled(quiver):
        return False
    n = len(quiver.ids)
    for i, v in enumerate(quiver.ids):
        if seed.c_vector(v) != tuple(1 if i == j else 0 for j in range(n)):
            return False
    return True


def sends_laminations_to_negative(quiver: WeightedQuiver, seq: MutationSequence) -> bool:
    """Whether the sequence maps every basic positive lamination at an unfrozen
    vertex to the corresponding negative one (the defining transformation of
    the longest modular-group element)."""
    seed = Seed.initial(quiver, coeffs="principal").apply(seq)
    if not seed.quiver.same_labeled(quiver):
        return False
    pos = {v: i for i, v in enumerate(quiver.ids)}
    for i in quiver.unfrozen():
        for v in quiver.ids:
            expect = -1 if v == i else 0
            if seed.c_vector(v)[pos[i]] != expect:
                return False
    return True


def f_polynomial(quiver: WeightedQuiver, seq: MutationSequence, vertex: str) -> LaurentPoly:
    """Final F-polynomial at ``vertex`` after running ``seq`` from the initial seed."""
    seed = Seed.initial(quiver, coeffs="principal", track_F=True).apply(seq)
    return seed.fpolys[vertex]


def separation_crosscheck(
    quiver: WeightedQuiver, seq: MutationSequence
) -> Tuple[bool, Optional[str]]:
    """X-variables by direct mutation must match the (c-vector, F-polynomial)
    reconstruction  X_j = prod_i X_i^{c_ji} * prod_k F_k(X)^{eps_jk}."""
    direct = Seed.initial(quiver, track_X=True).apply(seq)
    tracked = Seed.initial(quiver, coeffs="principal", track_F=True).apply(seq)
    one = RationalFunction.const(quiver.ids, 1)
    for j in tracked.quiver.ids:
        val = one
        c = tracked.c_vector(j)
        for i, e in zip(quiver.ids, c):
            if e:
                val = val * RationalFunction.var(quiver.ids, i) ** e
        for k in tracked.quiver.unfrozen():
            e = tracked.quiver.eps_int(j, k)
            if e:
                val = val * RationalFunction.from_poly(tracked.fpolys[k]) ** e
        if val != direct.X[j]:
            return False, f"mismatch at {j}: {val.to_string()} vs {direct.X[j].to_string()}"
    return True, None
