import random
from fractions import Fraction

import pytest

from clusterweyl.laurent import LaurentPoly, RationalFunction
from clusterweyl.quiver import WeightedQuiver
from clusterweyl.seeds import (
    Mutate,
    MutationSequence,
    Permute,
    Seed,
    SeedError,
    TropicalPoint,
    f_polynomial,
    is_green_sequence,
    is_trivial_sequence,
    separation_crosscheck,
    tropical_sign,
)


def single_vertex():
    return WeightedQuiver.from_eps(("a",), {}, {"a": 1})


def rank2():
    return WeightedQuiver.from_eps(("a", "b"), {("a", "b"): 1, ("b", "a"): -1}, {"a": 1, "b": 1})


def rank3_random(rng, max_mult=1):
    # single arrows by default: rank-3 quivers with a double arrow are wild
    # and symbolic channels blow up out of desk scale
    ids = ("p", "q", "r")
    eps = {}
    for i, a in enumerate(ids):
        for b in ids[i + 1 :]:
            v = rng.randint(-max_mult, max_mult)
            if v:
                eps[(a, b)] = v
                eps[(b, a)] = -v
    return WeightedQuiver.from_eps(ids, eps, {v: 1 for v in ids})


def random_mutation_sequence(rng, quiver, length):
    steps = []
    for _ in range(length):
        steps.append(Mutate(rng.choice(quiver.unfrozen())))
    return MutationSequence.of(steps)


class TestAMutation:
    def test_arrowless_vertex_gives_two_over_a(self):
        s = Seed.initial(single_vertex(), track_A=True).mutate("a")
        assert s.A["a"] == LaurentPoly(("a",), {(-1,): 2})

    def test_involutive(self):
        s0 = Seed.initial(rank2(), track_A=True, track_X=True)
        s = s0.mutate("a").mutate("a")
        assert s.A == s0.A and s.X == s0.X

    def test_laurent_phenomenon_random(self):
        rng = random.Random(12)
        for _ in range(15):
            q = rank3_random(rng)
            seed = Seed.initial(q, track_A=True)
            for _ in range(8):
                seed = seed.mutate(rng.choice(q.ids))  # raises on division failure

    def test_a_variables_satisfy_exchange(self):
        # check numerically: A_k * A_k' = pos + neg at each step
        rng = random.Random(13)
        q = rank3_random(rng)
        seed = Seed.initial(q, track_A=True)
        vals = {v: Fraction(rng.randint(2, 5), rng.randint(1, 3)) for v in q.ids}
        for _ in range(6):
            k = rng.choice(q.ids)
            nxt = seed.mutate(k)
            lhs = seed.A[k].eval_fractions(vals) * nxt.A[k].eval_fractions(vals)
            pos = Fraction(1)
            neg = Fraction(1)
            for j in q.ids:
                e = seed.quiver.eps_int(k, j)
                if e > 0:
                    pos *= seed.A[j].eval_fractions(vals) ** e
                elif e < 0:
                    neg *= seed.A[j].eval_fractions(vals) ** (-e)
            assert lhs == pos + neg
            seed = nxt


class TestXMutation:
    def test_rank2_formulas(self):
        s = Seed.initial(rank2(), track_X=True).mutate("a")
        gens = ("a", "b")
        xa = RationalFunction.var(gens, "a")
        xb = RationalFunction.var(gens, "b")
        one = RationalFunction.const(gens, 1)
        assert s.X["a"] == xa.inverse()
        assert s.X["b"] == xb * (one + xa)

    def test_universal_coefficients_match_x_mutation(self):
        # coefficient mutation in the universal semifield takes the same form
        rng = random.Random(14)
        q = rank3_random(rng)
        sx = Seed.initial(q, track_X=True)
        su = Seed.initial(q, coeffs="universal")
        for _ in range(5):
            k = rng.choice(q.ids)
            sx = sx.mutate(k)
            su = su.mutate(k)
        for v in q.ids:
            assert su.coeffs[v].value == sx.X[v]


class TestSequences:
    def test_empty_sequence_identity(self):
        s = Seed.initial(rank2(), track_A=True, track_X=True, coeffs="none")
        assert s.apply(MutationSequence.of([])) == s

    def test_double_mutation_identity(self):
        s = Seed.initial(rank2(), track_A=True)
        seq = MutationSequence.mutations(["a", "a"])
        assert s.apply(seq).A == s.A

    def test_sequence_then_inverse_random(self):
        rng = random.Random(15)
        for _ in range(10):
            q = rank3_random(rng)
            seq_steps = []
            for _ in range(rng.randint(1, 10)):
                if rng.random() < 0.25:
                    ids = list(q.ids)
                    rng.shuffle(ids)
                    seq_steps.append(Permute.of(dict(zip(q.ids, ids))))
                else:
                    seq_steps.append(Mutate(rng.choice(q.ids)))
            seq = MutationSequence.of(seq_steps)
            s = Seed.initial(q, track_A=True, coeffs="principal")
            out = s.apply(seq + seq.inverse())
            assert out.A == s.A and out.quiver.same_labeled(q)

    def test_json_roundtrip(self):
        seq = MutationSequence.of(
            [Mutate("v:2:1"), Permute.of({"v:2:1": "v:2:2", "v:2:2": "v:2:1"})]
        )
        assert MutationSequence.from_json(seq.to_json()) == seq


class TestEnsembleMap:
    def test_rank2_monomials(self):
        s = Seed.initial(rank2(), track_A=True)
        p = s.ensemble_map()
        gens = ("a", "b")
        assert p["a"] == RationalFunction.var(gens, "b")
        assert p["b"] == RationalFunction.var(gens, "a") ** -1

    def test_single_vertex_trivial(self):
        s = Seed.initial(single_vertex(), track_A=True)
        assert s.ensemble_map()["a"].is_one()

    def test_frozen_vertices_excluded(self):
        q = rank2().set_frozen({"b"})
        s = Seed.initial(q, track_A=True)
        assert set(s.ensemble_map()) == {"a"}


class TestTropical:
    def test_principal_all_plus(self):
        s = Seed.initial(rank2(), coeffs="principal")
        assert all(s.tropical_sign(v) == "+" for v in s.quiver.ids)

    def test_mutated_vertex_flips(self):
        s = Seed.initial(rank2(), coeffs="principal").mutate("a")
        assert s.tropical_sign("a") == "-"

    def test_lamination_points(self):
        q = rank2()
        p = TropicalPoint.lamination(q, "a", +1)
        assert tropical_sign(p, "a") == "+"
        assert p.coords["b"] == (0,)

    def test_sign_coherence_along_random_sequences(self):
        rng = random.Random(16)
        for _ in range(20):
            q = rank3_random(rng)
            seed = Seed.initial(q, coeffs="principal")
            for _ in range(10):
                seed = seed.mutate(rng.choice(q.ids))
                for v in q.ids:
                    assert seed.tropical_sign(v) in "+-"

    def test_c_matrix_determinant_unit(self):
        rng = random.Random(17)
        for _ in range(10):
            q = rank3_random(rng)
            seed = Seed.initial(q, coeffs="principal")
            for _ in range(6):
                seed = seed.mutate(rng.choice(q.ids))
            rows = [list(seed.c_vector(v)) for v in q.ids]
            det = (
                rows[0][0] * (rows[1][1] * rows[2][2] - rows[1][2] * rows[2][1])
                - rows[0][1] * (rows[1][0] * rows[2][2] - rows[1][2] * rows[2][0])
                + rows[0][2] * (rows[1][0] * rows[2][1] - rows[1][1] * rows[2][0])
            )
            assert det in (1, -1)


class TestGreenAndTrivial:
    def test_empty_green_not_maximal(self):
        green, maximal, _ = is_green_sequence(rank2(), MutationSequence.of([]))
        assert green and not maximal

    def test_double_mutation_not_green(self):
        green, _, trace = is_green_sequence(single_vertex(), MutationSequence.mutations(["a", "a"]))
        assert not green
        assert trace[1]["sign"] == "-"

    def test_single_mutation_on_one_vertex_is_maximal(self):
        green, maximal, _ = is_green_sequence(single_vertex(), MutationSequence.mutations(["a"]))
        assert green and maximal

    def test_trivial_double_mutation(self):
        assert is_trivial_sequence(rank2(), MutationSequence.mutations(["a", "a"]))

    def test_single_mutation_not_trivial(self):
        assert not is_trivial_sequence(rank2(), MutationSequence.mutations(["a"]))


class TestFPolynomials:
    def test_empty_sequence(self):
        assert f_polynomial(rank2(), MutationSequence.of([]), "a").is_one()

    def test_arrowless_mutation(self):
        f = f_polynomial(single_vertex(), MutationSequence.mutations(["a"]), "a")
        assert f == LaurentPoly(("a",), {(0,): 1, (1,): 1})

    def test_constant_term_one_along_random(self):
        rng = random.Random(18)
        for _ in range(10):
            q = rank3_random(rng)
            seed = Seed.initial(q, coeffs="principal", track_F=True)
            for _ in range(8):
                seed = seed.mutate(rng.choice(q.ids))
                for f in seed.fpolys.values():
                    assert f.constant_term() == 1
                    assert all(x >= 0 for e in f.terms for x in e)


class TestSeparation:
    def test_empty(self):
        ok, _ = separation_crosscheck(rank2(), MutationSequence.of([]))
        assert ok

    def test_random_sequences_rank2(self):
        rng = random.Random(19)
        q = rank2()
        for _ in range(12):
            seq = random_mutation_sequence(rng, q, rng.randint(1, 6))
            ok, witness = separation_crosscheck(q, seq)
            assert ok, witness

    def test_random_sequences_rank3(self):
        rng = random.Random(20)
        for _ in range(6):
            q = rank3_random(rng)
            seq = random_mutation_sequence(rng, q, 5)
            ok, witness = separation_crosscheck(q, seq)
            assert ok, witness


class TestSeedErrors:
    def test_frozen_mutation_rejected(self):
        q = rank2().set_frozen({"b"})
        with pytest.raises(Exception):
            Seed.initial(q, track_A=True).mutate("b")

    def test_f_requires_principal(self):
        with pytest.raises(SeedError):
            Seed.initial(rank2(), track_F=True)

    def test_dump_deterministic(self):
        import json

        s = Seed.initial(rank2(), track_A=True, track_X=True, coeffs="principal")
        assert json.dumps(s.dump()) == json.dumps(
            Seed.initial(rank2(), track_A=True, track_X=True, coeffs="principal").dump()
        )
