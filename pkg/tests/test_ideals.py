import random

import pytest
from hypothesis import given, settings, strategies as st

import oracles
from liaison.errors import NotHomogeneous, RingMismatch, UnitIdeal
from liaison.ideals import (Ideal, codimension, colon, eliminate, exact_quotient, hilbert_series,
                            ideal_product, ideal_sum, intersection, irrelevant_ideal, krull_dimension,
                            saturation, standard_monomial_count)
from liaison.polyring import polynomial_ring

R2 = polynomial_ring("x y")
R3 = polynomial_ring("x y z")


def I(ring, *gens):
    return Ideal.parse(ring, list(gens))


def random_monomial_ideal(rng, ring, k=3, deg=3):
    gens = []
    for _ in range(k):
        e = [0] * ring.nvars
        for _ in range(rng.randint(1, deg)):
            e[rng.randrange(ring.nvars)] += 1
        gens.append(tuple(e))
    return gens


def random_binomial_ideal(rng, ring, k=2, deg=3):
    gens = []
    for _ in range(k):
        d = rng.randint(1, deg)
        ms = ring.monomials_of_degree(d)
        a, b = rng.sample(ms, 2)
        gens.append(ring.monomial(a) - ring.monomial(b) * rng.choice((1, 2, -3)))
    return Ideal(ring, gens)


# ---- worked examples --------------------------------------------------------------

def test_sum_and_product():
    assert ideal_sum(I(R2, "x"), I(R2, "y")) == I(R2, "x", "y")
    assert ideal_sum(I(R2, "x"), Ideal(R2, [])) == I(R2, "x")
    l = R3.parse("x + y + z")
    H = I(R3, "x^2", "y^2", "z^2")
    prod = ideal_product(Ideal(R3, [l]), H)
    assert prod.gens == tuple(l * h for h in H.gens)


def test_intersection_examples():
    assert intersection(I(R2, "x"), I(R2, "y")) == I(R2, "x*y")
    J = I(R2, "x^2", "x*y + y^2")
    assert intersection(J, J) == J
    assert intersection(I(R2, "x"), I(R2, "x", "y")) == I(R2, "x")
    assert intersection(I(R2, "x"), Ideal(R2, [])).is_zero()


def test_colon_examples():
    assert colon(I(R2, "x^2", "x*y"), I(R2, "x")) == I(R2, "x", "y")
    J = I(R2, "x^2", "y^3")
    assert colon(J, I(R2, "1")) == J
    assert colon(I(R2, "x*y"), I(R2, "x")) == I(R2, "y")
    assert colon(J, J).is_unit()


def test_saturation_examples():
    assert saturation(I(R2, "x^2", "x*y"), I(R2, "x", "y")) == I(R2, "x")
    s = saturation(I(R2, "x^2", "x*y"))
    assert saturation(s) == s
    assert saturation(I(R2, "x"), I(R2, "y")) == I(R2, "x")


def test_eliminate_examples():
    A = polynomial_ring("t x y", mode="affine")
    assert eliminate(I(A, "t*x - 1", "y"), ["t"]) == I(A, "y")
    J = I(A, "x^2 + y")
    assert eliminate(J, []) == J
    assert eliminate(I(A, "t - x"), ["t"]).is_zero()


def test_dimension_examples(twisted_cubic):
    assert krull_dimension(I(R3, "x")) == 2 and codimension(I(R3, "x")) == 1
    assert codimension(twisted_cubic) == 2
    assert krull_dimension(I(R3, "x", "y", "z")) == 0
    with pytest.raises(UnitIdeal):
        krull_dimension(I(R3, "x", "1"))


def test_hilbert_examples(twisted_cubic):
    assert hilbert_series(Ideal(R3, [])).numerator == (1,)
    assert hilbert_series(I(R3, "x^3 + y*z^2")).numerator == (1, 0, 0, -1)
    assert hilbert_series(twisted_cubic).numerator == (1, 0, -3, 2)
    with pytest.raises(NotHomogeneous):
        hilbert_series(I(R3, "x^2 + y"))


def test_hilbert_series_text():
    assert str(hilbert_series(I(R3, "x^2"))) == "(1 - t^2) / (1 - t)^3"


def test_misc():
    with pytest.raises(RingMismatch):
        ideal_sum(I(R2, "x"), I(R3, "x"))
    assert Ideal(R2, [R2.zero(), R2.parse("x")]).gens == (R2.parse("x"),)
    assert exact_quotient(R2.parse("x^2 - y^2"), R2.parse("x + y")) == R2.parse("x - y")
    with pytest.raises(ValueError):
        exact_quotient(R2.parse("x^2 + y"), R2.parse("x"))
    assert irrelevant_ideal(R2) == I(R2, "x", "y")
    J = I(R3, "x*y", "x*y + x^2", "x^2")
    assert len(J.minimal_generators()) == 2


# ---- properties ---------------------------------------------------------------------

def _in_radical_monomial(g, gens, max_power=6):
    """Brute force: some power g^k (k <= 6) is divisible by a generator."""
    return any(any(all(k * a >= b for a, b in zip(g, m)) for m in gens) for k in range(1, max_power + 1))


def test_colon_properties_on_monomial_ideals():
    rng = random.Random(21)
    for _ in range(40):
        Ig = random_monomial_ideal(rng, R3, rng.randint(1, 3), 3)
        Jg = random_monomial_ideal(rng, R3, rng.randint(1, 2), 2)
        A = Ideal(R3, [R3.monomial(m) for m in Ig])
        B = Ideal(R3, [R3.monomial(m) for m in Jg])
        Q = colon(A, B)
        assert A <= Q
        assert all(A.contains(q * b) for q in Q.gens for b in B.gens)
        radical = all(_in_radical_monomial(g, Ig) for g in Jg)
        assert Q.is_unit() == all(A.contains(b) for b in B.gens)
        assert saturation(A, B).is_unit() == radical


def test_intersection_and_sum_contain():
    rng = random.Random(4)
    for _ in range(20):
        A = random_binomial_ideal(rng, R3)
        B = random_binomial_ideal(rng, R3)
        C = intersection(A, B)
        assert C <= A and C <= B
        S = ideal_sum(A, B)
        assert A <= S and B <= S


def test_intersection_dimension_oracle():
    names = ["x", "y", "z"]
    rng = random.Random(9)
    for _ in range(8):
        A = random_binomial_ideal(rng, R3)
        B = random_binomial_ideal(rng, R3)
        C = intersection(A, B)
        oa = oracles.parse(A.to_strings(), names)
        ob = oracles.parse(B.to_strings(), names)
        for d in range(5):
            n_d = len(R3.monomials_of_degree(d))
            dim_a = n_d - oracles.hilbert_function(oa, 3, d)
            dim_b = n_d - oracles.hilbert_function(ob, 3, d)
            dim_s = n_d - oracles.hilbert_function(oa + ob, 3, d)
            assert n_d - hilbert_series(C).hilbert_function(d) == dim_a + dim_b - dim_s


def test_hilbert_matches_standard_monomials():
    rng = random.Random(17)
    for k in range(50):
        if k % 2:
            J = Ideal(R3, [R3.monomial(m) for m in random_monomial_ideal(rng, R3, rng.randint(1, 4), 4)])
        else:
            J = random_binomial_ideal(rng, R3, rng.randint(1, 3))
        hs = hilbert_series(J)
        lts = [g.leading_monomial() for g in J.groebner()]
        vals = hs.coefficients(10)
        for d in range(11):
            assert vals[d] == standard_monomial_count(lts, R3, d)


def test_hilbert_against_rank_oracle():
    names = ["x", "y", "z"]
    rng = random.Random(2)
    for _ in range(6):
        J = random_binomial_ideal(rng, R3, 3)
        gens = oracles.parse(J.to_strings(), names)
        hs = hilbert_series(J)
        assert [hs.hilbert_function(d) for d in range(6)] == [oracles.hilbert_function(gens, 3, d) for d in range(6)]


@settings(max_examples=40)
@given(st.integers(0, 10 ** 6))
def test_dimension_plus_codimension(seed):
    rng = random.Random(seed)
    J = random_binomial_ideal(rng, R3, rng.randint(1, 3))
    if not J.is_unit():
        assert krull_dimension(J) + codimension(J) == 3


@settings(max_examples=25)
@given(st.integers(0, 10 ** 6))
def test_saturation_idempotent(seed):
    rng = random.Random(seed)
    J = Ideal(R3, [R3.monomial(m) for m in random_monomial_ideal(rng, R3, 3, 3)])
    s = saturation(J)
    assert saturation(s) == s
    assert J <= s


def test_weighted_hilbert_series():
    R = polynomial_ring("x y", degrees=(1, 2))
    hs = hilbert_series(Ideal(R, [R.parse("x^2 - y")]))
    assert hs.coefficients(6) == [1, 1, 1, 1, 1, 1, 1]
