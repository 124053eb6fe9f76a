import json

import pytest

import oracles
from liaison.errors import GenericityFailure, ModeMismatch, SizeCapExceeded, UnitIdeal
from liaison.ideals import Ideal, codimension, colon, hilbert_series, ideal_sum
from liaison.linkage import (graded_generic_link, intersection_divisor, link_back, max_generator_degree,
                             random_form, splitmix64, symbolic_residual)
from liaison.polyring import GF, polynomial_ring
from liaison.verify import suite_entries
from liaison.resolution import betti_table, canonical_module, hilbert_function_from_betti, module_resolution

R2 = polynomial_ring("x y")
R3 = polynomial_ring("x0 x1 x2")
R4 = polynomial_ring("x0 x1 x2 x3")
NAMES4 = ["x0", "x1", "x2", "x3"]


def ci22():
    return Ideal.parse(R4, ["x0^2 + x1^2 + x2^2 + x3^2", "x0^2 + 2*x1^2 + 4*x2^2 + 8*x3^2"])


def lh():
    return Ideal.parse(R3, ["(x0 + x1 + x2)*x0^2", "(x0 + x1 + x2)*x1^2", "(x0 + x1 + x2)*x2^2"])


# ---- symbolic residual intersections -------------------------------------------------

def test_symbolic_ci_lemma():
    res = symbolic_residual(Ideal.parse(R2, ["x", "y"]), 2)
    ext = res.ring
    U = res.matrix.rows
    det = U[0][0] * U[1][1] - U[0][1] * U[1][0]
    assert res.J == Ideal(ext, list(res.alpha) + [det])
    assert res.genericity["codim_J"] == 2
    assert res.genericity["codim_Z"] == 3


def test_symbolic_below_codimension():
    I = Ideal.parse(R2, ["x", "y"])
    res = symbolic_residual(I, 1)
    assert res.J == Ideal(res.ring, res.alpha)
    IR = Ideal(res.ring, [g.in_ring(res.ring) for g in I.gens])
    assert res.Z == IR
    assert intersection_divisor(res) == IR


def test_symbolic_principal():
    R1 = polynomial_ring("x")
    res = symbolic_residual(Ideal.parse(R1, ["x"]), 1)
    u = res.ring.gen(res.matrix.variables[0])
    assert res.J == Ideal(res.ring, [u])
    assert res.Z == Ideal(res.ring, [u, res.ring.gen("x")])


def test_symbolic_size_cap():
    with pytest.raises(SizeCapExceeded):
        symbolic_residual(Ideal.parse(R4, ["x0", "x1", "x2", "x3"]), 2)
    assert symbolic_residual(Ideal.parse(R3, ["x0", "x1", "x2"]), 2).genericity["alpha_is_regular_sequence"]


def test_symbolic_names_avoid_clashes():
    R = polynomial_ring("U11 x")
    res = symbolic_residual(Ideal.parse(R, ["x"]), 1)
    assert res.matrix.variables == ("UU11",)


def test_symbolic_result_is_affine():
    res = symbolic_residual(Ideal.parse(R2, ["x", "y"]), 1)
    assert not res.ring.graded
    assert res.to_dict()["max_generator_degree"] is None


# ---- graded generic links ---------------------------------------------------------------

def test_complete_intersection_link_is_degenerate():
    I = ci22()
    res = graded_generic_link(I, 1)
    assert res.degenerate
    assert res.J.is_unit()
    assert Ideal(R4, res.alpha) == I
    assert max_generator_degree(res.J) == 0
    # Z = I + J, which is the unit ideal here
    assert intersection_divisor(res).is_unit()


def test_twisted_cubic_link(twisted_cubic):
    res = graded_generic_link(twisted_cubic, 42)
    assert len(res.alpha) == 2
    assert all(a.homogeneous_degree() == 2 for a in res.alpha)
    assert codimension(res.J) == 2
    assert codimension(res.Z) == 3
    assert res.genericity["alpha_is_regular_sequence"]
    assert max_generator_degree(res.J) <= 2
    # lower block entries are scalars for equal degrees
    assert all(e.is_zero() or e.degree() == 0 for e in res.matrix.rows[2])


def test_exceptional_shape_links_in_codimension_one():
    res = graded_generic_link(lh(), 5)
    assert len(res.alpha) == 1 and res.alpha[0].homogeneous_degree() == 3
    assert codimension(res.J) == 1
    assert res.J == colon(Ideal(R3, res.alpha), lh())


def test_mixed_degrees_use_forms():
    I = Ideal.parse(R4, ["x0*x1", "x0*x2", "x1*x2*x3"])
    res = graded_generic_link(I, 3)
    degs = [g.degree() for g in sorted(I.minimal_generators(), key=lambda g: -g.degree())]
    for i, row in enumerate(res.matrix.rows):
        for j, e in enumerate(row):
            if i >= len(res.alpha):
                if degs[j] - degs[i] < 0:
                    assert e.is_zero()
                else:
                    assert e.homogeneous_degree() == degs[j] - degs[i]
    assert [a.homogeneous_degree() for a in res.alpha] == degs[:len(res.alpha)]


def test_containments(twisted_cubic):
    for seed in range(5):
        res = graded_generic_link(twisted_cubic, seed)
        A = Ideal(R4, res.alpha)
        assert A <= twisted_cubic
        assert A <= res.J
        low = min(twisted_cubic.gens, key=lambda g: g.degree())
        assert res.J <= colon(A, Ideal(R4, [low]))


def test_determinism(twisted_cubic):
    a = graded_generic_link(twisted_cubic, 2024).to_json()
    b = graded_generic_link(twisted_cubic, 2024).to_json()
    assert a == b
    data = json.loads(a)
    assert data["seed"] == data["initial_seed"] == 2024
    assert data["genericity"]["resample_count"] == 0


def test_involution(twisted_cubic):
    for I in (twisted_cubic, Ideal.parse(R4, ["x0", "x1^2 + x2*x3"])):
        for seed in (0, 1):
            res = graded_generic_link(I, seed)
            if not res.degenerate:
                assert link_back(res) == I


def test_link_dimension_against_oracle(twisted_cubic):
    res = graded_generic_link(twisted_cubic, 9)
    alpha = oracles.parse([a.to_string() for a in res.alpha], NAMES4)
    gens = oracles.parse(twisted_cubic.to_strings(), NAMES4)
    hs = hilbert_series(res.J)
    for d in range(4):
        n_d = len(R4.monomials_of_degree(d))
        assert oracles.colon_dimension(alpha, gens, 4, d) == n_d - hs.hilbert_function(d)


@pytest.mark.parametrize("name", ["b-twisted-cubic", "b-rational-quartic"])
def test_link_quotient_matches_canonical_module(name):
    # J/(alpha) = Hom(R/I, R/(alpha)) = omega shifted by nvars - sum of the link degrees
    entry = next(e for e in suite_entries(("b",)) if e.name == name)
    I = entry.ideal()
    R = I.ring
    res = graded_generic_link(I, 11)
    assert not res.degenerate
    shift = R.nvars - sum(a.degree() for a in res.alpha)
    w = canonical_module(I, codimension(I))
    hf_w = hilbert_function_from_betti(betti_table(module_resolution(w)), R.degrees, 0, 12)
    hs_a = hilbert_series(Ideal(R, res.alpha)).coefficients(10)
    hs_j = hilbert_series(res.J).coefficients(10)
    for k in range(11):
        assert hs_a[k] - hs_j[k] == hf_w.get(k + shift, 0)


def test_errors():
    A = polynomial_ring("x y", mode="affine")
    with pytest.raises(ModeMismatch):
        graded_generic_link(Ideal.parse(A, ["x"]), 0)
    with pytest.raises(UnitIdeal):
        graded_generic_link(Ideal.parse(R2, ["1"]), 0)


def test_genericity_failure_over_tiny_field():
    # over GF(2) every scalar is 1: alpha = ((x0 + x1)^2, x1*(x0 + x1)) for every seed
    F = polynomial_ring("x0 x1 x2", field=GF(2))
    with pytest.raises(GenericityFailure):
        graded_generic_link(Ideal.parse(F, ["x0^2", "x0*x1", "x1^2"]), 0, retries=2)


def test_max_generator_degree_examples():
    assert max_generator_degree(Ideal.parse(R2, ["x", "y^2"])) == 2
    assert max_generator_degree(Ideal.parse(R2, ["1"])) == 0
    assert max_generator_degree(Ideal.parse(R2, ["x", "x*y", "y^3"])) == 3


def test_random_form_and_seed_successor():
    import random
    f = random_form(R3, 2, random.Random(0))
    assert f.homogeneous_degree() == 2 and len(f) == 6
    assert all(0 < abs(int(c)) <= 100 for c, _ in f.terms)
    assert random_form(R3, -1, random.Random(0)).is_zero()
    assert splitmix64(0) != 0 and splitmix64(0) < 2 ** 64
    assert splitmix64(0) == splitmix64(0)
