import json
from importlib import resources

import jsonschema
import pytest

from liaison.ideals import Ideal, saturation
from liaison.polyring import polynomial_ring
from liaison.verify import (BoundReport, SuiteConfig, bel_bound, check_ideal, determinant,
                            exceptional_factorization, is_complete_intersection, is_smooth, niu_bound,
                            reports_to_json, run_suite, sigma, suite_entries, suite_summary)

R3 = polynomial_ring("x0 x1 x2")
R4 = polynomial_ring("x0 x1 x2 x3")


def schema(name):
    return json.loads(resources.files("liaison").joinpath("schemas", name).read_text())


def lh(k=2):
    return Ideal.parse(R3, [f"(x0 + x1 + x2)*x{i}^{k}" for i in range(3)])


# ---- formulas ---------------------------------------------------------------------------

def test_sigma():
    assert sigma([2, 2], 2) == 2
    assert sigma([3, 2, 2], 3) == 4
    assert sigma([5], 1) == 4
    assert sigma([2, 3, 2], 2) == 3      # sorted descending first
    with pytest.raises(ValueError):
        sigma([2, 2], 3)


def test_niu_bound():
    assert niu_bound(1, [2, 2], 2) == 6
    assert niu_bound(2, [3, 2], 2) == 36
    assert niu_bound(1, [2, 2, 2], 2, sharpened=True) == 3
    assert niu_bound(3, [2], 1) == 60
    with pytest.raises(ValueError):
        niu_bound(0, [2, 2], 2)


def test_bel_bound():
    assert bel_bound([2, 2], 2) == 2
    assert bel_bound([3, 2, 2], 3) == 4
    with pytest.raises(ValueError):
        bel_bound([2], 2)


def test_determinant():
    x = [R3.gen(i) for i in range(3)]
    z = R3.zero()
    assert determinant([[x[0], x[1]], [x[2], x[0]]]) == x[0] ** 2 - x[1] * x[2]
    assert determinant([[x[0], z, z], [z, x[1], z], [z, z, x[2]]]) == x[0] * x[1] * x[2]


# ---- single ideals -------------------------------------------------------------------------

def test_twisted_cubic_niu11(twisted_cubic):
    rep = check_ideal(twisted_cubic, ("NIU11",))
    assert rep.reg == 1 and rep.niu11_bound == 6 and rep.dim_x == 1
    assert rep.verdicts["NIU11"]["status"] == "pass"
    assert rep.sigma == 2 and not rep.complete_intersection


def test_exceptional_case():
    rep = check_ideal(lh(), ("EXC", "NIU", "NIU11"))
    assert rep.exceptional_case and rep.reg == 4
    assert rep.verdicts["EXC"]["status"] == "pass"
    assert rep.verdicts["NIU"]["status"] == "skip"
    l, H = exceptional_factorization(lh())
    assert l == R3.parse("x0 + x1 + x2") * l.leading_coefficient()
    assert is_complete_intersection(H)


def test_exceptional_detection_rejects_others(twisted_cubic):
    assert exceptional_factorization(Ideal.parse(R3, ["x0^3 + x1^3 + x2^3"])) is None
    assert exceptional_factorization(Ideal.parse(R3, ["x0*x1^2", "x0*x2^2"])) is None
    assert exceptional_factorization(twisted_cubic) is None


def test_complete_intersection_bel_equality():
    I = Ideal.parse(R4, ["x0^2 + x1^2 + x2^2 + x3^2", "x0^3 + 2*x1^3 + 4*x2^3 + 8*x3^3"])
    rep = check_ideal(I, ("BEL", "NIU"))
    assert rep.reg_sat == 3 == rep.bel_bound
    assert rep.verdicts["BEL"]["status"] == "pass"
    assert rep.verdicts["NIU"]["status"] == "skip"


def test_points_skip_niu():
    I = Ideal.parse(R3, ["x0*x1", "x0*x2", "x1*x2"])
    rep = check_ideal(I, ("NIU", "NIU11", "BEL"))
    assert rep.dim_x == 0
    assert rep.verdicts["NIU"]["status"] == rep.verdicts["NIU11"]["status"] == "skip"
    assert rep.niu11_bound is None
    assert rep.verdicts["BEL"]["status"] == "pass"


def test_violation_is_reported():
    # high regularity from an embedded component; the sharpened bound is 21
    I = Ideal.parse(R4, ["x0^5", "x1^5", "x0*x2^4 - x1*x3^4"])
    rep = check_ideal(I, ("NIU",))
    assert rep.reg == 23 and rep.niu_bound == 21
    assert rep.violations() == ["NIU"]


def test_claim_errors_are_collected():
    # non-reduced and not generically a complete intersection: every link shares its support
    I = Ideal.parse(R4, ["x0^3", "x1^3", "x0^2*x1^2"])
    rep = check_ideal(I, ("LINKDEG", "BEL"), retries=1, unmixed=True)
    assert rep.errors() == ["LINKDEG"]
    assert rep.verdicts["BEL"]["status"] == "pass"


# ---- reports ---------------------------------------------------------------------------------

def test_report_roundtrip(twisted_cubic):
    rep = check_ideal(twisted_cubic, ("NIU11", "BEL"), seed=3)
    text = rep.to_json()
    again = BoundReport.from_json(text)
    assert again.to_json() == text
    assert "timings" not in json.loads(text)
    assert "timings" in json.loads(rep.to_json(timings=True))


def test_sigma_mismatch_rejected(twisted_cubic):
    rep = check_ideal(twisted_cubic, ("NIU11",))
    rep.sigma += 1
    with pytest.raises(ValueError):
        rep.to_dict()


def test_report_schema(twisted_cubic):
    reps = [check_ideal(twisted_cubic, ("NIU11", "BEL", "OMEGA"), name="tc"), check_ideal(lh(), ("EXC",))]
    jsonschema.validate(json.loads(reports_to_json(reps)), schema("bound_report.schema.json"))
    jsonschema.validate(json.loads(reports_to_json(reps, timings=True)), schema("bound_report.schema.json"))


# ---- suite -------------------------------------------------------------------------------------

def test_empty_family_selection():
    assert run_suite(SuiteConfig(families=())) == []


def test_complete_intersection_family_is_sharp():
    reps = run_suite(SuiteConfig(families=("a",), claims=("BEL",)))
    assert len(reps) == 5
    for rep in reps:
        assert rep.complete_intersection
        assert rep.reg == rep.sigma == rep.reg_sat


def test_suite_entries_are_smooth_where_claimed():
    for e in suite_entries():
        if e.family in ("a", "b", "e"):
            assert is_smooth(e.ideal()), e.name
    cone = next(e for e in suite_entries(("d",)))
    assert not is_smooth(cone.ideal())


def test_suite_is_sorted_and_seeded():
    names = [e.name for e in suite_entries()]
    assert names == sorted(names) and len(names) == 14
    reps = run_suite(SuiteConfig(families=("e",), claims=("NIU11",), seed=5))
    again = run_suite(SuiteConfig(families=("e",), claims=("NIU11",), seed=5))
    assert reports_to_json(reps) == reports_to_json(again)
    assert len({r.seed for r in reps}) == len(reps)
    assert "0 violations, 0 errors" in suite_summary(reps)


def test_parallel_suite_matches_serial(monkeypatch):
    cfg = SuiteConfig(families=("b", "e"), claims=("NIU11", "BEL"))
    serial = reports_to_json(run_suite(cfg))
    monkeypatch.setenv("LIAISON_THREADS", "2")
    assert reports_to_json(run_suite(cfg)) == serial


def test_saturation_never_raises_regularity():
    for e in suite_entries(("b", "c", "d")):
        rep = check_ideal(e.ideal(), ("BEL",), unmixed=e.unmixed)
        assert rep.reg_sat <= rep.reg
    assert saturation(lh()) == Ideal.parse(R3, ["x0 + x1 + x2"])
