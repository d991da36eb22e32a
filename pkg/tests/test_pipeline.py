import json

import pytest

from surjhh.hochschild import BarWord
from surjhh.operad import parse_element
from surjhh.pipeline import (
    DERIVED,
    EXPECTED_U,
    PAPER,
    REFERENCE_V,
    CheckRecord,
    VerificationReport,
    W,
    boundary_matrix,
    build_U,
    inner_product_components,
    pairing,
    solve_V,
    sphere_algebra,
    u_terms,
    verify,
)


@pytest.fixture(scope="module")
def report():
    return verify()


@pytest.fixture(scope="module")
def primitive():
    return solve_V()


def test_u_terms():
    left, middle, right = u_terms()
    assert left == parse_element("(1,3,1,2) + (1,2,3,2)")
    assert middle == parse_element("(1,2,3,1)")
    assert right == parse_element("(3,2,3,1) + (3,1,2,1)")


def test_build_U_is_integral_match():
    assert build_U() == EXPECTED_U
    assert build_U().boundary() == 0


def test_boundary_matrix_dimensions():
    m, source, target = boundary_matrix(3, 2)
    assert m.shape == (18, 42)
    assert len(source) == 42 and len(target) == 18


def test_solved_primitive(primitive):
    V = primitive.element
    assert V.boundary().mod2() == build_U().mod2()
    assert primitive.kernel_dimension == 29
    for k in primitive.kernel:
        assert k.boundary().mod2() == 0


def test_reference_primitive_is_integral():
    assert REFERENCE_V.boundary() == EXPECTED_U


def test_pairings(primitive):
    for V in (primitive.element, REFERENCE_V):
        assert pairing(V, ("e0", "e2", "e2")) == 1
        # (3,1,3,1,2) and (3,1,2,3,1) both cut e2 into e2⊗e0⊗e2 and cancel mod 2
        assert pairing(V, ("e2", "e0", "e2")) == 0


def test_W():
    A = sphere_algebra()
    assert W(A, BarWord(("α",)), REFERENCE_V) == 1
    assert W(A, BarWord(("1", "α", "α")), REFERENCE_V) == 1
    assert W(A, BarWord(("1",)), REFERENCE_V) == 0
    assert W(A, BarWord(("α", "α")), REFERENCE_V) == 0


def test_inner_product_components():
    comps = inner_product_components(sphere_algebra(), REFERENCE_V)
    assert comps.nonzero(0, 0) == {("1", "α"): 1, ("α", "1"): 1}
    assert comps.nonzero(2, 0) == {("α", "α", "1", "1"): 1}
    for p in (1, 3):
        assert comps.nonzero(p, 0) == {}
    for p in range(4):
        assert comps.nonzero(p, 1) == {}


def test_report_passes(report):
    failed = [r.id for r in report.records if not r.passed]
    assert failed == []
    assert report.non_commuting
    assert report.solver["reference_V_agrees_mod_kernel"] is True


def test_report_provenance(report):
    assert {r.provenance for r in report.records} == {PAPER, DERIVED}
    ids = [r.id for r in report.records]
    assert len(ids) == len(set(ids))


def test_report_json_schema(report):
    doc = json.loads(report.to_json())
    assert set(doc) == {"checks", "non_commuting", "all_passed", "solver"}
    for rec in doc["checks"]:
        assert set(rec) == {"id", "inputs", "computed", "expected", "provenance", "pass"}
    assert [r["id"] for r in doc["checks"]] == sorted(r["id"] for r in doc["checks"])


def test_report_text(report):
    text = report.to_text()
    assert "square f vs psi on HH_2: does not commute" in text
    assert text.splitlines()[-1] == f"{len(report.records)}/{len(report.records)} checks passed"


def test_failing_record_flips_the_verdict():
    r = VerificationReport()
    r.add("a", None, 1, 1, PAPER)
    assert r.passed
    r.add("b", None, 1, 2, DERIVED)
    assert not r.passed
    assert CheckRecord("c", None, [1], [1], PAPER).as_dict()["pass"] is True


def test_integral_mode_adds_checks():
    r = verify(integral=True)
    ids = {x.id for x in r.records}
    assert {"u.reconstruction_integral", "v.reference_is_primitive_integral"} <= ids
    assert r.passed
