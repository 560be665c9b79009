from fractions import Fraction as F

import pytest

from jonesurf.conjecture import (EssentialityOracle, OracleError, PipelineConfig, Status,
                                 SurfaceCatalogue, check_strong_slope, combine, corollary_check,
                                 describe, find_fundamental_jones, homozero_search, jones_lambda,
                                 load_slopes, step1_slope_membership, x_value)
from jonesurf.degrees import SlopeData
from jonesurf.normal import NormalSurface, satisfies_matching
from jonesurf.sheets import Slope

from conftest import TRIS

WITNESS = (0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 1, 0, 0, 0, 0, 0, 0, 0, 0, 1)


@pytest.fixture
def oracle():
    return EssentialityOracle.load(TRIS / "demo.oracle")


@pytest.fixture(scope="module")
def slopes():
    return load_slopes(TRIS / "demo_slopes.json")


def sd(js, js_star=()):
    return SlopeData(frozenset(map(F, js)), frozenset(map(F, js_star)), frozenset({F(0)}),
                     frozenset({F(0)}), 1)


def test_x_value_examples():
    assert x_value(-3, 3, 3, -18) == 0
    assert x_value(0, 2, 2, 0) == 0
    assert x_value(-1, 1, 1, 0) == -2


def test_jones_lambda():
    assert jones_lambda(F(-1), 3) == -18
    with pytest.raises(ValueError):
        jones_lambda(F(1, 3), 1)


def test_membership_examples():
    assert step1_slope_membership(sd([0]), {F(0)}).ok
    v = step1_slope_membership(sd([12]), {Slope(0), Slope(6)})
    assert not v.ok and v.missing == (12,)
    v = step1_slope_membership(sd([]), set())
    assert v.ok and "vacuous" in v.warning


def test_homozero_examples():
    a = NormalSurface([1, 0, 0, 0, 0, 0, 0])
    b = NormalSurface([0, 1, 0, 0, 0, 0, 0])
    assert homozero_search([(2, a), (-2, b)], [], 1) == [(1, 1)]
    assert homozero_search([(4, a)], [(-1, b)], 1) == [(1, 2)]
    q1 = NormalSurface([0, 0, 0, 0, 1, 0, 0])
    q2 = NormalSurface([0, 0, 0, 0, 0, 1, 0])
    assert homozero_search([(2, q1), (-2, q2)], [], 1) == []
    with pytest.raises(ValueError):
        homozero_search([(0, a)], [], 1)


def test_homozero_sums_have_zero_x(demo_tri):
    cat = SurfaceCatalogue.build(demo_tri)
    at = cat.at_slope(Slope(-5))
    seen = 0
    for lam in range(-6, 3):
        ez = [(x_value(c.chi, c.sheets, 1, lam), c) for c in at]
        ez = [(x, c) for x, c in ez if x]
        for coeffs in homozero_search([(x, c.surface) for x, c in ez], [], 1):
            total = combine(coeffs, [c.surface for _, c in ez])
            got = describe(demo_tri, total)
            assert satisfies_matching(demo_tri, total)
            assert got.chi == sum(k * c.chi for k, (_, c) in zip(coeffs, ez))
            assert got.sheets == sum(k * c.sheets for k, (_, c) in zip(coeffs, ez))
            assert x_value(got.chi, got.sheets, 1, lam) == 0
            seen += 1
    assert seen


def test_find_witness(demo_tri, oracle):
    res = find_fundamental_jones(demo_tri, Slope(-4), -2, 1, oracle)
    assert res.witness.surface.coords == WITNESS
    assert (res.witness.chi, res.witness.sheets) == (-1, 1)
    assert res.oracle_calls


def test_find_nonzero_and_empty(demo_tri, oracle):
    flipped = oracle.with_label(WITNESS, "not-essential")
    res = find_fundamental_jones(demo_tri, Slope(-4), -2, 1, flipped)
    assert res.witness is None and [x for x, _ in res.x_nonzero] == [4]
    assert "|dSigma| <= |dS|" in res.note
    res = find_fundamental_jones(demo_tri, Slope(7), 0, 1, oracle)
    assert res.witness is None and not res.x_nonzero


def test_oracle_parse_errors(demo_tri):
    with pytest.raises(OracleError, match="expected"):
        EssentialityOracle.parse("1 2 3")
    with pytest.raises(OracleError, match="unknown label"):
        EssentialityOracle.parse("1 0 0 0 0 0 0 -> maybe")
    with pytest.raises(OracleError, match="conflicting"):
        EssentialityOracle.parse("1 0 0 0 0 0 0 -> essential\n1 0 0 0 0 0 0 -> not-essential")
    with pytest.raises(OracleError, match="wrong length"):
        EssentialityOracle.parse("1 0 0 0 0 0 0 -> essential").check_keys(demo_tri)
    bad = " ".join(["1"] + ["0"] * 20) + " -> essential"
    with pytest.raises(OracleError, match="not an admissible"):
        EssentialityOracle.parse(bad).check_keys(demo_tri)


def test_pipeline_satisfied(demo_tri, oracle, slopes):
    r = check_strong_slope(slopes, demo_tri, oracle)
    assert r.status == Status.SATISFIED
    top = next(v for v in r.verdicts if v.side == "max")
    assert top.witness["coords"] == list(WITNESS) and top.witness["x_value"] == 0
    for v in r.verdicts:
        s = NormalSurface(v.witness["coords"])
        assert satisfies_matching(demo_tri, s) and s.admissible
        assert describe(demo_tri, s).slope == Slope.from_fraction(v.slope)
        assert v.oracle_calls


def test_pipeline_flip(demo_tri, oracle, slopes):
    r = check_strong_slope(slopes, demo_tri, oracle.with_label(WITNESS, "not-essential"))
    assert r.status == Status.FAILED_NO_JONES_SURFACE


def test_pipeline_membership(demo_tri, oracle, slopes):
    r = check_strong_slope(slopes, demo_tri, oracle,
                           PipelineConfig(boundary_slopes=frozenset({F(-5), F(-2)})))
    assert r.status == Status.FAILED_SLOPE_MEMBERSHIP
    assert r.membership.missing == (-4,)


def test_pipeline_no_essential(demo_tri, oracle):
    data = SlopeData(frozenset({F(7)}), frozenset(), frozenset({F(0)}), frozenset(), 1)
    r = check_strong_slope(data, demo_tri, oracle, PipelineConfig(boundary_slopes=frozenset({F(7)})))
    assert r.status == Status.FAILED_NO_ESSENTIAL


def test_pipeline_assume_essential(demo_tri, slopes):
    r = check_strong_slope(slopes, demo_tri, EssentialityOracle.assume_essential())
    assert r.status == Status.CONDITIONAL
    assert all(v.status != Status.SATISFIED for v in r.verdicts)
    assert "assumed" in r.dumps()


def test_unknown_labels_are_conditional(demo_tri, slopes):
    r = check_strong_slope(slopes, demo_tri, EssentialityOracle(source="empty"))
    assert r.status == Status.CONDITIONAL


def test_deterministic(demo_tri, slopes):
    a = check_strong_slope(slopes, demo_tri, EssentialityOracle.load(TRIS / "demo.oracle")).dumps()
    b = check_strong_slope(slopes, demo_tri, EssentialityOracle.load(TRIS / "demo.oracle")).dumps()
    assert a == b


def test_corollary(demo_tri, oracle, slopes):
    r = check_strong_slope(slopes, demo_tri, oracle)
    with pytest.raises(ValueError, match="caller must certify maximality"):
        corollary_check(r, -4)
    assert corollary_check(r, -4, True).ok
    v = corollary_check(r, -5, True)
    assert not v.ok and "inconsistent" in v.reason


def test_severity_order():
    assert Status.FAILED_NO_ESSENTIAL.failed and not Status.CONDITIONAL.failed
