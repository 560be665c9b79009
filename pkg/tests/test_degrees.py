from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from jonesurf.degrees import (UNKNOT_JS, UNKNOT_JX, FitError, QuasiPolynomial, SlopeData,
                              degree_sequence, detect_unknot, fit_quasipolynomial,
                              minimal_period, slope_data, slopes_from_sequence)
from jonesurf.diagram import parse_pd
from jonesurf.oracles import torus_colored_jones, unknot_colored_jones

from conftest import knot


def test_unknot_degrees():
    rows = degree_sequence(parse_pd(""), 6)
    assert rows == [(n, F(n - 1, 2), -F(n - 1, 2)) for n in range(1, 7)]


def test_single_row():
    assert degree_sequence(knot("trefoil"), 1) == [(1, 0, 0)]


def test_trefoil_degrees_match_closed_formula():
    got = degree_sequence(knot("trefoil"), 6)
    ref = degree_sequence(None, 6, jones=lambda n: torus_colored_jones(2, 3, n))
    assert got == ref


def test_fit_quadratic():
    qp = fit_quasipolynomial([(n, 2 * n * n + n) for n in range(1, 11)])
    assert (qp.period, qp.a, qp.b, qp.c) == (1, (2,), (1,), (0,))


def test_fit_period_two():
    qp = fit_quasipolynomial([(n, 3 * n * n + (n % 2 == 0)) for n in range(1, 13)])
    assert qp.period == 2
    assert qp.a == (3, 3) and qp.b == (0, 0) and qp.c == (1, 0)


def test_fit_errors():
    with pytest.raises(FitError, match="insufficient data"):
        fit_quasipolynomial([(1, 0), (2, 1)])
    with pytest.raises(FitError, match="no exact fit"):
        fit_quasipolynomial([(n, n ** 3) for n in range(1, 13)], p_max=2)


@given(st.integers(1, 4), st.data())
def test_fit_recovers_random_quasipolynomial(p, data):
    frac = st.fractions(min_value=-5, max_value=5, max_denominator=4)
    a = [data.draw(frac) for _ in range(p)]
    b = [data.draw(frac) for _ in range(p)]
    c = [data.draw(frac) for _ in range(p)]
    qp = QuasiPolynomial(p, tuple(a), tuple(b), tuple(c))
    fit = fit_quasipolynomial([(n, qp(n)) for n in range(1, 3 * p + 4)], p_max=4)
    assert p % fit.period == 0
    assert all(fit(n) == qp(n) for n in range(1, 40))


def test_minimal_period():
    assert minimal_period([F(1), F(1)]) == 1
    assert minimal_period([F(1), F(2), F(1), F(2)]) == 2


def test_slope_data_unfolds_definitions():
    qp = QuasiPolynomial(2, (F(3), F(7, 2)), (F(0), F(0)), (F(0), F(0)))
    flat = QuasiPolynomial(1, (F(0),), (F(1, 2),), (F(0),))
    s = slope_data(qp, flat)
    assert s.js == {12, 14}
    assert s.jx_star == {1}
    assert s.period == 2


def test_unknot_slopes_literal():
    rows = degree_sequence(None, 8, jones=unknot_colored_jones)
    s = slopes_from_sequence(rows)
    assert s.js == {UNKNOT_JS} == {0}
    assert s.jx == {UNKNOT_JX} == {1}
    assert detect_unknot(s) and detect_unknot(s, 0, field="js")


def test_detect_unknot_examples():
    def sd(js):
        return SlopeData(frozenset(js), frozenset(), frozenset(js), frozenset(), 1)
    assert detect_unknot(sd({F(1)}))
    assert not detect_unknot(sd({F(6)}), 6 - 5)
    assert not detect_unknot(sd({F(1), F(3)}))
    with pytest.raises(ValueError):
        detect_unknot(sd({F(1)}), field="jy")


def test_json_roundtrip():
    rows = degree_sequence(None, 10, jones=lambda n: torus_colored_jones(3, 4, n))
    s = slopes_from_sequence(rows)
    back = SlopeData.from_json(s.to_json())
    assert (back.js, back.js_star, back.jx, back.jx_star, back.period, back.pairs) == \
        (s.js, s.js_star, s.jx, s.jx_star, s.period, s.pairs)


def test_linear_terms_pairing():
    s = SlopeData(frozenset({F(4)}), frozenset({F(0)}), frozenset({F(1), F(2)}), frozenset({F(0)}),
                  2, pairs=frozenset({(F(4), F(1)), (F(5), F(2))}))
    assert s.linear_terms(F(4)) == [1]
    assert s.linear_terms(F(0), "min") == [0]


@pytest.mark.parametrize("a,b,period", [(2, 3, 1), (2, 5, 1), (3, 4, 2), (3, 5, 2), (4, 5, 2)])
def test_torus_slopes_and_period(a, b, period):
    # the parity term of the torus degree vanishes when a = 2
    rows = degree_sequence(None, 12, jones=lambda n: torus_colored_jones(a, b, n))
    s = slopes_from_sequence(rows)
    assert s.js == {a * b} and s.js_star == {0}
    assert s.period == period
    # min side: Seifert surface of genus (a-1)(b-1)/2 gives -chi / sheets
    assert s.jx_star == {(a - 1) * (b - 1) - 1}
