import pytest
from hypothesis import given, strategies as st

from jonesurf.bracket import (BracketLimits, bracket_bruteforce, chebyshev, colored_jones,
                              kauffman_bracket)
from jonesurf.diagram import braid_closure, cable, mirror, parse_pd
from jonesurf.errors import ResourceLimitError
from jonesurf.laurent import DELTA, LaurentPolynomial as L
from jonesurf.oracles import divexact, torus_colored_jones, unknot_colored_jones

from conftest import knot

# normalized Jones polynomials in q = t^(1/4), from standard knot tables
V_TREFOIL = L({4: 1, 12: 1, 16: -1})           # t + t^3 - t^4
V_FIGURE8 = L({-8: 1, -4: -1, 0: 1, 4: -1, 8: 1})
QUANTUM_2 = L({2: 1, -2: 1})                   # J_unknot(2) up to sign


def test_chebyshev_examples():
    assert chebyshev(0) == [1]
    assert chebyshev(2) == [-1, 0, 1]
    assert chebyshev(3) == [0, -2, 0, 1]


def test_bracket_unknot_and_unlink():
    assert kauffman_bracket(parse_pd("")) == DELTA
    assert kauffman_bracket(knot("unlink2")) == DELTA * DELTA
    assert bracket_bruteforce(parse_pd("")) == DELTA


@pytest.mark.parametrize("name", ["unknot", "trefoil", "figure8", "8_19", "8_20", "8_21", "unlink2"])
def test_sweep_equals_bruteforce(name):
    d = knot(name)
    assert kauffman_bracket(d) == bracket_bruteforce(d)


@given(st.lists(st.sampled_from([1, -1, 2, -2, 3, -3]), min_size=0, max_size=9))
def test_sweep_equals_bruteforce_random_braids(word):
    d = braid_closure(word, strands=4)
    assert kauffman_bracket(d) == bracket_bruteforce(d)


def test_mirror_inverts_variable():
    d = knot("8_20")
    assert kauffman_bracket(mirror(d)) == kauffman_bracket(d).substitute_inverse()


def test_jones_matches_tables():
    assert colored_jones(knot("trefoil"), 2) == V_TREFOIL * QUANTUM_2
    assert colored_jones(knot("figure8"), 2) == V_FIGURE8 * QUANTUM_2


@pytest.mark.parametrize("name", ["unknot", "trefoil", "figure8", "8_19", "8_20", "8_21"])
def test_color_one_is_one(name):
    assert colored_jones(knot(name), 1) == L({0: 1})


@pytest.mark.parametrize("n", range(1, 9))
def test_unknot_colored(n):
    assert colored_jones(parse_pd(""), n) == unknot_colored_jones(n)


@pytest.mark.parametrize("n", [2, 3])
def test_trefoil_colored_bruteforce_route(n):
    d = knot("trefoil")
    got = colored_jones(d, n, bracket=bracket_bruteforce)
    assert got == colored_jones(d, n)
    assert got == torus_colored_jones(2, 3, n)


def test_trefoil_color_four_against_closed_formula():
    # the 3-cable has 27 crossings, beyond the all-states oracle
    assert colored_jones(knot("trefoil"), 4) == torus_colored_jones(2, 3, 4)


def test_figure8_amphichiral():
    j = colored_jones(knot("figure8"), 3)
    assert j == j.substitute_inverse()


def test_multicomponent_rejected():
    with pytest.raises(ValueError, match="knot diagram"):
        colored_jones(knot("unlink2"), 2)


def test_crossing_limit():
    with pytest.raises(ResourceLimitError, match="limited to 20 crossings"):
        kauffman_bracket(cable(knot("trefoil"), 3), BracketLimits(max_crossings=20))
    with pytest.raises(ResourceLimitError, match="16"):
        bracket_bruteforce(cable(knot("8_20"), 2))


def test_divexact():
    assert divexact(V_TREFOIL * QUANTUM_2, QUANTUM_2) == V_TREFOIL
    with pytest.raises(ArithmeticError):
        divexact(L({0: 1}), QUANTUM_2)
