import numpy as np
import pytest
from hypothesis import given, strategies as st

from jonesurf.errors import ResourceLimitError
from jonesurf.hilbert import (DiophantineSystem, HilbertLimits, bounded_minimal_solutions,
                              hilbert_basis, read_matrix, verify_basis, write_matrix)

from conftest import TRIS


def test_single_equation_examples():
    assert hilbert_basis(DiophantineSystem([[2, -1]])) == [(1, 2)]
    assert sorted(hilbert_basis(DiophantineSystem([[1, 1, -1]]))) == [(0, 1, 1), (1, 0, 1)]


def test_verify_examples():
    s = DiophantineSystem([[2, -1]])
    assert verify_basis(s, [(1, 2)], 10).ok
    r = verify_basis(s, [(1, 2), (2, 4)], 10)
    assert r.not_minimal == [(2, 4)] and "minimality violation" in str(r)
    r = verify_basis(DiophantineSystem([[1, 1, -1]]), [(1, 0, 1)], 10)
    assert r.missing == [(0, 1, 1)] and "completeness violation at [(0, 1, 1)]" in str(r)


def test_no_positive_solutions():
    assert hilbert_basis(DiophantineSystem([[1, 2, 3]])) == []


def test_empty_system_is_unit_vectors():
    assert hilbert_basis(DiophantineSystem([], unknowns=3)) == [(0, 0, 1), (0, 1, 0), (1, 0, 0)]


def test_brute_force_oracle_by_hand():
    # 3x = 2y + z; minimal solutions listed by hand
    got = set(bounded_minimal_solutions(DiophantineSystem([[3, -2, -1]]), 12))
    assert got == {(1, 0, 3), (1, 1, 1), (2, 3, 0)}


small = st.integers(1, 3).flatmap(lambda m: st.integers(2, 5).flatmap(
    lambda n: st.lists(st.lists(st.integers(-4, 4), min_size=n, max_size=n), min_size=m, max_size=m)))


@given(small)
def test_methods_agree_with_brute_force(rows):
    s = DiophantineSystem(rows)
    basis = hilbert_basis(s)
    assert basis == hilbert_basis(s, method="completion")
    assert verify_basis(s, basis, 12).ok


@given(small)
def test_basis_properties(rows):
    s = DiophantineSystem(rows)
    basis = hilbert_basis(s)
    assert basis == sorted(basis)
    for v in basis:
        assert s.solves(v) and any(v) and min(v) >= 0
    arr = np.array(basis).reshape(len(basis), s.unknowns)
    for i, v in enumerate(arr):
        others = np.delete(arr, i, axis=0)
        assert not ((others <= v).all(axis=1)).any()


@pytest.mark.parametrize("name", ["solid_torus", "demo"])
def test_bundled_matrices(name):
    s = read_matrix(TRIS / f"{name}.matrix")
    basis = hilbert_basis(s)
    assert verify_basis(s, basis, 15).ok


def test_resource_limit_partial():
    s = read_matrix(TRIS / "demo.matrix")
    with pytest.raises(ResourceLimitError, match="max_solutions") as info:
        hilbert_basis(s, HilbertLimits(max_solutions=5))
    assert info.value.partial is not None


def test_unknown_method():
    with pytest.raises(ValueError):
        hilbert_basis(DiophantineSystem([[1, -1]]), method="magic")


def test_matrix_roundtrip(tmp_path):
    s = DiophantineSystem([[1, -2, 0], [0, 3, -3]])
    p = tmp_path / "m.txt"
    p.write_text(write_matrix(s))
    assert read_matrix(p) == s
