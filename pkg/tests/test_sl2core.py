import pytest

from nilbox.ratpoly import poly_parse
from nilbox.sl2core import (NotIsobaricError, build_triad, default_variables,
                            is_invariant, weight_of)


def test_block4_matrices():
    t = build_triad([4])
    assert [t.M[i + 1][i] for i in range(3)] == [3, 4, 3]
    assert [t.N[i][i + 1] for i in range(3)] == [1, 1, 1]
    assert t.h_diagonal == (3, 1, -1, -3)


def test_block23_diagonal_and_ranges():
    t = build_triad([2, 3])
    assert t.h_diagonal == (1, -1, 2, 0, -2)
    assert t.block_ranges() == [(0, 2), (2, 5)]
    assert t.bottom_rows() == (1, 4)
    assert t.variables == default_variables(5)


@pytest.mark.parametrize("k", range(1, 7))
def test_pressure_formula(k):
    t = build_triad([k])
    for i in range(1, k):
        assert t.M[i][i - 1] == i * (k - i)


def test_bad_sizes():
    with pytest.raises(ValueError):
        build_triad([0])
    with pytest.raises(ValueError):
        build_triad([2], variables=["a"])


def test_weights():
    t = build_triad([3])
    xs = t.variables
    assert weight_of(poly_parse("x1", xs), t) == 2
    assert weight_of(poly_parse("x2^2 - 2*x1*x3", xs), t) == 0
    assert weight_of(poly_parse("x1*x3", xs), t) == 0
    with pytest.raises(NotIsobaricError):
        weight_of(poly_parse("x1 + x2", xs), t)


def test_invariance():
    t = build_triad([3])
    assert is_invariant(poly_parse("x2^2 - 2*x1*x3", t.variables), t)
    assert not is_invariant(poly_parse("x2", t.variables), t)
    assert is_invariant(poly_parse("5", t.variables), t)


def test_custom_prefix():
    t = build_triad([2], prefix="y")
    assert t.variables == ("y1", "y2")
