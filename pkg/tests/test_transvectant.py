import pytest

from nilbox.oracle import transvectant_laws
from nilbox.ratpoly import poly_parse
from nilbox.sl2core import build_triad
from nilbox.transvectant import (StrengthError, VectorField, coefficient,
                                 external_transvectant, vector_transvectant)

V = ("x1", "x2", "y1", "y2")


def test_coefficient_values():
    assert coefficient(0, 0, 3, 2) == 1
    assert coefficient(1, 0, 1, 1) == 1
    assert coefficient(1, 1, 1, 1) == 1
    assert coefficient(2, 1, 2, 2) == 2
    assert coefficient(2, 0, 3, 2) == 6


def test_bilinear_form():
    t = build_triad([2, 2], variables=V)
    f, g = poly_parse("x1", V), poly_parse("y1", V)
    T = external_transvectant(f, 1, t.cY, g, 1, t.cY, 1)
    assert T == poly_parse("x1*y2 - x2*y1", V)
    assert t.cX(T).is_zero()


def test_strength_error():
    t = build_triad([2, 2], variables=V)
    with pytest.raises(StrengthError):
        external_transvectant(poly_parse("x1", V), 1, t.cY, poly_parse("y1", V), 1, t.cY, 2)


def test_vector_transvectant_sign():
    t = build_triad([2])
    f = poly_parse("x1", t.variables)
    v = vector_transvectant(f, 1, t.cY, [0, 1], 1, t.X, 1)
    assert v == VectorField([poly_parse("-x1", t.variables), poly_parse("-x2", t.variables)])
    from nilbox.booster import is_equivariant
    assert is_equivariant(v, t)


def test_vectorfield_render():
    xs = ("x1",)
    one = poly_parse("1", xs)
    assert VectorField([one.scale(0), one]).render() == "e2"
    assert VectorField([one.scale(0), one.scale(-1)]).render() == "-e2"


def test_laws_randomised():
    rep = transvectant_laws(cases=60, seed=3)
    assert rep.ok, rep.render()
