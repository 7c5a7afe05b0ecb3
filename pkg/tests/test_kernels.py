import os
import subprocess
import sys
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from nilbox import _kernels
from nilbox._kernels import _pykernels

try:
    from nilbox._kernels import _ckernels
except ImportError:  # built without a compiler
    _ckernels = None

needs_c = pytest.mark.skipif(_ckernels is None, reason="compiled kernels not built")

exps = st.tuples(*[st.integers(0, 4)] * 3)
coefs = st.integers(-9, 9).filter(bool) | st.fractions(max_denominator=5).filter(bool)
terms = st.dictionaries(exps, coefs, max_size=6)


@needs_c
@given(terms, terms)
def test_poly_mul_same(a, b):
    assert _ckernels.poly_mul_terms(a, b) == _pykernels.poly_mul_terms(a, b)


@needs_c
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 3) | st.none(), st.integers(1, 3)),
                min_size=1, max_size=4),
       st.integers(0, 8))
def test_box_points_same(cols, deg):
    lo = [c[0] for c in cols]
    hi = [None if c[1] is None else c[0] + c[1] for c in cols]
    dg = [c[2] for c in cols]
    assert sorted(_ckernels.box_points(lo, hi, dg, deg)) == \
        sorted(_pykernels.box_points(lo, hi, dg, deg))


@needs_c
@given(st.lists(st.tuples(*[st.integers(0, 5)] * 3), max_size=20),
       st.lists(st.tuples(st.tuples(*[st.integers(-3, 3)] * 3), st.integers(-5, 5)), max_size=4))
def test_filter_points_same(points, rows):
    assert _ckernels.filter_points(points, rows) == _pykernels.filter_points(points, rows)


@needs_c
def test_filter_points_overflow_falls_back():
    rows = [((10**30, 0), -1)]
    pts = [(0, 0), (1, 5)]
    assert _ckernels.filter_points(pts, rows) == [(1, 5)]


@needs_c
@given(st.lists(st.tuples(st.integers(0, 4), st.integers(0, 3)), min_size=1, max_size=5),
       st.integers(0, 12))
def test_greedy_same(pairs, s):
    point = [p[0] for p in pairs]
    weights = [p[1] for p in pairs]
    assert _ckernels.greedy_residual(point, weights, s) == \
        _pykernels.greedy_residual(point, weights, s)


def test_backend_reported():
    assert _kernels.BACKEND in ("cython", "python")


def test_pure_python_fallback():
    env = dict(os.environ, NILBOX_PURE_PYTHON="1")
    code = ("from nilbox._kernels import BACKEND; "
            "from nilbox.cli import fold; "
            "bd, _ = fold((2, 3)); "
            "print(BACKEND, len(bd.blocks))")
    res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True, env=env)
    assert res.returncode == 0, res.stderr
    assert res.stdout.split() == ["python", "1"]


def test_fraction_coefficients_survive():
    a = {(1, 0): Fraction(1, 2)}
    b = {(0, 1): Fraction(2, 3)}
    assert _kernels.poly_mul_terms(a, b) == {(1, 1): Fraction(1, 3)}
