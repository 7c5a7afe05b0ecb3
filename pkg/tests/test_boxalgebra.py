import itertools

import pytest
from hypothesis import given, settings, strategies as st

from nilbox.boxalgebra import (INF, AffineForm, BMatrix, ContainmentError, PMatrix,
                               ShapeError, TransvectantSymbol, algorithm_A, algorithm_B,
                               algorithm_C, algorithm_D, bmatrix_merge, ext_str, parse_ext,
                               pmatrix_equal, pmatrix_normalise, pmatrix_simplify,
                               pmatrix_subset)

DEG = 8


@st.composite
def boxes(draw, n):
    lo, up = [], []
    for _ in range(n):
        a = draw(st.integers(0, 2))
        lo.append(a)
        up.append(draw(st.sampled_from([INF, a, a + 1, a + 2, a + 3])))
    return BMatrix(tuple(lo), tuple(up))


@st.composite
def symbols(draw, p, q):
    return TransvectantSymbol(tuple(draw(st.integers(0, 2)) for _ in range(p)),
                              tuple(draw(st.integers(0, 2)) for _ in range(q)),
                              draw(st.integers(0, 2)))


@st.composite
def pmatrices(draw):
    p, q = draw(st.integers(1, 2)), draw(st.integers(1, 2))
    wa = tuple(draw(st.integers(0, 3)) for _ in range(p))
    wb = tuple(draw(st.integers(0, 3)) for _ in range(q))
    P = PMatrix.pre_box(draw(boxes(p)), draw(boxes(q)), wa, wb)
    for _ in range(draw(st.integers(0, 1))):
        P = algorithm_A(P, draw(symbols(p, q)))
    return P


def members(P, deg=DEG):
    return {t.point() for t in P.enumerate(deg, [1] * (P.p + P.q))}


def union(pieces, deg=DEG):
    out = []
    for Q in pieces:
        out.extend(members(Q, deg))
    return out


def divisible(t, theta, wa, wb):
    d = TransvectantSymbol.from_point(
        [a - b for a, b in zip(t, theta.point())], len(wa), len(wb))
    return d.well_defined(wa, wb)


@settings(max_examples=100)
@given(st.data())
def test_algorithm_A_is_divisibility(data):
    P = data.draw(pmatrices())
    theta = data.draw(symbols(P.p, P.q))
    got = members(algorithm_A(P, theta))
    want = {t for t in members(P) if divisible(t, theta, P.wa, P.wb)}
    assert got == want


@settings(max_examples=100)
@given(st.data())
def test_algorithm_B_partitions_difference(data):
    P = data.draw(pmatrices())
    theta = data.draw(symbols(P.p, P.q))
    Pp = algorithm_A(P, theta)
    pieces = algorithm_B(P, Pp)
    got = union(pieces)
    assert len(got) == len(set(got)), "pieces overlap"
    assert set(got) == members(P) - members(Pp)
    # any order of the critical columns gives the same set
    cols = list(range(P.p + P.q + 1))
    perm = data.draw(st.permutations(cols))
    assert sorted(union(algorithm_B(P, Pp, perm))) == sorted(got)


@settings(max_examples=100)
@given(st.data())
def test_algorithm_C_translation(data):
    P = data.draw(pmatrices())
    pi = data.draw(symbols(P.p, P.q))
    j = data.draw(st.integers(0, 3))
    C = algorithm_C(P, pi, j)
    shift = [j * c for c in pi.point()]
    got = members(C)
    for t in got:
        assert P.contains([a + b for a, b in zip(t, shift)])
    reach = DEG + sum(shift[:-1])
    for u in members(P, reach):
        t = tuple(a - b for a, b in zip(u, shift))
        if min(t) >= 0 and sum(t[:-1]) <= DEG:
            assert t in got


@settings(max_examples=100)
@given(st.data())
def test_algorithm_D_intersection(data):
    P = data.draw(pmatrices())
    Q = PMatrix.pre_box(data.draw(boxes(P.p)), data.draw(boxes(P.q)), P.wa, P.wb)
    Q = algorithm_A(Q, data.draw(symbols(P.p, P.q)))
    assert members(algorithm_D(P, Q)) == members(P) & members(Q)


@settings(max_examples=100)
@given(pmatrices())
def test_emptiness_agrees_with_enumeration(P):
    if P.is_empty():
        assert not members(P)
    if members(P):
        assert not P.is_empty()
    bounded = all(b is not INF for b in P.box_upper())
    if bounded and sum(P.box_upper()) <= DEG:
        assert P.is_empty() == (not members(P))


@settings(max_examples=60)
@given(pmatrices())
def test_normalise_keeps_set(P):
    N = pmatrix_normalise(P)
    if N is None:
        assert not members(P) and P.is_empty()
    else:
        assert members(N) == members(P)
        assert pmatrix_equal(N, P)


@settings(max_examples=40)
@given(st.data())
def test_simplify_keeps_union(data):
    P = data.draw(pmatrices())
    theta = data.draw(symbols(P.p, P.q))
    pieces = algorithm_B(P, algorithm_A(P, theta))
    merged = pmatrix_simplify(pieces)
    assert len(merged) <= len(pieces)
    got = union(merged)
    assert len(got) == len(set(got))
    assert set(got) == set(union(pieces))


def test_subset_exact():
    P = PMatrix.pre_box(BMatrix((0,), (INF,)), BMatrix((0,), (INF,)), (1,), (1,))
    A = algorithm_A(P, TransvectantSymbol((1,), (1,), 1))
    assert pmatrix_subset(A, P)
    assert not pmatrix_subset(P, A)


def test_bilinear_prebox():
    # J2 box J2: (α^k, β^l)^(s) is defined exactly for s <= min(k, l)
    P = PMatrix.pre_box(BMatrix((0,), (INF,)), BMatrix((0,), (INF,)), (1,), (1,))
    pts = members(P, 2)
    assert pts == {(0, 0, 0), (1, 0, 0), (0, 1, 0), (2, 0, 0), (0, 2, 0),
                   (1, 1, 0), (1, 1, 1)}


def test_B_requires_containment():
    P = PMatrix.pre_box(BMatrix((0,), (2,)), BMatrix((0,), (INF,)), (1,), (1,))
    Q = PMatrix.pre_box(BMatrix((0,), (3,)), BMatrix((0,), (INF,)), (1,), (1,))
    with pytest.raises(ContainmentError):
        algorithm_B(P, Q)


def test_B_when_divisible_part_is_empty():
    # A pushes the lower bound past the upper one; B must return P itself
    P = PMatrix.pre_box(BMatrix((0,), (0,)), BMatrix((0, 0), (INF, INF)), (0,), (0, 0))
    Pp = algorithm_A(P, TransvectantSymbol((2,), (0, 0), 0))
    assert Pp.is_empty()
    assert algorithm_B(P, Pp) == [P]


def test_B_empty_difference():
    P = PMatrix.pre_box(BMatrix((0,), (INF,)), BMatrix((0,), (INF,)), (1,), (1,))
    assert algorithm_B(P, P) == []


def test_shape_errors():
    P = PMatrix.pre_box(BMatrix((0,), (INF,)), BMatrix((0,), (INF,)), (1,), (1,))
    with pytest.raises(ShapeError):
        algorithm_A(P, TransvectantSymbol((1, 0), (0,), 0))
    with pytest.raises(ShapeError):
        BMatrix((0, 0), (1,))
    with pytest.raises(ShapeError):
        P.contains(TransvectantSymbol((1, 2), (0,), 0))


def test_affine_form():
    f = AffineForm.weight_form((2, 0), "k", 2, 1, -1)
    assert f.evaluate((3, 5), (7,)) == 5
    assert AffineForm.constant(4, 2, 1).is_constant()


def test_ext_values():
    assert parse_ext("∞") is INF and parse_ext("inf") is INF
    assert ext_str(INF) == "inf" and ext_str(3) == "3"
    assert parse_ext(ext_str(INF)) is INF
    assert INF > 10**9 and not INF < 5


def test_bmatrix_points_and_merge():
    b = BMatrix((0, 1), (1, INF))
    assert sorted(b.points([1, 1], 2)) == [(0, 1), (0, 2), (1, 1)]
    merged = bmatrix_merge([BMatrix((0, 0), (0, INF)), BMatrix((1, 0), (INF, INF))])
    assert merged == [BMatrix((0, 0), (INF, INF))]
    assert len(bmatrix_merge([BMatrix((0, 0), (0, 0)), BMatrix((1, 1), (1, 1))])) == 2
    assert BMatrix((0, 2), (INF, 2)).is_stanley()
    assert not BMatrix((0,), (1,)).is_stanley()


def test_symbol_arithmetic():
    a = TransvectantSymbol((1, 0), (1,), 1)
    assert (a + a).point() == (2, 0, 2, 2)
    assert (a + a - a) == a
    assert a.scaled(3).point() == (3, 0, 3, 3)
    assert a.well_defined((1, 1), (1,)) and not a.well_defined((0, 1), (1,))
    assert a.weight((1, 1), (1,)) == 0 and a.degree((1, 2), (1,)) == 2
