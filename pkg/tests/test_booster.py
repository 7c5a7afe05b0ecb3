from fractions import Fraction

import pytest

from nilbox.booster import (EquivariantStanley, boost, boost_basis, expand_products,
                            is_equivariant, lettered, order_survey, parse_vterms,
                            prebox_count, simplified_style, vector_rank, verify_identity)
from nilbox.decomposition import dumps, loads
from nilbox.oracle import compare_dims, hilbert_count
from nilbox.ratpoly import poly_parse
from nilbox.transvectant import VectorField


def term_lines(E):
    text = E.render()
    body = text.split("\nℛ =")[0].split("\n" + str(len(E)) + " terms")[0]
    return [s.strip() for s in body.split("⊕")]


def test_boost_basis():
    tops = boost_basis([2, 3], ["u", "v"])
    assert [(t.label, t.row, t.weight) for t in tops] == [("u", 2, 1), ("v", 5, 2)]
    assert boost_basis([4])[0].label == "e4"


def test_e2_matches_normal_form(e2):
    assert len(e2) == 2
    assert term_lines(e2) == ["ℝ[[a]]u", "ℝ[[a]](a, u)^(1)"]
    xs = e2.variables
    g = [e2.generator_field(t, normalise=True) for t in e2.terms]
    assert g[0] == VectorField([poly_parse("0", xs), poly_parse("1", xs)])
    assert g[1] == VectorField([poly_parse("x1", xs), poly_parse("x2", xs)])
    # the sign of (a, u)^(1) is recorded as dropped
    assert [t.sign for t in e2.terms] == [1, -1]
    assert -e2.generator_field(e2.terms[1]) == g[1]


def test_e23_fourteen_terms(e23):
    assert len(e23) == 14
    assert term_lines(e23) == [
        "ℛ[[a, b]]u", "ℛ[[a, b]]d·u", "ℛ[[a, b]](d, u)^(1)", "ℛ[[a, b]](b, u)^(1)",
        "ℛ[[a]](a, u)^(1)",
        "ℛ[[a, b]]v", "ℛ[[a, b]]d·v", "ℛ[[a, b]](d, v)^(1)", "ℛ[[a, b]](b, v)^(1)",
        "ℛ[[a]](a, v)^(1)",
        "ℛ[[a, b]](b, v)^(2)", "ℛ[[a, b]]d·(b, v)^(2)", "ℛ[[a]](a*d, v)^(2)",
        "ℛ[[a]](a^2, v)^(2)"]
    assert e23.ring_names() == ["c", "e"]


def test_order_survey(a23):
    A, _, _ = a23
    assert order_survey(A) == {("a", "b", "d"): 14, ("a", "d", "b"): 16,
                               ("b", "a", "d"): 15, ("b", "d", "a"): 18,
                               ("d", "a", "b"): 19, ("d", "b", "a"): 21}


def test_e4_eleven_terms(e4):
    assert len(e4) == 11
    assert term_lines(e4) == [
        "ℛ[[a, b]]u", "ℛ[[a, b]]c·u", "ℛ[[a, b]](c, u)^(1)", "ℛ[[a, b]](a, u)^(1)",
        "ℛ[[b]](b, u)^(1)", "ℛ[[a, b]](c, u)^(2)", "ℛ[[a, b]](a, u)^(2)",
        "ℛ[[b]](b, u)^(2)", "ℛ[[a, b]](c, u)^(3)", "ℛ[[a, b]](a, u)^(3)",
        "ℛ[[b]](b^2, u)^(3)"]


@pytest.mark.parametrize("name", ["e2", "e23", "e4"])
def test_generators_equivariant(name, request):
    E = request.getfixturevalue(name)
    tri = E.triad()
    for t in E.terms:
        v = E.generator_field(t)
        assert is_equivariant(v, tri)
        assert is_equivariant(E.generator_field(t, normalise=True), tri)


@pytest.mark.parametrize("name,deg", [("e2", 5), ("e23", 4), ("e4", 4)])
def test_counts_match_kernel(name, deg, request):
    rep = compare_dims(request.getfixturevalue(name), deg, vector=True)
    assert rep.ok, rep.render()


def test_products_independent(e23):
    for d in range(3):
        fields = expand_products(e23, d)
        assert vector_rank(fields) == len(fields)


def test_prebox_count_agrees(a23, e23):
    A, _, _ = a23
    assert prebox_count(A, 5) == hilbert_count(e23, 5)


def test_non_equivariant_detected(e2):
    xs = e2.variables
    v = VectorField([poly_parse("x2", xs), poly_parse("0", xs)])
    assert not is_equivariant(v, e2.triad())


def test_simplified_style(e23):
    S = simplified_style(e23)
    assert S.simplified and len(S) == 14
    v = e23.generator_field(e23.terms[2])
    w = simplified_style(v, e23.jordan)
    assert w[0].is_zero() and w[1] == v[1]


def test_json_roundtrip(e23):
    text = dumps(e23)
    back = loads(text)
    assert isinstance(back, EquivariantStanley)
    assert dumps(back) == text


def test_identity_e23_exact(a23):
    A, vec, _ = a23
    r = verify_identity(A, "d*u = 2*b*(a,u)^(1) - a*(b,u)^(1)", vector_labels=vec)
    assert r.status == "exact"
    r = verify_identity(A, "2*d*v = 2*b*(a,v)^(1) - a*(b,v)^(1)", vector_labels=vec)
    assert r.status == "exact"


def test_identity_e4_scaled(a4):
    A, vec, _ = a4
    r = verify_identity(A, "3*c*u = 2*b*(a,u)^(1) - 3*a*(b,u)^(1)", vector_labels=vec)
    assert r.status == "scaled"
    assert r.constants == (Fraction(-1, 3), Fraction(1, 2))
    r = verify_identity(A, "4*(c,u)^(1) = 3*b*(a,u)^(2) - 3*a*(b,u)^(2)", vector_labels=vec)
    assert r.status == "scaled"
    assert r.constants == (Fraction(-1, 2), Fraction(3, 2))


def test_identity_failure(a23):
    A, vec, _ = a23
    r = verify_identity(A, "u = a*(a,u)^(1)", vector_labels=vec)
    assert r.status == "fails" and not r


def test_parse_vterms():
    ts = parse_vterms("2*b*(a,u)^(1) - a*(b,u)^(1)")
    assert [t.coef for t in ts] == [2, -1]
    assert [t.s for t in ts] == [1, 1]
    assert [t.vector for t in ts] == ["u", "u"]


def test_lettered_legend(a23):
    _, vec, legend = a23
    assert legend == {"a": "α1", "b": "β1", "c": "β2", "d": "γ1", "e": "γ2"}
    assert list(vec) == ["u", "v"]


def test_order_rejects_unknown(a23):
    A, vec, _ = a23
    with pytest.raises(ValueError):
        boost(A, ("a", "z"), vec)
