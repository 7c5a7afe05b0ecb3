import json

from nilbox.decomposition import (BlockDecomposition, StanleyDecomposition, dumps,
                                  greek_name, loads)
from nilbox.oracle import hilbert_count


def test_greek_names():
    assert greek_name("a1") == "α1" and greek_name("g12") == "γ12"
    assert greek_name("β2") == "β2"


def test_block_json_roundtrip(j223):
    bd = j223.decomposition
    text = dumps(bd)
    back = loads(text)
    assert isinstance(back, BlockDecomposition)
    assert dumps(back) == text
    assert back.jordan == (2, 2, 3)
    assert [e.poly for e in back.basis] == [e.poly for e in bd.basis]


def test_stanley_json_roundtrip(j23_alt):
    st = j23_alt.stanley
    text = dumps(st)
    back = loads(text)
    assert isinstance(back, StanleyDecomposition)
    assert dumps(back) == text
    assert hilbert_count(back, 6) == hilbert_count(st, 6)


def test_json_is_deterministic(j23):
    data = json.loads(dumps(j23.decomposition))
    assert data["blocks"][0]["upper"] == ["inf", "inf", "inf", 1, "inf"]
    assert data["suppressed"] == ["β2"]


def test_compact_render(j223):
    text = j223.decomposition.to_stanley().render(compact=True)
    assert "ℛ⁺ = ℝ[[α1, α3, β1, β2, γ5]]" in text


def test_contains_and_evaluate(j23):
    bd = j23.decomposition
    assert bd.contains((0, 0, 0, 1, 0))
    assert not bd.contains((0, 0, 0, 2, 0))
    assert bd.evaluate((1, 0, 0, 0, 0)) == bd.entry("α1").poly


def test_preferred_sorted(j22):
    pts = j22.decomposition.preferred(2)
    assert len(pts) == 1 + 2 + 4
