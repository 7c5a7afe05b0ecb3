import pytest

from nilbox.oracle import compare_dims
from nilbox.seeds import (RELATIONS, SEED_TABLE, UnsupportedBlockSize, check_relation,
                          get_seed, seed_decomposition)
from nilbox.sl2core import build_triad, is_invariant, weight_of


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_seed_basis_invariant_with_table_weights(k):
    seed = get_seed(k)
    t = build_triad([k])
    for w in seed.basis:
        assert is_invariant(w.poly, t)
        assert weight_of(w.poly, t) == w.weight
        assert w.poly.degree() == w.degree and w.poly.is_homogeneous()


@pytest.mark.parametrize("k", [1, 2, 3, 4, 5])
def test_seed_decomposition_matches_kernel(k):
    assert compare_dims(seed_decomposition(k), 6 if k < 5 else 5).ok


@pytest.mark.parametrize("k", sorted(RELATIONS))
def test_relations(k):
    assert check_relation(k)


def test_no_relation_is_trivially_true():
    assert check_relation(3)


def test_block_size_six_rejected():
    with pytest.raises(UnsupportedBlockSize, match="23"):
        get_seed(6)


def test_prefixes():
    seed = get_seed(3, "y", "β")
    assert seed.names == ("β1", "β2")
    assert seed.block_decomposition.variables == ("y1", "y2", "y3")
    assert str(seed.basis[1].poly) == "-2*y1*y3 + y2^2"


def test_weight_row():
    assert get_seed(5).weight_row == tuple(w for _, _, w in SEED_TABLE[5])
