from nilbox.boxalgebra import TransvectantSymbol as T
from nilbox.oracle import (all_factorizations, bruteforce_maxlex, check_standard,
                           compare_dims, degree_totals, equivariant_kernel_counts,
                           hilbert_count, remark_fixture, vector_kernel_dimension)
from nilbox.ratpoly import kernel_dimension
from nilbox.seeds import seed_decomposition
from nilbox.sl2core import build_triad

import pytest


def test_hilbert_count_single_block():
    c = hilbert_count(seed_decomposition(3), 4)
    assert c[(2, 0)] == 1 and c[(2, 4)] == 1 and c[(4, 0)] == 1
    assert degree_totals(c)[4] == 3


def test_compare_dims_detects_wrong_cap(j23):
    from dataclasses import replace
    from nilbox.boxalgebra import INF, BMatrix
    bd = j23.decomposition
    wrong = replace(bd, blocks=(BMatrix((0,) * 5, (INF, INF, INF, 2, INF), bd.names),))
    rep = compare_dims(wrong, 5)
    assert not rep.ok
    first = rep.mismatches()[0]
    assert first["actual"] > first["expected"]
    assert "mismatch" in rep.render()
    assert rep.to_json()[0].keys() == {"degree", "weight", "expected", "actual", "status"}


def test_remark_fixture_not_standard():
    rep = check_standard(remark_fixture())
    assert not rep.ok
    assert rep.describe() == "not standard: α*β*ζ is in the set but its divisor β*ζ is not"


def test_standard_outputs(j22, j23, j23_alt, j223):
    for bp in (j22, j23, j23_alt, j223):
        assert check_standard(bp.decomposition, 6).ok


def test_vector_kernel_small_cases():
    t = build_triad([2])
    # constant fields: only e2 is killed
    assert vector_kernel_dimension(t, 0) == 1
    assert vector_kernel_dimension(t, 1) == 2
    assert equivariant_kernel_counts([2], 3) == {0: 1, 1: 2, 2: 2, 3: 2}


def test_kernel_dimension_is_sum_over_weights():
    t = build_triad([2, 3])
    for d in range(4):
        total = kernel_dimension(t.cX, d)
        ws = {w for (dd, w) in hilbert_count(seed_decomposition(2), 0)}
        del ws
        by_w = sum(kernel_dimension(t.cX, d, w, t.h_diagonal) for w in range(-3 * d, 3 * d + 1))
        assert total == by_w


def test_factorizations_bruteforce():
    primes = [T((1,), (0,), 0), T((0,), (1,), 0), T((1,), (1,), 1), T((2,), (1,), 2)]
    facs = all_factorizations(T((2,), (2,), 2), primes)
    assert sorted(facs) == [(0, 0, 2, 0), (0, 1, 0, 1)]
    assert bruteforce_maxlex(T((2,), (2,), 2), primes) == (0, 1, 0, 1)
    reordered = [primes[2], primes[3], primes[0], primes[1]]
    assert bruteforce_maxlex(T((2,), (2,), 2), reordered) == (2, 0, 0, 0)
    assert bruteforce_maxlex(T((0,), (0,), 0), primes) == (0, 0, 0, 0)
    with pytest.raises(ValueError):
        bruteforce_maxlex(T((0,), (0,), 1), primes)
