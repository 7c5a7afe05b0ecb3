"""Hilbert bases and block decompositions of the single-block algebras J1..J5."""

from __future__ import annotations

from dataclasses import dataclass

from .boxalgebra import INF, BMatrix
from .decomposition import BasisEntry, BlockDecomposition
from .ratpoly import Polynomial, poly_parse
from .sl2core import WeightInvariant, build_triad, default_variables

__all__ = ["SeedAlgebra", "UnsupportedBlockSize", "get_seed", "check_relation",
           "SEED_TABLE", "RELATIONS"]

# (polynomial, degree, weight) per basis element, in basis order
SEED_TABLE = {
    1: [("x1", 1, 0)],
    2: [("x1", 1, 1)],
    3: [("x1", 1, 2), ("x2^2 - 2*x1*x3", 2, 0)],
    4: [("x1", 1, 3),
        ("x2^2 - 2*x1*x3", 2, 2),
        ("x2^3 - 3*x1*x2*x3 + 3*x1^2*x4", 3, 3),
        ("9*x1^2*x4^2 - 3*x2^2*x3^2 - 18*x1*x2*x3*x4 + 8*x1*x3^3 + 6*x2^3*x4", 4, 0)],
    5: [("x1", 1, 4),
        ("x2^2 - 2*x1*x3", 2, 4),
        ("x3^2 + 2*x1*x5 - 2*x2*x4", 2, 0),
        ("x2^3 - 3*x1*x2*x3 + 3*x1^2*x4", 3, 6),
        ("2*x3^3 - 12*x1*x3*x5 + 6*x2^2*x5 - 6*x2*x3*x4 + 9*x1*x4^2", 3, 0)],
}

# block upper rows; all lower rows are zero
_UPPERS = {
    1: (INF,),
    2: (INF,),
    3: (INF, INF),
    4: (INF, INF, 1, INF),
    5: (INF, INF, INF, 1, INF),
}

# each relation is a list of (coefficient, exponent vector) summing to zero
RELATIONS = {
    4: [(1, (0, 0, 2, 0)), (-1, (0, 3, 0, 0)), (-1, (2, 0, 0, 1))],
    # the alpha1 factor of the middle term is squared; with a single alpha1
    # the relation would not be homogeneous
    5: [(1, (0, 0, 0, 2, 0)), (-1, (0, 3, 0, 0, 0)), (3, (2, 1, 1, 0, 0)),
        (-1, (3, 0, 0, 0, 1))],
}


class UnsupportedBlockSize(ValueError):
    pass


@dataclass(frozen=True)
class SeedAlgebra:
    block_size: int
    basis: tuple
    weight_row: tuple
    block_decomposition: BlockDecomposition

    @property
    def names(self):
        return tuple(w.name for w in self.basis)


def get_seed(k: int, prefix: str = "x", name_prefix: str = "α") -> SeedAlgebra:
    """Seed data for one Jordan block of size ``k`` (1..5).

    ``prefix`` renames the variables (``y`` for a right input) and
    ``name_prefix`` the basis names.
    """
    if k not in SEED_TABLE:
        raise UnsupportedBlockSize(
            f"unsupported block size {k}: seeds exist for 1..5 only; the "
            "algebra for a block of size 6 already needs 23 Hilbert basis elements")
    xs = default_variables(k, "x")
    vs = default_variables(k, prefix)
    basis = []
    entries = []
    for i, (text, deg, wt) in enumerate(SEED_TABLE[k], start=1):
        poly = poly_parse(text, xs).rename(vs)
        name = f"{name_prefix}{i}"
        basis.append(WeightInvariant(poly, deg, wt, name))
        entries.append(BasisEntry(name, deg, wt, poly))
    n = len(basis)
    bd = BlockDecomposition(tuple(entries),
                            (BMatrix((0,) * n, _UPPERS[k]),),
                            (), (k,), vs)
    return SeedAlgebra(k, tuple(basis), tuple(w.weight for w in basis), bd)


def check_relation(k: int) -> bool:
    """Whether the known relation among the basis of J_k holds; True if none."""
    if k not in RELATIONS:
        return True
    seed = get_seed(k)
    polys = [w.poly for w in seed.basis]
    vs = seed.block_decomposition.variables
    total = Polynomial.constant(0, vs)
    for c, exps in RELATIONS[k]:
        term = Polynomial.constant(c, vs)
        for p, e in zip(polys, exps):
            if e:
                term = term * p ** e
        total = total + term
    return total.is_zero()


def seed_decomposition(k: int, prefix: str = "x", name_prefix: str = "α") -> BlockDecomposition:
    return get_seed(k, prefix, name_prefix).block_decomposition

