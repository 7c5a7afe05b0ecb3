"""Shared checks used by the unit tests and the acceptance run."""

from nilbox.boxalgebra import INF, BMatrix
from nilbox.oracle import bruteforce_maxlex, hilbert_count


def admissible(bp, max_degree):
    """Every admissible symbol of input degree <= max_degree."""
    degs = bp.inputs.degrees
    out = set()
    for P in bp.stages[0]:
        out.update(P.enumerate(max_degree, degs))
    return sorted(out, key=lambda t: t.point())


def lexmax_mismatches(bp, max_degree=5):
    primes = [p.point for p in bp.primes]
    bad = []
    syms = admissible(bp, max_degree)
    for sym in syms:
        if bp.factor(sym) != bruteforce_maxlex(sym, primes):
            bad.append(sym)
    return len(syms), bad


def block_points(blocks, degrees, max_degree):
    pts = []
    for b in blocks:
        pts.extend(b.points(degrees, max_degree))
    return pts


def active_blocks(bd):
    """Blocks restricted to the non-suppressed columns, with their degrees."""
    idx = bd.active_indices()
    return [b.select(idx) for b in bd.blocks], [bd.degrees[i] for i in idx]


def bmat(upper, lower):
    return BMatrix(tuple(lower), tuple(INF if u == "∞" else u for u in upper))


# block decomposition for the 2,2|3 product over the columns
# α1 α2 β1 γ1 γ2 γ3 γ4 γ5, with the γ2 lower entry of the second block
# set to 1 so that the blocks are disjoint
J223_REFERENCE = [
    bmat(["∞", 0, "∞", 1, 0, "∞", 1, "∞"], [0, 0, 0, 0, 0, 0, 0, 0]),
    bmat(["∞", "∞", "∞", 0, 1, 0, 0, "∞"], [0, 0, 0, 0, 1, 0, 0, 0]),
    bmat(["∞", "∞", "∞", 0, 0, 0, 0, "∞"], [0, 1, 0, 0, 0, 0, 0, 0]),
]


def same_counts(a, b, max_degree):
    return hilbert_count(a, max_degree) == hilbert_count(b, max_degree)
