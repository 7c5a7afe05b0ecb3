"""Box products of invariant algebras by the factoring method.

Given block decompositions of the invariants of two nilpotent matrices
(left over ``x``, right over ``y``), :func:`box_product` returns a Hilbert
basis and a block decomposition of the invariants of their direct sum.

The pipeline has four stages.

1. *Pre-box product*: one p-matrix per pair of input blocks, describing all
   well-defined transvectants ``(α^k, β^l)^(s)``.
2. *Filtration*: with primes ϑ_1, ϑ_2, ... taken from the factoring order or
   discovered as the smallest survivor, ``T_i = T_{i-1} - T_{i-1}(ϑ_i)``
   (Algorithms A and B), until only the trivial symbol is left.
3. *Reconstruction*: each ``S`` inside ``T_{i-1}`` is written as a disjoint
   union of ``j*π_i + R_j`` with ``R_j = S[j] ∩ Q`` for the pieces ``Q`` of
   ``T_i`` (Algorithms C and D); equal consecutive ``R_j`` are grouped
   into exponent intervals, using an exact certificate that the sequence
   has become constant.
4. *Assembly*: the nested intervals give boxes of exponents over the
   primes, which are checked for disjointness and divisor closure.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Sequence

from . import omega
from .boxalgebra import (INF, BMatrix, PMatrix, TransvectantSymbol, TranslatedPMatrix,
                         algorithm_A, algorithm_B, algorithm_C, algorithm_D,
                         bmatrix_merge, pmatrix_equal, pmatrix_normalise,
                         pmatrix_simplify)
from .decomposition import (BasisEntry, BlockDecomposition, Recipe,
                            StanleyDecomposition, greek_name, to_stanley)
from .ratpoly import Polynomial
from .sl2core import build_triad, default_variables, weight_of
from .transvectant import StrengthError, external_transvectant

__all__ = [
    "Prime", "FiltrationState", "coalesce_blocks", "stanley_size", "Reconstruction", "BoxProduct", "PipelineError",
    "OrderError", "pre_box", "prepare_inputs", "transvectant_eval", "discover_prime",
    "filtrate", "reconstruct", "assemble", "box_product", "to_stanley",
    "expand_preferred", "omega_map", "boxes_disjoint", "boxes_standard",
    "box_subtract",
]

MAX_J = 64          # reconstruction cap on the exponent probe
MAX_DISCOVERY_DEGREE = 60


class PipelineError(RuntimeError):
    """An internal consistency check failed."""


class OrderError(ValueError):
    """A user-supplied factoring order is not usable."""


# -- inputs -----------------------------------------------------------------

@dataclass(frozen=True)
class Inputs:
    """The two inputs renamed and restricted to their active columns."""

    left: BlockDecomposition
    right: BlockDecomposition
    left_active: tuple
    right_active: tuple
    capped_nulls: tuple   # names of null inputs kept as primes

    @property
    def p(self):
        return len(self.left_active)

    @property
    def q(self):
        return len(self.right_active)

    @property
    def wa(self):
        return tuple(self.left.weights[i] for i in self.left_active)

    @property
    def wb(self):
        return tuple(self.right.weights[i] for i in self.right_active)

    @property
    def degrees(self):
        return (tuple(self.left.degrees[i] for i in self.left_active)
                + tuple(self.right.degrees[i] for i in self.right_active))

    @property
    def active_names(self):
        return (tuple(self.left.names[i] for i in self.left_active)
                + tuple(self.right.names[i] for i in self.right_active))

    @property
    def suppressed(self):
        act = set(self.active_names)
        return tuple(n for n in self.left.names + self.right.names if n not in act)

    def full_recipe(self, sym: TransvectantSymbol) -> Recipe:
        k = [0] * len(self.left.basis)
        l = [0] * len(self.right.basis)
        for i, v in zip(self.left_active, sym.k):
            k[i] = v
        for i, v in zip(self.right_active, sym.l):
            l[i] = v
        return Recipe(tuple(k), tuple(l), sym.s)


def _is_free_everywhere(bd: BlockDecomposition, i: int) -> bool:
    return all(max(b.lower[i], 0) == 0 and b.upper[i] is INF for b in bd.blocks)


def prepare_inputs(left: BlockDecomposition, right: BlockDecomposition,
                   suppress_nulls: bool = True) -> Inputs:
    """Rename the inputs (α over x, β over y) and pick the active columns."""
    left = left.renamed(default_variables(len(left.variables), "x")).with_names(
        [f"α{i}" for i in range(1, len(left.basis) + 1)])
    right = right.renamed(default_variables(len(right.variables), "y")).with_names(
        [f"β{i}" for i in range(1, len(right.basis) + 1)])
    if set(left.variables) & set(right.variables):
        raise ValueError("inputs must use disjoint variables")
    # earlier suppression is carried along; inputs are re-examined from scratch
    left = replace(left, suppressed=())
    right = replace(right, suppressed=())
    capped = []

    def active(bd):
        keep = []
        for i, e in enumerate(bd.basis):
            if e.weight == 0 and suppress_nulls:
                if _is_free_everywhere(bd, i):
                    continue
                capped.append(e.name)
            keep.append(i)
        return tuple(keep)

    la, ra = active(left), active(right)
    return Inputs(left, right, la, ra, tuple(capped))


def pre_box(left: BlockDecomposition, right: BlockDecomposition,
            suppress_nulls: bool = True) -> list:
    """Pre-box product as p-matrices, one per pair of input blocks."""
    return _pre_box(prepare_inputs(left, right, suppress_nulls))


def _pre_box(inp: Inputs) -> list:
    out = []
    lnames = tuple(inp.left.names[i] for i in inp.left_active)
    rnames = tuple(inp.right.names[i] for i in inp.right_active)
    lblocks = _distinct([b.select(inp.left_active) for b in inp.left.blocks])
    rblocks = _distinct([b.select(inp.right_active) for b in inp.right.blocks])
    for lb in lblocks:
        for rb in rblocks:
            P = PMatrix.pre_box(BMatrix(lb.lower, lb.upper, lnames),
                                BMatrix(rb.lower, rb.upper, rnames), inp.wa, inp.wb)
            P = pmatrix_normalise(P)
            if P is not None:
                out.append(P)
    return out


def _distinct(blocks):
    seen, out = set(), []
    for b in blocks:
        key = (b.lower, b.upper)
        if key not in seen and not b.is_empty():
            seen.add(key)
            out.append(b)
    return out


# -- transvectants ----------------------------------------------------------

def transvectant_eval(sym, left: BlockDecomposition, right: BlockDecomposition) -> Polynomial:
    """Evaluate ``(α^k, β^l)^(s)`` for a recipe or symbol over the full bases."""
    k, l, s = tuple(sym.k), tuple(sym.l), sym.s
    if len(k) != len(left.basis) or len(l) != len(right.basis):
        raise ValueError("symbol length does not match the input bases")
    wf = sum(a * w for a, w in zip(k, left.weights))
    wg = sum(a * w for a, w in zip(l, right.weights))
    if s > wf or s > wg or s < 0:
        raise StrengthError(
            f"(α^{list(k)}, β^{list(l)})^({s}) is not defined: weights {wf} and {wg}")
    f = left.evaluate(k)
    g = right.evaluate(l)
    lt = build_triad(left.jordan, left.variables)
    rt = build_triad(right.jordan, right.variables)
    val = external_transvectant(f, wf, lt.cY, g, wg, rt.cY, s)
    vs = left.variables + right.variables
    val = val.over(vs)
    deg = sum(a * d for a, d in zip(k, left.degrees)) + sum(a * d for a, d in zip(l, right.degrees))
    if val.is_zero():
        raise PipelineError(f"transvectant {sym} vanished")
    if not val.is_homogeneous() or val.degree() != deg:
        raise PipelineError(f"transvectant {sym} has the wrong degree")
    tri = build_triad(left.jordan + right.jordan, vs)
    if weight_of(val, tri) != wf + wg - 2 * s:
        raise PipelineError(f"transvectant {sym} has the wrong weight")
    return val


# -- filtration ---------------------------------------------------------------

@dataclass(frozen=True)
class Prime:
    name: str
    point: TransvectantSymbol      # over the active columns
    recipe: Recipe                 # over the full input bases
    degree: int
    weight: int


@dataclass
class FiltrationState:
    index: int
    pieces: list
    primes: list = field(default_factory=list)


def _nontrivial_row(P: PMatrix):
    coeffs = tuple([1] * (P.p + P.q)) + (0,)
    return coeffs, -1


def is_trivial_stage(pieces: Sequence[PMatrix]) -> bool:
    for P in pieces:
        if omega.feasible(P.rows() + [_nontrivial_row(P)], P.nvars):
            return False
    return True


def _discovery_key(t: TransvectantSymbol, degrees):
    deg = sum(d * x for d, x in zip(degrees, t.k + t.l))
    return (deg, tuple(-x for x in t.k), tuple(-x for x in t.l), t.s)


def discover_prime(pieces: Sequence[PMatrix], degrees: Sequence[int]) -> TransvectantSymbol | None:
    """Smallest nontrivial member of the union of ``pieces``, or None."""
    if is_trivial_stage(pieces):
        return None
    d = 1
    while d <= MAX_DISCOVERY_DEGREE:
        found = [t for P in pieces for t in P.enumerate(d, degrees) if not t.is_trivial()]
        if found:
            return min(found, key=lambda t: _discovery_key(t, degrees))
        d += 1
    raise PipelineError("no prime found below the discovery degree cap")


def filtrate(pieces: Sequence[PMatrix], pi: TransvectantSymbol, simplify: bool = True,
             column_order=None) -> list:
    """Pieces of ``T - T(pi)``."""
    out = []
    for P in pieces:
        Pp = algorithm_A(P, pi)
        if pmatrix_normalise(Pp) is None:
            out.append(P)
            continue
        for piece in algorithm_B(P, Pp, column_order(P, Pp) if column_order else None):
            n = pmatrix_normalise(piece)
            if n is not None:
                out.append(n)
    if simplify and len(out) > 1:
        out = pmatrix_simplify(out)
    return out


# -- reconstruction -------------------------------------------------------------

@dataclass(frozen=True)
class Reconstruction:
    """``S = disjoint union over entries of interval * pi + R``."""

    stage: int
    source: PMatrix
    target_piece: int
    entries: tuple   # ((lo, hi), R or None, special: bool)


def _stable_from(S: PMatrix, Q: PMatrix, pi: TransvectantSymbol, j0: int) -> bool:
    """Exact check that ``S[J] ∩ Q == S[J+1] ∩ Q`` for every ``J >= j0``."""
    tr = TranslatedPMatrix(S, pi)
    n = S.nvars
    qrows = [(c + (0,), d) for c, d in Q.rows()]
    jrow = (tuple([0] * n) + (1,), -j0)
    at0 = tr.rows_symbolic(0)
    at1 = tr.rows_symbolic(1)
    base_rows = S.rows()
    pv = pi.point()
    for offset_in, offset_out in ((0, 1), (1, 0)):
        inside = qrows + (at0 if offset_in == 0 else at1) + [jrow]
        for coeffs, const in base_rows:
            cp = sum(a * b for a, b in zip(coeffs, pv))
            row = (coeffs + (cp,), const + offset_out * cp)
            if omega.feasible(inside + [omega.negate(row)], n + 1):
                return False
    return True


def _same(a, b) -> bool:
    if a is None or b is None:
        return a is None and b is None
    return pmatrix_equal(a, b)


def reconstruct_piece(S: PMatrix, Q: PMatrix, pi: TransvectantSymbol) -> list:
    """Intervals ``[(lo, hi), R]`` with ``{t in Q : t + j*pi in S} = R`` for j in the interval."""
    values = []
    j = 0
    while True:
        if j > MAX_J:
            raise PipelineError("reconstruction did not stabilise below the cap")
        R = pmatrix_normalise(algorithm_D(algorithm_C(S, pi, j), Q))
        values.append(R)
        if (j == 0 or _same(values[-2], R)) and _stable_from(S, Q, pi, j):
            break
        j += 1
    groups = []
    start = 0
    for idx in range(1, len(values)):
        if not _same(values[idx], values[start]):
            groups.append(((start, idx - 1), values[start]))
            start = idx
    groups.append(((start, INF), values[start]))
    return groups


def reconstruct(prev_pieces: Sequence[PMatrix], next_pieces: Sequence[PMatrix],
                pi: TransvectantSymbol, stage: int = 0) -> list:
    """Reconstruction report for every (previous piece, next piece) pair."""
    report = []
    for S in prev_pieces:
        for r, Q in enumerate(next_pieces):
            entries = []
            for iv, R in reconstruct_piece(S, Q, pi):
                special = R is not None and not pmatrix_equal(R, Q)
                entries.append((iv, R, special))
            report.append(Reconstruction(stage, S, r, tuple(entries)))
    return report


class _Assembler:
    def __init__(self, stages, primes):
        self.stages = stages
        self.primes = primes
        self.memo = {}

    def decompose(self, S: PMatrix, i: int) -> list:
        """Interval tuples ``(K_{i+1}, ..., K_t)`` covering the subset S of T_i."""
        key = (S, i)
        if key in self.memo:
            return self.memo[key]
        t = len(self.primes)
        if i == t:
            out = [()]
        else:
            pi = self.primes[i].point
            out = []
            for Q in self.stages[i + 1]:
                for iv, R in reconstruct_piece(S, Q, pi):
                    if R is None:
                        continue
                    for tail in self.decompose(R, i + 1):
                        out.append((iv,) + tail)
        self.memo[key] = out
        return out


# -- assembly ---------------------------------------------------------------------

def box_subtract(box: BMatrix, other: BMatrix, columns: Sequence[int] | None = None) -> list:
    """``box - other`` as a list of disjoint boxes.

    Columns are cut in the given order (default left to right); the order
    changes the pieces but not their union.
    """
    ivs = box.intervals()
    ovs = other.intervals()
    inter = [(max(a, c), min(b, d)) for (a, b), (c, d) in zip(ivs, ovs)]
    if any(lo > hi for lo, hi in inter):
        return [box] if not box.is_empty() else []
    out = []
    cur = list(ivs)
    for i in (range(len(ivs)) if columns is None else columns):
        (a, b), (c, d) = ivs[i], inter[i]
        if a < c:
            piece = list(cur)
            piece[i] = (a, c - 1)
            out.append(piece)
        if d is not INF and (b is INF or d < b):
            piece = list(cur)
            piece[i] = (d + 1, b)
            out.append(piece)
        cur[i] = (c, d)
    return [BMatrix(tuple(lo for lo, _ in p), tuple(hi for _, hi in p), box.labels)
            for p in out]


def stanley_size(boxes: Sequence[BMatrix]) -> int:
    """Number of Stanley terms the boxes expand to."""
    total = 0
    for b in boxes:
        n = 1
        for lo, hi in b.intervals():
            if hi is not INF:
                n *= hi - lo + 1
        total += n
    return total


def _hull(a: BMatrix, b: BMatrix) -> BMatrix:
    ia, ib = a.intervals(), b.intervals()
    return BMatrix(tuple(min(x[0], y[0]) for x, y in zip(ia, ib)),
                   tuple(INF if INF in (x[1], y[1]) else max(x[1], y[1])
                         for x, y in zip(ia, ib)), a.labels)


def coalesce_blocks(blocks: Sequence[BMatrix]) -> list:
    """Repartition disjoint boxes into fewer Stanley terms with the same union.

    A box is grown to the hull of two boxes when the union already covers
    that hull; the other boxes give up its points (cut in two column
    orders) and abutting boxes are merged again. Each round takes the best
    such step; rounds stop when the Stanley term count, then the box
    count, no longer drops.
    """
    cur = bmatrix_merge(blocks)
    if not cur:
        return cur
    best = (stanley_size(cur), len(cur))
    width = cur[0].width
    orders = (list(range(width)), list(range(width - 1, -1, -1)))
    while True:
        step = None
        for i in range(len(cur)):
            for j in range(i + 1, len(cur)):
                H = _hull(cur[i], cur[j])
                if not boxes_cover(H, cur):
                    continue
                for cols in orders:
                    rest = [p for b in cur for p in box_subtract(b, H, cols)]
                    cand = bmatrix_merge([H] + rest)
                    score = (stanley_size(cand), len(cand))
                    if score < best:
                        best, step = score, cand
        if step is None:
            break
        cur = step
    return cur


def boxes_cover(box: BMatrix, boxes: Sequence[BMatrix]) -> bool:
    rest = [box] if not box.is_empty() else []
    for b in boxes:
        nxt = []
        for r in rest:
            nxt.extend(box_subtract(r, b))
        rest = nxt
        if not rest:
            return True
    return not rest


def boxes_disjoint(boxes: Sequence[BMatrix]) -> bool:
    for i in range(len(boxes)):
        for j in range(i + 1, len(boxes)):
            if not boxes[i].intersect(boxes[j]).is_empty():
                return False
    return True


def boxes_standard(boxes: Sequence[BMatrix]):
    """Divisor closure of a union of boxes, decided exactly.

    Returns None when closed, else ``(point, divisor)`` for a witness.
    """
    for b in boxes:
        ivs = b.intervals()
        for c, (lo, hi) in enumerate(ivs):
            if lo == 0:
                continue
            face = [list(x) for x in ivs]
            face[c] = [lo - 1, lo - 1]
            fb = BMatrix(tuple(x[0] for x in face), tuple(x[1] for x in face), b.labels)
            if not boxes_cover(fb, boxes):
                rest = [fb]
                for other in boxes:
                    rest = [r for x in rest for r in box_subtract(x, other)]
                witness = tuple(x for x, _ in rest[0].intervals())
                point = list(witness)
                point[c] += 1
                return tuple(point), witness
    return None


# -- the whole product ---------------------------------------------------------------

@dataclass
class BoxProduct:
    decomposition: BlockDecomposition
    stanley: StanleyDecomposition
    primes: list                 # Prime, in factoring order
    stages: list                 # list of lists of PMatrix
    inputs: Inputs
    order: tuple                 # prime names in factoring order

    def omega(self, exponent: Sequence[int]) -> TransvectantSymbol:
        return omega_map(self, exponent)

    def prime(self, name: str) -> Prime:
        name = greek_name(name)
        for p in self.primes:
            if p.name == name:
                return p
        raise KeyError(name)

    def factor(self, sym: TransvectantSymbol) -> tuple:
        """Exponent vector over ``order`` of the preferred factorization."""
        return factor_symbol(self, sym)

    def reconstruction_report(self) -> list:
        out = []
        for i, p in enumerate(self.primes):
            out.extend(reconstruct(self.stages[i], self.stages[i + 1], p.point, i + 1))
        return out


def _unit(n, i):
    e = [0] * n
    e[i] = 1
    return tuple(e)


def _input_primes(inp: Inputs) -> dict:
    p, q = inp.p, inp.q
    out = {}
    for a, i in enumerate(inp.left_active):
        sym = TransvectantSymbol(_unit(p, a), (0,) * q, 0)
        e = inp.left.basis[i]
        out[e.name] = Prime(e.name, sym, inp.full_recipe(sym), e.degree, e.weight)
    for b, i in enumerate(inp.right_active):
        sym = TransvectantSymbol((0,) * p, _unit(q, b), 0)
        e = inp.right.basis[i]
        out[e.name] = Prime(e.name, sym, inp.full_recipe(sym), e.degree, e.weight)
    return out


def _make_gamma(inp: Inputs, sym: TransvectantSymbol, name: str) -> Prime:
    deg = sym.degree(inp.degrees[:inp.p], inp.degrees[inp.p:])
    return Prime(name, sym, inp.full_recipe(sym), deg, sym.weight(inp.wa, inp.wb))


def _run_filtration(inp: Inputs, T0: list, fixed: Sequence[Prime], known: dict,
                    simplify: bool, column_order=None):
    stages = [T0]
    primes = []
    used = set()
    next_gamma = 1 + max([int(n[1:]) for n in known if n.startswith("γ")] + [0])
    for pr in fixed:
        stages.append(filtrate(stages[-1], pr.point, simplify, column_order))
        primes.append(pr)
        used.add(pr.point)
    by_point = {p.point: p for p in known.values()}
    while True:
        pt = discover_prime(stages[-1], inp.degrees)
        if pt is None:
            break
        if pt in used:
            raise PipelineError(f"prime {pt} survived its own factoring step")
        if pt in by_point:
            pr = by_point[pt]
        else:
            pr = _make_gamma(inp, pt, f"γ{next_gamma}")
            next_gamma += 1
        stages.append(filtrate(stages[-1], pt, simplify, column_order))
        primes.append(pr)
        used.add(pt)
    return stages, primes


def assemble(inp: Inputs, stages: list, primes: list, order_names=None) -> BlockDecomposition:
    """Boxes over the primes, reordered into basis order, merged and checked."""
    asm = _Assembler(stages, primes)
    raw = []
    for P in stages[0]:
        raw.extend(asm.decompose(P, 0))
    # output basis: all α, all β, then γ by index
    gammas = sorted((p for p in primes if p.name.startswith("γ")),
                    key=lambda p: int(p.name[1:]))
    basis = []
    for e in inp.left.basis:
        basis.append(replace(e, poly=e.poly.over(inp.left.variables + inp.right.variables)
                             if e.poly is not None else None,
                             recipe=Recipe(_unit(len(inp.left.basis), inp.left.names.index(e.name)),
                                           (0,) * len(inp.right.basis), 0)))
    for e in inp.right.basis:
        basis.append(replace(e, poly=e.poly.over(inp.left.variables + inp.right.variables)
                             if e.poly is not None else None,
                             recipe=Recipe((0,) * len(inp.left.basis),
                                           _unit(len(inp.right.basis), inp.right.names.index(e.name)), 0)))
    for g in gammas:
        poly = transvectant_eval(g.recipe, inp.left, inp.right)
        basis.append(BasisEntry(g.name, g.degree, g.weight, poly, g.recipe))
    names = [e.name for e in basis]
    col_of = {p.name: names.index(p.name) for p in primes}
    blocks = []
    for ivs in raw:
        lower = [0] * len(names)
        upper = [INF] * len(names)
        pn = set()
        for p, (lo, hi) in zip(primes, ivs):
            c = col_of[p.name]
            lower[c], upper[c] = lo, hi
            pn.add(p.name)
        for n in names:
            if n not in pn and n not in inp.suppressed:
                # an active input that was never used as a prime cannot occur
                upper[names.index(n)] = 0
        blocks.append(BMatrix(tuple(lower), tuple(upper), tuple(names)))
    blocks = coalesce_blocks(blocks)
    blocks.sort(key=lambda b: (tuple(x if x is not INF else 10**9 for x in b.upper),
                               b.lower), reverse=False)
    if not boxes_disjoint(blocks):
        raise PipelineError("assembled blocks overlap")
    witness = boxes_standard(blocks)
    if witness is not None:
        raise PipelineError(f"assembled preferred set is not standard: {witness}")
    vs = inp.left.variables + inp.right.variables
    return BlockDecomposition(tuple(basis), tuple(blocks), inp.suppressed,
                              inp.left.jordan + inp.right.jordan, vs,
                              inp.left.names, inp.right.names)


def _resolve_order(order, inp: Inputs, known: dict) -> list:
    out = []
    seen = set()
    for raw in order:
        name = greek_name(raw.strip())
        if name in inp.suppressed:
            continue        # lives in the coefficient ring
        if name not in known:
            raise OrderError(f"unknown basis name {raw!r} in factoring order; "
                             f"known names are {', '.join(sorted(known))}")
        if name in seen:
            raise OrderError(f"{raw!r} appears twice in the factoring order")
        seen.add(name)
        out.append(known[name])
    return out


def box_product(left: BlockDecomposition, right: BlockDecomposition,
                order: Sequence[str] | None = None, suppress_nulls: bool = True,
                simplify: bool = True, column_order=None) -> BoxProduct:
    """Compute the invariants of the direct sum from those of the summands.

    ``order`` lists basis names (α_i, β_j, and γ_m as numbered by the default
    run); names it omits are factored afterwards, inputs first, and any
    further primes are discovered. ``column_order`` optionally chooses the
    Algorithm B column order for each difference ``(P, P')``.
    """
    inp = prepare_inputs(left, right, suppress_nulls)
    T0 = _pre_box(inp)
    inputs = _input_primes(inp)
    capped = [inputs[n] for n in inp.capped_nulls]
    default_fixed = capped + [p for n, p in inputs.items() if n not in inp.capped_nulls]
    if order is None:
        stages, primes = _run_filtration(inp, T0, default_fixed, {}, simplify, column_order)
    else:
        names = [greek_name(n.strip()) for n in order]
        known = dict(inputs)
        if any(n.startswith("γ") for n in names):
            ref = box_product(left, right, None, suppress_nulls, simplify)
            for p in ref.primes:
                known.setdefault(p.name, p)
        fixed = _resolve_order(order, inp, known)
        listed = {p.name for p in fixed}
        fixed += [p for n, p in inputs.items() if n not in listed]
        gam = {n: p for n, p in known.items() if n.startswith("γ")}
        stages, primes = _run_filtration(inp, T0, fixed, gam, simplify, column_order)
    bd = assemble(inp, stages, primes)
    return BoxProduct(bd, to_stanley(bd), primes, stages, inp,
                      tuple(p.name for p in primes))


# -- using the result -----------------------------------------------------------------

def omega_map(result: BoxProduct, exponent: Sequence[int]) -> TransvectantSymbol:
    """Sum of prime points weighted by an exponent vector over the output basis."""
    inp = result.inputs
    names = result.decomposition.names
    total = TransvectantSymbol((0,) * inp.p, (0,) * inp.q, 0)
    for p in result.primes:
        e = exponent[names.index(p.name)]
        if e:
            total = total + p.point.scaled(e)
    return total


def factor_symbol(result: BoxProduct, sym: TransvectantSymbol) -> tuple:
    """The preferred exponent vector K (over the factoring order) with Ω(K) = sym."""
    inp = result.inputs
    stages, primes = result.stages, result.primes
    if not any(P.contains(sym) for P in stages[0]):
        raise ValueError(f"{sym} is not an admissible transvectant")
    K = []
    cur = sym
    for i, p in enumerate(primes):
        j = 0
        # peel off copies of the prime while staying in the previous stage
        while not any(P.contains(cur) for P in stages[i + 1]):
            cur = cur - p.point
            j += 1
            if not any(P.contains(cur) for P in stages[i]):
                raise PipelineError(f"factoring {sym} left the filtration")
        K.append(j)
    if not cur.is_trivial():
        raise PipelineError(f"factoring {sym} did not end at the trivial symbol")
    del inp
    return tuple(K)


def expand_preferred(exponent: Sequence[int], decomposition: BlockDecomposition) -> Polynomial:
    """Evaluate a preferred monomial over the output basis as a polynomial."""
    return decomposition.evaluate(exponent)
