"""Independent checks of decompositions against exact linear algebra.

Nothing here reuses the factoring machinery: counts come from lattice
points of boxes, dimensions from Gaussian elimination on monomial bases,
and factorizations from exhaustive search.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Sequence

from . import linalg
from .boxalgebra import BMatrix, TransvectantSymbol
from .decomposition import BasisEntry, BlockDecomposition, StanleyDecomposition, StanleyTerm
from .ratpoly import LinearDerivation, Polynomial, derivation_apply, kernel_dimension, monomials
from .seeds import get_seed
from .sl2core import Triad, build_triad, weight_of
from .transvectant import external_transvectant

__all__ = ["hilbert_count", "compare_dims", "DimReport", "check_standard", "StandardReport",
           "bruteforce_maxlex", "all_factorizations", "transvectant_laws", "LawReport",
           "vector_kernel_dimension", "remark_fixture", "equivariant_kernel_counts"]


# -- counting ---------------------------------------------------------------------

def _blocks_of(obj):
    if isinstance(obj, BlockDecomposition):
        return list(obj.blocks), obj.degrees, obj.weights
    if isinstance(obj, StanleyDecomposition):
        return obj.as_blocks(), obj.degrees, obj.weights
    raise TypeError(f"cannot count {type(obj).__name__}")


def hilbert_count(obj, max_degree: int) -> Counter:
    """Number of preferred monomials per (degree, weight) up to ``max_degree``.

    Works for block and Stanley decompositions and for equivariant Stanley
    decompositions (which provide ``count_points``).
    """
    if hasattr(obj, "count_points"):
        return obj.count_points(max_degree)
    blocks, degs, wts = _blocks_of(obj)
    out = Counter()
    for b in blocks:
        for pt in b.points(degs, max_degree):
            d = sum(x * y for x, y in zip(pt, degs))
            w = sum(x * y for x, y in zip(pt, wts))
            out[(d, w)] += 1
    return out


def degree_totals(counts: Counter) -> Counter:
    out = Counter()
    for (d, _), n in counts.items():
        out[d] += n
    return out


# -- kernel dimensions ------------------------------------------------------------

@dataclass
class DimReport:
    rows: list = field(default_factory=list)   # dicts: degree, weight, expected, actual, status

    @property
    def ok(self) -> bool:
        return all(r["status"] == "ok" for r in self.rows)

    def mismatches(self) -> list:
        return [r for r in self.rows if r["status"] != "ok"]

    def render(self) -> str:
        lines = ["degree weight expected actual status"]
        for r in self.rows:
            lines.append(f"{r['degree']:>6} {r['weight']:>6} {r['expected']:>8} "
                         f"{r['actual']:>6} {r['status']}")
        return "\n".join(lines)

    def to_json(self) -> list:
        return list(self.rows)


def _weights_in_degree(diag: Sequence[int], d: int) -> set:
    return {sum(a * h for a, h in zip(e, diag)) for e in monomials(len(diag), d)}


def vector_kernel_dimension(triad: Triad, degree: int, weight: int | None = None) -> int:
    """dim ker L_{N*} on vector fields of the given degree (and weight).

    ``L_A v = v'(x) A x - A v``; the weight of ``x^m e_i`` is
    ``weight(x^m) - H_ii``.
    """
    n = triad.dimension
    diag = triad.h_diagonal
    A = triad.Y  # N*
    D = LinearDerivation(A, triad.variables)
    basis = []
    for m in monomials(n, degree):
        wm = sum(a * h for a, h in zip(m, diag))
        for i in range(n):
            if weight is None or wm - diag[i] == weight:
                basis.append((m, i))
    rows = []
    index: dict = {}
    for m, i in basis:
        img: dict = {}
        dm = derivation_apply(D, Polynomial._raw(triad.variables, {m: 1}))
        for e, c in dm.items():
            img[(e, i)] = img.get((e, i), 0) + c
        for r in range(n):
            a = A[r][i]
            if a:
                img[(m, r)] = img.get((m, r), 0) - a
        row = {}
        for key, c in img.items():
            if c:
                row[index.setdefault(key, len(index))] = c
        rows.append(row)
    return len(basis) - linalg.sparse_rank(rows)


def compare_dims(decomp, max_degree: int, triad: Triad | None = None,
                 vector: bool | None = None) -> DimReport:
    """Compare per-(degree, weight) counts with exact kernel dimensions."""
    if vector is None:
        vector = hasattr(decomp, "count_points")
    if triad is None:
        triad = build_triad(decomp.jordan, decomp.variables)
    counts = hilbert_count(decomp, max_degree)
    diag = triad.h_diagonal
    report = DimReport()
    for d in range(max_degree + 1):
        ws = _weights_in_degree(diag, d)
        if vector:
            ws = {w - h for w in ws for h in diag}
        ws |= {w for (dd, w) in counts if dd == d}
        for w in sorted(ws):
            if vector:
                exp = vector_kernel_dimension(triad, d, w)
            else:
                exp = kernel_dimension(triad.cX, d, w, diag)
            act = counts.get((d, w), 0)
            if exp == 0 and act == 0:
                continue
            report.rows.append({"degree": d, "weight": w, "expected": exp, "actual": act,
                                "status": "ok" if exp == act else "mismatch"})
    return report


def equivariant_kernel_counts(block_sizes: Sequence[int], max_degree: int) -> Counter:
    tri = build_triad(block_sizes)
    return Counter({d: vector_kernel_dimension(tri, d) for d in range(max_degree + 1)})


# -- standardness -------------------------------------------------------------------

@dataclass
class StandardReport:
    ok: bool
    counterexample: tuple | None = None   # (member, divisor not in the set)
    names: tuple = ()

    def __bool__(self):
        return self.ok

    def describe(self) -> str:
        if self.ok:
            return "standard"
        member, divisor = self.counterexample
        fmt = lambda e: "*".join(f"{n}^{k}" if k > 1 else n
                                 for n, k in zip(self.names, e) if k) or "1"
        return f"not standard: {fmt(member)} is in the set but its divisor {fmt(divisor)} is not"


def check_standard(decomp, max_degree: int = 6) -> StandardReport:
    """Divisor closure of the preferred set, by enumeration to ``max_degree``."""
    blocks, degs, _ = _blocks_of(decomp)
    names = decomp.names
    members = set()
    for b in blocks:
        members.update(b.points(degs, max_degree))
    for pt in sorted(members, key=lambda p: (sum(x * y for x, y in zip(p, degs)), p)):
        for i, x in enumerate(pt):
            if x:
                div = pt[:i] + (x - 1,) + pt[i + 1:]
                if div not in members:
                    return StandardReport(False, (pt, div), names)
    return StandardReport(True, None, names)


def remark_fixture() -> StanleyDecomposition:
    """A nonstandard preferred set: it holds α*β*ζ but not β*ζ."""
    names = ("α", "β", "δ", "μ", "ζ")
    basis = tuple(BasisEntry(n, 1, 0) for n in names)
    terms = (
        StanleyTerm(("α", "β", "δ", "μ"), ()),
        StanleyTerm(("α", "β", "δ"), (("α", 1), ("ζ", 1))),
        StanleyTerm(("δ", "μ"), (("ζ", 1),)),
    )
    return StanleyDecomposition(basis, terms, ())


# -- brute-force factorization ---------------------------------------------------------

def all_factorizations(sym: TransvectantSymbol, primes: Sequence[TransvectantSymbol]) -> list:
    """Every K >= 0 with sum K_i * primes[i] == sym."""
    target = sym.point()
    pts = [p.point() for p in primes]
    n = len(target)
    out = []

    def rec(i, rest, K):
        if i == len(pts):
            if not any(rest):
                out.append(tuple(K))
            return
        p = pts[i]
        bound = min((r // c for r, c in zip(rest, p) if c > 0), default=None)
        if bound is None:
            if any(p):
                bound = 0
            else:
                bound = 0
        for j in range(bound, -1, -1):
            K.append(j)
            rec(i + 1, tuple(r - j * c for r, c in zip(rest, p)), K)
            K.pop()

    if any(x < 0 for x in target) or len(target) != n:
        return out
    rec(0, target, [])
    return out


def bruteforce_maxlex(sym: TransvectantSymbol, primes: Sequence[TransvectantSymbol]) -> tuple:
    """Lexicographically largest factorization of ``sym`` over ``primes`` (in order)."""
    if sym.is_trivial():
        return tuple(0 for _ in primes)
    facs = all_factorizations(sym, primes)
    if not facs:
        raise ValueError(f"{sym} has no factorization over the given primes")
    return max(facs)


# -- transvectant laws ------------------------------------------------------------------

@dataclass
class LawReport:
    cases: int = 0
    failures: list = field(default_factory=list)
    chain_checks: int = 0

    @property
    def ok(self) -> bool:
        return not self.failures

    def render(self) -> str:
        head = f"{self.cases} transvectants, {self.chain_checks} chain-count checks"
        if self.ok:
            return head + ": all laws hold"
        return head + "\n" + "\n".join(f"FAIL {f}" for f in self.failures)


def _seed_monomial(seed, exps, vars_):
    p = Polynomial.constant(1, vars_)
    for w, e in zip(seed.basis, exps):
        if e:
            p = p * w.poly ** e
    return p


def transvectant_laws(cases: int = 200, max_degree: int = 8, seed: int = 0) -> LawReport:
    """Randomised check of the transvectant laws on products of seed invariants."""
    rng = random.Random(seed)
    report = LawReport()
    sizes = [2, 3, 4, 5]
    tries = 0
    while report.cases < cases and tries < cases * 50:
        tries += 1
        ka, kb = rng.choice(sizes), rng.choice(sizes)
        sa, sb = get_seed(ka, "x"), get_seed(kb, "y")
        ea = [rng.randint(0, 2) for _ in sa.basis]
        eb = [rng.randint(0, 2) for _ in sb.basis]
        da = sum(e * w.degree for e, w in zip(ea, sa.basis))
        db = sum(e * w.degree for e, w in zip(eb, sb.basis))
        if da == 0 or db == 0 or da + db > max_degree:
            continue
        wf = sum(e * w.weight for e, w in zip(ea, sa.basis))
        wg = sum(e * w.weight for e, w in zip(eb, sb.basis))
        ta = build_triad([ka], prefix="x")
        tb = build_triad([kb], prefix="y")
        f = _seed_monomial(sa, ea, ta.variables)
        g = _seed_monomial(sb, eb, tb.variables)
        both = build_triad([ka, kb], ta.variables + tb.variables)
        label = f"J{ka}{ea} x J{kb}{eb}"
        for s in range(min(wf, wg) + 1):
            T = external_transvectant(f, wf, ta.cY, g, wg, tb.cY, s).over(both.variables)
            report.cases += 1
            if T.is_zero():
                report.failures.append(f"{label} s={s}: transvectant vanished")
                continue
            if not both.cX(T).is_zero():
                report.failures.append(f"{label} s={s}: 𝒳T != 0")
            if T.degree() != da + db or not T.is_homogeneous():
                report.failures.append(f"{label} s={s}: wrong degree")
            if weight_of(T, both) != wf + wg - 2 * s:
                report.failures.append(f"{label} s={s}: wrong weight")
            # collapse: apply the left 𝒳 s times
            Xl = LinearDerivation(_pad(ta.Y, len(tb.variables)), both.variables)
            c = _collapse_constant(Xl.power(T, s), (f * g).over(both.variables))
            if c is None or c == 0:
                report.failures.append(f"{label} s={s}: collapse is not a nonzero multiple of fg")
            if s == 0 and c != 1:
                report.failures.append(f"{label} s=0: collapse constant {c} != 1")
            Xl_more = Xl.power(T, s + 1)
            if not Xl_more.is_zero():
                report.failures.append(f"{label} s={s}: left 𝒳^(s+1) does not kill T")
        hi, lo = max(wf, wg), min(wf, wg)
        chains = sum(wf + wg - 2 * s + 1 for s in range(lo + 1))
        report.chain_checks += 1
        if chains != (hi + 1) * (lo + 1):
            report.failures.append(f"{label}: chain count {chains} != {(hi + 1) * (lo + 1)}")
    return report


def _pad(matrix, extra):
    n = len(matrix)
    out = [list(r) + [0] * extra for r in matrix]
    out += [[0] * (n + extra) for _ in range(extra)]
    return out


def _collapse_constant(p: Polynomial, q: Polynomial):
    """The c with p == c*q, or None."""
    if q.is_zero():
        return None
    e, qc = next(iter(q.items()))
    c = Fraction(p.coefficient(e)) / qc
    if p != q.scale(c):
        return None
    return c.numerator if c.denominator == 1 else c
