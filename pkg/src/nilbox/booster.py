"""Boosting invariants to equivariants.

Given a block decomposition ``A`` of the invariants, every admissible
transvectant ``(α^k, e_r)^(s)`` with a top vector ``e_r`` is factored
greedily: walk the factoring order and strip as many copies of each
``α_i`` as the strength allows. The residual transvectants are the
Stanley generators.

Residual characterisation used below. Write ``k = k' + k''`` with ``k''``
the residual. Greedy removal produces exactly this split iff

* ``wt(k'') >= s`` (the residual is defined),
* ``wt(k'') - s < ŵ_i`` for every ``i`` in the support of ``k''``, and
* ``sum_{j after i} ŵ_j k'_j <= ŵ_i - (wt(k'') - s) - 1`` for every such ``i``.

So inside one block the coefficient set of a residual is a box cut by a
few linear caps, which is sliced into Stanley terms directly.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field, replace
from fractions import Fraction
from itertools import permutations, product
from typing import Sequence

from . import linalg
from ._kernels import greedy_residual
from .boxalgebra import INF, BMatrix
from .decomposition import BasisEntry, BlockDecomposition, greek_name, render_monomial
from .ratpoly import LinearDerivation, Polynomial, derivation_apply
from .sl2core import Triad, build_triad
from .transvectant import VectorField, vector_transvectant

__all__ = ["TopVector", "boost_basis", "vec_transvectant", "is_equivariant",
           "EquivTerm", "EquivariantStanley", "boost", "order_survey", "boost_factor",
           "VTerm", "parse_vterms", "IdentityResult", "verify_identity",
           "simplified_style", "letter_names", "lettered", "prebox_count",
           "expand_products", "vector_rank"]

_VECTOR_LETTERS = "uvwpqrt"


@dataclass(frozen=True)
class TopVector:
    label: str
    row: int      # 1-based coordinate index (bottom row of its block)
    weight: int


def boost_basis(block_sizes: Sequence[int], labels: Sequence[str] | None = None) -> tuple:
    """Top weight vectors ``e_r`` of ker N*, one per Jordan block."""
    out = []
    row = 0
    for i, k in enumerate(block_sizes):
        row += k
        label = labels[i] if labels else f"e{row}"
        out.append(TopVector(label, row, k - 1))
    return tuple(out)


def vec_transvectant(f: Polynomial, wf: int, top: TopVector, triad: Triad, s: int) -> VectorField:
    """``(f, e_r)^(s)`` with the sign convention of the definition kept."""
    n = triad.dimension
    e = [0] * n
    e[top.row - 1] = 1
    return vector_transvectant(f.over(triad.variables), wf, triad.cY, e, top.weight,
                               triad.X, s)


def lie_derivative(v: VectorField, A, variables) -> VectorField:
    """``L_A v = v'(x) A x - A v``."""
    D = LinearDerivation(A, variables)
    n = len(v)
    comps = []
    for i in range(n):
        c = D(v[i].over(variables))
        for j in range(n):
            if A[i][j]:
                c = c - v[j].over(variables).scale(A[i][j])
        comps.append(c)
    return VectorField(comps)


def is_equivariant(v: VectorField, triad: Triad) -> bool:
    return lie_derivative(v, triad.Y, triad.variables).is_zero()


def leading_sign(v: VectorField) -> int:
    """Sign of the graded-lex leading coefficient of the first nonzero component."""
    for c in v:
        if not c.is_zero():
            e, coef = c.sorted_terms()[0]
            return 1 if coef > 0 else -1
    return 1


def simplified_style(obj, block_sizes: Sequence[int] | None = None):
    """Keep only the bottom-row component of each Jordan block."""
    if isinstance(obj, EquivariantStanley):
        return replace(obj, simplified=True)
    rows = set()
    r = 0
    for k in block_sizes:
        r += k
        rows.add(r - 1)
    return VectorField([c if i in rows else c.scale(0) for i, c in enumerate(obj)])


# -- the equivariant Stanley decomposition -----------------------------------------

@dataclass(frozen=True)
class EquivTerm:
    free: tuple          # names of the coefficient ring generators
    base: tuple          # ((name, exponent), ...)
    k: tuple             # residual exponent vector over the basis
    row: int
    s: int
    sign: int = 1        # sign dropped when rendering the generator

    def base_dict(self) -> dict:
        return dict(self.base)


@dataclass(frozen=True)
class EquivariantStanley:
    basis: tuple
    vectors: tuple
    terms: tuple
    jordan: tuple = ()
    variables: tuple = ()
    order: tuple = ()
    suppressed: tuple = ()
    simplified: bool = False

    def __len__(self):
        return len(self.terms)

    @property
    def names(self):
        return tuple(e.name for e in self.basis)

    @property
    def degrees(self):
        return tuple(e.degree for e in self.basis)

    @property
    def weights(self):
        return tuple(e.weight for e in self.basis)

    def vector(self, row: int) -> TopVector:
        for v in self.vectors:
            if v.row == row:
                return v
        raise KeyError(row)

    def triad(self) -> Triad:
        return build_triad(self.jordan, self.variables)

    # generators

    def generator_label(self, t: EquivTerm) -> str:
        lab = self.vector(t.row).label
        if t.s == 0 and not any(t.k):
            return lab
        inner = render_monomial(dict(zip(self.names, t.k))) if any(t.k) else "1"
        return f"({inner}, {lab})^({t.s})"

    def generators(self) -> list:
        """Distinct residual transvectants ``(k, r, s)`` in term order."""
        seen = []
        for t in self.terms:
            g = (t.k, t.row, t.s)
            if g not in seen:
                seen.append(g)
        return seen

    def generator_field(self, t: EquivTerm, normalise: bool = False) -> VectorField:
        tri = self.triad()
        f = _monomial_poly(self.basis, t.k, tri.variables)
        wf = sum(a * w for a, w in zip(t.k, self.weights))
        v = vec_transvectant(f, wf, self.vector(t.row), tri, t.s)
        if normalise and t.sign < 0:
            v = -v
        if self.simplified:
            v = simplified_style(v, self.jordan)
        return v

    def product_field(self, t: EquivTerm, exps: Sequence[int]) -> VectorField:
        """``α^exps`` times the generator of ``t``."""
        tri = self.triad()
        return self.generator_field(t).times(_monomial_poly(self.basis, exps, tri.variables))

    # counting

    def term_box(self, t: EquivTerm) -> BMatrix:
        base = t.base_dict()
        lower = tuple(base.get(n, 0) for n in self.names)
        upper = tuple(INF if n in t.free else base.get(n, 0) for n in self.names)
        return BMatrix(lower, upper, self.names)

    def products(self, max_degree: int):
        """Yield (term, coefficient exponents) for every product up to ``max_degree``."""
        degs = self.degrees
        for t in self.terms:
            gd = sum(a * d for a, d in zip(t.k, degs))
            if gd > max_degree:
                continue
            for pt in self.term_box(t).points(degs, max_degree - gd):
                yield t, pt

    def count_points(self, max_degree: int):
        from collections import Counter
        degs, wts = self.degrees, self.weights
        out = Counter()
        for t, pt in self.products(max_degree):
            d = sum(a * b for a, b in zip(pt, degs)) + sum(a * b for a, b in zip(t.k, degs))
            w = (sum(a * b for a, b in zip(pt, wts)) + sum(a * b for a, b in zip(t.k, wts))
                 + self.vector(t.row).weight - 2 * t.s)
            out[(d, w)] += 1
        return out

    # text

    def ring_names(self) -> list:
        """Null basis names free in every term; shown as ℛ."""
        return [n for n, w in zip(self.names, self.weights)
                if w == 0 and all(n in t.free for t in self.terms)]

    def render(self, explicit: bool = False) -> str:
        ring = self.ring_names()
        rname = "ℛ" if ring else "ℝ"
        lines = []
        for t in self.terms:
            free = [n for n in t.free if n not in ring]
            head = f"{rname}[[{', '.join(free)}]]" if free else rname
            phi = render_monomial(t.base_dict())
            gen = self.generator_label(t)
            lines.append(head + ("" if phi == "1" else phi + "·") + gen)
        out = [" ⊕ ".join(lines[i:i + 1]) for i in range(len(lines))]
        body = "\n⊕ ".join(out) if out else "0"
        text = [body]
        if ring:
            text.append(f"ℛ = ℝ[[{', '.join(ring)}]]")
        text.append(f"{len(self.terms)} terms")
        if explicit:
            text.append("generators" + (" (simplified style):" if self.simplified else ":"))
            done = set()
            for t in self.terms:
                g = (t.k, t.row, t.s)
                if g in done:
                    continue
                done.add(g)
                v = self.generator_field(t, normalise=True)
                factor = "" if t.sign > 0 else "  [sign dropped]"
                text.append(f"  {self.generator_label(t)} = {v.render()}{factor}")
        return "\n".join(text)

    # json

    def to_json(self) -> dict:
        basis = []
        for e in self.basis:
            d = {"name": e.name, "degree": e.degree, "weight": e.weight}
            if e.poly is not None:
                d["poly"] = str(e.poly)
            basis.append(d)
        return {
            "kind": "equivariant",
            "basis": basis,
            "vectors": [{"label": v.label, "row": v.row, "weight": v.weight}
                        for v in self.vectors],
            "jordan": list(self.jordan),
            "variables": list(self.variables),
            "order": list(self.order),
            "suppressed": list(self.suppressed),
            "simplified": self.simplified,
            "terms": [{"free": list(t.free), "base": dict(t.base),
                       "generator": {"k": list(t.k), "r": t.row, "s": t.s},
                       "sign": t.sign} for t in self.terms],
        }

    @classmethod
    def from_json(cls, data: dict) -> "EquivariantStanley":
        from .ratpoly import poly_parse
        variables = tuple(data.get("variables", ()))
        basis = []
        for e in data["basis"]:
            poly = poly_parse(e["poly"], variables or None) if "poly" in e else None
            if poly is not None and variables:
                poly = poly.over(variables)
            basis.append(BasisEntry(e["name"], int(e["degree"]), int(e["weight"]), poly))
        vectors = tuple(TopVector(v["label"], int(v["row"]), int(v["weight"]))
                        for v in data["vectors"])
        terms = tuple(EquivTerm(tuple(t["free"]), tuple(t["base"].items()),
                                tuple(t["generator"]["k"]), int(t["generator"]["r"]),
                                int(t["generator"]["s"]), int(t.get("sign", 1)))
                      for t in data["terms"])
        return cls(tuple(basis), vectors, terms, tuple(data.get("jordan", ())), variables,
                   tuple(data.get("order", ())), tuple(data.get("suppressed", ())),
                   bool(data.get("simplified", False)))


def _monomial_poly(basis, exps, variables) -> Polynomial:
    p = Polynomial.constant(1, variables)
    for e, a in zip(basis, exps):
        if a:
            if e.poly is None:
                raise ValueError(f"basis element {e.name} has no polynomial")
            p = p * e.poly.over(variables) ** a
    return p


# -- factoring -------------------------------------------------------------------------

def _resolve_boost_order(A: BlockDecomposition, order) -> list:
    names = A.names
    positive = [i for i, w in enumerate(A.weights) if w > 0]
    if order is None:
        return positive
    idx = []
    for n in order:
        n = greek_name(n)
        if n not in names:
            raise ValueError(f"unknown basis name {n!r} in factoring order")
        i = names.index(n)
        if A.weights[i] == 0:
            continue  # nulls are always stripped whole
        if i in idx:
            raise ValueError(f"{n} listed twice in factoring order")
        idx.append(i)
    missing = [names[i] for i in positive if i not in idx]
    if missing:
        raise ValueError("factoring order must list every basis element of positive "
                         f"weight; missing {', '.join(missing)}")
    return idx


def boost_factor(A: BlockDecomposition, order, k: Sequence[int], s: int) -> tuple:
    """Greedy split ``k = k' + k''`` for ``(α^k, e)^(s)``; returns ``(k', k'')``."""
    idx = _resolve_boost_order(A, order)
    wts = A.weights
    if sum(a * w for a, w in zip(k, wts)) < s:
        raise ValueError("transvectant is not defined at this strength")
    rem_sub = greedy_residual([k[i] for i in idx], [wts[i] for i in idx], s)
    kk = [0] * len(k)
    for i, v in zip(idx, rem_sub):
        kk[i] = v
    return tuple(a - b for a, b in zip(k, kk)), tuple(kk)


def _residuals(upper, wts, idx, s):
    """Residual vectors ``k''`` inside ``[0, upper]`` (zero off ``idx``)."""
    n = len(wts)
    out = []
    if s == 0:
        return [tuple([0] * n)]
    cap = s + max(wts[i] for i in idx) - 1 if idx else -1

    def rec(pos, cur, wt):
        if pos == len(idx):
            if wt < s:
                return
            supp = [i for i in idx if cur[i]]
            if all(wt - s < wts[i] for i in supp):
                out.append(tuple(cur))
            return
        i = idx[pos]
        m = 0
        while wt + m * wts[i] <= cap and (upper[i] is INF or m <= upper[i]):
            cur[i] = m
            rec(pos + 1, cur, wt + m * wts[i])
            m += 1
        cur[i] = 0

    rec(0, [0] * n, 0)
    return out


def _terms_for(block: BMatrix, kk, wts, idx, s, names):
    """Stanley terms for the coefficients of residual ``kk`` inside ``block``."""
    n = len(wts)
    L, U = block.lower, block.upper
    excess = sum(a * w for a, w in zip(kk, wts)) - s
    pos = {i: p for p, i in enumerate(idx)}
    caps = []   # (columns, weights, cap)
    for i in idx:
        if kk[i]:
            after = [j for j in idx if pos[j] > pos[i]]
            caps.append((after, wts[i] - excess - 1))
    lo, hi = [], []
    for j in range(n):
        if U[j] is not INF and kk[j] > U[j]:
            return []
        lo.append(max(0, L[j] - kk[j]))
        hi.append(INF if U[j] is INF else U[j] - kk[j])
    capped = sorted({j for cols, _ in caps for j in cols})
    for j in capped:
        c = min(cap for cols, cap in caps if j in cols)
        b = c // wts[j] if c >= 0 else -1
        hi[j] = b if hi[j] is INF else min(hi[j], b)
    if any(h is not INF and l > h for l, h in zip(lo, hi)):
        return []
    free = tuple(names[j] for j in range(n) if hi[j] is INF)
    fixed = [j for j in range(n) if hi[j] is not INF]
    terms = []
    for choice in product(*[range(lo[j], hi[j] + 1) for j in fixed]):
        val = dict(zip(fixed, choice))
        if any(sum(wts[j] * val[j] for j in cols) > cap for cols, cap in caps):
            continue
        base = []
        for j in range(n):
            e = val[j] if j in val else lo[j]
            if e:
                base.append((names[j], e))
        terms.append((free, tuple(base)))
    return terms


def boost(A: BlockDecomposition, order=None, vector_labels: Sequence[str] | None = None,
          signs: bool = True) -> EquivariantStanley:
    """Equivariant Stanley decomposition of ``A`` boosted by the top vectors."""
    idx = _resolve_boost_order(A, order)
    names, wts = A.names, A.weights
    tops = boost_basis(A.jordan, vector_labels)
    terms = []
    for top in tops:
        for s in range(top.weight + 1):
            cases = []
            for block in A.blocks:
                for kk in _residuals(block.upper, wts, idx, s):
                    for free, base in _terms_for(block, kk, wts, idx, s, names):
                        cases.append((kk, free, base))
            key = lambda c: (tuple(c[0][i] for i in idx), _base_key(c[2], names))
            for kk, free, base in sorted(cases, key=key):
                terms.append(EquivTerm(free, base, kk, top.row, s))
    E = EquivariantStanley(A.basis, tops, tuple(terms), A.jordan, A.variables,
                           tuple(names[i] for i in idx), A.suppressed)
    if signs and all(e.poly is not None for e in A.basis) and A.jordan:
        E = _with_signs(E)
    return E


def _base_key(base, names):
    d = dict(base)
    return tuple(d.get(n, 0) for n in names)


def _with_signs(E: EquivariantStanley) -> EquivariantStanley:
    cache = {}
    out = []
    for t in E.terms:
        g = (t.k, t.row, t.s)
        if g not in cache:
            cache[g] = leading_sign(E.generator_field(t))
        out.append(replace(t, sign=cache[g]))
    return replace(E, terms=tuple(out))


def order_survey(A: BlockDecomposition, orders=None) -> dict:
    """Term counts for each factoring order (default: all permutations)."""
    positive = [n for n, w in zip(A.names, A.weights) if w > 0]
    if orders is None:
        orders = list(permutations(positive))
    return {tuple(o): len(boost(A, o, signs=False)) for o in orders}


# -- lettered names ----------------------------------------------------------------------

def letter_names(n: int) -> list:
    letters = "abcdefghijklmnopqrstuvwxyz"
    if n <= len(letters):
        return list(letters[:n])
    return [f"a{i}" for i in range(1, n + 1)]


def lettered(A: BlockDecomposition) -> tuple:
    """``A`` with basis renamed a, b, c, ... plus matching vector labels u, v, ..."""
    letters = letter_names(len(A.names))
    legend = dict(zip(letters, A.names))
    B = A.with_names(letters)
    q = len(A.jordan)
    vec = list(_VECTOR_LETTERS[:q]) if q <= len(_VECTOR_LETTERS) else None
    return B, vec, legend


# -- checks ------------------------------------------------------------------------------

def prebox_count(A: BlockDecomposition, max_degree: int):
    """Bigraded count of admissible ``(α^k, e_r)^(s)`` up to ``max_degree``."""
    from collections import Counter
    degs, wts = A.degrees, A.weights
    out = Counter()
    for top in boost_basis(A.jordan):
        for b in A.blocks:
            for pt in b.points(degs, max_degree):
                d = sum(a * x for a, x in zip(pt, degs))
                w = sum(a * x for a, x in zip(pt, wts))
                for s in range(min(w, top.weight) + 1):
                    out[(d, w + top.weight - 2 * s)] += 1
    return out


def expand_products(E: EquivariantStanley, degree: int) -> list:
    """Explicit vector fields of all output products of exactly ``degree``."""
    degs = E.degrees
    out = []
    for t, pt in E.products(degree):
        d = sum(a * b for a, b in zip(pt, degs)) + sum(a * b for a, b in zip(t.k, degs))
        if d == degree:
            out.append(E.product_field(t, pt))
    return out


def vector_rank(fields: Sequence[VectorField]) -> int:
    rows = []
    index = {}
    for v in fields:
        row = {}
        for i, c in enumerate(v):
            for e, coef in c.items():
                row[index.setdefault((i, e), len(index))] = coef
        rows.append(row)
    return linalg.sparse_rank(rows)


# -- identities ----------------------------------------------------------------------------

@dataclass(frozen=True)
class VTerm:
    """``coef * α^mono * (α^inner, vector)^(s)``; ``s == 0`` with empty inner is the bare vector."""

    coef: Fraction
    mono: tuple
    inner: tuple
    vector: str
    s: int = 0

    def render(self) -> str:
        c = "" if self.coef == 1 else ("-" if self.coef == -1 else f"{self.coef}*")
        m = render_monomial(dict(self.mono))
        m = "" if m == "1" else m + "*"
        if self.s == 0 and not self.inner:
            g = self.vector
        else:
            inner = render_monomial(dict(self.inner)) if self.inner else "1"
            g = f"({inner},{self.vector})^({self.s})"
        return f"{c}{m}{g}"


_TERM_SPLIT = re.compile(r"\s*([+-])\s*")


def _parse_mono(text: str) -> tuple:
    out = {}
    for part in text.split("*"):
        part = part.strip()
        if not part or part == "1":
            continue
        if "^" in part:
            n, e = part.split("^")
            out[n.strip()] = out.get(n.strip(), 0) + int(e)
        else:
            out[part] = out.get(part, 0) + 1
    return tuple(sorted(out.items()))


def _parse_one(text: str, sign: int) -> VTerm:
    text = text.strip()
    m = re.fullmatch(r"(?:(\d+(?:/\d+)?)\s*\*?\s*)?(.*)", text)
    coef = Fraction(m.group(1)) if m.group(1) else Fraction(1)
    rest = m.group(2).strip()
    tm = re.search(r"\(([^(),]*),\s*(\w+)\)\s*\^\s*\(?(\d+)\)?\s*$", rest)
    if tm:
        mono = rest[:tm.start()].rstrip("* ")
        return VTerm(sign * coef, _parse_mono(mono), _parse_mono(tm.group(1)),
                     tm.group(2), int(tm.group(3)))
    parts = [p.strip() for p in rest.split("*") if p.strip()]
    if not parts:
        raise ValueError(f"cannot parse term {text!r}")
    return VTerm(sign * coef, _parse_mono("*".join(parts[:-1])), (), parts[-1], 0)


def parse_vterms(text: str) -> list:
    """Parse a sum such as ``2*b*(a,u)^(1) - a*(b,u)^(1)``."""
    text = text.strip()
    if not text:
        return []
    # split at top-level signs only
    terms, depth, start, sign = [], 0, 0, 1
    if text[0] in "+-":
        sign = -1 if text[0] == "-" else 1
        start = 1
    i = start
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        elif ch in "+-" and depth == 0 and text[i - 1] not in "^(":
            terms.append(_parse_one(text[start:i], sign))
            sign = -1 if ch == "-" else 1
            start = i + 1
        i += 1
    terms.append(_parse_one(text[start:], sign))
    return terms


@dataclass
class IdentityResult:
    status: str                  # "exact", "scaled" or "fails"
    constants: tuple = ()        # fitted coefficients for the right side
    detail: str = ""

    def __bool__(self):
        return self.status != "fails"


def _evaluate_vterm(t: VTerm, A: BlockDecomposition, vectors: dict, triad: Triad) -> VectorField:
    names = A.names
    def exps(mono):
        e = [0] * len(names)
        for n, a in mono:
            e[names.index(greek_name(n))] += a
        return e
    top = vectors[t.vector]
    k = exps(t.inner)
    wf = sum(a * w for a, w in zip(k, A.weights))
    f = _monomial_poly(A.basis, k, triad.variables)
    v = vec_transvectant(f, wf, top, triad, t.s)
    g = _monomial_poly(A.basis, exps(t.mono), triad.variables)
    return v.times(g).scale(t.coef)


def verify_identity(A: BlockDecomposition, lhs, rhs=None, vector_labels=None) -> IdentityResult:
    """Check ``lhs == rhs`` by expansion, or fit constants ``c_i`` with ``lhs == sum c_i rhs_i``.

    ``lhs`` may be a full identity string ``"lhs = rhs"``. The fitted
    constants replace the given right-hand coefficients.
    """
    if rhs is None:
        lhs, rhs = lhs.split("=")
    L = parse_vterms(lhs) if isinstance(lhs, str) else list(lhs)
    R = parse_vterms(rhs) if isinstance(rhs, str) else list(rhs)
    tri = A.triad()
    tops = boost_basis(A.jordan, vector_labels)
    vectors = {v.label: v for v in tops}
    vectors.update({f"e{v.row}": v for v in tops})
    zero = VectorField([Polynomial.constant(0, tri.variables)] * tri.dimension)
    lv = zero
    for t in L:
        lv = lv + _evaluate_vterm(t, A, vectors, tri)
    unit = [_evaluate_vterm(replace(t, coef=Fraction(1)), A, vectors, tri) for t in R]
    rv = zero
    for t, u in zip(R, unit):
        rv = rv + u.scale(t.coef)
    if lv == rv:
        return IdentityResult("exact", tuple(t.coef for t in R))
    # fit: sum c_i unit_i = lv
    index = {}
    cols = []
    for u in unit:
        col = {}
        for i, c in enumerate(u):
            for e, coef in c.items():
                col[index.setdefault((i, e), len(index))] = coef
        cols.append(col)
    target = {}
    for i, c in enumerate(lv):
        for e, coef in c.items():
            target[index.setdefault((i, e), len(index))] = coef
    m = len(index)
    matrix = [[cols[j].get(r, 0) for j in range(len(unit))] for r in range(m)]
    rhs_vec = [target.get(r, 0) for r in range(m)]
    if not unit:
        return IdentityResult("fails", (), "right side is empty and left side is not zero")
    sol = linalg.linear_solve(matrix, rhs_vec)
    if sol is None:
        return IdentityResult("fails", (), "left side is not in the span of the right side")
    if linalg.rank(matrix) < len(unit):
        return IdentityResult("fails", tuple(sol), "fitted constants are not unique")
    check = zero
    for c, u in zip(sol, unit):
        check = check + u.scale(c)
    if check != lv:
        return IdentityResult("fails", tuple(sol), "fitted relation does not re-verify")
    return IdentityResult("scaled", tuple(Fraction(c) for c in sol))
