"""Integer boxes, p-matrices and the four set operations on them.

A *b-matrix* is a product of integer intervals. A *p-matrix* describes a set
of transvectant symbols ``(k; l; s)``: ``k`` and ``l`` range over boxes and
``s`` is squeezed between the max of a set of affine lower forms and the
min of a set of affine upper forms (plus the implicit ``s >= 0``).

Box entries are stored exactly as produced (they may be negative after a
translation) and clamped at zero only when the set is evaluated.

Every p-matrix can be written as a list of integer inequality rows over the
variables ``(k_1..k_p, l_1..l_q, s)``; emptiness and containment questions
are answered exactly by :mod:`nilbox.omega` on those rows.
"""

from __future__ import annotations

from dataclasses import dataclass, field, replace
from functools import total_ordering
from itertools import product
from typing import Iterable, Sequence

from . import omega
from ._kernels import box_points

__all__ = [
    "INF", "ExtInt", "BMatrix", "AffineForm", "PMatrix", "TransvectantSymbol",
    "TranslatedPMatrix", "ShapeError", "ContainmentError",
    "pmatrix_contains", "pmatrix_is_empty", "pmatrix_enumerate",
    "algorithm_A", "algorithm_B", "algorithm_C", "algorithm_D",
    "pmatrix_simplify", "pmatrix_normalise", "pmatrix_subset", "pmatrix_equal",
    "bmatrix_merge", "ext_str", "ext_json", "parse_ext",
]


# -- extended integers -----------------------------------------------------

@total_ordering
class _Infinity:
    __slots__ = ()
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "∞"

    def __eq__(self, other):
        return other is self

    def __hash__(self):
        return hash("nilbox.INF")

    def __lt__(self, other):
        if other is self:
            return False
        if isinstance(other, (int, float)):
            return False
        return NotImplemented

    def __gt__(self, other):
        if other is self:
            return False
        if isinstance(other, (int, float)):
            return True
        return NotImplemented

    def __add__(self, other):
        if isinstance(other, int) or other is self:
            return self
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, int):
            return self
        return NotImplemented

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()
ExtInt = object  # int or INF, for annotations only


def ext_str(v) -> str:
    return "inf" if v is INF else str(v)


def ext_json(v):
    """JSON value for an extended integer: an int, or the string "inf"."""
    return "inf" if v is INF else int(v)


def parse_ext(v):
    if v is INF or v in ("inf", "∞", "INF", "Infinity"):
        return INF
    if isinstance(v, str) and v.lstrip("-").isdigit():
        return int(v)
    if isinstance(v, bool) or not isinstance(v, int):
        raise ValueError(f"expected an integer or 'inf', got {v!r}")
    return v


def _symbol(v) -> str:
    return "∞" if v is INF else str(v)


class ShapeError(ValueError):
    pass


class ContainmentError(ValueError):
    pass


# -- b-matrices ------------------------------------------------------------

@dataclass(frozen=True)
class BMatrix:
    """Product of intervals ``[max(lower_i, 0), upper_i]``."""

    lower: tuple
    upper: tuple
    labels: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "lower", tuple(int(a) for a in self.lower))
        object.__setattr__(self, "upper", tuple(parse_ext(b) for b in self.upper))
        object.__setattr__(self, "labels", tuple(self.labels))
        if len(self.lower) != len(self.upper):
            raise ShapeError("lower and upper rows differ in length")
        if self.labels and len(self.labels) != len(self.lower):
            raise ShapeError("one label per column is required")

    @classmethod
    def full(cls, n: int, labels=()) -> "BMatrix":
        return cls((0,) * n, (INF,) * n, labels)

    @property
    def width(self) -> int:
        return len(self.lower)

    def clamped(self) -> "BMatrix":
        return replace(self, lower=tuple(max(a, 0) for a in self.lower))

    def intervals(self):
        return [(max(a, 0), b) for a, b in zip(self.lower, self.upper)]

    def is_empty(self) -> bool:
        return any(lo > hi for lo, hi in self.intervals())

    def contains(self, point: Sequence[int]) -> bool:
        if len(point) != self.width:
            raise ShapeError("point has the wrong length")
        return all(lo <= x <= hi for x, (lo, hi) in zip(point, self.intervals()))

    def thickness(self, i: int):
        lo, hi = self.intervals()[i]
        return INF if hi is INF else hi - lo + 1

    def is_stanley(self) -> bool:
        """Every direction has thickness 1 or infinity."""
        return all(hi is INF or hi == lo for lo, hi in self.intervals())

    def points(self, degrees: Sequence[int], max_degree: int):
        lo = [max(a, 0) for a in self.lower]
        hi = [None if b is INF else b for b in self.upper]
        if any(h is not None and l > h for l, h in zip(lo, hi)):
            return []
        return box_points(lo, hi, list(degrees), max_degree)

    def intersect(self, other: "BMatrix") -> "BMatrix":
        return BMatrix(tuple(max(a, c) for a, c in zip(self.lower, other.lower)),
                       tuple(min(b, d) for b, d in zip(self.upper, other.upper)),
                       self.labels)

    def select(self, columns: Sequence[int]) -> "BMatrix":
        return BMatrix(tuple(self.lower[i] for i in columns),
                       tuple(self.upper[i] for i in columns),
                       tuple(self.labels[i] for i in columns) if self.labels else ())

    def render(self, labels: Sequence[str] | None = None) -> str:
        labels = list(labels if labels is not None else self.labels)
        cols = [(_symbol(b), str(a)) for a, b in zip(self.lower, self.upper)]
        widths = [max(len(u), len(l), len(lab) if labels else 0)
                  for (u, l), lab in zip(cols, labels or [""] * len(cols))]
        lines = []
        if labels:
            lines.append("  " + " ".join(lab.rjust(w) for lab, w in zip(labels, widths)))
        lines.append("[ " + " ".join(u.rjust(w) for (u, _), w in zip(cols, widths)) + " ]")
        lines.append("[ " + " ".join(l.rjust(w) for (_, l), w in zip(cols, widths)) + " ]")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {"lower": list(self.lower), "upper": [ext_json(b) for b in self.upper]}

    @classmethod
    def from_json(cls, data: dict, labels=()) -> "BMatrix":
        return cls(tuple(data["lower"]), tuple(parse_ext(b) for b in data["upper"]), labels)


def bmatrix_merge(blocks: Sequence[BMatrix]) -> list:
    """Merge pairs of boxes that agree except for one abutting column.

    Deterministic: repeatedly merges the first mergeable pair.
    """
    blocks = [b.clamped() for b in blocks if not b.is_empty()]
    changed = True
    while changed:
        changed = False
        for i in range(len(blocks)):
            for j in range(i + 1, len(blocks)):
                m = _merge_two(blocks[i], blocks[j])
                if m is not None:
                    blocks[i] = m
                    del blocks[j]
                    changed = True
                    break
            if changed:
                break
    return blocks


def _merge_two(a: BMatrix, b: BMatrix):
    diff = [i for i in range(a.width)
            if a.lower[i] != b.lower[i] or a.upper[i] != b.upper[i]]
    if len(diff) != 1:
        return None
    i = diff[0]
    lo1, hi1 = a.lower[i], a.upper[i]
    lo2, hi2 = b.lower[i], b.upper[i]
    if hi1 is not INF and hi1 + 1 == lo2:
        lo, hi = lo1, hi2
    elif hi2 is not INF and hi2 + 1 == lo1:
        lo, hi = lo2, hi1
    else:
        return None
    lower = list(a.lower)
    upper = list(a.upper)
    lower[i], upper[i] = lo, hi
    return BMatrix(tuple(lower), tuple(upper), a.labels)


# -- affine forms ----------------------------------------------------------

@dataclass(frozen=True, order=True)
class AffineForm:
    """``const + kc . k + lc . l`` with integer coefficients."""

    kc: tuple
    lc: tuple
    const: int = 0

    def __post_init__(self):
        object.__setattr__(self, "kc", tuple(int(c) for c in self.kc))
        object.__setattr__(self, "lc", tuple(int(c) for c in self.lc))
        object.__setattr__(self, "const", int(self.const))

    @classmethod
    def constant(cls, c: int, p: int, q: int) -> "AffineForm":
        return cls((0,) * p, (0,) * q, c)

    @classmethod
    def weight_form(cls, weights: Sequence[int], side: str, p: int, q: int,
                    const: int = 0) -> "AffineForm":
        if side == "k":
            return cls(tuple(weights), (0,) * q, const)
        return cls((0,) * p, tuple(weights), const)

    def evaluate(self, k: Sequence[int], l: Sequence[int]) -> int:
        return (self.const + sum(a * b for a, b in zip(self.kc, k))
                + sum(a * b for a, b in zip(self.lc, l)))

    def linear_at(self, kappa: Sequence[int], lam: Sequence[int]) -> int:
        return (sum(a * b for a, b in zip(self.kc, kappa))
                + sum(a * b for a, b in zip(self.lc, lam)))

    def plus(self, c: int) -> "AffineForm":
        return AffineForm(self.kc, self.lc, self.const + c)

    def substitute(self, fixed: dict) -> "AffineForm":
        """Replace box variables by constants; ``fixed`` maps column -> value."""
        p = len(self.kc)
        kc, lc, c = list(self.kc), list(self.lc), self.const
        for col, v in fixed.items():
            if col < p:
                c += kc[col] * v
                kc[col] = 0
            else:
                c += lc[col - p] * v
                lc[col - p] = 0
        return AffineForm(tuple(kc), tuple(lc), c)

    def is_constant(self) -> bool:
        return not any(self.kc) and not any(self.lc)

    def row(self) -> tuple:
        return self.kc + self.lc

    def render(self, k_names: Sequence[str] | None = None,
               l_names: Sequence[str] | None = None) -> str:
        p, q = len(self.kc), len(self.lc)
        k_names = k_names or [f"k{i + 1}" for i in range(p)]
        l_names = l_names or [f"l{i + 1}" for i in range(q)]
        parts = []
        for c, name in list(zip(self.kc, k_names)) + list(zip(self.lc, l_names)):
            if c:
                parts.append((c, name))
        out = ""
        for c, name in parts:
            mag = abs(c)
            body = name if mag == 1 else f"{mag}{name}"
            if not out:
                out = ("-" if c < 0 else "") + body
            else:
                out += (" - " if c < 0 else " + ") + body
        if self.const or not out:
            if not out:
                out = str(self.const)
            else:
                out += (" - " if self.const < 0 else " + ") + str(abs(self.const))
        return out

    def to_json(self) -> dict:
        return {"const": self.const, "k": list(self.kc), "l": list(self.lc)}

    @classmethod
    def from_json(cls, data: dict) -> "AffineForm":
        return cls(tuple(data["k"]), tuple(data["l"]), data["const"])


# -- transvectant symbols --------------------------------------------------

@dataclass(frozen=True, order=True)
class TransvectantSymbol:
    k: tuple
    l: tuple
    s: int

    def __post_init__(self):
        object.__setattr__(self, "k", tuple(int(x) for x in self.k))
        object.__setattr__(self, "l", tuple(int(x) for x in self.l))
        object.__setattr__(self, "s", int(self.s))

    @classmethod
    def from_point(cls, point: Sequence[int], p: int, q: int) -> "TransvectantSymbol":
        point = tuple(point)
        return cls(point[:p], point[p:p + q], point[p + q])

    def point(self) -> tuple:
        return self.k + self.l + (self.s,)

    def is_trivial(self) -> bool:
        return self.s == 0 and not any(self.k) and not any(self.l)

    def well_defined(self, wa: Sequence[int], wb: Sequence[int]) -> bool:
        if min(self.k + self.l + (self.s,), default=0) < 0:
            return False
        return (self.s <= sum(a * b for a, b in zip(wa, self.k))
                and self.s <= sum(a * b for a, b in zip(wb, self.l)))

    def degree(self, deg_a: Sequence[int], deg_b: Sequence[int]) -> int:
        return (sum(a * b for a, b in zip(deg_a, self.k))
                + sum(a * b for a, b in zip(deg_b, self.l)))

    def weight(self, wa: Sequence[int], wb: Sequence[int]) -> int:
        return (sum(a * b for a, b in zip(wa, self.k))
                + sum(a * b for a, b in zip(wb, self.l)) - 2 * self.s)

    def __add__(self, other):
        return TransvectantSymbol(tuple(a + b for a, b in zip(self.k, other.k)),
                                  tuple(a + b for a, b in zip(self.l, other.l)),
                                  self.s + other.s)

    def __sub__(self, other):
        return TransvectantSymbol(tuple(a - b for a, b in zip(self.k, other.k)),
                                  tuple(a - b for a, b in zip(self.l, other.l)),
                                  self.s - other.s)

    def scaled(self, j: int) -> "TransvectantSymbol":
        return TransvectantSymbol(tuple(j * a for a in self.k),
                                  tuple(j * a for a in self.l), j * self.s)

    def __str__(self):
        k = ",".join(map(str, self.k))
        l = ",".join(map(str, self.l))
        return f"[{k};{l};{self.s}]"


# -- p-matrices ------------------------------------------------------------

def _forms(items) -> frozenset:
    return frozenset(items)


@dataclass(frozen=True)
class PMatrix:
    """Set of symbols ``(k; l; s)`` with box bounds and affine s-bounds.

    ``wa`` and ``wb`` are the weight rows of the two input bases; they are
    context for Algorithm A and do not take part in the set semantics.
    """

    k_lower: tuple
    k_upper: tuple
    l_lower: tuple
    l_upper: tuple
    s_lowers: frozenset = field(default_factory=frozenset)
    s_uppers: frozenset = field(default_factory=frozenset)
    wa: tuple = ()
    wb: tuple = ()
    k_labels: tuple = ()
    l_labels: tuple = ()

    def __post_init__(self):
        for name in ("k_lower", "l_lower"):
            object.__setattr__(self, name, tuple(int(a) for a in getattr(self, name)))
        for name in ("k_upper", "l_upper"):
            object.__setattr__(self, name, tuple(parse_ext(b) for b in getattr(self, name)))
        object.__setattr__(self, "s_lowers", frozenset(self.s_lowers))
        object.__setattr__(self, "s_uppers", frozenset(self.s_uppers))
        object.__setattr__(self, "wa", tuple(self.wa))
        object.__setattr__(self, "wb", tuple(self.wb))
        object.__setattr__(self, "k_labels", tuple(self.k_labels))
        object.__setattr__(self, "l_labels", tuple(self.l_labels))
        p, q = len(self.k_lower), len(self.l_lower)
        if len(self.k_upper) != p or len(self.l_upper) != q:
            raise ShapeError("box rows differ in length")
        for f in self.s_lowers | self.s_uppers:
            if len(f.kc) != p or len(f.lc) != q:
                raise ShapeError("affine form does not match the box shape")

    # construction helpers

    @classmethod
    def pre_box(cls, left: BMatrix, right: BMatrix, wa: Sequence[int],
                wb: Sequence[int]) -> "PMatrix":
        """All well-defined ``(k; l; s)`` with ``k`` and ``l`` in the given boxes."""
        p, q = left.width, right.width
        uppers = {AffineForm.weight_form(wa, "k", p, q),
                  AffineForm.weight_form(wb, "l", p, q)}
        return cls(left.lower, left.upper, right.lower, right.upper,
                   frozenset(), frozenset(uppers), tuple(wa), tuple(wb),
                   left.labels, right.labels)

    @property
    def p(self) -> int:
        return len(self.k_lower)

    @property
    def q(self) -> int:
        return len(self.l_lower)

    @property
    def nvars(self) -> int:
        return self.p + self.q + 1

    def box_lower(self) -> tuple:
        return self.k_lower + self.l_lower

    def box_upper(self) -> tuple:
        return self.k_upper + self.l_upper

    def with_box(self, lower: Sequence[int], upper: Sequence) -> "PMatrix":
        p = self.p
        return replace(self, k_lower=tuple(lower[:p]), l_lower=tuple(lower[p:]),
                       k_upper=tuple(upper[:p]), l_upper=tuple(upper[p:]))

    def same_shape(self, other: "PMatrix") -> bool:
        return self.p == other.p and self.q == other.q

    # semantics

    def tagged_rows(self) -> list:
        """Constraint rows with a tag naming the column they belong to."""
        n = self.nvars
        m = self.p + self.q
        out = []
        for i, (a, b) in enumerate(zip(self.box_lower(), self.box_upper())):
            e = [0] * n
            e[i] = 1
            out.append((("nn", i), (tuple(e), 0)))
            if a > 0:
                out.append((("lo", i), (tuple(e), -a)))
            if b is not INF:
                e2 = [0] * n
                e2[i] = -1
                out.append((("up", i), (tuple(e2), b)))
        e = [0] * n
        e[m] = 1
        out.append((("nn", m), (tuple(e), 0)))
        for f in sorted(self.s_lowers):
            out.append((("slo", f), (tuple(-c for c in f.row()) + (1,), -f.const)))
        for f in sorted(self.s_uppers):
            out.append((("sup", f), (f.row() + (-1,), f.const)))
        return out

    def rows(self) -> list:
        return [r for _, r in self.tagged_rows()]

    def contains(self, sym) -> bool:
        if isinstance(sym, TransvectantSymbol):
            k, l, s = sym.k, sym.l, sym.s
        else:
            pt = tuple(sym)
            k, l, s = pt[:self.p], pt[self.p:self.p + self.q], pt[-1]
        if len(k) != self.p or len(l) != self.q:
            raise ShapeError("symbol does not match the p-matrix shape")
        for x, a, b in zip(k + l, self.box_lower(), self.box_upper()):
            if x < max(a, 0) or x > b:
                return False
        if s < 0:
            return False
        return (all(s >= f.evaluate(k, l) for f in self.s_lowers)
                and all(s <= f.evaluate(k, l) for f in self.s_uppers))

    def is_empty(self) -> bool:
        if any(max(a, 0) > b for a, b in zip(self.box_lower(), self.box_upper())):
            return True
        return omega.is_empty(self.rows(), self.nvars)

    def s_range(self, k, l):
        lo = max([0] + [f.evaluate(k, l) for f in self.s_lowers])
        hi = min((f.evaluate(k, l) for f in self.s_uppers), default=INF)
        return lo, hi

    def enumerate(self, max_degree: int, degrees: Sequence[int],
                  s_cap: int | None = None) -> list:
        if len(degrees) != self.p + self.q:
            raise ShapeError("need one degree per box column")
        lo = [max(a, 0) for a in self.box_lower()]
        hi = [None if b is INF else b for b in self.box_upper()]
        if any(h is not None and a > h for a, h in zip(lo, hi)):
            return []
        out = []
        for pt in box_points(lo, hi, list(degrees), max_degree):
            k, l = pt[:self.p], pt[self.p:]
            slo, shi = self.s_range(k, l)
            if shi is INF:
                if s_cap is None:
                    raise ValueError("s is unbounded; pass s_cap")
                shi = s_cap
            for s in range(slo, shi + 1):
                out.append(TransvectantSymbol(k, l, s))
        out.sort(key=lambda t: (sum(d * x for d, x in zip(degrees, t.k + t.l)), t.point()))
        return out

    # rendering

    def column_names(self) -> list:
        k = list(self.k_labels) or [f"k{i + 1}" for i in range(self.p)]
        l = list(self.l_labels) or [f"l{i + 1}" for i in range(self.q)]
        return k + l + ["s"]

    def render(self) -> str:
        kn = [f"k{i + 1}" for i in range(self.p)]
        ln = [f"l{i + 1}" for i in range(self.q)]
        up = [_symbol(b) for b in self.box_upper()]
        lo = [str(a) for a in self.box_lower()]
        su = sorted(self.s_uppers)
        sl = sorted(self.s_lowers)
        up.append("min(" + ", ".join(f.render(kn, ln) for f in su) + ")" if len(su) > 1
                  else (su[0].render(kn, ln) if su else "∞"))
        lo.append("max(" + ", ".join(f.render(kn, ln) for f in sl) + ")" if len(sl) > 1
                  else (sl[0].render(kn, ln) if sl else "0"))
        names = self.column_names()
        widths = [max(len(a), len(b), len(c)) for a, b, c in zip(up, lo, names)]
        head = "  " + " ".join(n.rjust(w) for n, w in zip(names, widths))
        r1 = "( " + " ".join(a.rjust(w) for a, w in zip(up, widths)) + " )"
        r2 = "( " + " ".join(a.rjust(w) for a, w in zip(lo, widths)) + " )"
        return "\n".join([head, r1, r2])

    def to_json(self) -> dict:
        return {
            "k": {"lower": list(self.k_lower), "upper": [ext_json(b) for b in self.k_upper]},
            "l": {"lower": list(self.l_lower), "upper": [ext_json(b) for b in self.l_upper]},
            "s": {"lower": [f.to_json() for f in sorted(self.s_lowers)],
                  "upper": [f.to_json() for f in sorted(self.s_uppers)]},
            "weights": {"k": list(self.wa), "l": list(self.wb)},
        }

    @classmethod
    def from_json(cls, data: dict) -> "PMatrix":
        return cls(tuple(data["k"]["lower"]), tuple(parse_ext(b) for b in data["k"]["upper"]),
                   tuple(data["l"]["lower"]), tuple(parse_ext(b) for b in data["l"]["upper"]),
                   frozenset(AffineForm.from_json(f) for f in data["s"]["lower"]),
                   frozenset(AffineForm.from_json(f) for f in data["s"]["upper"]),
                   tuple(data.get("weights", {}).get("k", ())),
                   tuple(data.get("weights", {}).get("l", ())))


def pmatrix_contains(P: PMatrix, point) -> bool:
    return P.contains(point)


def pmatrix_is_empty(P: PMatrix) -> bool:
    return P.is_empty()


def pmatrix_enumerate(P: PMatrix, max_total_degree: int, degrees: Sequence[int],
                      s_cap: int | None = None) -> list:
    return P.enumerate(max_total_degree, degrees, s_cap)


def _check_symbol(P: PMatrix, theta: TransvectantSymbol):
    if len(theta.k) != P.p or len(theta.l) != P.q:
        raise ShapeError("symbol does not match the p-matrix shape")


# -- Algorithm A: the members divisible by a given symbol -------------------

def algorithm_A(P: PMatrix, theta: TransvectantSymbol) -> PMatrix:
    _check_symbol(P, theta)
    if theta.is_trivial():
        return P
    p, q = P.p, P.q
    kl = tuple(max(a, c) for a, c in zip(P.k_lower, theta.k))
    ll = tuple(max(a, c) for a, c in zip(P.l_lower, theta.l))
    lowers = set(P.s_lowers)
    if theta.s > 0:
        lowers.add(AffineForm.constant(theta.s, p, q))
    shift_a = theta.s - sum(w * c for w, c in zip(P.wa, theta.k))
    shift_b = theta.s - sum(w * c for w, c in zip(P.wb, theta.l))
    uppers = set(P.s_uppers)
    uppers.add(AffineForm.weight_form(P.wa, "k", p, q, shift_a))
    uppers.add(AffineForm.weight_form(P.wb, "l", p, q, shift_b))
    return replace(P, k_lower=kl, l_lower=ll, s_lowers=frozenset(lowers),
                   s_uppers=frozenset(uppers))


# -- Algorithm B: set difference as a disjoint list -------------------------

def _critical_columns(P: PMatrix, Pp: PMatrix) -> list:
    if not P.same_shape(Pp):
        raise ShapeError("p-matrices have different shapes")
    lo, up = P.box_lower(), P.box_upper()
    lo2, up2 = Pp.box_lower(), Pp.box_upper()
    crit = []
    for i in range(P.p + P.q):
        a, b, a2, b2 = max(lo[i], 0), up[i], max(lo2[i], 0), up2[i]
        if a2 < a or b2 > b:
            raise ContainmentError(f"column {i} of P' is not inside P")
        if a2 != a or b2 != b:
            crit.append(i)
    if not (P.s_lowers <= Pp.s_lowers and P.s_uppers <= Pp.s_uppers):
        raise ContainmentError("s-bounds of P' do not refine those of P")
    if Pp.s_lowers != P.s_lowers or Pp.s_uppers != P.s_uppers:
        crit.append(P.p + P.q)
    return crit


def algorithm_B(P: PMatrix, Pp: PMatrix, column_order: Sequence[int] | None = None,
                drop_empty: bool = True) -> list:
    """Disjoint p-matrices whose union is ``P - Pp`` (requires ``Pp`` inside ``P``).

    Columns are numbered ``0..p+q-1`` for the box and ``p+q`` for ``s``;
    ``column_order`` permutes the critical ones.
    """
    crit = _critical_columns(P, Pp)
    if Pp.is_empty():
        return [] if drop_empty and P.is_empty() else [P]
    if column_order is None:
        order = crit
    else:
        order = [c for c in column_order if c in crit]
        if sorted(order) != sorted(crit):
            raise ValueError(f"column order must list the critical columns {crit}")
    m = P.p + P.q
    lo, up = [max(a, 0) for a in P.box_lower()], list(P.box_upper())
    lo2, up2 = [max(a, 0) for a in Pp.box_lower()], list(Pp.box_upper())
    out = []
    for idx, c in enumerate(order):
        earlier = set(order[:idx])
        base_lo = [lo2[i] if i in earlier else lo[i] for i in range(m)]
        base_up = [up2[i] if i in earlier else up[i] for i in range(m)]
        if m in earlier:
            s_lo, s_up = Pp.s_lowers, Pp.s_uppers
        else:
            s_lo, s_up = P.s_lowers, P.s_uppers
        pieces = []
        if c < m:
            if lo2[c] > lo[c]:
                l_, u_ = list(base_lo), list(base_up)
                l_[c], u_[c] = lo[c], min(up[c], lo2[c] - 1)
                pieces.append(replace(P.with_box(l_, u_), s_lowers=s_lo, s_uppers=s_up))
            if up2[c] != up[c]:
                l_, u_ = list(base_lo), list(base_up)
                l_[c], u_[c] = up2[c] + 1, up[c]
                pieces.append(replace(P.with_box(l_, u_), s_lowers=s_lo, s_uppers=s_up))
        else:
            base = P.with_box(base_lo, base_up)
            new_lo = sorted(Pp.s_lowers - P.s_lowers)
            new_up = sorted(Pp.s_uppers - P.s_uppers)
            # bottom parts: s below the a-th new lower, above the earlier ones
            for a, f in enumerate(new_lo):
                ups = set(P.s_uppers) | {f.plus(-1)}
                lows = set(P.s_lowers) | set(new_lo[:a])
                pieces.append(replace(base, s_lowers=frozenset(lows), s_uppers=frozenset(ups)))
            # top parts: s above the b-th new upper, below the earlier ones
            for b, f in enumerate(new_up):
                lows = set(P.s_lowers) | set(new_lo) | {f.plus(1)}
                ups = set(P.s_uppers) | set(new_up[:b])
                pieces.append(replace(base, s_lowers=frozenset(lows), s_uppers=frozenset(ups)))
        for piece in pieces:
            if drop_empty and piece.is_empty():
                continue
            out.append(piece)
    return out


# -- Algorithm C: translation ----------------------------------------------

def algorithm_C(P: PMatrix, pi: TransvectantSymbol, j: int) -> PMatrix:
    """``{t >= 0 : t + j*pi in P}`` for a concrete ``j >= 0``."""
    _check_symbol(P, pi)
    if j < 0:
        raise ValueError("j must be nonnegative")
    if j == 0:
        return P
    kl = tuple(max(a, 0) - j * c for a, c in zip(P.k_lower, pi.k))
    ll = tuple(max(a, 0) - j * c for a, c in zip(P.l_lower, pi.l))
    ku = tuple(b if b is INF else b - j * c for b, c in zip(P.k_upper, pi.k))
    lu = tuple(b if b is INF else b - j * c for b, c in zip(P.l_upper, pi.l))
    lows = {f.plus(j * (f.linear_at(pi.k, pi.l) - pi.s)) for f in P.s_lowers}
    ups = {f.plus(j * (f.linear_at(pi.k, pi.l) - pi.s)) for f in P.s_uppers}
    return replace(P, k_lower=kl, l_lower=ll, k_upper=ku, l_upper=lu,
                   s_lowers=frozenset(lows), s_uppers=frozenset(ups))


class TranslatedPMatrix:
    """``P[j]`` with ``j`` left symbolic.

    ``at(j)`` gives the concrete p-matrix; ``rows_symbolic`` gives rows over
    ``(k, l, s, J)`` describing ``{t >= 0 : t + J*pi in P}``.
    """

    def __init__(self, P: PMatrix, pi: TransvectantSymbol):
        _check_symbol(P, pi)
        self.P = P
        self.pi = pi

    def at(self, j: int) -> PMatrix:
        return algorithm_C(self.P, self.pi, j)

    def rows_symbolic(self, offset: int = 0) -> list:
        """Rows in ``(t, J)`` for ``t + (J + offset)*pi in P`` and ``t >= 0``."""
        pv = self.pi.point()
        out = []
        for coeffs, const in self.P.rows():
            cp = sum(a * b for a, b in zip(coeffs, pv))
            out.append((coeffs + (cp,), const + offset * cp))
        n = self.P.nvars
        for i in range(n):
            e = [0] * (n + 1)
            e[i] = 1
            out.append((tuple(e), 0))
        return out


# -- Algorithm D: intersection ----------------------------------------------

def algorithm_D(P: PMatrix, Q: PMatrix) -> PMatrix:
    if not P.same_shape(Q):
        raise ShapeError("p-matrices have different shapes")
    return replace(
        P,
        k_lower=tuple(max(a, b) for a, b in zip(P.k_lower, Q.k_lower)),
        l_lower=tuple(max(a, b) for a, b in zip(P.l_lower, Q.l_lower)),
        k_upper=tuple(min(a, b) for a, b in zip(P.k_upper, Q.k_upper)),
        l_upper=tuple(min(a, b) for a, b in zip(P.l_upper, Q.l_upper)),
        s_lowers=P.s_lowers | Q.s_lowers,
        s_uppers=P.s_uppers | Q.s_uppers,
    )


# -- normalisation, containment and merging ---------------------------------

def pmatrix_normalise(P: PMatrix) -> PMatrix | None:
    """Canonical-ish representative of the same set, or None if empty.

    Clamps box lowers, substitutes fixed box columns into the forms, drops
    trivial and redundant forms. Redundancy is decided exactly.
    """
    lo = [max(a, 0) for a in P.box_lower()]
    up = list(P.box_upper())
    if any(a > b for a, b in zip(lo, up)):
        return None
    fixed = {i: a for i, (a, b) in enumerate(zip(lo, up)) if a == b}
    lows = {f.substitute(fixed) for f in P.s_lowers}
    ups = {f.substitute(fixed) for f in P.s_uppers}
    lows = {f for f in lows if not (f.is_constant() and f.const <= 0)}
    Q = replace(P.with_box(lo, up), s_lowers=frozenset(lows), s_uppers=frozenset(ups))
    if Q.is_empty():
        return None
    # constant s-bounds collapse to the tightest one
    cl = [f for f in Q.s_lowers if f.is_constant()]
    cu = [f for f in Q.s_uppers if f.is_constant()]
    if len(cl) > 1:
        keep = max(cl, key=lambda f: f.const)
        Q = replace(Q, s_lowers=frozenset(f for f in Q.s_lowers
                                          if not f.is_constant() or f == keep))
    if len(cu) > 1:
        keep = min(cu, key=lambda f: f.const)
        Q = replace(Q, s_uppers=frozenset(f for f in Q.s_uppers
                                          if not f.is_constant() or f == keep))
    # drop forms implied by the rest, in a fixed order
    for kind in ("sup", "slo"):
        forms = sorted(Q.s_uppers if kind == "sup" else Q.s_lowers, reverse=True)
        for f in forms:
            if kind == "sup":
                rest = replace(Q, s_uppers=Q.s_uppers - {f})
                row = (f.row() + (-1,), f.const)
            else:
                rest = replace(Q, s_lowers=Q.s_lowers - {f})
                row = (tuple(-c for c in f.row()) + (1,), -f.const)
            if omega.implies(rest.rows(), row):
                Q = rest
    return Q


def pmatrix_subset(A: PMatrix, B: PMatrix) -> bool:
    """Exact test of ``A <= B`` as sets."""
    base = A.rows()
    for row in B.rows():
        if not omega.implies(base, row):
            return False
    return True


def pmatrix_equal(A: PMatrix, B: PMatrix) -> bool:
    return pmatrix_subset(A, B) and pmatrix_subset(B, A)


def _from_tagged(template: PMatrix, tagged: Iterable) -> PMatrix:
    m = template.p + template.q
    lo = [0] * m
    up = [INF] * m
    lows, ups = set(), set()
    for tag, (coeffs, const) in tagged:
        kind, ref = tag
        if kind == "lo":
            lo[ref] = max(lo[ref], -const)
        elif kind == "up":
            up[ref] = min(up[ref], const)
        elif kind == "slo":
            lows.add(ref)
        elif kind == "sup":
            ups.add(ref)
    return replace(template.with_box(lo, up), s_lowers=frozenset(lows),
                   s_uppers=frozenset(ups))


def _try_merge(A: PMatrix, B: PMatrix) -> PMatrix | None:
    ta, tb = A.tagged_rows(), B.tagged_rows()
    ra, rb = [r for _, r in ta], [r for _, r in tb]
    hull = {}
    for tag, row in ta:
        if omega.implies(rb, row):
            hull[row] = tag
    for tag, row in tb:
        if row not in hull and omega.implies(ra, row):
            hull[row] = tag
    hrows = list(hull)
    for r1 in ra:
        n1 = omega.negate(r1)
        if omega.implies(hrows, r1):
            continue
        for r2 in rb:
            if omega.feasible(hrows + [n1, omega.negate(r2)]):
                return None
    return _from_tagged(A, ((t, r) for r, t in hull.items()))


def pmatrix_simplify(pieces: Sequence[PMatrix], verify_degree: int | None = None,
                     degrees: Sequence[int] | None = None) -> list:
    """Merge disjoint p-matrices whose union is again a p-matrix.

    The hull of two pieces keeps each constraint of one piece that holds on
    the other; the merge is accepted only when the hull is exactly covered
    by the two pieces. Passes are repeated until nothing changes. With
    ``verify_degree`` the result is also compared with the input by
    enumeration, and the input is returned unchanged on a mismatch.
    """
    work = [q for q in (pmatrix_normalise(p) for p in pieces) if q is not None]
    changed = True
    while changed:
        changed = False
        for i in range(len(work)):
            for j in range(i + 1, len(work)):
                merged = _try_merge(work[i], work[j])
                if merged is None:
                    continue
                merged = pmatrix_normalise(merged)
                if merged is None:
                    continue
                work[i] = merged
                del work[j]
                changed = True
                break
            if changed:
                break
    if verify_degree is not None:
        degs = degrees or [1] * (pieces[0].p + pieces[0].q) if pieces else []
        before = sorted(t for p in pieces for t in p.enumerate(verify_degree, degs))
        after = sorted(t for p in work for t in p.enumerate(verify_degree, degs))
        if before != after:
            return list(pieces)
    return work


def cartesian_points(intervals: Sequence[tuple]) -> Iterable[tuple]:
    """Lattice points of a finite box given as ``[(lo, hi), ...]``."""
    return product(*(range(lo, hi + 1) for lo, hi in intervals))
