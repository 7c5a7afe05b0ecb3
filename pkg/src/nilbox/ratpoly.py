"""Exact rational polynomials, linear derivations and kernel dimensions.

Coefficients are Python ints whenever they are integral and
:class:`fractions.Fraction` otherwise, so every computation stays exact.
Polynomials are immutable maps from exponent tuples to nonzero coefficients.
"""

from __future__ import annotations

import re
from fractions import Fraction
from itertools import combinations_with_replacement
from types import MappingProxyType
from typing import Iterable, Iterator, Mapping, Sequence, Union

from . import linalg
from ._kernels import poly_mul_terms

Coef = Union[int, Fraction]
Exponent = tuple

__all__ = [
    "Coef",
    "Polynomial",
    "PolynomialSyntaxError",
    "UnknownVariableError",
    "VariableMismatchError",
    "LinearDerivation",
    "poly_parse",
    "derivation_apply",
    "kernel_dimension",
    "derivation_rank",
    "monomials",
    "variable_key",
    "sorted_variables",
    "rank",
    "linear_solve",
    "nullspace",
]

_VAR_RE = re.compile(r"([A-Za-z]+)(\d+)$")
_PREFIX_RANK = {"x": 0, "y": 1, "z": 2}


def variable_key(name: str) -> tuple:
    """Sort key placing x1 < x2 < ... < y1 < ... < z1 < ... < others."""
    m = _VAR_RE.match(name)
    if not m:
        return (99, name, 0)
    prefix, idx = m.group(1), int(m.group(2))
    return (_PREFIX_RANK.get(prefix, 3), prefix, idx)


def sorted_variables(names: Iterable[str]) -> tuple:
    return tuple(sorted(set(names), key=variable_key))


def _norm(c: Coef) -> Coef:
    if isinstance(c, Fraction) and c.denominator == 1:
        return c.numerator
    return c


class PolynomialSyntaxError(ValueError):
    def __init__(self, message: str, position: int, text: str):
        super().__init__(f"{message} at position {position}: {text!r}")
        self.position = position
        self.text = text


class UnknownVariableError(ValueError):
    pass


class VariableMismatchError(ValueError):
    pass


class Polynomial:
    """Multivariate polynomial with exact rational coefficients."""

    __slots__ = ("variables", "_terms", "_hash")

    def __init__(self, variables: Sequence[str], terms: Mapping | None = None):
        self.variables = tuple(variables)
        n = len(self.variables)
        clean = {}
        if terms:
            for e, c in terms.items():
                e = tuple(e)
                if len(e) != n:
                    raise VariableMismatchError(
                        f"exponent {e} has length {len(e)}, expected {n}")
                if c:
                    clean[e] = _norm(c)
        self._terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, variables: tuple, terms: dict) -> "Polynomial":
        p = cls.__new__(cls)
        p.variables = variables
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def constant(cls, value: Coef, variables: Sequence[str] = ()) -> "Polynomial":
        variables = tuple(variables)
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def var(cls, name: str, variables: Sequence[str] | None = None) -> "Polynomial":
        variables = tuple(variables) if variables is not None else (name,)
        if name not in variables:
            raise UnknownVariableError(name)
        e = [0] * len(variables)
        e[variables.index(name)] = 1
        return cls._raw(variables, {tuple(e): 1})

    @classmethod
    def monomial(cls, exponent: Sequence[int], variables: Sequence[str],
                 coef: Coef = 1) -> "Polynomial":
        return cls(variables, {tuple(exponent): coef})

    @property
    def terms(self) -> Mapping:
        return MappingProxyType(self._terms)

    def items(self):
        return self._terms.items()

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def coefficient(self, exponent: Sequence[int]) -> Coef:
        return self._terms.get(tuple(exponent), 0)

    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e) for e in self._terms), default=-1)

    def degrees(self) -> set:
        return {sum(e) for e in self._terms}

    def is_homogeneous(self) -> bool:
        return len(self.degrees()) <= 1

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def over(self, variables: Sequence[str]) -> "Polynomial":
        """Re-embed into a variable tuple containing all variables in use."""
        variables = tuple(variables)
        if variables == self.variables:
            return self
        pos = {v: i for i, v in enumerate(variables)}
        used = set()
        for e in self._terms:
            used.update(i for i, a in enumerate(e) if a)
        for i in used:
            if self.variables[i] not in pos:
                raise VariableMismatchError(
                    f"variable {self.variables[i]} missing from {variables}")
        idx = [pos.get(v) for v in self.variables]
        n = len(variables)
        out = {}
        for e, c in self._terms.items():
            ne = [0] * n
            for i, a in enumerate(e):
                if a:
                    ne[idx[i]] = a
            out[tuple(ne)] = c
        return Polynomial._raw(variables, out)

    def rename(self, mapping: Mapping[str, str] | Sequence[str]) -> "Polynomial":
        """Rename variables (positionally for a sequence, by name for a mapping)."""
        if isinstance(mapping, Mapping):
            new = tuple(mapping.get(v, v) for v in self.variables)
        else:
            new = tuple(mapping)
            if len(new) != len(self.variables):
                raise VariableMismatchError("rename needs one name per variable")
        return Polynomial._raw(new, dict(self._terms))

    def _aligned(self, other: "Polynomial"):
        if self.variables == other.variables:
            return self, other
        vs = sorted_variables(self.variables + other.variables)
        return self.over(vs), other.over(vs)

    def _coerce(self, other):
        if isinstance(other, Polynomial):
            return other
        if isinstance(other, (int, Fraction)):
            return Polynomial.constant(other, self.variables)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        a, b = self._aligned(other)
        out = dict(a._terms)
        for e, c in b._terms.items():
            v = out.get(e, 0) + c
            if v:
                out[e] = _norm(v)
            else:
                out.pop(e, None)
        return Polynomial._raw(a.variables, out)

    __radd__ = __add__

    def __neg__(self):
        return Polynomial._raw(self.variables, {e: -c for e, c in self._terms.items()})

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def scale(self, c: Coef) -> "Polynomial":
        if not c:
            return Polynomial._raw(self.variables, {})
        return Polynomial._raw(self.variables,
                               {e: _norm(v * c) for e, v in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        a, b = self._aligned(other)
        out = poly_mul_terms(a._terms, b._terms)
        return Polynomial._raw(a.variables, {e: _norm(c) for e, c in out.items()})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(other)
        return NotImplemented

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.scale(Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise ValueError("exponent must be a nonnegative integer")
        result = Polynomial.constant(1, self.variables)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Polynomial.constant(other, self.variables)
        if not isinstance(other, Polynomial):
            return NotImplemented
        if self.variables == other.variables:
            return self._terms == other._terms
        try:
            a, b = self._aligned(other)
        except VariableMismatchError:
            return False
        return a._terms == b._terms

    def __hash__(self):
        if self._hash is None:
            vs = sorted_variables(self.variables)
            p = self.over(vs)
            used = tuple(i for i in range(len(vs))
                         if any(e[i] for e in p._terms))
            key = frozenset((tuple((vs[i], e[i]) for i in used if e[i]), c)
                            for e, c in p._terms.items())
            self._hash = hash(key)
        return self._hash

    def diff(self, index: int) -> "Polynomial":
        out = {}
        for e, c in self._terms.items():
            a = e[index]
            if a:
                ne = e[:index] + (a - 1,) + e[index + 1:]
                out[ne] = c * a
        return Polynomial._raw(self.variables, out)

    def sorted_terms(self) -> list:
        """Terms in graded lexicographic order, highest first."""
        return sorted(self._terms.items(),
                      key=lambda t: (-sum(t[0]), tuple(-a for a in t[0])))

    def leading_coefficient(self) -> Coef:
        ts = self.sorted_terms()
        return ts[0][1] if ts else 0

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for e, c in self.sorted_terms():
            mono = "*".join(
                (v if a == 1 else f"{v}^{a}")
                for v, a in zip(self.variables, e) if a)
            sign = "-" if c < 0 else "+"
            mag = -c if c < 0 else c
            if mono:
                body = mono if mag == 1 else f"{mag}*{mono}"
            else:
                body = str(mag)
            parts.append((sign, body))
        first_sign, first = parts[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in parts[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Polynomial({str(self)!r})"


# -- parsing ---------------------------------------------------------------

_TOKEN_RE = re.compile(r"\s*(?:(\d+)|([A-Za-z]+\d+)|(\^)|(\*)|(/)|([+-]))")


def _tokenize(text: str):
    pos = 0
    toks = []
    n = len(text)
    while pos < n:
        if text[pos].isspace():
            pos += 1
            continue
        m = _TOKEN_RE.match(text, pos)
        if not m or m.end() == pos:
            raise PolynomialSyntaxError("unexpected character", pos, text)
        start = m.start(m.lastindex)
        kind = ("num", "var", "^", "*", "/", "sign")[m.lastindex - 1]
        toks.append((kind, m.group(m.lastindex), start))
        pos = m.end()
    toks.append(("end", "", n))
    return toks


def poly_parse(text: str, variables: Sequence[str] | None = None) -> Polynomial:
    """Parse ``term (('+'|'-') term)*`` into a canonical polynomial.

    When ``variables`` is omitted the variables are the ones that occur,
    sorted with x before y before z, then by index.
    """
    toks = _tokenize(text)
    i = 0

    def peek():
        return toks[i]

    def take(kind):
        nonlocal i
        t = toks[i]
        if t[0] != kind:
            raise PolynomialSyntaxError(f"expected {kind}", t[2], text)
        i += 1
        return t

    terms = []  # (coef, {var: exp})
    sign = 1
    if peek()[0] == "sign":
        sign = -1 if take("sign")[1] == "-" else 1
    if peek()[0] == "end":
        raise PolynomialSyntaxError("empty expression", 0, text)
    while True:
        coef: Coef = sign
        powers: dict = {}
        first = True
        while True:
            t = peek()
            if t[0] == "num":
                take("num")
                num = int(t[1])
                if peek()[0] == "/":
                    take("/")
                    den = int(take("num")[1])
                    if den == 0:
                        raise PolynomialSyntaxError("zero denominator", t[2], text)
                    coef = coef * Fraction(num, den)
                else:
                    coef = coef * num
            elif t[0] == "var":
                take("var")
                name = t[1]
                if variables is not None and name not in variables:
                    raise UnknownVariableError(
                        f"unknown variable {name!r} at position {t[2]}")
                exp = 1
                if peek()[0] == "^":
                    take("^")
                    exp = int(take("num")[1])
                powers[name] = powers.get(name, 0) + exp
            else:
                what = "expected coefficient or variable" if first else "dangling '*'"
                raise PolynomialSyntaxError(what, t[2], text)
            first = False
            if peek()[0] == "*":
                take("*")
                continue
            break
        terms.append((coef, powers))
        t = peek()
        if t[0] == "end":
            break
        if t[0] != "sign":
            raise PolynomialSyntaxError("expected '+' or '-'", t[2], text)
        sign = -1 if take("sign")[1] == "-" else 1

    if variables is None:
        names = set()
        for _, pw in terms:
            names.update(pw)
        variables = sorted_variables(names)
    variables = tuple(variables)
    pos = {v: k for k, v in enumerate(variables)}
    out: dict = {}
    for coef, pw in terms:
        e = [0] * len(variables)
        for name, a in pw.items():
            e[pos[name]] += a
        e = tuple(e)
        out[e] = out.get(e, 0) + coef
    return Polynomial(variables, out)


# -- derivations -----------------------------------------------------------

class LinearDerivation:
    """The derivation f -> f'(x) A x acting on a group of variables."""

    __slots__ = ("matrix", "variables", "_cols")

    def __init__(self, matrix: Sequence[Sequence[Coef]], variables: Sequence[str]):
        self.matrix = tuple(tuple(_norm(Fraction(c)) if isinstance(c, Fraction) else c
                                  for c in row) for row in matrix)
        self.variables = tuple(variables)
        n = len(self.variables)
        if len(self.matrix) != n or any(len(r) != n for r in self.matrix):
            raise VariableMismatchError(
                f"matrix must be {n}x{n} for variables {self.variables}")
        # for each i: list of (j, A_ij) with A_ij != 0
        self._cols = tuple(tuple((j, a) for j, a in enumerate(row) if a)
                           for row in self.matrix)

    def is_zero(self) -> bool:
        return not any(self._cols)

    def apply(self, f: Polynomial) -> Polynomial:
        return derivation_apply(self, f)

    def __call__(self, f: Polynomial) -> Polynomial:
        return derivation_apply(self, f)

    def power(self, f: Polynomial, n: int) -> Polynomial:
        for _ in range(n):
            f = derivation_apply(self, f)
        return f


def derivation_apply(D: LinearDerivation, f: Polynomial) -> Polynomial:
    """Return sum_i (df/dx_i) (A x)_i exactly."""
    pos = {v: k for k, v in enumerate(f.variables)}
    try:
        idx = [pos[v] for v in D.variables]
    except KeyError as exc:
        if f.is_constant():
            return Polynomial._raw(f.variables, {})
        raise VariableMismatchError(
            f"polynomial variables {f.variables} lack {exc.args[0]}") from None
    out: dict = {}
    cols = D._cols
    for e, c in f._terms.items():
        for gi, fi in enumerate(idx):
            a = e[fi]
            if not a or not cols[gi]:
                continue
            base = list(e)
            base[fi] -= 1
            ca = c * a
            for gj, m in cols[gi]:
                fj = idx[gj]
                base[fj] += 1
                ne = tuple(base)
                base[fj] -= 1
                v = out.get(ne, 0) + ca * m
                if v:
                    out[ne] = v
                else:
                    out.pop(ne, None)
    return Polynomial._raw(f.variables, {e: _norm(c) for e, c in out.items()})


def monomials(nvars: int, degree: int) -> Iterator[tuple]:
    """Exponent vectors of the given total degree, graded-lex descending."""
    if degree < 0:
        return
    if nvars == 0:
        if degree == 0:
            yield ()
        return
    for combo in combinations_with_replacement(range(nvars), degree):
        e = [0] * nvars
        for i in combo:
            e[i] += 1
        yield tuple(e)


def _weight(e: Sequence[int], diag: Sequence[int]) -> int:
    return sum(a * h for a, h in zip(e, diag))


def _derivation_rows(D: LinearDerivation, degree: int,
                     weight: int | None, diag: Sequence[int] | None):
    n = len(D.variables)
    basis = [e for e in monomials(n, degree)
             if weight is None or _weight(e, diag) == weight]
    rows = []
    index: dict = {}
    for e in basis:
        img = derivation_apply(D, Polynomial._raw(D.variables, {e: 1}))
        row = {}
        for te, c in img.items():
            col = index.setdefault(te, len(index))
            row[col] = c
        rows.append(row)
    return basis, rows


def derivation_rank(D: LinearDerivation, degree: int, weight: int | None = None,
                    weight_diagonal: Sequence[int] | None = None) -> int:
    """Rank of D on the homogeneous (optionally isobaric) subspace."""
    if weight is not None and weight_diagonal is None:
        raise ValueError("weight filter needs the weight diagonal")
    _, rows = _derivation_rows(D, degree, weight, weight_diagonal)
    return linalg.sparse_rank(rows)


def kernel_dimension(D: LinearDerivation, degree: int, weight: int | None = None,
                     weight_diagonal: Sequence[int] | None = None) -> int:
    """Dimension of ker D on the degree-d (and weight-w) monomial span."""
    if degree < 0:
        return 0
    if weight is not None and weight_diagonal is None:
        raise ValueError("weight filter needs the weight diagonal")
    basis, rows = _derivation_rows(D, degree, weight, weight_diagonal)
    return len(basis) - linalg.sparse_rank(rows)


rank = linalg.rank
linear_solve = linalg.linear_solve
nullspace = linalg.nullspace
