"""Exact integer feasibility for small systems of linear inequalities.

A system is a list of rows ``(coeffs, const)`` read as
``sum(coeffs[i] * x[i]) + const >= 0`` with every ``x[i]`` an unrestricted
integer. Nonnegativity, when wanted, has to be written as rows.

The decision procedure is Pugh's Omega test: Fourier-Motzkin elimination
that is exact whenever a unit coefficient is available, and otherwise
falls back on the real shadow / dark shadow pair plus a finite splinter
search. Equalities are removed first, using Pugh's symmetric-modulo
substitution when no unit coefficient exists.
"""

from __future__ import annotations

from functools import lru_cache
from math import gcd
from typing import Iterable, Sequence

__all__ = ["feasible", "is_empty", "negate", "implies"]

Row = tuple  # (coeffs: tuple[int, ...], const: int)


def negate(row: Row) -> Row:
    """Integer complement of ``row``: ``-(c.x + d) - 1 >= 0``."""
    coeffs, const = row
    return tuple(-c for c in coeffs), -const - 1


def feasible(rows: Iterable[Row], nvars: int | None = None) -> bool:
    rows = [(tuple(c), int(d)) for c, d in rows]
    if nvars is None:
        nvars = len(rows[0][0]) if rows else 0
    for c, _ in rows:
        if len(c) != nvars:
            raise ValueError("row length does not match the variable count")
    return _feasible_cached(frozenset(rows), ())


def is_empty(rows: Iterable[Row], nvars: int | None = None) -> bool:
    return not feasible(rows, nvars)


def implies(rows: Sequence[Row], row: Row) -> bool:
    """True when every integer solution of ``rows`` satisfies ``row``."""
    return is_empty(list(rows) + [negate(row)])


def _floordiv(a: int, b: int) -> int:
    return a // b


def _normalise_row(coeffs, const):
    """Divide by the content, tightening the constant. None if trivially true."""
    g = 0
    for c in coeffs:
        g = gcd(g, c)
    if g == 0:
        return None if const >= 0 else False
    if g > 1:
        coeffs = tuple(c // g for c in coeffs)
        const = _floordiv(const, g)
    return coeffs, const


@lru_cache(maxsize=200_000)
def _feasible_cached(ineqs: frozenset, eqs: tuple) -> bool:
    return _solve(list(ineqs), list(eqs))


def _solve(ineqs: list, eqs: list) -> bool:
    # equalities first
    while eqs:
        coeffs, const = eqs.pop()
        g = 0
        for c in coeffs:
            g = gcd(g, c)
        if g == 0:
            if const != 0:
                return False
            continue
        if const % g:
            return False
        coeffs = tuple(c // g for c in coeffs)
        const //= g
        unit = next((i for i, c in enumerate(coeffs) if abs(c) == 1), None)
        if unit is not None:
            sub = _solve_for(coeffs, const, unit)
            ineqs = [_substitute(r, unit, sub) for r in ineqs]
            eqs = [_substitute(r, unit, sub) for r in eqs]
            continue
        # Pugh's symmetric modulo step introduces a fresh variable sigma
        k = min((i for i, c in enumerate(coeffs) if c), key=lambda i: abs(coeffs[i]))
        m = abs(coeffs[k]) + 1
        ineqs = [(c + (0,), d) for c, d in ineqs]
        eqs = [(c + (0,), d) for c, d in eqs]
        coeffs = coeffs + (0,)
        # sum mh(a_i) x_i + mh(const) - m*sigma = 0 ; mh(a_k) = -sign(a_k)
        new = tuple(_mhat(c, m) for c in coeffs[:-1]) + (-m,)
        new_const = _mhat(const, m)
        sub = _solve_for(new, new_const, k)
        ineqs = [_substitute(r, k, sub) for r in ineqs]
        eqs = [_substitute(r, k, sub) for r in eqs]
        eqs.append(_substitute((coeffs, const), k, sub))
    return _solve_ineqs(ineqs)


def _mhat(a: int, m: int) -> int:
    return a - m * ((2 * a + m) // (2 * m))


def _solve_for(coeffs, const, k):
    """Express x_k from ``coeffs.x + const = 0`` where coeffs[k] = +-1."""
    s = coeffs[k]
    # x_k = -s * (sum_{i != k} c_i x_i + const)
    lin = tuple(0 if i == k else -s * c for i, c in enumerate(coeffs))
    return lin, -s * const


def _substitute(row, k, sub):
    coeffs, const = row
    a = coeffs[k]
    if not a:
        return row
    lin, c0 = sub
    new = tuple(0 if i == k else c + a * l for i, (c, l) in enumerate(zip(coeffs, lin)))
    return new, const + a * c0


def _tidy(ineqs):
    """Normalise rows and detect trivial infeasibility or hidden equalities.

    Returns (rows, eqs) or None when a contradiction is found.
    """
    best: dict = {}
    for coeffs, const in ineqs:
        r = _normalise_row(coeffs, const)
        if r is None:
            continue
        if r is False:
            return None
        c, d = r
        if c not in best or d < best[c]:
            best[c] = d
    eqs = []
    rows = []
    done = set()
    for c, d in best.items():
        if c in done:
            continue
        neg = tuple(-x for x in c)
        if neg in best:
            e = best[neg]
            done.add(neg)
            # -d <= c.x <= e
            if -d > e:
                return None
            if -d == e:
                eqs.append((c, d))
                continue
            rows.append((neg, e))
        rows.append((c, d))
    return rows, eqs


def _solve_ineqs(ineqs: list) -> bool:
    t = _tidy(ineqs)
    if t is None:
        return False
    rows, eqs = t
    if eqs:
        return _feasible_cached(frozenset(rows), tuple(eqs))
    if not rows:
        return True
    n = len(rows[0][0])
    live = [i for i in range(n) if any(r[0][i] for r in rows)]
    if not live:
        return all(d >= 0 for _, d in rows)

    # one-sided variables can be pushed to infinity
    for i in live:
        pos = any(r[0][i] > 0 for r in rows)
        neg = any(r[0][i] < 0 for r in rows)
        if not (pos and neg):
            rest = [r for r in rows if not r[0][i]]
            return _feasible_cached(frozenset(rest), ())

    def cost(i):
        lo = [r for r in rows if r[0][i] > 0]
        up = [r for r in rows if r[0][i] < 0]
        exact = all(r[0][i] == 1 for r in lo) or all(r[0][i] == -1 for r in up)
        return (0 if exact else 1, len(lo) * len(up) - len(lo) - len(up))

    v = min(live, key=cost)
    lo = [r for r in rows if r[0][v] > 0]
    up = [r for r in rows if r[0][v] < 0]
    rest = [r for r in rows if not r[0][v]]
    exact = cost(v)[0] == 0

    real, dark = [], []
    for lc, ld in lo:
        a = lc[v]
        for uc, ud in up:
            b = -uc[v]
            coeffs = tuple(b * x + a * y for x, y in zip(lc, uc))
            const = b * ld + a * ud
            real.append((coeffs, const))
            dark.append((coeffs, const - (a - 1) * (b - 1)))
    if exact:
        return _feasible_cached(frozenset(rest + real), ())
    if not _feasible_cached(frozenset(rest + real), ()):
        return False
    if _feasible_cached(frozenset(rest + dark), ()):
        return True
    m = max(-uc[v] for uc, _ in up)
    for lc, ld in lo:
        a = lc[v]
        top = (m * a - a - m) // m
        for i in range(top + 1):
            if _feasible_cached(frozenset(rows), ((lc, ld - i),)):
                return True
    return False
