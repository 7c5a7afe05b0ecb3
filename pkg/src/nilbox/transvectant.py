"""Transvectants of weight invariants.

All three flavours share the coefficients

    W(s, j) = C(s, j) * (wf - j)! / (wf - s)! * (wg - s + j)! / (wg - s)!

where ``wf`` and ``wg`` are the weights of the two arguments.
"""

from __future__ import annotations

from math import comb, factorial
from typing import Sequence

from .ratpoly import LinearDerivation, Polynomial

__all__ = ["StrengthError", "coefficient", "external_transvectant",
           "internal_transvectant", "vector_transvectant", "VectorField"]


class StrengthError(ValueError):
    """The weights do not support the requested strength."""


def coefficient(s: int, j: int, wf: int, wg: int) -> int:
    return (comb(s, j) * factorial(wf - j) // factorial(wf - s)
            * factorial(wg - s + j) // factorial(wg - s))


def _check(s, wf, wg):
    if s < 0 or s > wf or s > wg:
        raise StrengthError(f"strength {s} is not supported by weights {wf} and {wg}")


def _powers(D: LinearDerivation, f: Polynomial, n: int) -> list:
    out = [f]
    for _ in range(n):
        out.append(D(out[-1]))
    return out


def external_transvectant(f: Polynomial, wf: int, Yf: LinearDerivation,
                          g: Polynomial, wg: int, Yg: LinearDerivation,
                          s: int) -> Polynomial:
    """``(f, g)^(s)`` for f and g in disjoint variable groups."""
    _check(s, wf, wg)
    if s == 0:
        return f * g
    fs = _powers(Yf, f, s)
    gs = _powers(Yg, g, s)
    total = None
    for j in range(s + 1):
        term = (fs[j] * gs[s - j]).scale((-1) ** j * coefficient(s, j, wf, wg))
        total = term if total is None else total + term
    return total


def internal_transvectant(f: Polynomial, wf: int, g: Polynomial, wg: int,
                          Y: LinearDerivation, s: int) -> Polynomial:
    """``(f, g)^(s)`` inside one algebra; same formula with a single 𝒴."""
    return external_transvectant(f, wf, Y, g, wg, Y, s)


class VectorField(tuple):
    """Tuple of polynomial components, one per coordinate."""

    def __new__(cls, components):
        return super().__new__(cls, components)

    @property
    def variables(self):
        for c in self:
            return c.variables
        return ()

    def __add__(self, other):
        return VectorField(a + b for a, b in zip(self, other))

    def __sub__(self, other):
        return VectorField(a - b for a, b in zip(self, other))

    def __neg__(self):
        return VectorField(-a for a in self)

    def scale(self, c):
        return VectorField(a.scale(c) for a in self)

    def times(self, f: Polynomial) -> "VectorField":
        return VectorField(f * a for a in self)

    def is_zero(self) -> bool:
        return all(a.is_zero() for a in self)

    def over(self, variables):
        return VectorField(a.over(variables) for a in self)

    def __eq__(self, other):
        if not isinstance(other, tuple) or len(other) != len(self):
            return False
        return all(a == b for a, b in zip(self, other))

    def __ne__(self, other):
        return not self == other

    __hash__ = tuple.__hash__

    def render(self, basis_prefix: str = "e") -> str:
        parts = []
        for i, c in enumerate(self, start=1):
            if c.is_zero():
                continue
            txt = str(c)
            if len(c) > 1:
                txt = f"({txt})"
            if txt == "1":
                parts.append(f"{basis_prefix}{i}")
            elif txt == "-1":
                parts.append(f"-{basis_prefix}{i}")
            else:
                parts.append(f"{txt}*{basis_prefix}{i}")
        return " + ".join(parts) if parts else "0"


def _matvec(A, v):
    return [sum(a * x for a, x in zip(row, v)) for row in A]


def vector_transvectant(f: Polynomial, wf: int, Yf: LinearDerivation,
                        w: Sequence[int], ww: int, Mstar, s: int) -> VectorField:
    """``(f, w)^(s) = (-1)^s sum_j W(s,j) (𝒴^j f) (M*^(s-j) w)``."""
    _check(s, wf, ww)
    fs = _powers(Yf, f, s)
    ws = [list(w)]
    for _ in range(s):
        ws.append(_matvec(Mstar, ws[-1]))
    n = len(w)
    zero = f.scale(0)
    comps = [zero] * n
    sign = -1 if s % 2 else 1
    for j in range(s + 1):
        c = sign * coefficient(s, j, wf, ww)
        vec = ws[s - j]
        for r in range(n):
            if vec[r]:
                comps[r] = comps[r] + fs[j].scale(c * vec[r])
    return VectorField(comps)
