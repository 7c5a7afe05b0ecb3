"""sl2 triads for nilpotent matrices in upper Jordan form.

For a block of size k the matrices are

* ``N`` with ones on the superdiagonal,
* ``M`` with ``i*(k-i)`` on the subdiagonal (i = 1..k-1),
* ``H = diag(k-1, k-3, ..., -(k-1))``,

and the triad is ``(X, Y, Z) = (M*, N*, H)``. The derivations acting on
polynomials are ``𝒳 = D_{N*}``, ``𝒴 = D_{M*}`` and ``𝒵 = D_H``, so the
seminvariants are ``ker 𝒳``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .ratpoly import LinearDerivation, Polynomial

__all__ = ["Triad", "WeightInvariant", "NotIsobaricError", "TriadError",
           "build_triad", "weight_of", "is_invariant", "monomial_weight",
           "default_variables"]


class TriadError(RuntimeError):
    pass


class NotIsobaricError(ValueError):
    def __init__(self, first, second, variables):
        self.monomials = (first, second)
        a = _mono_str(first, variables)
        b = _mono_str(second, variables)
        super().__init__(f"not isobaric: {a} and {b} have different weights")


def _mono_str(e, variables):
    parts = [v if a == 1 else f"{v}^{a}" for v, a in zip(variables, e) if a]
    return "*".join(parts) or "1"


def _zeros(n):
    return [[0] * n for _ in range(n)]


def _matmul(a, b):
    n = len(a)
    return [[sum(a[i][t] * b[t][j] for t in range(n)) for j in range(n)]
            for i in range(n)]


def _sub(a, b):
    return [[x - y for x, y in zip(ra, rb)] for ra, rb in zip(a, b)]


def _transpose(a):
    return [list(r) for r in zip(*a)]


def _bracket(a, b):
    return _sub(_matmul(a, b), _matmul(b, a))


def _frozen(a):
    return tuple(tuple(r) for r in a)


def default_variables(n: int, prefix: str = "x") -> tuple:
    return tuple(f"{prefix}{i}" for i in range(1, n + 1))


@dataclass(frozen=True)
class Triad:
    block_sizes: tuple
    variables: tuple
    N: tuple
    M: tuple
    H: tuple
    X: tuple
    Y: tuple
    Z: tuple
    cX: LinearDerivation = field(repr=False)
    cY: LinearDerivation = field(repr=False)
    cZ: LinearDerivation = field(repr=False)

    @property
    def dimension(self) -> int:
        return len(self.variables)

    @property
    def h_diagonal(self) -> tuple:
        return tuple(self.H[i][i] for i in range(self.dimension))

    def block_ranges(self) -> list:
        """Half-open index ranges of the Jordan blocks."""
        out, start = [], 0
        for k in self.block_sizes:
            out.append((start, start + k))
            start += k
        return out

    def bottom_rows(self) -> tuple:
        """0-based index of the last row of each block."""
        return tuple(b - 1 for _, b in self.block_ranges())


def build_triad(block_sizes: Sequence[int], variables: Sequence[str] | None = None,
                prefix: str = "x") -> Triad:
    sizes = tuple(int(k) for k in block_sizes)
    if not sizes or any(k < 1 for k in sizes):
        raise ValueError(f"block sizes must be positive, got {list(block_sizes)}")
    n = sum(sizes)
    variables = tuple(variables) if variables is not None else default_variables(n, prefix)
    if len(variables) != n:
        raise ValueError(f"need {n} variables, got {len(variables)}")
    N, M, H = _zeros(n), _zeros(n), _zeros(n)
    off = 0
    for k in sizes:
        for i in range(k):
            H[off + i][off + i] = k - 1 - 2 * i
        for i in range(1, k):
            N[off + i - 1][off + i] = 1
            M[off + i][off + i - 1] = i * (k - i)
        off += k
    X, Y, Z = _transpose(M), _transpose(N), H
    if (_bracket(X, Y) != Z or _bracket(Z, X) != [[2 * v for v in r] for r in X]
            or _bracket(Z, Y) != [[-2 * v for v in r] for r in Y]):
        raise TriadError(f"commutator check failed for blocks {sizes}")
    return Triad(sizes, variables, _frozen(N), _frozen(M), _frozen(H),
                 _frozen(X), _frozen(Y), _frozen(Z),
                 cX=LinearDerivation(Y, variables),
                 cY=LinearDerivation(X, variables),
                 cZ=LinearDerivation(Z, variables))


def monomial_weight(exponent: Sequence[int], variables: Sequence[str], triad: Triad) -> int:
    diag = dict(zip(triad.variables, triad.h_diagonal))
    return sum(a * diag[v] for v, a in zip(variables, exponent) if a)


@dataclass(frozen=True)
class WeightInvariant:
    poly: Polynomial
    degree: int
    weight: int
    name: str = ""


def weight_of(poly: Polynomial, triad: Triad) -> int:
    """Common 𝒵-eigenvalue of the monomials of ``poly``."""
    if poly.is_zero():
        raise ValueError("the zero polynomial has no weight")
    diag = dict(zip(triad.variables, triad.h_diagonal))
    missing = [v for v in poly.variables if v not in diag]
    coeffs = [diag.get(v, 0) for v in poly.variables]
    first = None
    w0 = None
    for e, _ in poly.sorted_terms():
        if any(e[poly.variables.index(v)] for v in missing):
            raise ValueError(f"variables {missing} are not in the triad")
        w = sum(a * h for a, h in zip(e, coeffs))
        if first is None:
            first, w0 = e, w
        elif w != w0:
            raise NotIsobaricError(first, e, poly.variables)
    return w0


def is_invariant(poly: Polynomial, triad: Triad) -> bool:
    if poly.is_constant():
        return True
    return triad.cX(poly.over(_union(poly.variables, triad.variables))).is_zero()


def _union(a, b):
    seen = list(a)
    for v in b:
        if v not in seen:
            seen.append(v)
    return tuple(seen)
