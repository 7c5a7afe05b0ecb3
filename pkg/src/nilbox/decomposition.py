"""Hilbert bases with block and Stanley decompositions, plus JSON I/O.

A :class:`BlockDecomposition` lists basis elements and disjoint boxes of
exponent vectors over them (the preferred set). Null basis elements that
were moved into the coefficient ring are kept in the basis, marked as
suppressed, and appear in every block as a free ``[0, ∞]`` column.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, replace
from itertools import product
from typing import Sequence

from .boxalgebra import INF, BMatrix, parse_ext
from .ratpoly import Polynomial, poly_parse
from .sl2core import build_triad

__all__ = ["Recipe", "BasisEntry", "BlockDecomposition", "StanleyTerm",
           "StanleyDecomposition", "to_stanley", "dumps", "loads",
           "greek_name", "render_monomial"]

_GREEK = {"a": "α", "b": "β", "g": "γ"}
_ASCII = {v: k for k, v in _GREEK.items()}


def greek_name(name: str) -> str:
    """Accept ``a1``/``b2``/``g3`` for ``α1``/``β2``/``γ3``."""
    if len(name) >= 2 and name[0] in _GREEK and name[1:].isdigit():
        return _GREEK[name[0]] + name[1:]
    return name


@dataclass(frozen=True)
class Recipe:
    """``(α^k, β^l)^(s)`` over the full input bases."""

    k: tuple
    l: tuple
    s: int

    def to_json(self) -> dict:
        return {"k": list(self.k), "l": list(self.l), "s": self.s}

    @classmethod
    def from_json(cls, d: dict) -> "Recipe":
        return cls(tuple(d["k"]), tuple(d["l"]), int(d["s"]))

    def render(self, left_names: Sequence[str], right_names: Sequence[str]) -> str:
        a = render_monomial(dict(zip(left_names, self.k))) if any(self.k) else "1"
        b = render_monomial(dict(zip(right_names, self.l))) if any(self.l) else "1"
        return f"({a}, {b})^({self.s})"


@dataclass(frozen=True)
class BasisEntry:
    name: str
    degree: int
    weight: int
    poly: Polynomial | None = None
    recipe: Recipe | None = None

    @property
    def is_null(self) -> bool:
        return self.weight == 0

    def to_json(self) -> dict:
        d = {"name": self.name, "degree": self.degree, "weight": self.weight}
        if self.poly is not None:
            d["poly"] = str(self.poly)
        if self.recipe is not None:
            d["recipe"] = self.recipe.to_json()
        return d


def render_monomial(exps: dict) -> str:
    parts = []
    for name, e in exps.items():
        if e == 1:
            parts.append(name)
        elif e:
            parts.append(f"{name}^{e}")
    return "*".join(parts) if parts else "1"


@dataclass(frozen=True)
class BlockDecomposition:
    basis: tuple
    blocks: tuple
    suppressed: tuple = ()
    jordan: tuple = ()
    variables: tuple = ()
    left_names: tuple = ()
    right_names: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "basis", tuple(self.basis))
        object.__setattr__(self, "suppressed", tuple(self.suppressed))
        object.__setattr__(self, "jordan", tuple(self.jordan))
        object.__setattr__(self, "variables", tuple(self.variables))
        names = tuple(e.name for e in self.basis)
        if len(set(names)) != len(names):
            raise ValueError("basis names must be distinct")
        blocks = []
        for b in self.blocks:
            if b.width != len(names):
                raise ValueError("block width does not match the basis")
            blocks.append(BMatrix(b.lower, b.upper, names))
        object.__setattr__(self, "blocks", tuple(blocks))
        for s in self.suppressed:
            if s not in names:
                raise ValueError(f"suppressed name {s} is not in the basis")

    @property
    def names(self) -> tuple:
        return tuple(e.name for e in self.basis)

    @property
    def degrees(self) -> tuple:
        return tuple(e.degree for e in self.basis)

    @property
    def weights(self) -> tuple:
        return tuple(e.weight for e in self.basis)

    def index(self, name: str) -> int:
        return self.names.index(greek_name(name))

    def entry(self, name: str) -> BasisEntry:
        return self.basis[self.index(name)]

    def active_indices(self) -> list:
        return [i for i, n in enumerate(self.names) if n not in self.suppressed]

    def contains(self, exponent: Sequence[int]) -> bool:
        return any(b.contains(exponent) for b in self.blocks)

    def is_stanley(self) -> bool:
        return all(b.is_stanley() for b in self.blocks)

    def triad(self):
        return build_triad(self.jordan, self.variables)

    def preferred(self, max_degree: int) -> list:
        """Exponent vectors of the preferred set up to a total degree."""
        out = []
        for b in self.blocks:
            out.extend(b.points(self.degrees, max_degree))
        return out

    def evaluate(self, exponent: Sequence[int]) -> Polynomial:
        """The product of basis polynomials with the given exponents."""
        result = Polynomial.constant(1, self.variables)
        for e, n in zip(self.basis, exponent):
            if n:
                if e.poly is None:
                    raise ValueError(f"basis element {e.name} has no polynomial")
                result = result * (e.poly ** n)
        return result

    def renamed(self, variables: Sequence[str]) -> "BlockDecomposition":
        """Rename the polynomial variables positionally."""
        variables = tuple(variables)
        mapping = dict(zip(self.variables, variables))
        basis = tuple(replace(e, poly=e.poly.over(self.variables).rename(
            [mapping[v] for v in self.variables])) if e.poly is not None else e
            for e in self.basis)
        return replace(self, basis=basis, variables=variables)

    def with_names(self, names: Sequence[str]) -> "BlockDecomposition":
        mapping = dict(zip(self.names, names))
        basis = tuple(replace(e, name=n) for e, n in zip(self.basis, names))
        return replace(self, basis=basis,
                       suppressed=tuple(mapping[s] for s in self.suppressed))

    def to_stanley(self) -> "StanleyDecomposition":
        return to_stanley(self)

    # text

    def render(self) -> str:
        lines = []
        lines.append("basis:")
        width = max((len(e.name) for e in self.basis), default=1)
        for e in self.basis:
            how = ""
            if e.recipe is not None and self.left_names and not _is_input(e.recipe):
                how = "  = " + e.recipe.render(self.left_names, self.right_names)
            poly = f"  {e.poly}" if e.poly is not None else ""
            lines.append(f"  {e.name.ljust(width)}  deg {e.degree}  wt {e.weight}{how}")
            if poly:
                lines.append(f"  {' ' * width}  {poly.strip()}")
        lines.append("blocks:")
        keep = [i for i, n in enumerate(self.names) if n not in self.suppressed]
        labels = [self.names[i] for i in keep]
        for b in self.blocks:
            lines.append(_indent(b.select(keep).render(labels), 2))
        if self.suppressed:
            lines.append("ℛ = ℝ[[" + ", ".join(self.suppressed) + "]]")
        return "\n".join(lines)

    # json

    def to_json(self) -> dict:
        d = {
            "basis": [e.to_json() for e in self.basis],
            "blocks": [b.to_json() for b in self.blocks],
            "suppressed": list(self.suppressed),
            "jordan": list(self.jordan),
            "variables": list(self.variables),
        }
        if self.left_names or self.right_names:
            d["inputs"] = {"left": list(self.left_names), "right": list(self.right_names)}
        return d

    @classmethod
    def from_json(cls, data: dict) -> "BlockDecomposition":
        variables = tuple(data.get("variables", ()))
        basis = []
        for e in data["basis"]:
            poly = poly_parse(e["poly"], variables or None) if "poly" in e else None
            if poly is not None and variables:
                poly = poly.over(variables)
            recipe = Recipe.from_json(e["recipe"]) if "recipe" in e else None
            basis.append(BasisEntry(e["name"], int(e["degree"]), int(e["weight"]),
                                    poly, recipe))
        names = tuple(e.name for e in basis)
        blocks = [BMatrix(tuple(b["lower"]), tuple(parse_ext(x) for x in b["upper"]), names)
                  for b in data["blocks"]]
        inputs = data.get("inputs", {})
        return cls(tuple(basis), tuple(blocks), tuple(data.get("suppressed", ())),
                   tuple(data.get("jordan", ())), variables,
                   tuple(inputs.get("left", ())), tuple(inputs.get("right", ())))


def _is_input(recipe: Recipe) -> bool:
    return recipe.s == 0 and sum(recipe.k) + sum(recipe.l) == 1


def _indent(text: str, n: int) -> str:
    pad = " " * n
    return "\n".join(pad + line for line in text.splitlines())


@dataclass(frozen=True)
class StanleyTerm:
    free: tuple
    base: tuple  # ((name, exponent), ...) with positive exponents

    def base_dict(self) -> dict:
        return dict(self.base)


@dataclass(frozen=True)
class StanleyDecomposition:
    basis: tuple
    terms: tuple
    suppressed: tuple = ()
    jordan: tuple = ()
    variables: tuple = ()

    @property
    def names(self) -> tuple:
        return tuple(e.name for e in self.basis)

    @property
    def degrees(self) -> tuple:
        return tuple(e.degree for e in self.basis)

    @property
    def weights(self) -> tuple:
        return tuple(e.weight for e in self.basis)

    def __len__(self):
        return len(self.terms)

    def as_blocks(self) -> list:
        """Each term as a b-matrix over the basis."""
        names = self.names
        out = []
        for t in self.terms:
            base = t.base_dict()
            lower = tuple(base.get(n, 0) for n in names)
            upper = tuple(INF if n in t.free else base.get(n, 0) for n in names)
            out.append(BMatrix(lower, upper, names))
        return out

    def render(self, compact: bool = False) -> str:
        ring = list(self.suppressed)
        common = []
        if compact and self.terms:
            common = [n for n in self.names
                      if n not in ring and all(n in t.free for t in self.terms)]
        ring_name = "ℛ⁺" if common else ("ℛ" if ring else "ℝ")
        pieces = []
        for t in self.terms:
            free = [n for n in t.free if n not in ring and n not in common]
            phi = render_monomial(t.base_dict())
            head = f"{ring_name}[[{', '.join(free)}]]" if free else ring_name
            pieces.append(head if phi == "1" else f"{head}{phi}")
        body = " ⊕ ".join(pieces) if pieces else "0"
        lines = [body]
        if ring or common:
            shown = [n for n in self.names if n in ring or n in common]
            lines.append(f"{ring_name} = ℝ[[{', '.join(shown)}]]")
        return "\n".join(lines)

    def to_json(self) -> dict:
        return {
            "basis": [{"name": e.name, "degree": e.degree, "weight": e.weight}
                      for e in self.basis],
            "suppressed": list(self.suppressed),
            "terms": [{"free": list(t.free), "base": dict(t.base)} for t in self.terms],
            "jordan": list(self.jordan),
            "variables": list(self.variables),
        }

    @classmethod
    def from_json(cls, data: dict) -> "StanleyDecomposition":
        basis = tuple(BasisEntry(e["name"], int(e["degree"]), int(e["weight"]))
                      for e in data["basis"])
        terms = tuple(StanleyTerm(tuple(t["free"]), tuple(t["base"].items()))
                      for t in data["terms"])
        return cls(basis, terms, tuple(data.get("suppressed", ())),
                   tuple(data.get("jordan", ())), tuple(data.get("variables", ())))


def to_stanley(bd: BlockDecomposition) -> StanleyDecomposition:
    """Slice every block along its finite directions into Stanley blocks."""
    names = bd.names
    terms = []
    for b in bd.blocks:
        ivs = b.intervals()
        if any(lo > hi for lo, hi in ivs):
            continue
        free = tuple(n for n, (lo, hi) in zip(names, ivs) if hi is INF)
        finite = [i for i, (lo, hi) in enumerate(ivs) if hi is not INF]
        ranges = [range(ivs[i][0], ivs[i][1] + 1) for i in finite]
        for choice in product(*ranges):
            base = {}
            for n, (lo, hi) in zip(names, ivs):
                if hi is INF and lo:
                    base[n] = lo
            for i, v in zip(finite, choice):
                if v:
                    base[names[i]] = v
            ordered = tuple((n, base[n]) for n in names if n in base)
            terms.append(StanleyTerm(free, ordered))
    return StanleyDecomposition(bd.basis, tuple(terms), bd.suppressed, bd.jordan, bd.variables)


def dumps(obj) -> str:
    """Deterministic JSON text (sorted keys, two-space indent, trailing newline)."""
    return json.dumps(obj.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def loads(text: str):
    data = json.loads(text)
    if "blocks" in data:
        return BlockDecomposition.from_json(data)
    if data.get("kind") == "equivariant":
        from .booster import EquivariantStanley
        return EquivariantStanley.from_json(data)
    if "terms" in data:
        return StanleyDecomposition.from_json(data)
    raise ValueError("unrecognised decomposition JSON")
