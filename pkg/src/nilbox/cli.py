"""Command-line front end.

    nilbox invariants --blocks 2,2,3 --split "2,2|3" --verify
    nilbox equivariants --blocks 2,3 --order a,b,d --survey
    nilbox verify decomposition.json --max-degree 6
    nilbox verify --laws

Exit codes: 0 success, 1 usage or input error, 2 verification failure.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import dataclass
from typing import Sequence

from . import __version__
from .booster import (EquivariantStanley, boost, is_equivariant, lettered, order_survey,
                      simplified_style)
from .decomposition import BlockDecomposition, StanleyDecomposition, dumps, loads
from .factorpipe import box_product
from .oracle import check_standard, compare_dims, transvectant_laws
from .seeds import UnsupportedBlockSize, seed_decomposition

EXIT_OK, EXIT_USAGE, EXIT_VERIFY = 0, 1, 2


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    block_sizes: tuple
    order: tuple | None = None
    suppress_nulls: bool = True
    max_degree: int | None = None
    output_format: str = "text"
    split: tuple | None = None   # (left sizes, right sizes)


def parse_blocks(text: str) -> tuple:
    try:
        sizes = tuple(int(x) for x in text.replace(" ", "").split(",") if x)
    except ValueError:
        raise UsageError(f"bad block sizes {text!r}; expected e.g. 2,3")
    if not sizes or any(k < 1 for k in sizes):
        raise UsageError("block sizes must be positive integers")
    return sizes


def parse_split(text: str, blocks: tuple) -> tuple:
    if "|" not in text:
        raise UsageError("--split needs the form LEFT|RIGHT, e.g. 2,2|3")
    left, right = text.split("|", 1)
    left, right = parse_blocks(left), parse_blocks(right)
    if left + right != blocks:
        raise UsageError(f"--split {text} does not match --blocks {','.join(map(str, blocks))}")
    return left, right


def _order(text: str | None):
    if not text:
        return None
    return tuple(x.strip() for x in text.split(",") if x.strip())


# -- pipelines ----------------------------------------------------------------------

def fold(sizes: Sequence[int], suppress_nulls: bool = True, order=None):
    """Invariants of the blocks by left-folded box products.

    Returns (decomposition, last BoxProduct or None).
    """
    acc = seed_decomposition(sizes[0])
    last = None
    for i, k in enumerate(sizes[1:], start=1):
        final = i == len(sizes) - 1
        last = box_product(acc, seed_decomposition(k, "y"),
                           order if final else None, suppress_nulls)
        acc = last.decomposition
    return acc, last


def invariants(cfg: RunConfig):
    if cfg.split:
        left, _ = fold(cfg.split[0], cfg.suppress_nulls)
        right, _ = fold(cfg.split[1], cfg.suppress_nulls)
        right = right.renamed(["y%d" % i for i in range(1, len(right.variables) + 1)])
        bp = box_product(left, right, cfg.order, cfg.suppress_nulls)
        return bp.decomposition, bp
    if len(cfg.block_sizes) == 1 and cfg.order:
        raise UsageError("--order needs at least two blocks")
    return fold(cfg.block_sizes, cfg.suppress_nulls, cfg.order)


def render_invariants(bd: BlockDecomposition, bp) -> str:
    out = []
    if bp is not None:
        out.append("factoring order: " + ", ".join(bp.order))
        out.append("primes:")
        for p in bp.primes:
            k, l, s = p.point.k, p.point.l, p.point.s
            pt = "[" + ",".join(map(str, k)) + "; " + ",".join(map(str, l)) + f"; {s}]"
            out.append(f"  {p.name}  {pt}  deg {p.degree}  wt {p.weight}")
    out.append(bd.render())
    out.append("Stanley decomposition:")
    out.append(bd.to_stanley().render(compact=True))
    return "\n".join(out)


def verify_invariants(bd, max_degree: int) -> tuple:
    rep = compare_dims(bd, max_degree)
    std = check_standard(bd, max_degree)
    lines = [rep.render(), "standard: " + std.describe()]
    return rep.ok and std.ok, "\n".join(lines)


def verify_equivariants(E: EquivariantStanley, max_degree: int) -> tuple:
    rep = compare_dims(E, max_degree, vector=True)
    tri = E.triad()
    full = E if not E.simplified else EquivariantStanley(
        E.basis, E.vectors, E.terms, E.jordan, E.variables, E.order, E.suppressed)
    bad = [full.generator_label(t) for t in full.terms
           if not is_equivariant(full.generator_field(t), tri)]
    lines = [rep.render()]
    lines.append("generators equivariant: " + ("yes" if not bad else "no: " + ", ".join(bad)))
    return rep.ok and not bad, "\n".join(lines)


# -- commands --------------------------------------------------------------------------

def _emit(text: str, out_path: str | None):
    if out_path:
        with open(out_path, "w", encoding="utf-8") as fh:
            fh.write(text if text.endswith("\n") else text + "\n")
    else:
        sys.stdout.write(text if text.endswith("\n") else text + "\n")


def _config(args) -> RunConfig:
    blocks = parse_blocks(args.blocks)
    split = parse_split(args.split, blocks) if args.split else None
    return RunConfig(blocks, _order(args.order), not args.no_suppress_nulls,
                     args.max_degree, args.format, split)


def cmd_invariants(args) -> int:
    cfg = _config(args)
    bd, bp = invariants(cfg)
    if cfg.output_format == "json":
        text = dumps(bd)
    else:
        text = render_invariants(bd, bp)
    code = EXIT_OK
    if args.verify:
        ok, report = verify_invariants(bd, cfg.max_degree or 5)
        code = EXIT_OK if ok else EXIT_VERIFY
        if cfg.output_format == "text":
            text += "\nverification (to degree %d):\n%s" % (cfg.max_degree or 5, report)
        else:
            sys.stderr.write(report + "\n")
    _emit(text, args.out)
    return code


def cmd_equivariants(args) -> int:
    cfg = _config(args)
    bd, _ = invariants(RunConfig(cfg.block_sizes, None, cfg.suppress_nulls, split=cfg.split))
    A, vec, legend = lettered(bd)
    order = cfg.order
    if order:
        back = {v: k for k, v in legend.items()}
        order = tuple(back.get(n, n) for n in order)
    E = boost(A, order, vec)
    if args.simplified:
        E = simplified_style(E)
    lines = []
    if cfg.output_format == "json":
        text = dumps(E)
    else:
        lines.append("names: " + ", ".join(f"{k} = {v}" for k, v in legend.items())
                     + "; " + ", ".join(f"{v.label} = e{v.row}" for v in E.vectors))
        lines.append("factoring order: " + ", ".join(E.order))
        lines.append(E.render(explicit=True))
        if args.survey:
            lines.append("order survey:")
            for o, n in order_survey(A).items():
                lines.append(f"  ({', '.join(o)})  {n}")
        text = "\n".join(lines)
    code = EXIT_OK
    if args.verify:
        ok, report = verify_equivariants(E, cfg.max_degree or 4)
        code = EXIT_OK if ok else EXIT_VERIFY
        if cfg.output_format == "text":
            text += "\nverification (to degree %d):\n%s" % (cfg.max_degree or 4, report)
        else:
            sys.stderr.write(report + "\n")
    _emit(text, args.out)
    return code


def cmd_verify(args) -> int:
    chunks = []
    ok = True
    if args.laws:
        rep = transvectant_laws(cases=args.cases)
        chunks.append(rep.render())
        ok &= rep.ok
    if args.file:
        try:
            with open(args.file, encoding="utf-8") as fh:
                obj = loads(fh.read())
        except (OSError, ValueError, KeyError) as exc:
            raise UsageError(f"cannot read {args.file}: {exc}")
        if not getattr(obj, "jordan", None):
            raise UsageError("the decomposition file has no Jordan block sizes")
        if isinstance(obj, EquivariantStanley):
            good, report = verify_equivariants(obj, args.max_degree or 4)
        else:
            good, report = verify_invariants(obj, args.max_degree or 6)
        if args.format == "json":
            rep = compare_dims(obj, args.max_degree or (4 if isinstance(obj, EquivariantStanley) else 6))
            report = json.dumps(rep.to_json(), indent=2)
        chunks.append(report)
        ok &= good
    if not args.laws and not args.file:
        raise UsageError("verify needs a decomposition file or --laws")
    chunks.append("PASS" if ok else "FAIL")
    _emit("\n".join(chunks), args.out)
    return EXIT_OK if ok else EXIT_VERIFY


# -- argument parsing -------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="nilbox", description="Invariants and equivariants "
                                "of nilpotent matrices in Jordan form.")
    p.add_argument("--version", action="version", version=f"nilbox {__version__}")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp, default_degree):
        sp.add_argument("--blocks", required=True, help="Jordan block sizes, e.g. 2,2,3")
        sp.add_argument("--split", help="explicit association LEFT|RIGHT, e.g. '2,2|3'")
        sp.add_argument("--order", help="factoring order, comma separated names")
        sp.add_argument("--no-suppress-nulls", action="store_true",
                        help="keep null inputs as factoring primes")
        sp.add_argument("--verify", action="store_true", help="check against kernel dimensions")
        sp.add_argument("--max-degree", type=int, default=None,
                        help=f"verification degree bound (default {default_degree})")
        sp.add_argument("--format", choices=("text", "json"), default="text")
        sp.add_argument("--out", metavar="FILE", help="write output to FILE")

    inv = sub.add_parser("invariants", help="block and Stanley decompositions of the invariants")
    common(inv, 5)
    inv.set_defaults(func=cmd_invariants)

    eq = sub.add_parser("equivariants", help="Stanley decomposition of the equivariants")
    common(eq, 4)
    eq.add_argument("--survey", action="store_true", help="term counts for every order")
    eq.add_argument("--simplified", action="store_true", help="simplified normal form style")
    eq.set_defaults(func=cmd_equivariants)

    ver = sub.add_parser("verify", help="verify a decomposition file or the transvectant laws")
    ver.add_argument("file", nargs="?")
    ver.add_argument("--laws", action="store_true", help="randomised transvectant law checks")
    ver.add_argument("--cases", type=int, default=200)
    ver.add_argument("--max-degree", type=int, default=None)
    ver.add_argument("--format", choices=("text", "json"), default="text")
    ver.add_argument("--out", metavar="FILE")
    ver.set_defaults(func=cmd_verify)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_OK if exc.code == 0 else EXIT_USAGE
    try:
        return args.func(args)
    except (UsageError, UnsupportedBlockSize, ValueError) as exc:
        sys.stderr.write(f"nilbox: error: {exc}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
