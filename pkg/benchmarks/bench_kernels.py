"""Compare the compiled and pure-Python kernels on representative inputs.

    python3 benchmarks/bench_kernels.py [--repeat N] [--pipeline]

``--pipeline`` also times whole CLI runs with each backend, in fresh
interpreters so that the backend choice at import takes effect.
"""

import argparse
import os
import random
import subprocess
import sys
import time
import timeit

from nilbox._kernels import BACKEND, _pykernels

try:
    from nilbox._kernels import _ckernels
except ImportError:
    _ckernels = None


def _poly(rng, nvars, nterms, deg):
    out = {}
    while len(out) < nterms:
        e = [0] * nvars
        for _ in range(rng.randint(0, deg)):
            e[rng.randrange(nvars)] += 1
        out[tuple(e)] = rng.randint(-9, 9) or 1
    return out


def cases(rng):
    a, b = _poly(rng, 7, 60, 5), _poly(rng, 7, 60, 5)
    rows = [([rng.randint(-3, 3) for _ in range(5)], rng.randint(0, 6)) for _ in range(6)]
    pts = _pykernels.box_points([0] * 5, [None] * 5, [1, 1, 2, 2, 3], 12)
    gpts = [tuple(rng.randint(0, 6) for _ in range(5)) for _ in range(2000)]
    return {
        "poly_mul_terms (60x60 terms, 7 vars)": lambda m: m.poly_mul_terms(a, b),
        "box_points (5 cols, degree 12)":
            lambda m: m.box_points([0] * 5, [None] * 5, [1, 1, 2, 2, 3], 12),
        "filter_points (%d points, 6 rows)" % len(pts): lambda m: m.filter_points(pts, rows),
        "greedy_residual (2000 calls)":
            lambda m: [m.greedy_residual(p, (1, 2, 1, 3, 2), 3) for p in gpts],
    }


PIPELINES = [
    ["invariants", "--blocks", "2,2,3", "--split", "2,2|3", "--verify", "--max-degree", "5"],
    ["equivariants", "--blocks", "2,3", "--order", "a,b,d", "--verify"],
]


def _run(argv, pure):
    env = dict(os.environ)
    if pure:
        env["NILBOX_PURE_PYTHON"] = "1"
    else:
        env.pop("NILBOX_PURE_PYTHON", None)
    t0 = time.perf_counter()
    subprocess.run([sys.executable, "-m", "nilbox", *argv], env=env, check=True,
                   stdout=subprocess.DEVNULL)
    return time.perf_counter() - t0


def pipelines(repeat):
    print()
    print(f"{'command':66} {'python s':>9} {'cython s':>9}")
    for argv in PIPELINES:
        tp = min(_run(argv, True) for _ in range(repeat))
        tc = min(_run(argv, False) for _ in range(repeat)) if _ckernels else float("nan")
        print(f"{' '.join(argv):66} {tp:9.2f} {tc:9.2f}")


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--repeat", type=int, default=5)
    ap.add_argument("--pipeline", action="store_true")
    args = ap.parse_args()
    rng = random.Random(1)
    print(f"active backend: {BACKEND}")
    if _ckernels is None:
        print("compiled kernels not built; only the Python timings are shown")
    print(f"{'kernel':42} {'python ms':>10} {'cython ms':>10} {'speedup':>8}")
    for name, fn in cases(rng).items():
        tp = min(timeit.repeat(lambda: fn(_pykernels), number=1, repeat=args.repeat)) * 1e3
        if _ckernels is None:
            print(f"{name:42} {tp:10.2f} {'-':>10} {'-':>8}")
            continue
        assert fn(_pykernels) == fn(_ckernels), name
        tc = min(timeit.repeat(lambda: fn(_ckernels), number=1, repeat=args.repeat)) * 1e3
        print(f"{name:42} {tp:10.2f} {tc:10.2f} {tp / tc:7.1f}x")
    if args.pipeline:
        pipelines(min(args.repeat, 3))


if __name__ == "__main__":
    main()
