"""Pure-Python versions of the hot loops.

The compiled module ``_ckernels`` exports the same names with the same
semantics; tests run both against each other.
"""


def poly_mul_terms(a, b):
    """Product of two term dicts keyed by equal-length exponent tuples."""
    if len(a) < len(b):
        a, b = b, a
    out = {}
    get = out.get
    for eb, cb in b.items():
        for ea, ca in a.items():
            e = tuple([x + y for x, y in zip(ea, eb)])
            v = get(e, 0) + ca * cb
            if v:
                out[e] = v
            else:
                out.pop(e, None)
    return out


def box_points(lower, upper, degrees, max_degree):
    """Integer points K with lower <= K <= upper and sum(degrees*K) <= max_degree.

    ``upper`` entries may be None for an unbounded column. Columns of degree
    zero must have a finite upper bound. Points come out in lex order.
    """
    n = len(lower)
    out = []
    if n == 0:
        if max_degree >= 0:
            out.append(())
        return out
    base = 0
    for lo, d in zip(lower, degrees):
        base += lo * d
    if base > max_degree:
        return out
    caps = []
    for lo, hi, d in zip(lower, upper, degrees):
        if d <= 0:
            if hi is None:
                raise ValueError("unbounded column with zero degree")
            caps.append(hi)
        else:
            c = lo + (max_degree - base) // d
            caps.append(c if hi is None else min(c, hi))
    cur = list(lower)
    budget = max_degree - base

    def rec(i, budget):
        if i == n:
            out.append(tuple(cur))
            return
        lo, d = lower[i], degrees[i]
        top = caps[i]
        if d > 0:
            top = min(top, lo + budget // d)
        for v in range(lo, top + 1):
            cur[i] = v
            rec(i + 1, budget - (v - lo) * d)
        cur[i] = lo

    if any(lo > c for lo, c in zip(lower, caps)):
        return out
    rec(0, budget)
    return out


def filter_points(points, rows):
    """Keep the points p with sum(c*p) + const >= 0 for every (coeffs, const)."""
    out = []
    for p in points:
        for coeffs, const in rows:
            s = const
            for c, x in zip(coeffs, p):
                s += c * x
            if s < 0:
                break
        else:
            out.append(p)
    return out


def greedy_residual(point, weights, s):
    """Greedy removal used by boosting.

    Walks the columns in order and removes as many units from each as
    possible while keeping ``s <= sum(weights*remaining)``. Returns the
    remaining vector.
    """
    rem = list(point)
    total = 0
    for w, k in zip(weights, rem):
        total += w * k
    for i, w in enumerate(weights):
        if w <= 0 or rem[i] == 0:
            continue
        slack = total - s
        take = min(rem[i], slack // w) if slack >= 0 else 0
        rem[i] -= take
        total -= take * w
    return tuple(rem)
