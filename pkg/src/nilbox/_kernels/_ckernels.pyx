# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled versions of the hot loops in ``_pykernels``.

Exponents and lattice coordinates are C integers; coefficients stay
Python objects (ints or Fractions) so arithmetic remains exact.
"""

from libc.stdlib cimport malloc, free

from . import _pykernels


def poly_mul_terms(dict a, dict b):
    """Product of two term dicts keyed by equal-length exponent tuples."""
    if len(a) < len(b):
        a, b = b, a
    cdef dict out = {}
    if not a or not b:
        return out
    cdef Py_ssize_t n = len(next(iter(a)))
    cdef Py_ssize_t na = len(a), i, j
    cdef long *ea = <long *> malloc(na * n * sizeof(long))
    cdef long *eb = <long *> malloc(n * sizeof(long))
    if ea == NULL or eb == NULL:
        free(ea)
        free(eb)
        raise MemoryError()
    cdef list keys_a = list(a.keys())
    cdef list coef_a = list(a.values())
    cdef object key, e, v, ca, cb
    cdef tuple t
    try:
        for i in range(na):
            t = keys_a[i]
            for j in range(n):
                ea[i * n + j] = t[j]
        for key, cb in b.items():
            t = key
            for j in range(n):
                eb[j] = t[j]
            for i in range(na):
                e = tuple([ea[i * n + j] + eb[j] for j in range(n)])
                ca = coef_a[i]
                v = out.get(e, 0) + ca * cb
                if v:
                    out[e] = v
                else:
                    out.pop(e, None)
    finally:
        free(ea)
        free(eb)
    return out


cdef void _rec(Py_ssize_t i, Py_ssize_t n, long budget, long *lower, long *caps,
               long *deg, long *cur, list out):
    cdef long v, top
    if i == n:
        out.append(tuple([cur[j] for j in range(n)]))
        return
    top = caps[i]
    if deg[i] > 0 and lower[i] + budget // deg[i] < top:
        top = lower[i] + budget // deg[i]
    v = lower[i]
    while v <= top:
        cur[i] = v
        _rec(i + 1, n, budget - (v - lower[i]) * deg[i], lower, caps, deg, cur, out)
        v += 1
    cur[i] = lower[i]


def box_points(lower, upper, degrees, long max_degree):
    """Integer points K with lower <= K <= upper and sum(degrees*K) <= max_degree."""
    cdef Py_ssize_t n = len(lower), i
    cdef list out = []
    if n == 0:
        if max_degree >= 0:
            out.append(())
        return out
    cdef long base = 0
    for i in range(n):
        base += lower[i] * degrees[i]
    if base > max_degree:
        return out
    cdef long *buf = <long *> malloc(4 * n * sizeof(long))
    if buf == NULL:
        raise MemoryError()
    cdef long *lo = buf
    cdef long *caps = buf + n
    cdef long *deg = buf + 2 * n
    cdef long *cur = buf + 3 * n
    cdef long c
    try:
        for i in range(n):
            lo[i] = lower[i]
            deg[i] = degrees[i]
            cur[i] = lo[i]
            if deg[i] <= 0:
                if upper[i] is None:
                    raise ValueError("unbounded column with zero degree")
                caps[i] = upper[i]
            else:
                c = lo[i] + (max_degree - base) // deg[i]
                caps[i] = c if upper[i] is None else min(c, <long> upper[i])
            if lo[i] > caps[i]:
                return out
        _rec(0, n, max_degree - base, lo, caps, deg, cur, out)
    finally:
        free(buf)
    return out


def filter_points(points, rows):
    """Keep the points p with sum(c*p) + const >= 0 for every (coeffs, const)."""
    cdef Py_ssize_t nr = len(rows), n, i, j
    if nr == 0:
        return list(points)
    n = len(rows[0][0])
    cdef long long *mat = <long long *> malloc(nr * (n + 1) * sizeof(long long))
    cdef long long *p = <long long *> malloc((n + 1) * sizeof(long long))
    cdef long long acc
    cdef list out = []
    cdef bint ok
    if mat == NULL or p == NULL:
        free(mat)
        free(p)
        raise MemoryError()
    try:
        try:
            for i in range(nr):
                coeffs, const = rows[i]
                for j in range(n):
                    mat[i * (n + 1) + j] = coeffs[j]
                mat[i * (n + 1) + n] = const
        except (OverflowError, TypeError):
            return _pykernels.filter_points(points, rows)
        for pt in points:
            for j in range(n):
                p[j] = pt[j]
            ok = True
            for i in range(nr):
                acc = mat[i * (n + 1) + n]
                for j in range(n):
                    acc += mat[i * (n + 1) + j] * p[j]
                if acc < 0:
                    ok = False
                    break
            if ok:
                out.append(pt)
    finally:
        free(mat)
        free(p)
    return out


def greedy_residual(point, weights, long s):
    """Greedy removal used by boosting; see the Python version."""
    cdef Py_ssize_t n = len(point), i
    cdef list rem = list(point)
    cdef long total = 0, w, k, take, slack
    for i in range(n):
        total += <long> weights[i] * <long> rem[i]
    for i in range(n):
        w = weights[i]
        k = rem[i]
        if w <= 0 or k == 0:
            continue
        slack = total - s
        if slack >= 0:
            take = slack // w
            if take > k:
                take = k
        else:
            take = 0
        rem[i] = k - take
        total -= take * w
    return tuple(rem)
