"""Slow, obviously-correct reference implementations used by the tests.

Everything here works point by point through ``f(x)`` with Python
Fractions, sharing no code with the vectorized checkers.
"""

from __future__ import annotations

import itertools
from fractions import Fraction

from multimodular.core import INF, IntBox


def add(*vals):
    if any(v == INF for v in vals):
        return INF
    return sum(vals, Fraction(0))


def vadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def dirs_F(n):
    e = lambda i: tuple(1 if k == i else 0 for k in range(1, n + 1))  # noqa: E731
    return [tuple(a - b for a, b in zip(e(i), e(i + 1))) for i in range(n + 1)]


def dom(f):
    return [x for x in f.box.points() if f(x) != INF]


def local_multimodular(f):
    """Inequality (2) at every z in dom f, nothing else."""
    F = dirs_F(f.dim)
    for z in dom(f):
        for d, d2 in itertools.combinations(F, 2):
            lhs = add(f(vadd(z, d)), f(vadd(z, d2)))
            if lhs == INF:
                continue
            if lhs < add(f(z), f(vadd(vadd(z, d), d2))):
                return False
    return True


def D_apply(p):
    return tuple(p[0] if i == 0 else p[i] - p[i - 1] for i in range(len(p)))


def Dinv_apply(x):
    out, s = [], 0
    for v in x:
        s += v
        out.append(s)
    return tuple(out)


def ceil_floor(p, q):
    s = [a + b for a, b in zip(p, q)]
    return tuple(-((-t) // 2) for t in s), tuple(t // 2 for t in s)


def midpoint_convex(g, points):
    """Discrete midpoint convexity of ``g`` over all pairs from ``points``."""
    pts = [p for p in points if g(p) != INF]
    for p, q in itertools.combinations(pts, 2):
        up, down = ceil_floor(p, q)
        if add(g(p), g(q)) < add(g(up), g(down)):
            return False
    return True


def multimodular_global(f):
    """Multimodularity through midpoint convexity of ``p -> f(D p)``."""
    g = lambda p: f(D_apply(p))  # noqa: E731
    return midpoint_convex(g, [Dinv_apply(x) for x in dom(f)])


def submodular(f, points=None):
    pts = [x for x in (points if points is not None else f.box.points()) if f(x) != INF]
    for x, y in itertools.combinations(pts, 2):
        join = tuple(map(max, x, y))
        meet = tuple(map(min, x, y))
        if add(f(x), f(y)) < add(f(join), f(meet)):
            return False
    return True


def brute_min_value(f):
    return min(f(x) for x in f.box.points())


def local_min_T(f, x, dirs):
    """Is ``x`` a local minimizer over ``x +/- d``, ``d`` in ``dirs``?"""
    v = f(x)
    for d in dirs:
        for s in (1, -1):
            if f(tuple(a + s * b for a, b in zip(x, d))) < v:
                return False
    return True


def convolve(f1, f2):
    best = {}
    for y in dom(f1):
        for z in dom(f2):
            x = vadd(y, z)
            v = f1(y) + f2(z)
            if x not in best or v < best[x]:
                best[x] = v
    return best


def quad_value(A, x, c=None):
    n = len(x)
    v = sum((Fraction(A[i][j]) * x[i] * x[j] for i in range(n) for j in range(n)), Fraction(0))
    if c is not None:
        v += sum((Fraction(ci) * xi for ci, xi in zip(c, x)), Fraction(0))
    return v


def box_points(lo, hi, n):
    return list(IntBox.cube(lo, hi, n).points())
