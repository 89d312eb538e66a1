"""Unimodular changes of variables linking multimodular and L-natural convex functions.

``g(p) = f(D p)`` and ``f(x) = g(D^{-1} x)`` with the bidiagonal ``D``;
the liftings to ``n + 1`` variables turn both properties into plain
submodularity.
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .core import IntBox, QuadraticFunction, TableFunction


def bidiagonal_D(n: int) -> np.ndarray:
    """Ones on the diagonal, ``-1`` directly below it."""
    if n < 1:
        raise ValueError("n must be positive")
    return np.eye(n, dtype=np.int64) - np.eye(n, k=-1, dtype=np.int64)


def inverse_D(n: int) -> np.ndarray:
    """Lower-triangular all-ones matrix, the integral inverse of :func:`bidiagonal_D`."""
    if n < 1:
        raise ValueError("n must be positive")
    return np.tril(np.ones((n, n), dtype=np.int64))


def reversal_R(n: int) -> np.ndarray:
    if n < 1:
        raise ValueError("n must be positive")
    return np.fliplr(np.eye(n, dtype=np.int64)).copy()


def reversal_T(n: int) -> np.ndarray:
    """``D^{-1} R D``: last column all ones, ``-1`` on the anti-diagonal ``(i, n-i)``.

    For ``n = 1`` this is ``[[1]]``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    t = np.zeros((n, n), dtype=np.int64)
    t[:, n - 1] = 1
    for i in range(1, n):
        t[i - 1, n - i - 1] = -1
    return t


def image_box(matrix: np.ndarray, box: IntBox, offset=None) -> IntBox:
    """Bounding box of ``{M x + offset : x in box}``."""
    m = np.asarray(matrix, dtype=np.int64)
    lo = np.asarray(box.lower, dtype=np.int64)
    hi = np.asarray(box.upper, dtype=np.int64)
    low = np.minimum(m * lo, m * hi).sum(axis=1)
    high = np.maximum(m * lo, m * hi).sum(axis=1)
    if offset is not None:
        low = low + np.asarray(offset, dtype=np.int64)
        high = high + np.asarray(offset, dtype=np.int64)
    return IntBox(tuple(low), tuple(high))


def pullback(f: TableFunction, box: IntBox, matrix, offset=None) -> TableFunction:
    """Tabulate ``p -> f(M p + offset)`` on ``box``; points mapped outside ``f``'s box give ``+inf``."""
    m = np.asarray(matrix, dtype=np.int64)
    if m.shape != (f.dim, box.dim):
        raise ValueError(f"matrix shape {m.shape} does not map Z^{box.dim} into Z^{f.dim}")
    x = m @ box.grid()
    if offset is not None:
        x = x + np.asarray(offset, dtype=np.int64)[:, None]
    lo = np.asarray(f.box.lower, dtype=np.int64)[:, None]
    hi = np.asarray(f.box.upper, dtype=np.int64)[:, None]
    inside = np.all((x >= lo) & (x <= hi), axis=0)
    flat = np.zeros(x.shape[1], dtype=np.int64)
    flat[inside] = np.ravel_multi_index(tuple(x[:, inside] - lo), f.box.shape)
    src_num = f.num.ravel()
    src_fin = f.finite.ravel()
    fin = inside & src_fin[flat]
    num = np.where(fin, src_num[flat], 0)
    return TableFunction(box, num, f.den, fin)


def to_lnat(f: TableFunction) -> TableFunction:
    """``g(p) = f(p_1, p_2 - p_1, ..., p_n - p_{n-1})`` on the image of ``box(f)``."""
    n = f.dim
    return pullback(f, image_box(inverse_D(n), f.box), bidiagonal_D(n))


def from_lnat(g: TableFunction) -> TableFunction:
    """``f(x) = g(x_1, x_1 + x_2, ..., x_1 + ... + x_n)`` on the image of ``box(g)``."""
    n = g.dim
    return pullback(g, image_box(bidiagonal_D(n), g.box), inverse_D(n))


def reverse_lnat(g: TableFunction) -> TableFunction:
    """``p -> g(-(p_{n-1}, ..., p_1, 0) + p_n * 1)``, i.e. ``g(T p)``.

    This is what reversing the variable order of ``f`` does on the
    L-natural side: ``to_lnat(reverse_vars(f)) == reverse_lnat(to_lnat(f))``.
    """
    t = reversal_T(g.dim)
    # T is an involution, so the preimage of box(g) is bounded by T box(g)
    return pullback(g, image_box(t, g.box), t)


def _default_window(spans) -> tuple[int, int]:
    # translation invariance of the lift means pairs whose 0-th coordinates
    # differ by more than the largest span are comparable (trivially fine)
    return 0, max(1, max(spans))


def lift_multimodular(f: TableFunction, window: tuple[int, int] | None = None) -> TableFunction:
    """``(x_0, x) -> f(x_1 - x_0, x_2 - x_1, ..., x_n - x_{n-1})`` on a finite window.

    ``x_0`` ranges over ``window``; the other coordinates cover every point
    whose difference pattern lies in ``box(f)``.  The default window is wide
    enough for the pair sweep of :func:`~multimodular.checks.is_submodular`
    to be exact for the infinite lift.
    """
    lo = np.cumsum(f.box.lower)
    hi = np.cumsum(f.box.upper)
    a, b = window if window is not None else _default_window(hi - lo)
    if a > b:
        raise ValueError("empty lifting window")
    box = IntBox((a, *(a + lo)), (b, *(b + hi)))
    # x_k = x_0 + (y_1 + ... + y_k) for y in dom f
    dom = np.argwhere(f.finite) + np.asarray(f.box.lower)
    return _lift_scatter(f, box, np.cumsum(dom, axis=1), a, b)


def lift_lnat(g: TableFunction, window: tuple[int, int] | None = None) -> TableFunction:
    """``(p_0, p) -> g(p - p_0 * 1)`` on a finite window of ``p_0``.

    Default window as in :func:`lift_multimodular`, sized from the side
    lengths of ``box(g)``.
    """
    lo = np.asarray(g.box.lower)
    hi = np.asarray(g.box.upper)
    a, b = window if window is not None else _default_window(hi - lo)
    if a > b:
        raise ValueError("empty lifting window")
    box = IntBox((a, *(a + lo)), (b, *(b + hi)))
    dom = np.argwhere(g.finite) + lo
    return _lift_scatter(g, box, dom, a, b)


def _lift_scatter(f: TableFunction, box: IntBox, rel: np.ndarray, a: int, b: int) -> TableFunction:
    """Place ``f``'s finite values at ``(t, t + rel)`` for every ``t`` in ``a..b``.

    The lifted box is mostly ``+inf``, so writing the domain copies is far
    cheaper than evaluating a pullback on every cell.
    """
    vals = f.num[f.finite]
    num = np.zeros(box.shape, dtype=np.int64)
    fin = np.zeros(box.shape, dtype=bool)
    base = np.asarray(box.lower, dtype=np.int64)
    for t in range(a, b + 1):
        pts = np.hstack([np.full((rel.shape[0], 1), t, dtype=np.int64), rel + t]) - base
        idx = tuple(pts.T)
        num[idx] = vals
        fin[idx] = True
    return TableFunction(box, num, f.den, fin)


def _matmul(a, b):
    return [[sum((x * y for x, y in zip(row, col)), Fraction(0)) for col in zip(*b)] for row in a]


def conjugate_quadratic(A: QuadraticFunction) -> QuadraticFunction:
    """``D^T A D`` (and ``D^T c`` for a linear term): the quadratic ``g(p) = f(D p)``."""
    n = A.dim
    d = bidiagonal_D(n).tolist()
    dt = [list(r) for r in zip(*d)]
    b = _matmul(_matmul(dt, A.matrix), d)
    lin = None
    if A.linear is not None:
        lin = [sum((dt[i][j] * A.linear[j] for j in range(n)), Fraction(0)) for i in range(n)]
    return QuadraticFunction(b, lin)
