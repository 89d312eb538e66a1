"""Operations on functions: changes of variables, value arithmetic,
restriction, projection, infimal convolution and Minkowski sums.

Subsets and permutations use 1-based coordinate indices.  Projection and
convolution minimize over the stored boxes, which equals minimization over
all of ``Z^n`` because every table is ``+inf`` outside its box.
"""

from __future__ import annotations

import math
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

from . import kernels
from .core import (
    ConstructionError,
    IndicatorSet,
    IntBox,
    QuadraticFunction,
    TableFunction,
    _check_bound,
    to_extended,
)


def _coords(U: Iterable[int], n: int) -> list[int]:
    idx = sorted({int(u) for u in U})
    if not idx:
        raise ValueError("subset must be non-empty")
    if idx[0] < 1 or idx[-1] > n:
        raise ValueError(f"subset {idx} is not contained in 1..{n}")
    return idx


def is_interval(U: Iterable[int]) -> bool:
    idx = sorted(set(U))
    return bool(idx) and idx[-1] - idx[0] + 1 == len(idx)


# -- changes of variables ---------------------------------------------------


def shift(f: TableFunction, b: Sequence[int]) -> TableFunction:
    """``x -> f(x + b)``."""
    b = [int(v) for v in b]
    if len(b) != f.dim:
        raise ValueError("shift vector has the wrong dimension")
    box = IntBox(tuple(lo - v for lo, v in zip(f.box.lower, b)), tuple(hi - v for hi, v in zip(f.box.upper, b)))
    return TableFunction(box, f.num, f.den, f.finite)


def negate_vars(f: TableFunction) -> TableFunction:
    """``x -> f(-x)``."""
    box = IntBox(tuple(-v for v in f.box.upper), tuple(-v for v in f.box.lower))
    return TableFunction(box, np.flip(f.num), f.den, np.flip(f.finite))


def permute_vars(f: TableFunction, perm: Sequence[int]) -> TableFunction:
    """``x -> f(x_{s(1)}, ..., x_{s(n)})`` for a permutation ``s`` given as 1-based images."""
    s = [int(v) - 1 for v in perm]
    n = f.dim
    if sorted(s) != list(range(n)):
        raise ValueError(f"{list(perm)} is not a permutation of 1..{n}")
    # output axis k carries input coordinate s^{-1}(k)
    inv = [0] * n
    for i, k in enumerate(s):
        inv[k] = i
    box = IntBox(tuple(f.box.lower[a] for a in inv), tuple(f.box.upper[a] for a in inv))
    return TableFunction(box, np.transpose(f.num, inv), f.den, np.transpose(f.finite, inv))


def reverse_vars(f: TableFunction) -> TableFunction:
    """``(x_1, ..., x_n) -> f(x_n, ..., x_1)``."""
    return permute_vars(f, range(f.dim, 0, -1))


def scale_vars(f: TableFunction, s: int) -> TableFunction:
    """``x -> f(s x)`` for a positive integer ``s``."""
    s = int(s)
    if s < 1:
        raise ValueError("scaling factor must be a positive integer")
    lo = tuple(-((-a) // s) for a in f.box.lower)
    hi = tuple(b // s for b in f.box.upper)
    if any(a > b for a, b in zip(lo, hi)):
        raise ConstructionError(f"no point x with {s}x in {f.box}")
    sl = tuple(slice(s * a - l0, s * b - l0 + 1, s) for a, b, l0 in zip(lo, hi, f.box.lower))
    return TableFunction(IntBox(lo, hi), f.num[sl], f.den, f.finite[sl])


# -- arithmetic on values ---------------------------------------------------


def scale_values(f: TableFunction, a) -> TableFunction:
    """``x -> a f(x)`` for rational ``a >= 0``.

    ``0 * (+inf)`` is taken to be ``+inf``, so the effective domain never
    changes, even for ``a = 0``.
    """
    a = to_extended(a)
    if not isinstance(a, Fraction) or a < 0:
        raise ValueError("scale factor must be a finite rational >= 0")
    if a == 0:
        return TableFunction(f.box, np.zeros_like(f.num), 1, f.finite)
    _check_bound(int(np.abs(f.num).max()) * a.numerator)
    return TableFunction(f.box, f.num * a.numerator, f.den * a.denominator, f.finite)


def add_linear(f: TableFunction, c: Sequence) -> TableFunction:
    """``x -> f(x) + <c, x>``."""
    c = [to_extended(v) for v in c]
    if len(c) != f.dim:
        raise ValueError("linear term has the wrong dimension")
    den = f.den
    for v in c:
        den = math.lcm(den, v.denominator)
    cs = [int(v * den) for v in c]
    reach = max(max(map(abs, f.box.lower)), max(map(abs, f.box.upper)))
    base = f.scaled_numerators(den)
    _check_bound(int(np.abs(base).max()) + sum(map(abs, cs)) * reach)
    lin = (np.asarray(cs, dtype=np.int64) @ f.box.grid()).reshape(f.box.shape)
    return TableFunction(f.box, base + lin, den, f.finite)


def _crop(f: TableFunction, box: IntBox):
    sl = tuple(slice(a - l0, b - l0 + 1) for a, b, l0 in zip(box.lower, box.upper, f.box.lower))
    return f.num[sl], f.finite[sl]


def add(f1: TableFunction, f2: TableFunction) -> TableFunction:
    """Pointwise sum; the result lives on the intersection of the boxes."""
    if f1.dim != f2.dim:
        raise ValueError("dimension mismatch")
    box = f1.box.intersect(f2.box)
    if box is None:
        raise ConstructionError("boxes do not intersect; the sum is +inf everywhere")
    den = math.lcm(f1.den, f2.den)
    a_num, a_fin = _crop(f1, box)
    b_num, b_fin = _crop(f2, box)
    fin = a_fin & b_fin
    if not fin.any():
        raise ConstructionError("effective domains do not intersect")
    a_num = a_num * (den // f1.den)
    b_num = b_num * (den // f2.den)
    _check_bound(int(np.abs(a_num).max()) + int(np.abs(b_num).max()))
    return TableFunction(box, np.where(fin, a_num + b_num, 0), den, fin)


# -- restriction and projection -------------------------------------------


def restrict(f: TableFunction, U: Iterable[int]) -> TableFunction:
    """``y -> f(y, 0)``: coordinates outside ``U`` are fixed to zero.

    The kept coordinates stay in their original order, so for ``U = {1, 3}``
    the argument ``(y_1, y_3)`` is evaluated as ``f(y_1, 0, y_3)``.
    """
    keep = _coords(U, f.dim)
    idx = []
    for k in range(f.dim):
        if k + 1 in keep:
            idx.append(slice(None))
        else:
            lo, hi = f.box.lower[k], f.box.upper[k]
            if not lo <= 0 <= hi:
                raise ConstructionError(f"coordinate {k + 1} cannot be 0 inside {f.box}")
            idx.append(-lo)
    idx = tuple(idx)
    box = IntBox(tuple(f.box.lower[k - 1] for k in keep), tuple(f.box.upper[k - 1] for k in keep))
    return TableFunction(box, f.num[idx], f.den, f.finite[idx])


def project(f: TableFunction, U: Iterable[int]) -> TableFunction:
    """Partial minimization ``y -> min_z f(y, z)`` over the coordinates outside ``U``."""
    keep = _coords(U, f.dim)
    if len(keep) == f.dim:
        raise ValueError("projection needs a proper subset of the coordinates")
    drop = tuple(k for k in range(f.dim) if k + 1 not in keep)
    vals = np.where(f.finite, f.num, kernels._BIG)
    num = vals.min(axis=drop)
    fin = f.finite.any(axis=drop)
    box = IntBox(tuple(f.box.lower[k - 1] for k in keep), tuple(f.box.upper[k - 1] for k in keep))
    return TableFunction(box, np.where(fin, num, 0), f.den, fin)


def sweep_out(A: QuadraticFunction, k: int) -> QuadraticFunction:
    """Eliminate coordinate ``k`` (1-based) of ``x^T A x`` by a Schur complement.

    ``a_ij - a_ik a_kj / a_kk`` for ``i, j != k``; this is the minimum over a
    real-valued ``x_k``.
    """
    n = A.dim
    if not 1 <= k <= n:
        raise ValueError(f"index {k} outside 1..{n}")
    if n == 1:
        raise ValueError("cannot eliminate the only variable")
    if A.linear is not None:
        raise ValueError("sweep-out is defined for pure quadratic forms")
    a = A.matrix
    p = k - 1
    if a[p][p] <= 0:
        raise ValueError(f"pivot a_{k}{k} = {a[p][p]} is not positive; the minimum is unbounded or degenerate")
    rest = [i for i in range(n) if i != p]
    return QuadraticFunction([[a[i][j] - a[i][p] * a[p][j] / a[p][p] for j in rest] for i in rest])


# -- convolution ------------------------------------------------------------


def convolve(f1: TableFunction, f2: TableFunction) -> TableFunction:
    """Infimal convolution ``x -> min{f1(y) + f2(x - y)}`` on the Minkowski-sum box."""
    if f1.dim != f2.dim:
        raise ValueError("dimension mismatch")
    den = math.lcm(f1.den, f2.den)
    n1, n2 = f1.scaled_numerators(den), f2.scaled_numerators(den)
    _check_bound(int(np.abs(n1).max()) + int(np.abs(n2).max()))
    num, fin = kernels.convolve_min(n1, f1.finite, n2, f2.finite)
    box = IntBox(
        tuple(a + b for a, b in zip(f1.box.lower, f2.box.lower)),
        tuple(a + b for a, b in zip(f1.box.upper, f2.box.upper)),
    )
    return TableFunction(box, num, den, fin)


def minkowski_sum(S1: IndicatorSet, S2: IndicatorSet) -> IndicatorSet:
    if S1.dim != S2.dim:
        raise ValueError("dimension mismatch")
    return IndicatorSet(sorted({tuple(a + b for a, b in zip(y, z)) for y in S1.points for z in S2.points}))
