"""Hot sweeps, in a numba flavour and a vectorized numpy flavour.

Both flavours take flat int64 numerator arrays with a separate finiteness
mask and return the *first* violation in the same lexicographic sweep
order, so verdicts and witnesses never depend on the backend.  The active
backend is picked at import (``DCA_JIT``) and can be switched with
:func:`use_backend`.
"""

from __future__ import annotations

import contextlib

import numpy as np

from ._jit import HAVE_NUMBA, njit, prange

# int64 stand-in for +inf inside numpy reductions: stored values are below
# 2**60, so finite sums of two stay below _INF_CUT and sentinel sums above it.
_BIG = np.int64(2**62)
_INF_CUT = np.int64(2**61)

_backend = "numba" if HAVE_NUMBA else "numpy"


def get_backend() -> str:
    return _backend


def available_backends() -> tuple[str, ...]:
    return ("numba", "numpy") if HAVE_NUMBA else ("numpy",)


def set_backend(name: str) -> None:
    global _backend
    if name not in available_backends():
        raise ValueError(f"backend {name!r} not available (have {available_backends()})")
    _backend = name


@contextlib.contextmanager
def use_backend(name: str):
    prev = _backend
    set_backend(name)
    try:
        yield
    finally:
        set_backend(prev)


def flat_strides(shape) -> np.ndarray:
    """Element strides of a C-ordered array of ``shape``."""
    strides = np.ones(len(shape), dtype=np.int64)
    for k in range(len(shape) - 2, -1, -1):
        strides[k] = strides[k + 1] * shape[k + 1]
    return strides


def pad(num: np.ndarray, fin: np.ndarray, width: int = 1):
    """Surround a table with ``width`` layers of ``+inf``; returns flat arrays."""
    num_p = np.pad(num, width, constant_values=0)
    fin_p = np.pad(fin, width, constant_values=False)
    return num_p.ravel(), fin_p.ravel(), num_p.shape


def padded_positions(fin: np.ndarray, width: int, padded_shape) -> np.ndarray:
    """Flat positions (in the padded array) of the finite entries, lexicographic."""
    offs = np.argwhere(fin) + width
    return (offs @ flat_strides(padded_shape)).astype(np.int64)


# ---------------------------------------------------------------------------
# four-point inequalities  f(z+a) + f(z+b) >= f(z+c) + f(z+d)
# ---------------------------------------------------------------------------


@njit(cache=True)
def _four_point_nb(num, fin, starts, off_a, off_b, off_c, off_d):
    for s in range(starts.shape[0]):
        z = starts[s]
        for k in range(off_a.shape[0]):
            pa = z + off_a[k]
            pb = z + off_b[k]
            if not (fin[pa] and fin[pb]):
                continue
            pc = z + off_c[k]
            pd = z + off_d[k]
            if not (fin[pc] and fin[pd]):
                return s, k
            if num[pa] + num[pb] < num[pc] + num[pd]:
                return s, k
    return -1, -1


def _four_point_np(num, fin, starts, off_a, off_b, off_c, off_d):
    if starts.size == 0 or off_a.size == 0:
        return -1, -1
    block = max(1, 4_000_000 // off_a.size)
    for lo in range(0, starts.size, block):
        z = starts[lo:lo + block, None]
        pa, pb, pc, pd = z + off_a, z + off_b, z + off_c, z + off_d
        lhs_finite = fin[pa] & fin[pb]
        rhs_finite = fin[pc] & fin[pd]
        bad = lhs_finite & (~rhs_finite | (num[pa] + num[pb] < num[pc] + num[pd]))
        if bad.any():
            s, k = np.unravel_index(int(np.argmax(bad)), bad.shape)
            return lo + int(s), int(k)
    return -1, -1


def four_point_first_violation(num, fin, starts, off_a, off_b, off_c, off_d):
    """First ``(start index, inequality index)`` that fails, or ``(-1, -1)``.

    ``starts`` are flat positions in a padded table; the ``k``-th inequality
    reads ``f(z+a) + f(z+b) >= f(z+c) + f(z+d)`` with the flat offsets at
    position ``k``.  A finite left side against an infinite right side fails,
    an infinite left side never does.
    """
    fn = _four_point_nb if _backend == "numba" else _four_point_np
    s, k = fn(num, fin, starts, off_a, off_b, off_c, off_d)
    return int(s), int(k)


# ---------------------------------------------------------------------------
# all-pairs sweeps over the effective domain
# ---------------------------------------------------------------------------


@njit(cache=True, parallel=True)
def _midpoint_nb(coords, vals, num, fin, strides):
    m, n = coords.shape
    first = np.full(m, -1, dtype=np.int64)
    for j in prange(m):
        for i in range(j):
            ic = 0
            fl = 0
            for k in range(n):
                t = coords[i, k] + coords[j, k]
                ic += ((t + 1) // 2) * strides[k]
                fl += (t // 2) * strides[k]
            if (not fin[ic]) or (not fin[fl]) or vals[i] + vals[j] < num[ic] + num[fl]:
                first[j] = i
                break
    return first


@njit(cache=True, parallel=True)
def _lattice_nb(coords, vals, num, fin, strides):
    m, n = coords.shape
    first = np.full(m, -1, dtype=np.int64)
    for j in prange(m):
        for i in range(j):
            up = 0
            lo = 0
            for k in range(n):
                a = coords[i, k]
                b = coords[j, k]
                if a >= b:
                    up += a * strides[k]
                    lo += b * strides[k]
                else:
                    up += b * strides[k]
                    lo += a * strides[k]
            if (not fin[up]) or (not fin[lo]) or vals[i] + vals[j] < num[up] + num[lo]:
                first[j] = i
                break
    return first


def _pairs_np(coords, vals, num, fin, strides, combine):
    m = coords.shape[0]
    first = np.full(m, -1, dtype=np.int64)
    if m < 2:
        return first
    block = max(1, 2_000_000 // max(m * coords.shape[1], 1))
    for start in range(0, m, block):
        rows = np.arange(start, min(m, start + block))
        # only partners i < j matter; the block's last row bounds them
        width = int(rows[-1])
        if width == 0:
            continue
        a = coords[rows][:, None, :]
        b = coords[None, :width, :]
        hi, lo = combine(a, b)
        hi_idx = hi @ strides
        lo_idx = lo @ strides
        bad = (~fin[hi_idx]) | (~fin[lo_idx]) | (vals[rows][:, None] + vals[None, :width] < num[hi_idx] + num[lo_idx])
        bad &= np.arange(width)[None, :] < rows[:, None]
        hit = bad.any(axis=1)
        first[rows[hit]] = np.argmax(bad[hit], axis=1)
    return first


def _midpoint_combine(a, b):
    t = a + b
    return (t + 1) // 2, t // 2


def _lattice_combine(a, b):
    return np.maximum(a, b), np.minimum(a, b)


def _first_pair(first: np.ndarray):
    # first[j] = smallest i < j violating with j; the sweep runs j-major
    hit = np.nonzero(first >= 0)[0]
    if hit.size == 0:
        return -1, -1
    j = int(hit[0])
    return int(first[j]), j


def midpoint_first_violation(coords, vals, num, fin, strides):
    """First pair ``i < j`` of domain points breaking discrete midpoint convexity.

    Pairs are swept with ``j`` outermost (``(0,1), (0,2), (1,2), (0,3), ...``).

    ``coords`` are zero-based box offsets of the finite points (lexicographic),
    ``vals`` their numerators; ``num``/``fin`` are the flat unpadded table.
    """
    if _backend == "numba":
        first = _midpoint_nb(coords, vals, num, fin, strides)
    else:
        first = _pairs_np(coords, vals, num, fin, strides, _midpoint_combine)
    return _first_pair(first)


def lattice_first_violation(coords, vals, num, fin, strides):
    """First pair ``i < j`` of domain points breaking ``f(x)+f(y) >= f(x|y)+f(x&y)``."""
    if _backend == "numba":
        first = _lattice_nb(coords, vals, num, fin, strides)
    else:
        first = _pairs_np(coords, vals, num, fin, strides, _lattice_combine)
    return _first_pair(first)


# ---------------------------------------------------------------------------
# infimal convolution
# ---------------------------------------------------------------------------


@njit(cache=True)
def _convolve_nb(c1, v1, c2, v2, out_strides, out_size):
    out = np.zeros(out_size, dtype=np.int64)
    seen = np.zeros(out_size, dtype=np.bool_)
    n = c1.shape[1]
    for i in range(c1.shape[0]):
        for j in range(c2.shape[0]):
            idx = 0
            for k in range(n):
                idx += (c1[i, k] + c2[j, k]) * out_strides[k]
            s = v1[i] + v2[j]
            if (not seen[idx]) or s < out[idx]:
                out[idx] = s
                seen[idx] = True
    return out, seen


def _convolve_np(num1, fin1, num2, fin2, out_shape):
    if fin1.sum() > fin2.sum():
        num1, fin1, num2, fin2 = num2, fin2, num1, fin1
    out = np.full(out_shape, _BIG, dtype=np.int64)
    other = np.where(fin2, num2, _BIG)
    for y in np.argwhere(fin1):
        region = tuple(slice(int(a), int(a) + s) for a, s in zip(y, other.shape))
        np.minimum(out[region], other + num1[tuple(y)], out=out[region])
    seen = out < _INF_CUT
    return np.where(seen, out, 0).ravel(), seen.ravel()


def convolve_min(num1, fin1, num2, fin2):
    """Exhaustive ``min_{y+z=x} f1(y) + f2(z)`` on the Minkowski-sum box.

    Inputs are box-shaped arrays whose lower corners are taken as the origin;
    the output box therefore starts at ``lower1 + lower2``.
    """
    out_shape = tuple(a + b - 1 for a, b in zip(num1.shape, num2.shape))
    if _backend == "numba":
        c1 = np.argwhere(fin1).astype(np.int64)
        c2 = np.argwhere(fin2).astype(np.int64)
        out, seen = _convolve_nb(
            c1, num1[fin1].astype(np.int64), c2, num2[fin2].astype(np.int64),
            flat_strides(out_shape), int(np.prod(out_shape)),
        )
    else:
        out, seen = _convolve_np(num1, fin1, num2, fin2, out_shape)
    return out.reshape(out_shape), seen.reshape(out_shape)


# ---------------------------------------------------------------------------
# first-improvement local descent
# ---------------------------------------------------------------------------


@njit(cache=True)
def _descend_nb(num, fin, offsets, start):
    pos = start
    steps = 0
    moved = True
    while moved:
        moved = False
        for k in range(offsets.shape[0]):
            nb = pos + offsets[k]
            if fin[nb] and num[nb] < num[pos]:
                pos = nb
                steps += 1
                moved = True
                break
    return pos, steps


def _descend_np(num, fin, offsets, start):
    pos = int(start)
    steps = 0
    while True:
        nb = pos + offsets
        better = fin[nb] & (num[nb] < num[pos])
        if not better.any():
            return pos, steps
        pos = int(nb[int(np.argmax(better))])
        steps += 1


def descend(num, fin, offsets, start):
    """Move to the first strictly better neighbour until none exists.

    Works on a padded flat table; ``offsets`` lists neighbour displacements
    in scan order.  Returns ``(flat position, steps)``.
    """
    fn = _descend_nb if _backend == "numba" else _descend_np
    pos, steps = fn(num, fin, offsets, np.int64(start))
    return int(pos), int(steps)
