"""Minimization through local optimality over the alternating direction set.

For a multimodular ``f`` a point of ``dom f`` is a global minimizer as soon
as no move ``x +/- d`` with ``d`` in the alternating set improves it, so a
first-improvement descent over those moves finds a global minimum.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Sequence

import numpy as np

from . import kernels
from .core import ExtendedValue, TableFunction, is_inf

MAX_T_DIM = 20


class Minimum(NamedTuple):
    point: tuple[int, ...]
    value: ExtendedValue
    steps: int = 0


def directions_T(n: int) -> list[tuple[int, ...]]:
    """All ``e_{i1} - e_{i2} + ... +/- e_{ik}`` for ``i1 < ... < ik``.

    Ordered lexicographically by the index sequence, e.g. for ``n = 3``:
    ``(1), (1,2), (1,2,3), (1,3), (2), (2,3), (3)``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if n > MAX_T_DIM:
        raise ValueError(f"n={n} would give 2**{n}-1 directions; limit is n <= {MAX_T_DIM}")
    seqs = sorted(
        itertools.chain.from_iterable(itertools.combinations(range(n), k) for k in range(1, n + 1))
    )
    out = []
    for seq in seqs:
        v = [0] * n
        for pos, i in enumerate(seq):
            v[i] = 1 if pos % 2 == 0 else -1
        out.append(tuple(v))
    return out


def _neighbour_offsets(n: int, strides: np.ndarray) -> np.ndarray:
    offs = []
    for d in directions_T(n):
        o = int(np.dot(d, strides))
        offs.extend((o, -o))  # +d is scanned before -d
    return np.asarray(offs, dtype=np.int64)


def local_minimize(f: TableFunction, x0: Sequence[int]) -> Minimum:
    """First-improvement descent from ``x0`` over the moves ``+/- d``, ``d`` alternating.

    Neighbours outside the box count as ``+inf``.  Raises ``ValueError`` when
    ``f(x0)`` is infinite.
    """
    x0 = tuple(int(v) for v in x0)
    if len(x0) != f.dim:
        raise ValueError("start point has the wrong dimension")
    if is_inf(f(x0)):
        raise ValueError(f"start point {x0} is outside dom f")
    num, fin, shape_p = kernels.pad(f.num, f.finite, 1)
    strides = kernels.flat_strides(shape_p)
    start = int(np.dot(np.asarray(x0) - np.asarray(f.box.lower) + 1, strides))
    pos, steps = kernels.descend(num, fin, _neighbour_offsets(f.dim, strides), start)
    idx = np.unravel_index(pos, shape_p)
    point = tuple(int(i) - 1 + a for i, a in zip(idx, f.box.lower))
    return Minimum(point, f(point), steps)


def brute_min(f: TableFunction) -> Minimum:
    """Exhaustive minimum; ties go to the lexicographically first point."""
    vals = np.where(f.finite, f.num, kernels._BIG).ravel()
    flat = int(np.argmin(vals))
    point = f.box.point(flat)
    return Minimum(point, Fraction(int(vals[flat]), f.den))


@dataclass(frozen=True)
class LocalGlobalReport:
    holds: bool
    minimum: ExtendedValue
    local_minimizers: int
    counterexample: tuple[int, ...] | None = None

    def __bool__(self) -> bool:
        return self.holds


def local_minimizer_mask(f: TableFunction) -> np.ndarray:
    """Boolean array over ``box(f)``: finite points no alternating move improves."""
    num, fin, shape_p = kernels.pad(f.num, f.finite, 1)
    strides = kernels.flat_strides(shape_p)
    pos = kernels.padded_positions(f.finite, 1, shape_p)
    ok = np.ones(pos.shape, dtype=bool)
    for o in _neighbour_offsets(f.dim, strides):
        nb = pos + o
        ok &= ~(fin[nb] & (num[nb] < num[pos]))
    mask = np.zeros(f.box.shape, dtype=bool)
    mask[f.finite] = ok
    return mask


def check_local_global(f: TableFunction) -> LocalGlobalReport:
    """Does every local minimizer over the alternating moves attain the global minimum?"""
    best = brute_min(f)
    mask = local_minimizer_mask(f)
    target = int(best.value * f.den)
    bad = mask & (f.num != target)
    report = LocalGlobalReport(not bad.any(), best.value, int(mask.sum()))
    if bad.any():
        offs = np.argwhere(bad)[0]
        point = tuple(int(o) + a for o, a in zip(offs, f.box.lower))
        report = LocalGlobalReport(False, best.value, int(mask.sum()), point)
    return report
