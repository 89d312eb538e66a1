"""Definition-level verifiers for multimodularity and its relatives.

Every checker returns a :class:`Verdict`; a failing verdict carries the
first violated inequality in lexicographic sweep order as a
:class:`~multimodular.core.Witness`, and :func:`validate_witness`
re-derives that violation through plain point evaluation.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from . import kernels
from .core import (
    INF,
    IndicatorSet,
    IntBox,
    QuadraticFunction,
    TableFunction,
    Witness,
    ext_add,
    is_inf,
)
from .transforms import bidiagonal_D, inverse_D, to_lnat


@dataclass(frozen=True)
class Verdict:
    holds: bool
    witness: Witness | None = None
    checked: int = 0
    violations: tuple = ()
    notes: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.holds == (self.witness is not None):
            raise ValueError("a verdict fails exactly when it carries a witness")

    def __bool__(self) -> bool:
        return self.holds


def _vadd(x, y):
    return tuple(a + b for a, b in zip(x, y))


def _unit(n: int, i: int) -> tuple[int, ...]:
    """``e_i`` for 1-based ``i``; indices 0 and n+1 give the zero vector."""
    return tuple(1 if k == i else 0 for k in range(1, n + 1))


def direction_set_F(n: int) -> list[tuple[int, ...]]:
    """``-e_1, e_1-e_2, ..., e_{n-1}-e_n, e_n`` in that order."""
    if n < 1:
        raise ValueError("n must be positive")
    return [tuple(a - b for a, b in zip(_unit(n, i), _unit(n, i + 1))) for i in range(n + 1)]


# ---------------------------------------------------------------------------
# local (square) sweeps
# ---------------------------------------------------------------------------


def _four_point_sweep(f: TableFunction, quads):
    """Run ``f(z+a) + f(z+b) >= f(z+c) + f(z+d)`` over all ``z`` in dom f.

    ``quads`` lists ``(a, b, c, d)`` integer vectors.  Returns ``(z, k,
    checked)`` for the first failure or ``(None, None, checked)``.
    """
    width = max((abs(v) for q in quads for vec in q for v in vec), default=1)
    num, fin, shape_p = kernels.pad(f.num, f.finite, width)
    strides = kernels.flat_strides(shape_p)
    starts = kernels.padded_positions(f.finite, width, shape_p)
    offs = [
        np.array([int(np.dot(q[r], strides)) for q in quads], dtype=np.int64) for r in range(4)
    ]
    s, k = kernels.four_point_first_violation(num, fin, starts, *offs)
    if s < 0:
        return None, None, len(starts) * len(quads)
    idx = np.unravel_index(int(starts[s]), shape_p)
    z = tuple(int(i) - width + a for i, a in zip(idx, f.box.lower))
    return z, k, s * len(quads) + k + 1


def _square_sweep(f: TableFunction, pairs):
    """Square inequalities ``f(z+a) + f(z+b) >= f(z) + f(z+a+b)``; returns ``(z, a, b, checked)``."""
    zero = (0,) * f.dim
    z, k, checked = _four_point_sweep(f, [(a, b, zero, _vadd(a, b)) for a, b in pairs])
    if z is None:
        return None, None, None, checked
    a, b = pairs[k]
    return z, a, b, checked


def is_multimodular(f: TableFunction) -> Verdict:
    """``f(z+d) + f(z+d') >= f(z) + f(z+d+d')`` for all z in dom f, distinct d, d' in F.

    Extended arithmetic: an infinite left side always satisfies the
    inequality; a finite left side against an infinite right side fails.

    With ``+inf`` values around, those inequalities alone are too weak:
    ``{(0,0), (2,0)}`` passes them vacuously, and so does any function on the
    face ``{1} x [0,1]^2``.  Two further sweeps make the verdict agree with
    midpoint convexity of ``p -> f(D p)``:

    * ``dom f`` must equal its multimodular hull (see :func:`multimodular_hull`);
    * on such a domain it suffices to test midpoint convexity for the pairs
      ``p, q`` with ``|p - q|_inf <= 2``, a fixed finite set of offsets around
      each point.

    Failures of the extra sweeps carry a ``midpoint`` witness in the
    ``p = D^{-1} x`` frame.
    """
    dirs = direction_set_F(f.dim)
    pairs = [(dirs[a], dirs[b]) for a, b in itertools.combinations(range(len(dirs)), 2)]
    z, d, d2, checked = _square_sweep(f, pairs)
    if z is not None:
        lhs = ext_add(f(_vadd(z, d)), f(_vadd(z, d2)))
        rhs = ext_add(f(z), f(_vadd(_vadd(z, d), d2)))
        w = Witness("multimodular", {"z": z, "d": d, "d'": d2}, lhs, rhs)
        return Verdict(False, w, checked, notes={"failed": "inequality"})
    gap = multimodular_hull(f) & ~f.finite
    checked += f.box.size
    if gap.any():
        w = _domain_witness(f)
        missing = _as_point(f, np.argwhere(gap)[0])
        return Verdict(False, w, checked, notes={"failed": "domain", "missing": missing})
    us = _near_offsets(f)
    dmat = bidiagonal_D(f.dim)
    dinv = inverse_D(f.dim)
    quads = []
    for u in us:
        up, down = midpoints((0,) * f.dim, u)
        quads.append(((0,) * f.dim, tuple(dmat @ u), tuple(dmat @ up), tuple(dmat @ down)))
    z, k, more = _four_point_sweep(f, quads) if quads else (None, None, 0)
    checked += more
    if z is None:
        return Verdict(True, checked=checked)
    p = tuple(int(v) for v in dinv @ np.asarray(z))
    q = _vadd(p, us[k])
    return Verdict(False, _lnat_frame_midpoint(f, p, q), checked, notes={"failed": "near-pairs"})


def _near_offsets(f: TableFunction) -> list[tuple[int, ...]]:
    # u with entries in [-2, 2], first nonzero entry positive, D u fitting the box
    n = f.dim
    dmat = bidiagonal_D(n)
    span = np.asarray(f.box.shape) - 1
    out = []
    for u in itertools.product(range(-2, 3), repeat=n):
        nz = next((v for v in u if v), 0)
        if nz <= 0:
            continue
        if np.all(np.abs(dmat @ u) <= span):
            out.append(u)
    return out


def _lnat_frame_midpoint(f: TableFunction, p, q) -> Witness:
    dmat = bidiagonal_D(f.dim)
    ev = lambda v: f(dmat @ np.asarray(v))  # noqa: E731
    up, down = midpoints(p, q)
    return Witness(
        "midpoint",
        {"p": p, "q": q, "ceil": up, "floor": down},
        ext_add(ev(p), ev(q)),
        ext_add(ev(up), ev(down)),
        frame="lnat",
    )


def _interval_sums(f: TableFunction) -> np.ndarray:
    """``(intervals, size)`` array of ``x_{j+1} + ... + x_i`` over the box, ``0 <= j < i <= n``."""
    x = f.box.grid()
    pre = np.vstack([np.zeros((1, x.shape[1]), dtype=np.int64), np.cumsum(x, axis=0)])
    n = f.dim
    rows = [pre[i] - pre[j] for i in range(1, n + 1) for j in range(i)]
    return np.asarray(rows)


def multimodular_hull(f: TableFunction) -> np.ndarray:
    """Mask over ``box(f)`` of the smallest multimodular set containing ``dom f``.

    That set is every integer point whose consecutive-coordinate sums stay
    within the ranges those sums take on ``dom f``.
    """
    sums = _interval_sums(f)
    fin = f.finite.ravel()
    dom = sums[:, fin]
    lo = dom.min(axis=1)[:, None]
    hi = dom.max(axis=1)[:, None]
    inside = np.all((sums >= lo) & (sums <= hi), axis=0)
    return inside.reshape(f.box.shape)


def _domain_witness(f: TableFunction) -> Witness:
    # the image of dom f under D^{-1} breaks midpoint convexity somewhere
    flat = TableFunction(f.box, np.zeros(f.box.shape, dtype=np.int64), 1, f.finite)
    g = to_lnat(flat)
    coords, vals, num, fin, strides = _domain_arrays(g)
    i, j = kernels.midpoint_first_violation(coords, vals, num, fin, strides)
    if i < 0:
        raise RuntimeError("domain hull test and midpoint sweep disagree")
    return _lnat_frame_midpoint(f, _as_point(g, coords[i]), _as_point(g, coords[j]))


# ---------------------------------------------------------------------------
# submodularity and discrete midpoint convexity
# ---------------------------------------------------------------------------


def _domain_arrays(f: TableFunction):
    coords = np.argwhere(f.finite).astype(np.int64)
    vals = f.num[f.finite].astype(np.int64)
    return coords, vals, f.num.ravel(), f.finite.ravel(), kernels.flat_strides(f.box.shape)


def _pair_count_before(i: int, j: int) -> int:
    # pairs (i', j'), i' < j', visited up to and including (i, j) in j-major order
    return j * (j - 1) // 2 + i + 1


def _as_point(f: TableFunction, offs) -> tuple[int, ...]:
    return tuple(int(o) + a for o, a in zip(offs, f.box.lower))


def is_submodular(f: TableFunction, mode: str = "auto") -> Verdict:
    """``f(x) + f(y) >= f(x v y) + f(x ^ y)`` over the box.

    ``mode="pairs"`` sweeps every pair of domain points.  ``mode="local"``
    checks unit squares only, which is equivalent when the table is finite on
    its whole box; ``"auto"`` picks local exactly in that case.
    """
    if mode == "auto":
        mode = "local" if f.everywhere_finite else "pairs"
    if mode == "local":
        if not f.everywhere_finite:
            raise ValueError("local submodularity test needs a table that is finite on its whole box")
        n = f.dim
        units = [_unit(n, i) for i in range(1, n + 1)]
        triples = [(units[i], units[j]) for i, j in itertools.combinations(range(n), 2)]
        z, a, b, checked = _square_sweep(f, triples)
        if z is None:
            return Verdict(True, checked=checked, notes={"mode": "local"})
        x, y = _vadd(z, a), _vadd(z, b)
        return _lattice_witness(f, x, y, checked, "local")
    if mode != "pairs":
        raise ValueError(f"unknown mode {mode!r}")
    coords, vals, num, fin, strides = _domain_arrays(f)
    m = len(vals)
    i, j = kernels.lattice_first_violation(coords, vals, num, fin, strides)
    if i < 0:
        return Verdict(True, checked=m * (m - 1) // 2, notes={"mode": "pairs"})
    x, y = _as_point(f, coords[i]), _as_point(f, coords[j])
    return _lattice_witness(f, x, y, _pair_count_before(i, j), "pairs")


def _lattice_witness(f, x, y, checked, mode):
    join = tuple(max(a, b) for a, b in zip(x, y))
    meet = tuple(min(a, b) for a, b in zip(x, y))
    w = Witness(
        "submodular",
        {"x": x, "y": y, "join": join, "meet": meet},
        ext_add(f(x), f(y)),
        ext_add(f(join), f(meet)),
    )
    return Verdict(False, w, checked, notes={"mode": mode})


def midpoints(p, q) -> tuple[tuple[int, ...], tuple[int, ...]]:
    """``(ceil((p+q)/2), floor((p+q)/2))`` componentwise."""
    s = [a + b for a, b in zip(p, q)]
    return tuple(-((-t) // 2) for t in s), tuple(t // 2 for t in s)


def is_lnat(g: TableFunction) -> Verdict:
    """Discrete midpoint convexity over all pairs of domain points."""
    coords, vals, num, fin, strides = _domain_arrays(g)
    m = len(vals)
    i, j = kernels.midpoint_first_violation(coords, vals, num, fin, strides)
    if i < 0:
        return Verdict(True, checked=m * (m - 1) // 2)
    p, q = _as_point(g, coords[i]), _as_point(g, coords[j])
    up, down = midpoints(p, q)
    w = Witness(
        "midpoint",
        {"p": p, "q": q, "ceil": up, "floor": down},
        ext_add(g(p), g(q)),
        ext_add(g(up), g(down)),
    )
    return Verdict(False, w, _pair_count_before(i, j))


def is_L_convex(h: TableFunction) -> Verdict:
    """Submodular, and ``h(q+1) = h(q) + r`` for one rational ``r``.

    Translation is only testable for pairs ``q, q+1`` inside the box; when no
    such pair has both values finite, ``r`` cannot be inferred and
    ``notes["translation_untestable"]`` is set.
    """
    sub = is_submodular(h)
    if not sub.holds:
        return Verdict(False, sub.witness, sub.checked, notes={"failed": "submodularity"})
    lo = tuple(slice(0, s - 1) for s in h.box.shape)
    hi = tuple(slice(1, s) for s in h.box.shape)
    fin_a, fin_b = h.finite[lo], h.finite[hi]
    both = fin_a & fin_b
    notes: dict = {}
    diffs = (h.num[hi] - h.num[lo])
    r_num = None
    if both.any():
        first = np.unravel_index(int(np.argmax(both)), both.shape)
        r_num = int(diffs[first])
        notes["r"] = Fraction(r_num, h.den)
    else:
        notes["translation_untestable"] = True
    bad = fin_a ^ fin_b
    r_from = None
    if r_num is not None:
        bad |= both & (diffs != r_num)
        r_from = _as_point(h, first)
    checked = sub.checked + int((fin_a | fin_b).sum())
    if not bad.any():
        return Verdict(True, checked=checked, notes=notes)
    q = _as_point(h, np.unravel_index(int(np.argmax(bad)), bad.shape))
    up = _vadd(q, (1,) * h.dim)
    pts = {"q": q, "q+1": up}
    if r_from is not None:
        pts["r_from"] = r_from
    w = Witness("translation", pts, h(up), ext_add(h(q), notes.get("r", Fraction(0))))
    notes["failed"] = "translation"
    return Verdict(False, w, checked, notes=notes)


# ---------------------------------------------------------------------------
# matrix criteria
# ---------------------------------------------------------------------------


def _criterion_order(n: int):
    # interior pairs first (they are the off-diagonal entries of D^T A D),
    # then the boundary pairs (0, j) tied to diagonal dominance
    interior = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    boundary = [(0, j) for j in range(1, n + 1)]
    return interior + boundary


def criterion_value(A: QuadraticFunction, i: int, j: int) -> Fraction:
    """``a_ij - a_{i,j+1} - a_{i+1,j} + a_{i+1,j+1}`` with the zero padding at 0 and n+1."""
    n = A.dim

    def a(r, c):
        if r == 0 or c == 0 or r == n + 1 or c == n + 1:
            return Fraction(0)
        return A.matrix[r - 1][c - 1]

    return a(i, j) - a(i, j + 1) - a(i + 1, j) + a(i + 1, j + 1)


def is_quadratic_multimodular(A: QuadraticFunction) -> Verdict:
    """Coefficient criterion for ``x^T A x`` (linear terms never matter).

    ``violations`` lists every failing ``(i, j)``; the witness is the first
    one, interior pairs ``1 <= i < j`` scanned before the ``i = 0`` pairs.
    """
    order = _criterion_order(A.dim)
    bad = [(i, j) for i, j in order if criterion_value(A, i, j) > 0]
    if not bad:
        return Verdict(True, checked=len(order))
    i, j = bad[0]
    w = Witness("quadratic-criterion", {"ij": (i, j)}, Fraction(0), criterion_value(A, i, j))
    return Verdict(False, w, order.index((i, j)) + 1, violations=tuple(bad))


def is_L_class(B: QuadraticFunction) -> Verdict:
    """``b_ij <= 0`` off the diagonal and ``b_ii >= sum_{j != i} |b_ij|``."""
    n = B.dim
    m = B.matrix
    bad: list = []
    witnesses: list = []
    for i in range(n):
        for j in range(i + 1, n):
            if m[i][j] > 0:
                bad.append((i + 1, j + 1))
                witnesses.append(Witness("L-class", {"ij": (i + 1, j + 1)}, Fraction(0), m[i][j]))
    for i in range(n):
        off = sum((abs(m[i][j]) for j in range(n) if j != i), Fraction(0))
        if m[i][i] < off:
            bad.append((i + 1, i + 1))
            witnesses.append(Witness("L-class", {"ii": (i + 1, i + 1)}, m[i][i], off))
    checked = n * (n - 1) // 2 + n
    if not bad:
        return Verdict(True, checked=checked)
    return Verdict(False, witnesses[0], checked, violations=tuple(bad))


# ---------------------------------------------------------------------------
# sets
# ---------------------------------------------------------------------------


def set_table(S: IndicatorSet) -> TableFunction:
    """``delta_S`` on the bounding box of ``S`` inflated by one."""
    return S.materialize(S.bounding_box().inflate(1))


def is_multimodular_set(S: IndicatorSet) -> Verdict:
    return is_multimodular(set_table(S))


def is_lnat_set(T: IndicatorSet) -> Verdict:
    return is_lnat(set_table(T))


# ---------------------------------------------------------------------------
# witness re-validation
# ---------------------------------------------------------------------------


def validate_witness(obj, w: Witness) -> bool:
    """Recompute the cited inequality from scratch and confirm it is violated.

    ``obj`` is the checked table (or :class:`QuadraticFunction` for the
    matrix kinds).
    """
    P = w.points
    if w.frame == "lnat":
        d = bidiagonal_D(len(next(iter(P.values()))))
        base = obj
        obj = lambda v: base(d @ np.asarray(v))  # noqa: E731
    if w.kind == "multimodular":
        z, d, d2 = P["z"], P["d"], P["d'"]
        if d == d2 or is_inf(obj(z)):
            return False
        lhs = ext_add(obj(_vadd(z, d)), obj(_vadd(z, d2)))
        rhs = ext_add(obj(z), obj(_vadd(_vadd(z, d), d2)))
    elif w.kind == "submodular":
        x, y = P["x"], P["y"]
        lhs = ext_add(obj(x), obj(y))
        rhs = ext_add(obj(tuple(map(max, x, y))), obj(tuple(map(min, x, y))))
    elif w.kind == "midpoint":
        up, down = midpoints(P["p"], P["q"])
        lhs = ext_add(obj(P["p"]), obj(P["q"]))
        rhs = ext_add(obj(up), obj(down))
    elif w.kind == "quadratic-criterion":
        lhs, rhs = Fraction(0), criterion_value(obj, *P["ij"])
    elif w.kind == "L-class":
        m = obj.matrix
        if "ij" in P:
            i, j = P["ij"]
            lhs, rhs = Fraction(0), m[i - 1][j - 1]
        else:
            i, _ = P["ii"]
            lhs = m[i - 1][i - 1]
            rhs = sum((abs(m[i - 1][j]) for j in range(len(m)) if j != i - 1), Fraction(0))
    elif w.kind == "translation":
        q = P["q"]
        one = (1,) * len(q)
        before, after = obj(q), obj(_vadd(q, one))
        if after != w.lhs:
            return False
        if is_inf(before) != is_inf(after):
            return True
        if is_inf(before) or "r_from" not in P:
            return False
        base = P["r_from"]
        r = obj(_vadd(base, one)) - obj(base)
        return after != before + r
    else:
        return False
    return lhs == w.lhs and rhs == w.rhs and lhs < rhs


__all__ = [
    "INF",
    "IntBox",
    "Verdict",
    "direction_set_F",
    "is_multimodular",
    "multimodular_hull",
    "is_submodular",
    "is_lnat",
    "is_L_convex",
    "is_quadratic_multimodular",
    "is_L_class",
    "is_multimodular_set",
    "is_lnat_set",
    "midpoints",
    "criterion_value",
    "set_table",
    "validate_witness",
]
