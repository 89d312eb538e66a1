"""Extended-rational values, integer boxes and the function representations.

Every function is a map ``Z^n -> Q u {+inf}``.  A :class:`TableFunction`
stores its values on a finite :class:`IntBox` as int64 numerators over one
shared positive denominator, plus a boolean finiteness mask; anything outside
the box is ``+inf``.  Keeping all finite values on a common denominator makes
every comparison in the checkers exact integer arithmetic.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Iterator, Sequence, Union

import numpy as np

INF = math.inf

#: A finite value is a :class:`~fractions.Fraction`; ``+inf`` is ``math.inf``.
ExtendedValue = Union[Fraction, float]

# Stored numerators stay below this so that the sum of two values (and the
# int64 sentinels used by the kernels) can never overflow.
VALUE_LIMIT = 2**60


class ConstructionError(ValueError):
    """A function would end up with an empty effective domain."""


def to_extended(v) -> ExtendedValue:
    """Parse ``v`` into an exact rational or ``INF``.

    Accepts ints, Fractions, strings such as ``"3/4"`` or ``"inf"``, and
    floats (read through their decimal repr, so ``0.5`` is exactly 1/2).
    """
    if isinstance(v, Fraction):
        return v
    if isinstance(v, bool):
        raise TypeError("booleans are not function values")
    if isinstance(v, (int, np.integer)):
        return Fraction(int(v))
    if isinstance(v, str):
        s = v.strip().lower()
        if s in ("inf", "+inf", "infinity", "+infinity"):
            return INF
        return Fraction(s)
    if isinstance(v, (float, np.floating)):
        if math.isnan(v) or v == -math.inf:
            raise ValueError(f"value {v!r} is not in Q u {{+inf}}")
        if v == math.inf:
            return INF
        return Fraction(repr(float(v)))
    raise TypeError(f"cannot interpret {v!r} as an extended rational")


def is_inf(v: ExtendedValue) -> bool:
    return isinstance(v, float) and v == INF


def ext_add(*values: ExtendedValue) -> ExtendedValue:
    total: ExtendedValue = Fraction(0)
    for v in values:
        if is_inf(v):
            return INF
        total += v
    return total


def format_value(v: ExtendedValue) -> str:
    if is_inf(v):
        return "+inf"
    return str(v)


def _lcm_of_denominators(values: Iterable[Fraction]) -> int:
    den = 1
    for v in values:
        den = math.lcm(den, v.denominator)
    return den


def _int64_array(values: Sequence[int], what: str = "value") -> np.ndarray:
    if values and max(abs(v) for v in values) >= VALUE_LIMIT:
        raise OverflowError(f"{what} exceeds the exact int64 range (|numerator| < 2**60)")
    return np.asarray(values, dtype=np.int64)


def _check_bound(bound: int, what: str = "result") -> None:
    if bound >= VALUE_LIMIT:
        raise OverflowError(f"{what} exceeds the exact int64 range (|numerator| < 2**60)")


def _as_point(x) -> tuple[int, ...]:
    pt = tuple(int(v) for v in np.ravel(np.asarray(x)))
    return pt


@dataclass(frozen=True)
class IntBox:
    """Axis-aligned box ``[lower, upper]`` in ``Z^n`` (both ends inclusive)."""

    lower: tuple[int, ...]
    upper: tuple[int, ...]

    def __post_init__(self):
        lo = tuple(int(v) for v in self.lower)
        hi = tuple(int(v) for v in self.upper)
        if len(lo) != len(hi):
            raise ValueError("lower and upper bounds differ in length")
        if not lo:
            raise ValueError("a box needs at least one coordinate")
        for i, (a, b) in enumerate(zip(lo, hi)):
            if a > b:
                raise ValueError(f"empty box: lower[{i}]={a} > upper[{i}]={b}")
        object.__setattr__(self, "lower", lo)
        object.__setattr__(self, "upper", hi)
        if math.prod(self.shape) > np.iinfo(np.intp).max:
            raise OverflowError("box has more points than the platform index range")

    @classmethod
    def cube(cls, lo: int, hi: int, n: int) -> "IntBox":
        return cls((lo,) * n, (hi,) * n)

    @classmethod
    def bounding(cls, points: Iterable[Sequence[int]]) -> "IntBox":
        pts = np.asarray([_as_point(p) for p in points], dtype=np.int64)
        if pts.size == 0:
            raise ValueError("bounding box of an empty point set")
        return cls(tuple(pts.min(axis=0)), tuple(pts.max(axis=0)))

    @property
    def dim(self) -> int:
        return len(self.lower)

    @property
    def shape(self) -> tuple[int, ...]:
        return tuple(b - a + 1 for a, b in zip(self.lower, self.upper))

    @property
    def size(self) -> int:
        return math.prod(self.shape)

    def contains(self, x: Sequence[int]) -> bool:
        return len(x) == self.dim and all(a <= v <= b for a, v, b in zip(self.lower, x, self.upper))

    def points(self) -> Iterator[tuple[int, ...]]:
        """Lattice points in lexicographic order."""
        return itertools.product(*(range(a, b + 1) for a, b in zip(self.lower, self.upper)))

    def grid(self) -> np.ndarray:
        """``(dim, size)`` int64 coordinate array, columns in lexicographic order."""
        idx = np.indices(self.shape, dtype=np.int64).reshape(self.dim, -1)
        return idx + np.asarray(self.lower, dtype=np.int64)[:, None]

    def index(self, x: Sequence[int]) -> int:
        return int(np.ravel_multi_index(tuple(v - a for v, a in zip(x, self.lower)), self.shape))

    def point(self, flat: int) -> tuple[int, ...]:
        offs = np.unravel_index(int(flat), self.shape)
        return tuple(int(o) + a for o, a in zip(offs, self.lower))

    def inflate(self, k: int = 1) -> "IntBox":
        return IntBox(tuple(a - k for a in self.lower), tuple(b + k for b in self.upper))

    def intersect(self, other: "IntBox") -> "IntBox | None":
        if other.dim != self.dim:
            raise ValueError("dimension mismatch")
        lo = tuple(max(a, b) for a, b in zip(self.lower, other.lower))
        hi = tuple(min(a, b) for a, b in zip(self.upper, other.upper))
        if any(a > b for a, b in zip(lo, hi)):
            return None
        return IntBox(lo, hi)

    def hull(self, other: "IntBox") -> "IntBox":
        lo = tuple(min(a, b) for a, b in zip(self.lower, other.lower))
        hi = tuple(max(a, b) for a, b in zip(self.upper, other.upper))
        return IntBox(lo, hi)

    def __str__(self) -> str:
        return " x ".join(f"[{a},{b}]" for a, b in zip(self.lower, self.upper))


class TableFunction:
    """Dense table of extended rationals on an :class:`IntBox`, ``+inf`` outside.

    Parameters
    ----------
    box : IntBox
    num : array_like of int
        Numerators in lexicographic (C) order, or already shaped like the box.
    den : int
        Positive common denominator.
    finite : array_like of bool
        ``False`` marks ``+inf`` entries (their numerator is ignored).

    Instances are immutable and kept in lowest terms, so two tables on the
    same box with equal values have identical arrays.  ``==`` compares the
    functions on all of ``Z^n``, not the storage boxes.
    """

    __slots__ = ("box", "num", "den", "finite")

    def __init__(self, box: IntBox, num, den: int, finite):
        num = np.array(num, dtype=np.int64).reshape(box.shape)
        finite = np.array(finite, dtype=bool).reshape(box.shape)
        den = int(den)
        if den <= 0:
            raise ValueError("denominator must be positive")
        if not finite.any():
            raise ConstructionError("effective domain is empty")
        num[~finite] = 0
        if num.size:
            _check_bound(int(np.abs(num).max()), "table value")
        g = math.gcd(den, int(np.gcd.reduce(num[finite])))
        if g > 1:
            num //= g
            den //= g
        num.setflags(write=False)
        finite.setflags(write=False)
        self.box = box
        self.num = num
        self.den = den
        self.finite = finite

    # -- constructors ---------------------------------------------------

    @classmethod
    def from_values(cls, box: IntBox, values) -> "TableFunction":
        """Build from extended values listed in lexicographic order."""
        flat = [to_extended(v) for v in np.asarray(values, dtype=object).ravel()]
        if len(flat) != box.size:
            raise ValueError(f"box {box} needs {box.size} values, got {len(flat)}")
        fin = [not is_inf(v) for v in flat]
        den = _lcm_of_denominators(v for v in flat if not is_inf(v))
        nums = [int(v * den) if not is_inf(v) else 0 for v in flat]
        return cls(box, _int64_array(nums), den, fin)

    @classmethod
    def from_callable(cls, box: IntBox, fn: Callable[[tuple[int, ...]], object]) -> "TableFunction":
        return cls.from_values(box, [fn(x) for x in box.points()])

    # -- basic access ---------------------------------------------------

    @property
    def dim(self) -> int:
        return self.box.dim

    def __call__(self, x: Sequence[int]) -> ExtendedValue:
        x = _as_point(x)
        if len(x) != self.dim:
            raise ValueError(f"point {x} has dimension {len(x)}, function has {self.dim}")
        if not self.box.contains(x):
            return INF
        idx = tuple(v - a for v, a in zip(x, self.box.lower))
        if not self.finite[idx]:
            return INF
        return Fraction(int(self.num[idx]), self.den)

    def values(self) -> list[ExtendedValue]:
        """All stored values, lexicographic order."""
        nums = self.num.ravel().tolist()
        fins = self.finite.ravel().tolist()
        return [Fraction(v, self.den) if f else INF for v, f in zip(nums, fins)]

    def effective_domain(self) -> list[tuple[int, ...]]:
        offs = np.argwhere(self.finite) + np.asarray(self.box.lower, dtype=np.int64)
        return [tuple(int(v) for v in row) for row in offs]

    @property
    def dom_size(self) -> int:
        return int(self.finite.sum())

    @property
    def everywhere_finite(self) -> bool:
        return bool(self.finite.all())

    def domain_box(self) -> IntBox:
        """Bounding box of the effective domain."""
        offs = np.argwhere(self.finite)
        lo = offs.min(axis=0) + np.asarray(self.box.lower)
        hi = offs.max(axis=0) + np.asarray(self.box.lower)
        return IntBox(tuple(lo), tuple(hi))

    # -- reshaping ------------------------------------------------------

    def on_box(self, box: IntBox) -> "TableFunction":
        """The same function stored on ``box`` (cropping or padding with ``+inf``)."""
        if box.dim != self.dim:
            raise ValueError("dimension mismatch")
        if box == self.box:
            return self
        num = np.zeros(box.shape, dtype=np.int64)
        fin = np.zeros(box.shape, dtype=bool)
        common = box.intersect(self.box)
        if common is not None:
            dst = tuple(slice(c - b, c - b + s) for c, b, s in zip(common.lower, box.lower, common.shape))
            src = tuple(slice(c - b, c - b + s) for c, b, s in zip(common.lower, self.box.lower, common.shape))
            num[dst] = self.num[src]
            fin[dst] = self.finite[src]
        return TableFunction(box, num, self.den, fin)

    def trimmed(self) -> "TableFunction":
        return self.on_box(self.domain_box())

    def scaled_numerators(self, den: int) -> np.ndarray:
        """Numerators re-expressed over ``den`` (a multiple of ``self.den``)."""
        if den % self.den:
            raise ValueError("target denominator must be a multiple of the table's")
        factor = den // self.den
        if factor == 1:
            return self.num
        _check_bound(int(np.abs(self.num).max()) * factor)
        return self.num * factor

    def __eq__(self, other) -> bool:
        if not isinstance(other, TableFunction):
            return NotImplemented
        if other.dim != self.dim:
            return False
        a, b = self.trimmed(), other.trimmed()
        return (
            a.box == b.box
            and a.den == b.den
            and np.array_equal(a.finite, b.finite)
            and np.array_equal(a.num, b.num)
        )

    __hash__ = None  # type: ignore[assignment]

    def __repr__(self) -> str:
        return f"TableFunction(box={self.box}, dom={self.dom_size}/{self.box.size}, den={self.den})"


def _fraction_matrix(rows) -> tuple[tuple[Fraction, ...], ...]:
    mat = tuple(tuple(to_extended(v) for v in row) for row in rows)
    if not mat or any(len(r) != len(mat) for r in mat):
        raise ValueError("matrix must be square and non-empty")
    if any(is_inf(v) for r in mat for v in r):
        raise ValueError("matrix entries must be finite")
    return mat


@dataclass(frozen=True)
class QuadraticFunction:
    """``f(x) = x^T A x + c^T x`` with exact rational ``A`` (symmetric) and ``c``."""

    matrix: tuple
    linear: tuple | None = None

    def __post_init__(self):
        mat = _fraction_matrix(self.matrix)
        n = len(mat)
        if any(mat[i][j] != mat[j][i] for i in range(n) for j in range(i)):
            warnings.warn("asymmetric quadratic matrix replaced by (A + A^T)/2", stacklevel=3)
            mat = tuple(tuple((mat[i][j] + mat[j][i]) / 2 for j in range(n)) for i in range(n))
        object.__setattr__(self, "matrix", mat)
        if self.linear is not None:
            lin = tuple(to_extended(v) for v in self.linear)
            if len(lin) != n or any(is_inf(v) for v in lin):
                raise ValueError("linear term must be a finite vector of matching length")
            object.__setattr__(self, "linear", lin)

    @property
    def dim(self) -> int:
        return len(self.matrix)

    def __call__(self, x: Sequence[int]) -> Fraction:
        x = _as_point(x)
        if len(x) != self.dim:
            raise ValueError(f"point {x} has dimension {len(x)}, function has {self.dim}")
        total = sum(
            (self.matrix[i][j] * x[i] * x[j] for i in range(self.dim) for j in range(self.dim)),
            Fraction(0),
        )
        if self.linear is not None:
            total += sum((c * v for c, v in zip(self.linear, x)), Fraction(0))
        return total

    def materialize(self, box: IntBox) -> TableFunction:
        if box.dim != self.dim:
            raise ValueError("dimension mismatch")
        entries = [v for row in self.matrix for v in row] + list(self.linear or ())
        den = _lcm_of_denominators(entries)
        a = [[int(v * den) for v in row] for row in self.matrix]
        c = [int(v * den) for v in self.linear] if self.linear is not None else [0] * self.dim
        reach = max(max(abs(v) for v in box.lower), max(abs(v) for v in box.upper))
        _check_bound(sum(abs(v) for row in a for v in row) * reach * reach + sum(map(abs, c)) * reach)
        x = box.grid()
        vals = np.einsum("in,in->n", np.asarray(a, dtype=np.int64) @ x, x)
        vals += np.asarray(c, dtype=np.int64) @ x
        return TableFunction(box, vals, den, np.ones(box.size, dtype=bool))


@dataclass(frozen=True)
class SeparableFunction:
    """``sum_i phi_i(x_i)``; each ``phi_i`` is a discretely convex run of values.

    ``pieces[i] = (start, values)`` defines ``phi_i(start + k) = values[k]``
    and ``+inf`` elsewhere.
    """

    pieces: tuple

    def __post_init__(self):
        parsed = []
        for i, piece in enumerate(self.pieces):
            start, vals = piece
            vals = tuple(to_extended(v) for v in vals)
            if not vals:
                raise ValueError(f"piece {i} is empty")
            if any(is_inf(v) for v in vals):
                raise ValueError(f"piece {i} contains +inf; shorten the piece instead")
            for k in range(1, len(vals) - 1):
                if vals[k - 1] + vals[k + 1] < 2 * vals[k]:
                    raise ValueError(
                        f"piece {i} is not discretely convex at t={int(start) + k}: "
                        f"{vals[k - 1]} + {vals[k + 1]} < 2*{vals[k]}"
                    )
            parsed.append((int(start), vals))
        if not parsed:
            raise ValueError("a separable function needs at least one piece")
        object.__setattr__(self, "pieces", tuple(parsed))

    @classmethod
    def from_callables(cls, fns: Sequence[Callable[[int], object]], lo: int, hi: int) -> "SeparableFunction":
        return cls(tuple((lo, [fn(t) for t in range(lo, hi + 1)]) for fn in fns))

    @property
    def dim(self) -> int:
        return len(self.pieces)

    def __call__(self, x: Sequence[int]) -> ExtendedValue:
        x = _as_point(x)
        if len(x) != self.dim:
            raise ValueError(f"point {x} has dimension {len(x)}, function has {self.dim}")
        total = Fraction(0)
        for (start, vals), t in zip(self.pieces, x):
            k = t - start
            if not 0 <= k < len(vals):
                return INF
            total += vals[k]
        return total

    def materialize(self, box: IntBox) -> TableFunction:
        if box.dim != self.dim:
            raise ValueError("dimension mismatch")
        den = _lcm_of_denominators(v for _, vals in self.pieces for v in vals)
        num = np.zeros(box.shape, dtype=np.int64)
        fin = np.ones(box.shape, dtype=bool)
        bound = 0
        for axis, ((start, vals), lo, hi) in enumerate(zip(self.pieces, box.lower, box.upper)):
            ts = range(lo, hi + 1)
            col = [int(vals[t - start] * den) if 0 <= t - start < len(vals) else 0 for t in ts]
            ok = [0 <= t - start < len(vals) for t in ts]
            bound += max(map(abs, col))
            shape = [1] * box.dim
            shape[axis] = len(col)
            num = num + np.asarray(col, dtype=np.int64).reshape(shape)
            fin = fin & np.asarray(ok, dtype=bool).reshape(shape)
        _check_bound(bound)
        if not fin.any():
            raise ConstructionError(f"separable function is +inf everywhere on {box}")
        return TableFunction(box, num, den, fin)


@dataclass(frozen=True)
class IndicatorSet:
    """Finite set ``S`` of integer points, read as its indicator ``delta_S``."""

    points: tuple

    def __post_init__(self):
        pts = [_as_point(p) for p in self.points]
        if not pts:
            raise ValueError("indicator set must be non-empty")
        if len({len(p) for p in pts}) != 1:
            raise ValueError("points have inconsistent dimensions")
        if len(set(pts)) != len(pts):
            raise ValueError("indicator set contains duplicate points")
        object.__setattr__(self, "points", tuple(sorted(pts)))

    @property
    def dim(self) -> int:
        return len(self.points[0])

    def __call__(self, x: Sequence[int]) -> ExtendedValue:
        x = _as_point(x)
        if len(x) != self.dim:
            raise ValueError(f"point {x} has dimension {len(x)}, set has {self.dim}")
        return Fraction(0) if x in set(self.points) else INF

    def bounding_box(self) -> IntBox:
        return IntBox.bounding(self.points)

    def materialize(self, box: IntBox) -> TableFunction:
        if box.dim != self.dim:
            raise ValueError("dimension mismatch")
        fin = np.zeros(box.shape, dtype=bool)
        hit = False
        for p in self.points:
            if box.contains(p):
                fin[tuple(v - a for v, a in zip(p, box.lower))] = True
                hit = True
        if not hit:
            raise ConstructionError(f"no point of the set lies in {box}")
        return TableFunction(box, np.zeros(box.shape, dtype=np.int64), 1, fin)


FunctionLike = Union[TableFunction, QuadraticFunction, SeparableFunction, IndicatorSet]


WITNESS_KINDS = ("multimodular", "submodular", "midpoint", "quadratic-criterion", "L-class", "translation")


@dataclass(frozen=True)
class Witness:
    """A certificate that a defining inequality ``lhs >= rhs`` fails.

    ``points`` names the lattice points (or matrix indices) the inequality
    was instantiated at, e.g. ``{"z": ..., "d": ..., "d'": ...}``.  For the
    ``translation`` kind the required relation is ``lhs == rhs``.
    ``frame="lnat"`` means the points are ``p = D^{-1} x`` coordinates of the
    checked function, i.e. the inequality is about ``p -> f(D p)``.
    """

    kind: str
    points: dict = field(default_factory=dict)
    lhs: ExtendedValue = Fraction(0)
    rhs: ExtendedValue = Fraction(0)
    frame: str = "x"

    def __post_init__(self):
        if self.kind not in WITNESS_KINDS:
            raise ValueError(f"unknown witness kind {self.kind!r}")
        if self.frame not in ("x", "lnat"):
            raise ValueError(f"unknown witness frame {self.frame!r}")

    def describe(self) -> str:
        pts = ", ".join(f"{k}={v}" for k, v in self.points.items())
        rel = "!=" if self.kind == "translation" else "<"
        where = " (coordinates p = D^-1 x)" if self.frame == "lnat" else ""
        return f"{self.kind} violation at {pts}{where}: {format_value(self.lhs)} {rel} {format_value(self.rhs)}"


def evaluate(f: FunctionLike, x: Sequence[int]) -> ExtendedValue:
    """Value of any supported function representation at ``x``."""
    return f(x)


def effective_domain(f: TableFunction) -> list[tuple[int, ...]]:
    return f.effective_domain()


def materialize(f: FunctionLike, box: IntBox) -> TableFunction:
    """Tabulate ``f`` on ``box``; a table is re-stored on the new box."""
    if isinstance(f, TableFunction):
        out = f.on_box(box)
        return out
    return f.materialize(box)
