import random

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import oracles as O
from multimodular.checks import is_lnat, is_multimodular, is_submodular, set_table
from multimodular.core import INF, IntBox, QuadraticFunction, TableFunction
from multimodular.ops import reverse_vars
from multimodular.transforms import (
    bidiagonal_D,
    conjugate_quadratic,
    from_lnat,
    image_box,
    inverse_D,
    lift_lnat,
    lift_multimodular,
    reversal_R,
    reversal_T,
    reverse_lnat,
    to_lnat,
)


class TestMatrices:
    def test_D4(self):
        assert bidiagonal_D(4).tolist() == [[1, 0, 0, 0], [-1, 1, 0, 0], [0, -1, 1, 0], [0, 0, -1, 1]]
        assert bidiagonal_D(1).tolist() == [[1]]
        assert bidiagonal_D(2).tolist() == [[1, 0], [-1, 1]]

    def test_Dinv4(self):
        assert inverse_D(4).tolist() == [[1, 0, 0, 0], [1, 1, 0, 0], [1, 1, 1, 0], [1, 1, 1, 1]]
        assert inverse_D(1).tolist() == [[1]]
        assert (bidiagonal_D(3) @ inverse_D(3)).tolist() == np.eye(3, dtype=int).tolist()

    def test_T(self):
        assert reversal_T(4).tolist() == [[0, 0, -1, 1], [0, -1, 0, 1], [-1, 0, 0, 1], [0, 0, 0, 1]]
        assert reversal_T(1).tolist() == [[1]]
        assert reversal_T(3).tolist() == [[0, -1, 1], [-1, 0, 1], [0, 0, 1]]

    @pytest.mark.parametrize("n", range(1, 9))
    def test_identities(self, n):
        d, dinv, t = bidiagonal_D(n), inverse_D(n), reversal_T(n)
        assert np.array_equal(d @ dinv, np.eye(n, dtype=np.int64))
        assert np.array_equal(t, dinv @ reversal_R(n) @ d)
        assert round(abs(np.linalg.det(d))) == 1 and round(abs(np.linalg.det(t))) == 1
        assert np.array_equal(t @ t, np.eye(n, dtype=np.int64))

    @pytest.mark.parametrize("bad", [0, -1])
    def test_rejects_nonpositive(self, bad):
        for fn in (bidiagonal_D, inverse_D, reversal_T, reversal_R):
            with pytest.raises(ValueError):
                fn(bad)


class TestToFrom:
    def test_indicator_S1_to_T1(self, S1, T1):
        assert to_lnat(set_table(S1)) == set_table(T1)

    def test_linear_telescopes(self):
        f = TableFunction.from_callable(IntBox.cube(0, 1, 2), lambda x: x[0] + x[1])
        g = to_lnat(f)
        for p in g.box.points():
            if g(p) != INF:
                assert g(p) == p[1]
        assert g.dom_size == 4

    def test_sep2_spot(self, sep2):
        assert to_lnat(sep2)((1, 3)) == 5

    def test_image_box(self, sep2):
        assert to_lnat(sep2).box == image_box(inverse_D(2), sep2.box) == IntBox((-2, -4), (2, 4))

    def test_T2_to_S2(self, S2, T2):
        assert from_lnat(set_table(T2)) == set_table(S2)

    def test_sep2_round_trip(self, sep2):
        assert from_lnat(to_lnat(sep2)) == sep2

    def test_max_spot(self):
        g = TableFunction.from_callable(IntBox.cube(0, 2, 2), lambda p: max(p))
        assert from_lnat(g)((1, 1)) == 2


class TestLiftings:
    def test_square_lift(self):
        f = TableFunction.from_callable(IntBox((-2,), (2,)), lambda x: x[0] ** 2)
        lifted = lift_multimodular(f)
        for x in lifted.box.points():
            if lifted(x) != INF:
                assert lifted(x) == (x[1] - x[0]) ** 2
        assert is_submodular(lifted).holds

    def test_A3_lifts(self, A3, A3t):
        box = IntBox.cube(-1, 1, 3)
        assert is_submodular(lift_multimodular(A3.materialize(box))).holds
        v = is_submodular(lift_multimodular(A3t.materialize(box)))
        assert not v.holds and v.witness is not None

    def test_lnat_lifts(self, T1):
        g = TableFunction.from_callable(IntBox((-2,), (2,)), lambda p: p[0])
        assert is_submodular(lift_lnat(g)).holds
        assert is_submodular(lift_lnat(set_table(T1))).holds

    def test_non_lnat_lift_fails(self):
        g = TableFunction.from_callable(IntBox.cube(0, 2, 2), lambda p: -p[0] * p[1])
        assert not is_lnat(g).holds
        assert not is_submodular(lift_lnat(g)).holds

    def test_window(self, sep2):
        lifted = lift_multimodular(sep2, window=(3, 3))
        assert lifted.box.lower[0] == 3 == lifted.box.upper[0]
        with pytest.raises(ValueError):
            lift_multimodular(sep2, window=(1, 0))

    def test_narrow_window_misses_violation(self):
        # a violation between lifted points far apart in x0: the default
        # window sees it, [-1,1]-style windows would not need to
        f = TableFunction.from_values(IntBox((0, 0), (4, 0)), [0, 1, 2, 1, 0])
        assert not is_multimodular(f).holds
        assert not is_submodular(lift_multimodular(f)).holds


class TestConjugate:
    def test_A3(self, A3, B3, A3t, B3t):
        assert conjugate_quadratic(A3) == B3
        b = conjugate_quadratic(A3t)
        assert b == B3t
        assert b.matrix[0][2] == b.matrix[2][0] == 1

    def test_A4(self, A4):
        assert conjugate_quadratic(A4).matrix == ((2, 0, 0, -1), (0, 1, 0, 0), (0, 0, 1, 0), (-1, 0, 0, 1))

    def test_matches_to_lnat(self, A3):
        box = IntBox.cube(-1, 1, 3)
        g = to_lnat(A3.materialize(box))
        b = conjugate_quadratic(QuadraticFunction(A3.matrix, (1, -2, 3)))
        g_lin = to_lnat(QuadraticFunction(A3.matrix, (1, -2, 3)).materialize(box))
        for p in g.box.points():
            if g(p) != INF:
                assert g(p) == O.quad_value(conjugate_quadratic(A3).matrix, p)
                assert g_lin(p) == b(p)


def test_reversal_identity(a3_table):
    # to_lnat(reverse_vars(f))(p) == g(-(p_{n-1}, ..., p_1, 0) + p_n 1)
    g = to_lnat(a3_table)
    lhs = to_lnat(reverse_vars(a3_table))
    rng = random.Random(12)
    n = 3
    for _ in range(20):
        p = tuple(rng.randint(-6, 6) for _ in range(n))
        arg = tuple(-(p[n - 2 - i] if i < n - 1 else 0) + p[n - 1] for i in range(n))
        assert lhs(p) == g(arg)
    assert reverse_lnat(g) == lhs


tables = st.integers(1, 3).flatmap(
    lambda n: st.tuples(
        st.just(n),
        st.lists(st.integers(-2, 0), min_size=n, max_size=n),
        st.lists(st.integers(0, 2), min_size=n, max_size=n),
        st.randoms(use_true_random=False),
    )
)


def _table(t):
    n, lo, w, rng = t
    box = IntBox(tuple(lo), tuple(a + b for a, b in zip(lo, w)))
    vals = [rng.choice([0, 1, 2, 5, "1/2", "inf"]) for _ in range(box.size)]
    vals[0] = 0
    return TableFunction.from_values(box, vals)


@settings(max_examples=100, deadline=None)
@given(tables)
def test_round_trip(t):
    f = _table(t)
    back = from_lnat(to_lnat(f))
    assert back == f
    for x in f.box.points():
        assert back(x) == f(x)


@settings(max_examples=100, deadline=None)
@given(tables)
def test_lifting_equivalences(t):
    f = _table(t)
    truth = O.multimodular_global(f)
    assert is_submodular(lift_multimodular(f)).holds == truth
    g = to_lnat(f)
    assert is_submodular(lift_lnat(g)).holds == is_lnat(g).holds == truth
