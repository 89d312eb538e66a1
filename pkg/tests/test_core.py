from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from multimodular.core import (
    INF,
    ConstructionError,
    IndicatorSet,
    IntBox,
    QuadraticFunction,
    SeparableFunction,
    TableFunction,
    Witness,
    effective_domain,
    evaluate,
    ext_add,
    materialize,
    to_extended,
)


class TestValues:
    def test_parse(self):
        assert to_extended(3) == 3
        assert to_extended("3/4") == Fraction(3, 4)
        assert to_extended("inf") == INF
        assert to_extended(0.5) == Fraction(1, 2)
        assert to_extended(0.1) == Fraction(1, 10)

    @pytest.mark.parametrize("bad", [float("nan"), -INF, True])
    def test_rejects(self, bad):
        with pytest.raises((ValueError, TypeError)):
            to_extended(bad)

    def test_addition_total(self):
        assert ext_add(Fraction(1, 2), Fraction(1, 3)) == Fraction(5, 6)
        assert ext_add(Fraction(1), INF) == INF
        assert ext_add(INF, INF) == INF
        assert INF > Fraction(10**30)


class TestIntBox:
    def test_rejects_empty(self):
        with pytest.raises(ValueError):
            IntBox((0, 1), (1, 0))
        with pytest.raises(ValueError):
            IntBox((), ())

    def test_lexicographic(self):
        box = IntBox((0, 0), (1, 2))
        pts = list(box.points())
        assert pts == sorted(pts)
        assert box.size == 6
        assert [box.point(k) for k in range(box.size)] == pts
        assert all(box.index(p) == k for k, p in enumerate(pts))
        assert box.grid().T.tolist() == [list(p) for p in pts]

    def test_intersect_hull(self):
        a = IntBox((0, 0), (2, 2))
        b = IntBox((1, -1), (3, 1))
        assert a.intersect(b) == IntBox((1, 0), (2, 1))
        assert a.hull(b) == IntBox((0, -1), (3, 2))
        assert a.intersect(IntBox((5, 5), (6, 6))) is None


class TestTable:
    def test_eval_outside_box(self, sep2):
        assert sep2((1, 2)) == 5
        assert sep2((3, 0)) == INF

    def test_dimension_mismatch(self, sep2):
        with pytest.raises(ValueError):
            sep2((1, 2, 3))

    def test_empty_domain_rejected(self):
        with pytest.raises(ConstructionError):
            TableFunction.from_values(IntBox((0,), (1,)), ["inf", "inf"])

    def test_lowest_terms_and_equality(self):
        box = IntBox((0,), (2,))
        f = TableFunction.from_values(box, ["1/2", 1, "3/2"])
        g = TableFunction(box, [2, 4, 6], 4, [True] * 3)
        assert f.den == 2 and g.den == 2
        assert f == g
        # same function stored on a bigger box
        assert f == f.on_box(IntBox((-2,), (5,)))

    def test_readonly(self, sep2):
        with pytest.raises(ValueError):
            sep2.num[0, 0] = 7

    def test_effective_domain(self, S1, sep2):
        f = S1.materialize(IntBox.cube(-1, 1, 3))
        assert effective_domain(f) == [(0, 0, 0), (1, 0, -1)]
        assert len(effective_domain(sep2)) == 25
        assert effective_domain(TableFunction.from_values(IntBox((0,), (1,)), [0, "inf"])) == [(0,)]

    def test_overflow_guard(self):
        with pytest.raises(OverflowError):
            TableFunction.from_values(IntBox((0,), (0,)), [2**61])


class TestSymbolic:
    def test_quadratic_eval(self, A3):
        assert evaluate(A3, (1, 1, 1)) == 8
        assert materialize(A3, IntBox.cube(0, 1, 3))((1, 1, 1)) == 8

    def test_quadratic_linear(self):
        q = QuadraticFunction([[1]], ["1/2"])
        assert q((2,)) == 5
        assert materialize(q, IntBox((0,), (2,))).values() == [0, Fraction(3, 2), 5]

    def test_symmetrized_with_warning(self):
        with pytest.warns(UserWarning):
            q = QuadraticFunction([[1, 2], [0, 1]])
        assert q.matrix == ((1, 1), (1, 1))

    def test_square_materialize(self):
        f = QuadraticFunction([[1]]).materialize(IntBox((-1,), (1,)))
        assert f.values() == [1, 0, 1]

    def test_separable(self):
        s = SeparableFunction(((-1, [1, 0, 1]), (0, [0, 2])))
        assert s((0, 1)) == 2
        assert s((2, 0)) == INF
        f = s.materialize(IntBox.cube(-1, 1, 2))
        assert f((1, 1)) == 3 and f((0, -1)) == INF

    def test_separable_rejects_nonconvex(self):
        with pytest.raises(ValueError, match="t=1"):
            SeparableFunction(((0, [0, 2, 1]),))

    def test_indicator(self, S1, S2):
        assert evaluate(S1, (0, 1, 0)) == INF
        assert S1((1, 0, -1)) == 0
        f = S2.materialize(IntBox.cube(-1, 1, 3))
        assert {x for x in f.box.points() if f(x) == 0} == {(0, 0, 0), (0, 1, 0)}

    def test_indicator_rules(self):
        with pytest.raises(ValueError):
            IndicatorSet([])
        with pytest.raises(ValueError):
            IndicatorSet([(0, 0), (0, 0)])
        with pytest.raises(ValueError):
            IndicatorSet([(0,), (0, 1)])
        with pytest.raises(ConstructionError):
            IndicatorSet([(5, 5)]).materialize(IntBox.cube(0, 1, 2))


def test_witness_kind_checked():
    with pytest.raises(ValueError):
        Witness("bogus")
    w = Witness("translation", {"q": (0, 0)}, Fraction(1), Fraction(2))
    assert "!=" in w.describe()


small_box = st.integers(1, 3).flatmap(
    lambda n: st.tuples(
        st.lists(st.integers(-3, 1), min_size=n, max_size=n),
        st.lists(st.integers(0, 2), min_size=n, max_size=n),
    )
).map(lambda t: IntBox(tuple(t[0]), tuple(a + w for a, w in zip(t[0], t[1]))))


@settings(max_examples=60, deadline=None)
@given(small_box, st.data())
def test_materialize_agrees_with_eval(box, data):
    n = box.dim
    mat = data.draw(st.lists(st.lists(st.integers(-3, 3), min_size=n, max_size=n), min_size=n, max_size=n))
    mat = [[mat[min(i, j)][max(i, j)] for j in range(n)] for i in range(n)]
    q = QuadraticFunction(mat)
    f = q.materialize(box)
    for x in box.points():
        assert f(x) == q(x)
    outside = tuple(b + 1 for b in box.upper)
    assert f(outside) == INF


@settings(max_examples=40, deadline=None)
@given(small_box, st.data())
def test_table_roundtrip_values(box, data):
    vals = data.draw(st.lists(st.one_of(st.integers(-5, 5), st.just("inf")), min_size=box.size, max_size=box.size))
    if all(v == "inf" for v in vals):
        vals[0] = 0
    f = TableFunction.from_values(box, vals)
    assert f.values() == [to_extended(v) for v in vals]
    assert np.array_equal(f.finite.ravel(), [v != "inf" for v in vals])
