"""Acceptance criteria, one test each.

Every test records a ``PASS``/``FAIL`` line (with the measured runtime) that
is printed immediately and again in the terminal summary.
"""

import contextlib
import random
import time
from fractions import Fraction

import numpy as np
import pytest

import conftest
from multimodular import harness
from multimodular.checks import (
    is_L_class,
    is_lnat,
    is_lnat_set,
    is_multimodular,
    is_multimodular_set,
    is_quadratic_multimodular,
    is_submodular,
    set_table,
    validate_witness,
)
from multimodular.core import IntBox, QuadraticFunction
from multimodular.harness import (
    A3,
    A3_T,
    A4,
    A4_T,
    B3,
    B3_T,
    B4,
    B4_T,
    S1,
    S2,
    S12,
    T1,
    T2,
    T12,
    GeneratorRecipe,
    closure_trial,
    perturb,
    random_multimodular,
    table1_row,
)
from multimodular.minimize import brute_min, directions_T, local_minimize
from multimodular.ops import convolve, minkowski_sum, permute_vars, project, sweep_out
from multimodular.transforms import conjugate_quadratic, from_lnat, lift_multimodular, to_lnat


@pytest.fixture(scope="module", autouse=True)
def warm_kernels():
    # compile (or load cached) kernels so runtime bounds measure the work
    f = A3.materialize(IntBox.cube(-1, 1, 3))
    is_multimodular(f)
    is_lnat(to_lnat(f))
    is_submodular(lift_multimodular(f), "pairs")
    convolve(set_table(S1), set_table(S2))
    local_minimize(f, (1, 1, 1))


@contextlib.contextmanager
def criterion(number, title, limit=None):
    state = {"detail": ""}
    t0 = time.perf_counter()
    ok = False
    try:
        yield state
        ok = True
    finally:
        dt = time.perf_counter() - t0
        if ok and limit is not None and dt >= limit:
            ok = False
            state["detail"] = f"runtime {dt:.2f}s exceeds {limit}s"
        bound = f" (< {limit:g}s)" if limit is not None else ""
        line = f"[{'PASS' if ok else 'FAIL'}] {number}. {title}: {dt:.2f}s{bound}"
        if state["detail"]:
            line += f" - {state['detail']}"
        conftest.ACCEPTANCE_LINES.append(line)
        print(line)
    assert ok, line


def _mat(q):
    return tuple(tuple(r) for r in q.matrix)


def test_1_example_31():
    with criterion(1, "transposition example (A3 / A3~)", limit=1.0) as st:
        v = is_quadratic_multimodular(A3)
        assert v.holds
        v = is_quadratic_multimodular(A3_T)
        assert not v.holds and v.witness.points["ij"] == (1, 3)
        assert conjugate_quadratic(A3) == B3 and is_L_class(B3).holds
        bt = conjugate_quadratic(A3_T)
        assert bt == B3_T
        assert bt.matrix[0][2] == bt.matrix[2][0] == 1
        lv = is_L_class(bt)
        assert not lv.holds and [ij for ij in lv.violations if ij[0] != ij[1]] == [(1, 3)]
        box = IntBox.cube(-2, 2, 3)
        f = A3.materialize(box)
        assert is_multimodular(f).holds
        g = permute_vars(f, (2, 1, 3))
        assert g == A3_T.materialize(box)
        w = is_multimodular(g)
        assert not w.holds and validate_witness(g, w.witness)
        st["detail"] = f"witness {w.witness.points}"


def test_2_example_41():
    with criterion(2, "sweep-out example (A4 / A4~)", limit=30.0) as st:
        assert is_quadratic_multimodular(A4).holds
        assert is_multimodular(A4.materialize(IntBox.cube(-2, 2, 4))).holds
        s = sweep_out(A4, 3)
        h = Fraction(1, 2)
        assert _mat(s) == ((5 * h, 1, -h), (1, 1, 0), (-h, 0, h))
        assert all(isinstance(x, Fraction) for row in s.matrix for x in row)
        v = is_quadratic_multimodular(s)
        assert not v.holds and v.witness.points["ij"] == (1, 2)
        assert conjugate_quadratic(A4) == B4 and is_L_class(B4).holds
        assert conjugate_quadratic(s) == B4_T and not is_L_class(B4_T).holds
        assert s == A4_T
        f = A4.materialize(IntBox.cube(-3, 3, 4))
        proj = project(f, (1, 2, 4))
        pv = is_multimodular(proj)
        assert not pv.holds and validate_witness(proj, pv.witness)
        st["detail"] = f"integer projection witness {pv.witness.kind} at {pv.witness.points}"


def test_3_example_42():
    with criterion(3, "Minkowski-sum example (S1+S2, T1+T2)", limit=1.0):
        assert minkowski_sum(S1, S2).points == S12.points
        assert minkowski_sum(T1, T2).points == T12.points
        assert is_multimodular_set(S1).holds and is_multimodular_set(S2).holds
        assert not is_multimodular_set(S12).holds
        assert is_lnat_set(T1).holds and is_lnat_set(T2).holds
        v = is_lnat_set(T12)
        assert not v.holds
        P = v.witness.points
        assert (P["p"], P["q"], P["ceil"], P["floor"]) == ((0, 1, 1), (1, 1, 0), (1, 1, 1), (0, 1, 0))
        conv = convolve(set_table(S1), set_table(S2))
        assert conv == S12.materialize(S12.bounding_box())
        assert conv == set_table(S12)


def test_4_table1_row():
    with criterion(4, "operations-table multimodular row", limit=300.0) as st:
        reports = table1_row(trials=50, seed=0)
        row = [r.observed for r in reports]
        st["detail"] = " ".join(row)
        assert row == list("NYYNYYNN")
        for r in reports:
            assert r.trials >= 50
            if r.expected == "N":
                assert r.fixture_witness is not None
            else:
                assert r.violated == 0


def _bridge_tables(count=120):
    kinds = harness.RECIPE_KINDS
    for t in range(count):
        n = 2 + t % 3
        recipe = GeneratorRecipe(kinds[t % 3], n, seed=1000 + t)
        f = random_multimodular(recipe)
        if t % 2:
            rng = np.random.default_rng(t)
            f = perturb(f, rng, bumps=int(rng.integers(1, 3)), holes=int(rng.integers(0, 3)))
        yield f


def test_5_bridges():
    with criterion(5, "bridge equivalences on 120 tables", limit=120.0) as st:
        agree = 0
        fails = 0
        for f in _bridge_tables():
            a = is_multimodular(f).holds
            b = is_lnat(to_lnat(f)).holds
            c = is_submodular(lift_multimodular(f)).holds
            assert a == b == c
            assert from_lnat(to_lnat(f)) == f
            agree += 1
            fails += not a
        assert 0 < fails < agree
        st["detail"] = f"{agree}/{agree} agree, {fails} non-multimodular"


def test_6_quadratic_criterion():
    with criterion(6, "quadratic criterion vs definition on 100 matrices", limit=180.0) as st:
        rng = random.Random(6)
        pool = [Fraction(k, 2) for k in range(-6, 7)]
        held = 0
        for _ in range(100):
            n = rng.randint(1, 4)
            m = [[Fraction(0)] * n for _ in range(n)]
            for i in range(n):
                for j in range(i, n):
                    m[i][j] = m[j][i] = rng.choice(pool)
            A = QuadraticFunction(m)
            crit = is_quadratic_multimodular(A).holds
            assert crit == is_multimodular(A.materialize(IntBox.cube(-3, 3, n))).holds
            assert crit == is_L_class(conjugate_quadratic(A)).holds
            held += crit
        assert 0 < held < 100
        st["detail"] = f"{held} multimodular, {100 - held} not"


def test_7_minimization():
    with criterion(7, "local = global minimization on 100 tables x 10 starts", limit=120.0):
        for n in range(1, 11):
            assert len(directions_T(n)) == 2**n - 1
        for t in range(100):
            n = 1 + t % 4
            f = random_multimodular(GeneratorRecipe(harness.RECIPE_KINDS[t % 3], n, seed=500 + t))
            best = brute_min(f).value
            dom = f.effective_domain()
            rng = random.Random(t)
            starts = rng.sample(dom, min(10, len(dom)))
            assert len(starts) >= 10 or len(starts) == len(dom)
            for x0 in starts:
                assert local_minimize(f, x0).value == best


CLOSURE_OPS = [
    ("shift", "shift"),
    ("negation", "negate"),
    ("reversal", "reverse"),
    ("variable scaling", "scale-vars"),
    ("value scaling", "scale-values"),
    ("linear term", "add-linear"),
    ("separable term", "add-separable"),
    ("sum", "add"),
    ("restriction", "restrict"),
    ("interval projection", "project-interval"),
]


def test_8_closure_properties():
    with criterion(8, "closure laws, 50 trials each") as st:
        tallies = []
        for label, op in CLOSURE_OPS:
            rep = closure_trial(op, trials=50, seed=8)
            assert rep.trials == 50
            assert rep.violated == 0, f"{label}: {rep.witnesses[0].describe()}"
            tallies.append(f"{op} {rep.preserved}/50")
        st["detail"] = ", ".join(tallies)
