# tests/test_martin_engine.py
import itertools
from fractions import Fraction

import pytest

from smcmartin.chain.language import enumerate_language
from smcmartin.chain.presets import eg4
from smcmartin.errors import BudgetError, UnreachableTargetError
from smcmartin.martin.engine import MartinEngine, default_weight
from smcmartin.settings import Settings
from tests.helpers import w

F = Fraction


def test_nstep_prob(engine3, m4):
    assert engine3.nstep_prob(w("a"), w("bca"), 2) == F(1, 16)
    assert engine3.nstep_prob(w("a"), w("bca"), 1) == 0
    assert engine3.nstep_prob(w("ba"), w("ba"), 0) == 1
    assert MartinEngine(m4).nstep_prob(w("a"), w("a"), 3) == F(1, 8)


def test_green_values(engine3, m4):
    assert engine3.green(w("a"), w("bca")) == F(1, 16)
    assert engine3.green(w("bca"), w("a")) == 0
    assert engine3.green(w("a"), w("a")) == 1
    assert MartinEngine(m4).green(w("a"), w("a")) == 2


@pytest.mark.parametrize("q", [F(1, 2), F(1, 3), F(3, 4)])
def test_green_geometric_self_loops(q):
    engine = MartinEngine(eg4(q))
    assert engine.green(w("a"), w("a")) == 1 / q
    # one exit step (q/4) between two self-loop stretches
    assert engine.green(w("a"), w("ba")) == (q / 4) / q ** 2


def test_green_matches_truncated_nstep_sum(m1, m3):
    for m in (m1, m3):
        engine = MartinEngine(m)
        levels = enumerate_language(m, "a", 3)
        targets = levels.union()
        for x, y in itertools.product(targets[:8], targets):
            # lengths grow by at least one per step off the self-loops, so n <= |y| - |x| suffices
            direct = sum((engine.nstep_prob(x, y, n) for n in range(len(y) - len(x) + 1)), F(0))
            assert engine.green(x, y) == direct


def test_green_table_intermediate(engine3):
    table = engine3.green_table(w("a"), w("bca"))
    assert table.value == F(1, 16)
    assert set(table.intermediate) == {w("a"), w("ba"), w("bca")}


def test_kernel(engine3):
    assert engine3.kernel(w("ba"), w("bca")) == 4
    assert engine3.kernel(w("ca"), w("bca")) == 0
    assert engine3.kernel(w("ba"), w("bab")) == 2
    for x in enumerate_language(engine3.model, "a", 3).union():
        assert engine3.kernel(w("a"), x) == 1
        assert engine3.kernel(x, x) == 1 / engine3.green(w("a"), x)
    with pytest.raises(UnreachableTargetError):
        engine3.kernel(w("a"), w("bb"))


def test_theta_examples(engine3):
    assert engine3.theta(w("ba"), w("ba")) == 0
    assert engine3.theta(w("ba"), w("ab")) == F(1, 2)
    assert engine3.theta(w("ba"), w("ca")) == F(1, 2)
    assert engine3.theta(w("a"), w("ba")) == F(1, 4)
    assert engine3.theta(w("bab"), w("ba")) == F(9, 32)


def test_theta_is_a_metric_on_small_levels(engine3):
    words = enumerate_language(engine3.model, "a", 3).union()
    theta = {(x, y): engine3.theta(x, y) for x in words for y in words}
    for x, y in itertools.product(words, repeat=2):
        assert theta[x, y] == theta[y, x]
        assert (theta[x, y] == 0) == (x == y)
    for x, y, z in itertools.product(words, repeat=3):
        assert theta[x, y] <= theta[x, z] + theta[z, y]


def test_ancestors(engine3):
    assert engine3.ancestors(w("bca")) == [w("a"), w("ba"), w("bca")]


def test_transience(engine3, m1, m4):
    r3 = engine3.transience_check(w("a"))
    assert (r3.eta, r3.green_vv, r3.bound_ok) == (1, 1, True)
    r4 = MartinEngine(m4).transience_check(w("a"))
    assert r4.eta == F(1, 2) and r4.green_vv == 2 and r4.bound_ok
    r1 = MartinEngine(m1).transience_check(w("b"))
    assert r1.eta == 0 and not r1.transient and not r1.bound_ok
    assert "NonTransientError" in r1.note


def test_transience_bound_holds_on_presets(m1, m2, m3, m4, m5):
    for m in (m1, m2, m3, m4, m5):
        engine = MartinEngine(m)
        for v in [w("a"), w("ab"), w("ba")]:
            report = engine.transience_check(v)
            if report.eta > 0:
                assert report.green_vv * report.eta <= 1


def test_weight_admissibility_eg3(engine3):
    sums = engine3.weight_admissibility(5)
    assert all(a <= b for a, b in zip(sums, sums[1:]))
    assert sums[-1] <= 16
    assert sums[0] == default_weight(w("a")) / 1


def test_budget_caps(m3):
    engine = MartinEngine(m3, settings=Settings(max_target_length=4))
    with pytest.raises(BudgetError):
        engine.green(w("a"), w("bbcca"))


@pytest.mark.slow
def test_theta_is_a_metric_through_level_four(engine3):
    words = enumerate_language(engine3.model, "a", 4).union()
    assert len(words) == 129
    theta = {(x, y): engine3.theta(x, y) for x in words for y in words}
    for x, y in itertools.product(words, repeat=2):
        assert theta[x, y] == theta[y, x]
        assert (theta[x, y] == 0) == (x == y)
    for x, y, z in itertools.product(words, repeat=3):
        assert theta[x, y] <= theta[x, z] + theta[z, y]
