import pytest

from mcgraph import sweeps
from mcgraph.curves import class_intersection
from mcgraph.multicurve_graph import PANTS_MOVE_I, move_piece
from mcgraph.sampling import (
    default_universe,
    random_pairs,
    random_pants_path,
    rng_for,
    seed_marking,
    sub_multicurve,
)

from conftest import S05, S12


@pytest.mark.parametrize("sig", [S05, S12])
def test_seed_marking_fills(sig):
    from mcgraph.multicurve_graph import fills

    P, Q = seed_marking(sig)
    assert fills(sig, list(P) + list(Q))
    assert all(class_intersection(x, y) == 0 for x in P for y in P)


def test_pairs_are_seed_deterministic():
    a = random_pairs(S05, 1, 10, seed=3)
    b = random_pairs(S05, 1, 10, seed=3)
    assert [(x.key(), y.key()) for x, y in a] == [(x.key(), y.key()) for x, y in b]
    assert all(x.key() != y.key() for x, y in a)


@pytest.mark.parametrize("sig", [S05, S12])
def test_pants_path_moves(sig):
    walk = random_pants_path(default_universe(sig), 5, rng_for(1))
    assert len({P.key() for P in walk}) == len(walk)
    for P, Q in zip(walk, walk[1:]):
        gone = set(P.key()) - set(Q.key())
        new = set(Q.key()) - set(P.key())
        assert len(gone) == len(new) == 1
        (c,) = [x for x in P.curves if x.weights in gone]
        (d,) = [x for x in Q.curves if x.weights in new]
        rest = [x for x in P.curves if x.weights not in gone]
        assert class_intersection(c, d) == PANTS_MOVE_I[move_piece(sig, rest)]


def test_sub_multicurve():
    P = random_pants_path(default_universe(S12), 0, rng_for(2))[0]
    Q = sub_multicurve(P, 2, rng_for(2))
    assert Q.k == 2 and set(Q.key()) <= set(P.key())


@pytest.mark.parametrize("name, fn, kw", [
    ("theorem-e", sweeps.sweep_theorem_e, dict(k=1)),
    ("lemma33", sweeps.sweep_lemma33, {}),
    ("lemma35", sweeps.sweep_lemma35, dict(max_len=3)),
    ("appendix", sweeps.sweep_appendix, {}),
    ("build-pants", sweeps.sweep_build_pants, {}),
])
def test_small_sweeps(name, fn, kw):
    r1 = fn(S05, samples=4, seed=11, **kw)
    r2 = fn(S05, samples=4, seed=11, **kw)
    assert r1.rows == r2.rows
    assert r1.exit_status == 0 and r1.count(sweeps.SATISFIED) == 4
    assert all(set(r1.columns) == set(row) for row in r1.rows)
    assert {"sample", "satisfied"} <= set(r1.columns)


def test_swap_sweep_rows():
    r = sweeps.sweep_swaps(S05, samples=2, seed=4)
    assert r.exit_status == 0
    assert all(int(row["distance"]) <= 3 for row in r.rows)


def test_reproducer_takes_smallest_i(monkeypatch):
    from mcgraph.extension_surgery import ConstructionDefect

    def broken(a, b, U):
        raise ConstructionDefect("forced")

    monkeypatch.setattr(sweeps, "check_bound", broken)
    r = sweeps.sweep_theorem_e(S05, 1, samples=5, seed=0)
    assert r.exit_status == 1 and r.count(sweeps.FALSIFIED) == 5
    rep = r.reproducer()
    assert int(rep["row"]["i"]) == min(int(x["i"]) for x in r.rows)
    assert "pair" in rep and rep["error"] == "forced"


def test_budget_gives_inconclusive(monkeypatch):
    from mcgraph.curves import TracingBudgetExceeded

    def tired(a, b, U):
        raise TracingBudgetExceeded("budget")

    monkeypatch.setattr(sweeps, "check_bound", tired)
    r = sweeps.sweep_theorem_e(S05, 1, samples=3, seed=0)
    assert r.exit_status == 3 and r.count(sweeps.INCONCLUSIVE) == 3
