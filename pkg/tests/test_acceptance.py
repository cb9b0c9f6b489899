"""Acceptance criteria, run at full scale.

Each test prints one ``CRITERION n PASS|FAIL`` line with its runtime and the
limit.  Values computed by the library are rechecked through a second route
where one exists: the bigon-removal oracle for intersection numbers, hand
transcriptions of the formulas, certificate replay for paths and a
subdivided-graph BFS for cone-off distances.
"""
import math
import random
import time
from contextlib import contextmanager
from fractions import Fraction

import networkx as nx
import pytest

from mcgraph.curve_engine import bigon_intersection, cut_along, dehn_twist
from mcgraph.curves import curve_from_json, curve_to_json, enumerate_curves, intersection_number
from mcgraph.extension_surgery import extend_once, extend_to_pants, transfer_path
from mcgraph.multicurve_graph import (
    base_distance,
    cone_distance,
    cone_distances_from,
    cone_off,
    is_adjacent,
)
from mcgraph.pretriangulation import verify_pants
from mcgraph.surface_core import GeometryClass, classify, f_of_k, signatures_up_to, witness_count
from mcgraph import sweeps

from conftest import S05, S06, S11, S12, primitive_slopes, slope_curve
from test_multicurve_graph import subdivided_distance
from test_surface_core import m_by_hand, rel_hyp_by_hand

pytestmark = pytest.mark.slow


@contextmanager
def criterion(capsys, n, title, limit):
    t = time.perf_counter()
    info = {}
    ok = False
    try:
        yield info
        ok = True
    finally:
        dt = time.perf_counter() - t
        ok = ok and dt < limit
        extra = " ".join(f"{k}={v}" for k, v in info.items())
        with capsys.disabled():
            print(f"\nCRITERION {n} {'PASS' if ok else 'FAIL'} {title}: {extra} "
                  f"[{dt:.1f} s, limit {limit} s]")
    assert dt < limit, f"criterion {n} took {dt:.1f} s (limit {limit} s)"


def bigon_multi(a, b):
    return sum(bigon_intersection(x, y) for x in a.curves for y in b.curves)


def test_criterion_1_formula_fidelity(capsys):
    with criterion(capsys, 1, "formula fidelity", 1) as info:
        n = 0
        for sig in signatures_up_to(12):
            g, p = sig.genus, sig.punctures
            for k in range(1, sig.xi + 1):
                m = witness_count(sig, k)
                cls = classify(sig, k)
                assert m == m_by_hand(g, p, k), (sig, k)
                assert (cls == GeometryClass.HYPERBOLIC) == (m == 1), (sig, k)
                assert not (rel_hyp_by_hand(g, p, k) and m == 1), (sig, k)
                assert (cls == GeometryClass.RELATIVELY_HYPERBOLIC) == rel_hyp_by_hand(g, p, k), (sig, k)
                n += 1
        assert max(s.xi for s in signatures_up_to(12)) == 12
        info["triples"] = n


def test_criterion_2_intersection_oracle(capsys):
    with criterion(capsys, 2, "intersection oracle", 120) as info:
        slopes = primitive_slopes(20)
        curves = [slope_curve(p, q) for p, q in slopes]
        n = 0
        for x in range(len(slopes)):
            p, q = slopes[x]
            for y in range(x, len(slopes)):
                p2, q2 = slopes[y]
                assert intersection_number(curves[x], curves[y]) == abs(p * q2 - p2 * q), (slopes[x], slopes[y])
                n += 1
        info["slope_pairs"] = n
        for sig in (S11, S05, S12):
            cs = enumerate_curves(sig, 39)
            m = 0
            for x in range(len(cs)):
                a = cs[x]
                for y in range(x, len(cs)):
                    b = cs[y]
                    if a.total_weight + b.total_weight > 40:
                        break
                    assert bigon_intersection(a, b) == intersection_number(a, b), (a.weights, b.weights)
                    m += 1
            info[f"pairs{sig.genus}{sig.punctures}"] = m


def test_criterion_3_twist_inequality(capsys):
    with criterion(capsys, 3, "twist inequality", 120) as info:
        rng = random.Random(3)
        pools = {sig: enumerate_curves(sig, 14) for sig in (S11, S05, S12, S06)}
        sigs = list(pools)
        worst = 0
        for j in range(1000):
            cs = pools[sigs[j % len(sigs)]]
            a, g, b = (rng.choice(cs) for _ in range(3))
            n = rng.choice([-1, 1]) * rng.randint(1, 10)
            ta = dehn_twist(g, n, a)
            lhs = abs(intersection_number(ta, b) - abs(n) * intersection_number(a, g) * intersection_number(g, b))
            rhs = intersection_number(a, b)
            assert lhs <= rhs, (a.weights, g.weights, b.weights, n)
            worst = max(worst, lhs)
        info["triples"] = 1000
        info["max_lhs"] = worst


def _lemma33_pairs():
    return {sig: sweeps.lemma33_pairs(sig, 500, seed=33) for sig in (S05, S06, S12)}


def test_criterion_4_extend_once(capsys):
    with criterion(capsys, 4, "one-curve extension", 300) as info:
        for sig, pairs in _lemma33_pairs().items():
            for a, b in pairs:
                i = bigon_multi(a, b)
                out, rep = extend_once(a, b)
                (new,) = [c for c in out.curves if c.weights not in set(a.key())]
                # essential: the record validator rejects peripheral and trivial classes
                curve_from_json(curve_to_json(new))
                assert out.k == a.k + 1 and set(a.key()) < set(out.key())
                assert all(bigon_intersection(new, x) == 0 for x in a.curves)
                assert bigon_multi(out, b) <= 2 * i
                assert all(rep.checks.values())
            info[f"pairs{sig.genus}{sig.punctures}"] = len(pairs)


def test_criterion_5_extend_to_pants(capsys):
    with criterion(capsys, 5, "extension to pants", 300) as info:
        worst = Fraction(0)
        for sig, pairs in _lemma33_pairs().items():
            for a, b in pairs:
                i = bigon_multi(a, b)
                ext = extend_to_pants(a, b)
                at, bt = ext.alpha_tilde, ext.beta_tilde
                assert at.k == bt.k == sig.xi
                assert not verify_pants(sig, at.curves) and not verify_pants(sig, bt.curves)
                assert set(a.key()) <= set(at.key()) and set(b.key()) <= set(bt.key())
                it = bigon_multi(at, bt)
                assert it <= 4 ** (sig.xi - a.k) * i
                if i:
                    worst = max(worst, Fraction(it, 4 ** (sig.xi - a.k) * i))
            info[f"pairs{sig.genus}{sig.punctures}"] = len(pairs)
        info["max_ratio"] = f"{float(worst):.3f}"


def test_criterion_6_transfer(capsys):
    with criterion(capsys, 6, "path transfer", 300) as info:
        for sig in (S05, S12):
            longest = 0
            for walk, a, b in sweeps.lemma35_samples(sig, 200, seed=35, max_len=8):
                m = len(walk) - 1
                assert m <= 8
                assert all(is_adjacent(x, y).adjacent for x, y in zip(walk, walk[1:]))
                path = transfer_path(walk, a, b)
                vs = path.vertices
                assert vs[0].key() == a.key() and vs[-1].key() == b.key()
                assert all(is_adjacent(x, y).adjacent for x, y in zip(vs, vs[1:]))
                assert len(vs) - 1 <= m + f_of_k(sig, a.k)
                longest = max(longest, m)
            info[f"paths{sig.genus}{sig.punctures}"] = 200
            info[f"max_m{sig.genus}{sig.punctures}"] = longest


def test_criterion_7_theorem_e(capsys):
    with criterion(capsys, 7, "distance bound k=1 on S(0,5)", 600) as info:
        res = sweeps.sweep_theorem_e(S05, 1, samples=500, seed=7)
        assert len(res.rows) == 500
        for row in res.rows:
            if row["satisfied"] != sweeps.SATISFIED:
                continue
            i = int(row["i"])
            assert int(row["bound"]) == 96 * i * i + 1
            got = [int(row[c]) for c in ("constructive_len", "bfs_upper") if row[c]]
            assert got and min(got) <= 96 * i * i + 1
        inc = res.count(sweeps.INCONCLUSIVE)
        info["satisfied"] = res.count(sweeps.SATISFIED)
        info["falsified"] = res.count(sweeps.FALSIFIED)
        info["inconclusive"] = inc
        assert res.count(sweeps.FALSIFIED) == 0
        assert inc < 0.05 * 500


def test_criterion_7_intersections_recheck():
    """Row intersection numbers agree with the bigon oracle."""
    from mcgraph.sampling import default_universe, random_pair, rng_for

    U = default_universe(S05)
    rng = rng_for(7)
    pairs = [random_pair(U, 1, rng) for _ in range(20)]
    res = sweeps.sweep_theorem_e(S05, 1, samples=20, seed=7)
    for (a, b), row in zip(pairs, res.rows):
        assert int(row["i"]) == bigon_multi(a, b)


def test_criterion_8_appendix(capsys):
    with criterion(capsys, 8, "superimposition construction", 900) as info:
        for sig in (S05, S12):
            build = sweeps.sweep_build_pants(sig, 100, seed=8)
            for (P, Q), row in zip(sweeps.pants_pairs(sig, 100, 8), build.rows):
                assert row["pants_ok"] == "1" and row["recovered_P"] == "1" and row["recovered_P2"] == "1"
                assert not verify_pants(sig, P.curves) and not verify_pants(sig, Q.curves)
                assert all(p.is_pants for p in cut_along(sig, P.curves))
                assert int(row["edges"]) == 2 * int(row["vertices"]) == 2 * bigon_multi(P, Q)
            full = sweeps.sweep_appendix(sig, 100, seed=8)
            max_swap = 0
            for row in full.rows:
                i = int(row["i"])
                got = [int(row[c]) for c in ("constructive_len", "bfs_upper") if row[c]]
                assert min(got) <= 6 * i * i - 3 * i <= 6 * i * i
                assert row["max_swap"] == "" or int(row["max_swap"]) <= 3
                assert row["recovered"] == "1" and row["satisfied"] == sweeps.SATISFIED
                max_swap = max(max_swap, int(row["max_swap"] or 0))
            info[f"samples{sig.genus}{sig.punctures}"] = len(full.rows)
            info[f"max_swap{sig.genus}{sig.punctures}"] = max_swap


def test_criterion_9_cone_off(capsys):
    with criterion(capsys, 9, "cone-off distances", 60) as info:
        rng = random.Random(9)
        checked = 0
        for j in range(50):
            n = rng.randint(2, 200)
            G = nx.gnp_random_graph(n, rng.uniform(0.5, 4.0) / n, seed=rng.randrange(2**31))
            subsets = [rng.sample(range(n), rng.randint(1, min(n, 12))) for _ in range(rng.randint(0, 6))]
            cg = cone_off(G, subsets)
            for u in range(n):
                cone = cone_distances_from(cg, u)
                base = nx.single_source_shortest_path_length(G, u)
                for v, d in base.items():
                    assert isinstance(cone[v], Fraction) and cone[v] <= d
                checked += len(base)
            for t, s in enumerate(cg.subsets):
                for x in s:
                    assert cone_distance(cg, x, cg.cone_vertex(t)) == Fraction(1, 2)
                    for y in s:
                        assert cone_distance(cg, x, y) <= 1
            for u in rng.sample(range(n), min(n, 5)):
                v = rng.randrange(n)
                assert cone_distance(cg, u, v) == subdivided_distance(G, cg.subsets, u, v)
                assert base_distance(G, u, v) == (None if v not in nx.node_connected_component(G, u)
                                                  else nx.shortest_path_length(G, u, v))
        info["graphs"] = 50
        info["base_pairs"] = checked
