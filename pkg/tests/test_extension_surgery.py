import pytest
from hypothesis import given, strategies as st

from mcgraph.curve_engine import bigon_intersection
from mcgraph.curves import as_curve, class_intersection, enumerate_curves
from mcgraph.extension_surgery import (
    bound_theorem_e,
    check_bound,
    extend_once,
    extend_to_pants,
    judge,
    transfer_path,
)
from mcgraph.multicurve_graph import KMulticurve, MulticurvePath, is_adjacent, multicurve_intersection
from mcgraph.sampling import default_universe, random_pair, random_pants_path, rng_for, sub_multicurve
from mcgraph.surface_core import InvalidMulticurveSize, f_of_k

from conftest import S05, S06, S12

C05 = enumerate_curves(S05, 12)


def km(*cs):
    return KMulticurve.of(cs)


def test_bound_examples():
    assert bound_theorem_e(S05, 1, 1) == 97
    assert bound_theorem_e(S06, 1, 1) == 1537
    assert bound_theorem_e(S06, 2, 0) == f_of_k(S06, 2)
    with pytest.raises(InvalidMulticurveSize):
        bound_theorem_e(S05, 2, 3)


def test_judge():
    assert judge(10, [None, None]) == "Inconclusive"
    assert judge(10, [12, 9]) == "Satisfied"
    assert judge(10, [12, None]) == "Falsified"


def test_extend_disjoint_pair_stays_disjoint():
    a = C05[0]
    b = next(c for c in C05 if c.weights != a.weights and class_intersection(a, c) == 0)
    out, rep = extend_once(km(a), km(b))
    assert rep.i_after == 0 and multicurve_intersection(out, km(b)) == 0


def test_extend_pants_is_rejected():
    a = C05[0]
    b = next(c for c in C05 if c.weights != a.weights and class_intersection(a, c) == 0)
    with pytest.raises(InvalidMulticurveSize):
        extend_once(km(a, b), km(a))


def test_extend_example_with_two_crossings():
    a = C05[0]
    b = next(c for c in C05 if class_intersection(a, c) == 2)
    out, rep = extend_once(km(a), km(b))
    assert rep.i_before == 2 and rep.i_after <= 4
    assert multicurve_intersection(out, km(b)) == rep.i_after


def check_extension(a, b):
    out, rep = extend_once(a, b)
    (new,) = set(out.key()) - set(a.key())
    c = as_curve(out.curves[[x.weights for x in out.curves].index(new)])
    i0 = multicurve_intersection(a, b)
    # independent recount of the new intersection by bigon removal
    i1 = i0 + sum(bigon_intersection(c, y) for y in b.curves)
    assert all(bigon_intersection(c, x) == 0 for x in a.curves)
    assert set(a.key()) < set(out.key()) and out.k == a.k + 1
    assert rep.i_after == i1 <= 2 * i0
    assert all(rep.checks.values())


@pytest.mark.parametrize("sig", [S05, S12, S06])
@given(seed=st.integers(0, 10**6))
def test_extend_once_postconditions(sig, seed):
    rng = rng_for(seed)
    U = default_universe(sig)
    k = rng.randint(1, sig.xi - 1)
    a, b = random_pair(U, k, rng)
    check_extension(a, b)


@pytest.mark.parametrize("sig", [S05, S12, S06])
@given(seed=st.integers(0, 10**6))
def test_extend_to_pants_bound(sig, seed):
    rng = rng_for(seed)
    U = default_universe(sig)
    k = rng.randint(1, sig.xi - 1)
    a, b = random_pair(U, k, rng)
    ext = extend_to_pants(a, b)
    assert ext.alpha_tilde.k == ext.beta_tilde.k == sig.xi
    assert set(a.key()) <= set(ext.alpha_tilde.key()) and set(b.key()) <= set(ext.beta_tilde.key())
    assert ext.i_end == multicurve_intersection(ext.alpha_tilde, ext.beta_tilde)
    assert ext.i_end <= 4 ** (sig.xi - k) * multicurve_intersection(a, b)


def test_transfer_of_constant_path():
    P = KMulticurve.of([C05[0], next(c for c in C05[1:] if class_intersection(C05[0], c) == 0)])
    a, b = km(P.curves[0]), km(P.curves[1])
    path = transfer_path([P], a, b)
    assert path.length <= f_of_k(S05, 1) and path.is_valid()


@pytest.mark.parametrize("sig", [S05, S12])
@given(seed=st.integers(0, 10**6))
def test_transfer_random_paths(sig, seed):
    rng = rng_for(seed)
    U = default_universe(sig)
    walk = random_pants_path(U, rng.randint(0, 4), rng)
    assert MulticurvePath(walk).is_valid()
    k = rng.randint(1, sig.xi - 1)
    a, b = sub_multicurve(walk[0], k, rng), sub_multicurve(walk[-1], k, rng)
    path = transfer_path(walk, a, b)
    assert path.vertices[0].key() == a.key() and path.vertices[-1].key() == b.key()
    assert all(is_adjacent(x, y).adjacent for x, y in zip(path.vertices, path.vertices[1:]))
    assert path.length <= len(walk) - 1 + f_of_k(sig, k)


def test_check_bound_trivial_cases():
    U = default_universe(S05)
    a = km(U.curves[0])
    rep = check_bound(a, a, U)
    assert rep.status == "Satisfied" and rep.i == 0
    assert min(x for x in (rep.constructive_len, rep.bfs_upper) if x is not None) == 0
    b = km(next(c for c in U.curves if c.weights != U.curves[0].weights and class_intersection(c, U.curves[0]) == 0))
    rep = check_bound(a, b, U)
    assert rep.status == "Satisfied" and rep.bfs_upper == 1


def test_check_bound_random_pairs():
    U = default_universe(S05)
    rng = rng_for(11)
    for _ in range(4):
        a, b = random_pair(U, 1, rng)
        rep = check_bound(a, b, U)
        assert rep.status == "Satisfied"
        assert rep.constructive_path.is_valid()
        assert rep.bound == 96 * rep.i ** 2 + 1
