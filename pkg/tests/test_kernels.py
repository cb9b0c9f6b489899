"""The numba kernels and their numpy/Python fallbacks must agree exactly."""
import numpy as np
import pytest
from hypothesis import given, strategies as st

from mcgraph import _kernels as K
from mcgraph.arrangement import Arrangement
from mcgraph.curves import enumerate_curves, tri_arrays

from conftest import S05, S06, S11, S12

pytestmark = pytest.mark.skipif(not K.HAVE_NUMBA, reason="numba not installed")

CURVES = {sig: enumerate_curves(sig, 14) for sig in (S11, S05, S12, S06)}


def random_walk(partner, n, rng):
    # closed dual paths need not be reduced for these kernels
    d = int(rng.integers(len(partner)))
    out = []
    for _ in range(n):
        out.append(d)
        d = int(partner[d])
        d = 3 * (d // 3) + (d % 3 + int(rng.integers(1, 3))) % 3
    return np.array(out, dtype=np.int64)


@pytest.mark.parametrize("sig", [S11, S05, S12])
@given(seed=st.integers(0, 10**6), n=st.integers(0, 40))
def test_cyclic_reduce_agrees(sig, seed, n):
    _, partner, _, _ = tri_arrays(sig)
    u = random_walk(partner, n, np.random.default_rng(seed))
    assert K.cyclic_reduce_numba(u, partner).tolist() == K.cyclic_reduce_numpy(u, partner).tolist()


@pytest.mark.parametrize("sig", [S05, S12])
@given(data=st.data())
def test_linked_count_agrees(sig, data):
    _, partner, _, _ = tri_arrays(sig)
    a = data.draw(st.sampled_from(CURVES[sig])).path
    b = data.draw(st.sampled_from(CURVES[sig])).path
    rb = K.reverse_path_numpy(b, partner)
    for w in (b, rb):
        assert K.linked_count_numba(a, w, partner) == K.linked_count_numpy(a, w, partner)


@given(n=st.integers(1, 60), seed=st.integers(0, 10**6))
def test_merge_cells_agrees(n, seed):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(0, 3 * n))
    ea = rng.integers(0, n, m).astype(np.int64)
    eb = rng.integers(0, n, m).astype(np.int64)
    keep = rng.random(m) < 0.6
    a = K.merge_cells_numba(ea, eb, keep, n)
    b = K.merge_cells_numpy(ea, eb, keep, n)
    assert a.tolist() == b.tolist()
    # labels are the minimum cell of each class
    assert all(a[c] <= c and a[a[c]] == a[c] for c in range(n))


@given(seed=st.integers(0, 10**6), na=st.integers(0, 6), nb=st.integers(0, 6))
def test_tri_cross_agrees(seed, na, nb):
    rng = np.random.default_rng(seed)
    keys = rng.permutation(60)[: 2 * (na + nb)].astype(np.int64)
    ki, ko = keys[: na + nb].copy(), keys[na + nb:].copy()
    got = K.tri_cross_numba(ki, ko, na, 60)
    ref = K.tri_cross_numpy(ki, ko, na, 60)
    for x, y in zip(got, ref):
        assert x.tolist() == y.tolist()


@pytest.mark.parametrize("sig", [S11, S05, S12, S06])
@given(data=st.data())
def test_bigon_kernel_matches_reference_loop(sig, data):
    a = data.draw(st.sampled_from(CURVES[sig]))
    b = data.draw(st.sampled_from(CURVES[sig]))
    x = Arrangement(sig, [a.weights, b.weights])
    y = Arrangement(sig, [a.weights, b.weights])
    nx = x._remove_bigons_kernel(None)
    ny = y._remove_bigons_py(None)
    assert nx == ny
    assert x.mpos.tolist() == y.mpos.tolist()
    assert x.orders == y.orders
    assert x.crossing_count() == sum(len(c) for c in y.crossings())
