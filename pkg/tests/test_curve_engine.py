import pytest
from hypothesis import given, strategies as st

from mcgraph.arrangement import Arrangement
from mcgraph.curve_engine import (
    OverlappingCurves,
    bigon_intersection,
    cut_along,
    dehn_twist,
    minimal_arrangement,
)
from mcgraph.curves import EmptyMulticurve, class_intersection, enumerate_curves, intersection_number

from conftest import S04, S05, S06, S11, S12, primitive_slopes, slope_curve

CURVES = {sig: enumerate_curves(sig, 12) for sig in (S11, S05, S12, S04, S06)}


def test_slope_examples():
    assert intersection_number(slope_curve(0, 1), slope_curve(1, 0)) == 1
    assert intersection_number(slope_curve(1, 2), slope_curve(1, 0)) == 2
    a = slope_curve(3, 5)
    assert intersection_number(a, a) == 0


def test_slope_determinant_small():
    sl = primitive_slopes(6)
    cs = {s: slope_curve(*s) for s in sl}
    for a in sl:
        for b in sl:
            assert intersection_number(cs[a], cs[b]) == abs(a[0] * b[1] - a[1] * b[0])


@pytest.mark.parametrize("sig", [S11, S05, S12, S04, S06])
@given(data=st.data())
def test_bigon_oracle_agrees(sig, data):
    a = data.draw(st.sampled_from(CURVES[sig]))
    b = data.draw(st.sampled_from(CURVES[sig]))
    assert bigon_intersection(a, b) == intersection_number(a, b)


@pytest.mark.parametrize("sig", [S11, S05, S12])
def test_minimal_arrangement_map_is_the_surface(sig):
    cs = CURVES[sig]
    for a, b in zip(cs[::7], cs[3::7]):
        arr = minimal_arrangement(a, b)
        assert arr.build_map().euler_check() == 2 - 2 * sig.genus


def test_twist_example_on_torus():
    r = dehn_twist(slope_curve(0, 1), 1, slope_curve(1, 0))
    assert intersection_number(r, slope_curve(1, 0)) == 1
    assert intersection_number(r, slope_curve(0, 1)) == 1
    assert r.weights in (slope_curve(1, 1).weights, slope_curve(1, -1).weights)


def test_twist_power_zero_is_identity():
    c = CURVES[S05][5]
    assert dehn_twist(CURVES[S05][9], 0, c) is c


@pytest.mark.parametrize("sig", [S05, S12])
@given(data=st.data(), n=st.integers(-4, 4))
def test_twist_group_laws_and_inequality(sig, data, n):
    cs = CURVES[sig]
    a, g, b = (data.draw(st.sampled_from(cs)) for _ in range(3))
    ta = dehn_twist(g, n, a)
    assert dehn_twist(g, -n, ta) == a
    assert dehn_twist(g, 1, dehn_twist(g, n, a)) == dehn_twist(g, n + 1, a)
    lhs = abs(intersection_number(ta, b) - abs(n) * class_intersection(a, g) * class_intersection(g, b))
    assert lhs <= intersection_number(a, b)
    # twisting preserves intersection with the twisting curve
    assert intersection_number(ta, g) == intersection_number(a, g)


def test_cut_examples():
    one = cut_along(S05, [CURVES[S05][0]])
    assert sum(p.ends for p in one) == 5 + 2 and sum(p.chi for p in one) == -3
    # a pants decomposition of the five-punctured sphere
    a = CURVES[S05][0]
    b = next(c for c in CURVES[S05] if c.weights != a.weights and class_intersection(a, c) == 0)
    pieces = cut_along(S05, [a, b])
    assert [p.signature for p in pieces] == [(0, 3)] * 3


def test_nonseparating_cut_on_genus_one():
    # a curve of S(1,2) cutting to a four-holed sphere exists among short curves
    sigs = {tuple(sorted(p.signature for p in cut_along(S12, [c]))) for c in CURVES[S12][:30]}
    assert ((0, 4),) in sigs


def test_cut_errors():
    a = CURVES[S05][0]
    b = next(c for c in CURVES[S05] if class_intersection(a, c) > 0)
    with pytest.raises(OverlappingCurves):
        cut_along(S05, [a, b])
    with pytest.raises(EmptyMulticurve):
        cut_along(S05, [])


def test_arrangement_counts_before_removal_are_upper_bounds():
    cs = CURVES[S12]
    for a, b in zip(cs[::5], cs[2::5]):
        arr = Arrangement(S12, [a.weights, b.weights])
        assert arr.crossing_count() >= intersection_number(a, b)
