import pytest
from hypothesis import given, strategies as st

from mcgraph.curves import (
    CurveClass,
    CurveError,
    EmptyMulticurve,
    NotACurve,
    ParityViolation,
    TracingBudgetExceeded,
    TriangleInequalityViolation,
    as_curve,
    components,
    curve_from_json,
    curve_from_path,
    curve_to_json,
    enumerate_curves,
    multicurve_from_classes,
    validate_normal,
)
from mcgraph.surface_core import SurfaceSig
from mcgraph.triangulation import TRIANGULATION_TAG, UnsupportedSurface, build_triangulation

from conftest import S05, S11, S12, slope_curve

CURVES = {sig: enumerate_curves(sig, 14) for sig in (S11, S05, S12)}


@pytest.mark.parametrize("sig,t,e", [((1, 1), 2, 3), ((0, 5), 6, 9), ((1, 2), 4, 6)])
def test_triangulation_counts(sig, t, e):
    tri = build_triangulation(sig)
    assert (tri.n_triangles, tri.n_edges) == (t, e)
    assert tri.tag == TRIANGULATION_TAG
    # partner is a fixed-point-free involution pairing darts of one edge
    for d in range(tri.n_darts):
        p = int(tri.partner[d])
        assert p != d and int(tri.partner[p]) == d and tri.edge_of(p) == tri.edge_of(d)
    assert len(tri.vertex_cycles()) == tri.n_vertices


def test_triangulation_is_deterministic():
    a, b = build_triangulation((1, 2)), build_triangulation(SurfaceSig(1, 2))
    assert a.sides == b.sides and (a.partner == b.partner).all()


def test_closed_surfaces_unsupported():
    with pytest.raises(UnsupportedSurface):
        build_triangulation((2, 0))


def test_validate_rejections():
    tri = build_triangulation(S11)
    with pytest.raises(ParityViolation):
        validate_normal(tri, [1, 0, 0])
    with pytest.raises(EmptyMulticurve):
        validate_normal(tri, [0, 0, 0])
    with pytest.raises(TriangleInequalityViolation):
        validate_normal(tri, [4, 1, 1])
    with pytest.raises(CurveError):
        validate_normal(tri, [1, 1])
    with pytest.raises(CurveError):
        validate_normal(tri, [-1, 1, 0])


def test_slope_zero_curve_accepted():
    c = slope_curve(0, 1)
    assert isinstance(c, CurveClass)
    assert components(c) == [(c, 1)]


def test_puncture_link_is_peripheral():
    link = validate_normal(build_triangulation(S11), [2, 2, 2])
    (comp, mult), = components(link)
    assert comp[0] == "peripheral" and mult == 1
    with pytest.raises(NotACurve):
        as_curve(link)


def test_doubled_curve_has_multiplicity_two():
    c = slope_curve(0, 1)
    dbl = validate_normal(build_triangulation(S11), [2 * x for x in c.weights])
    assert components(dbl) == [(c, 2)]
    with pytest.raises(NotACurve):
        as_curve(dbl)


@pytest.mark.parametrize("sig", [S11, S05, S12])
def test_enumeration_is_sorted_and_unique(sig):
    cs = CURVES[sig]
    keys = [(c.total_weight, c.weights) for c in cs]
    assert keys == sorted(set(keys))


@pytest.mark.parametrize("sig", [S11, S05, S12])
@given(data=st.data())
def test_path_round_trip(sig, data):
    c = data.draw(st.sampled_from(CURVES[sig]))
    assert curve_from_path(sig, c.path).weights == c.weights


@pytest.mark.parametrize("sig", [S05, S12])
@given(data=st.data())
def test_union_of_disjoint_curves_splits_back(sig, data):
    from mcgraph.curves import class_intersection

    cs = CURVES[sig]
    a = data.draw(st.sampled_from(cs))
    others = [c for c in cs if c.weights != a.weights and class_intersection(a, c) == 0]
    if not others:
        return
    b = data.draw(st.sampled_from(others))
    m = validate_normal(build_triangulation(sig), multicurve_from_classes([a, b], [2, 1]).weights)
    got = {c.weights: k for c, k in components(m)}
    assert got == {a.weights: 2, b.weights: 1}


def test_json_round_trip_and_tag_check():
    c = CURVES[S05][7]
    rec = curve_to_json(c)
    assert rec["triangulation"] == "canonical-v1"
    assert all(isinstance(x, str) for x in rec["weights"])
    assert curve_from_json(rec).weights == c.weights
    with pytest.raises(CurveError):
        curve_from_json({**rec, "triangulation": "other"})
    with pytest.raises(CurveError):
        curve_from_json({**rec, "weights": ["1", "x"] + rec["weights"][2:]})
    with pytest.raises(CurveError):
        curve_from_json({"weights": rec["weights"]})


def test_tracing_budget_env(monkeypatch):
    c = CURVES[S05][-1]
    monkeypatch.setenv("MCGRAPH_TRACE_BUDGET", str(c.total_weight - 1))
    with pytest.raises(TracingBudgetExceeded):
        components(validate_normal(build_triangulation(S05), [3 * x for x in c.weights]))
    monkeypatch.delenv("MCGRAPH_TRACE_BUDGET")
    assert components(c) == [(c, 1)]
