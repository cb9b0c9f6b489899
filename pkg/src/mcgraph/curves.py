"""Normal multicurves on the canonical triangulation.

A multicurve in normal position is determined by its weight vector (one
non-negative integer per edge).  Tracing the normal arcs turns each connected
component into a cyclic path in the dual graph, written as the sequence of
exit darts; that path is cyclically reduced, so it is also the canonical
representative of the free homotopy class.  Going back from a path to weights
is just counting the edges it crosses.

Intersection numbers are computed from the dual paths by counting linked
pairs of maximal common segments.  An independent check by explicit
realization and bigon removal lives in :mod:`mcgraph.arrangement`.
"""
from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import _kernels
from .surface_core import SurfaceSig, as_sig
from .triangulation import TRIANGULATION_TAG, IdealTriangulation, build_triangulation

DEFAULT_TRACE_BUDGET = 10**6
BUDGET_ENV = "MCGRAPH_TRACE_BUDGET"


class CurveError(ValueError):
    pass


class ParityViolation(CurveError):
    pass


class TriangleInequalityViolation(CurveError):
    pass


class EmptyMulticurve(CurveError):
    pass


class NotACurve(CurveError):
    """Raised where a single essential curve is required."""


class MixedTriangulations(CurveError):
    pass


class TracingBudgetExceeded(RuntimeError):
    pass


def trace_budget() -> int:
    raw = os.environ.get(BUDGET_ENV)
    if not raw:
        return DEFAULT_TRACE_BUDGET
    return int(raw)


def _check_budget(total: int) -> None:
    budget = trace_budget()
    if total > budget:
        raise TracingBudgetExceeded(
            f"total weight {total} exceeds tracing budget {budget} (set {BUDGET_ENV} to raise it)"
        )


@dataclass(frozen=True)
class NormalMulticurve:
    sig: SurfaceSig
    weights: tuple

    @property
    def tri(self) -> IdealTriangulation:
        return build_triangulation(self.sig)

    @property
    def total_weight(self) -> int:
        return sum(self.weights)

    def __repr__(self):
        return f"{type(self).__name__}({self.sig}, {list(self.weights)})"


@dataclass(frozen=True, repr=False)
class CurveClass(NormalMulticurve):
    """A connected essential curve in normal position."""

    @property
    def path(self) -> np.ndarray:
        return _component_paths(self.sig, self.weights)[0][0]

    def key(self) -> tuple:
        return self.weights


def validate_normal(tri, weights) -> NormalMulticurve:
    if not isinstance(tri, IdealTriangulation):
        tri = build_triangulation(tri)
    w = tuple(int(x) for x in weights)
    if len(w) != tri.n_edges:
        raise CurveError(f"expected {tri.n_edges} weights, got {len(w)}")
    if any(x < 0 for x in w):
        raise CurveError("negative weight")
    if not any(w):
        raise EmptyMulticurve("all weights are zero; empty multicurves are not allowed")
    for t, (e0, e1, e2) in enumerate(tri.sides):
        a, b, c = w[e0], w[e1], w[e2]
        if (a + b + c) % 2:
            raise ParityViolation(f"triangle {t} sees weights ({a},{b},{c}) with odd sum")
        if a > b + c or b > a + c or c > a + b:
            raise TriangleInequalityViolation(
                f"triangle {t} sees weights ({a},{b},{c}) violating the triangle inequality"
            )
    return NormalMulticurve(tri.sig, w)


# --------------------------------------------------------------------------
# tracing


def _trace_loop(w, sides, partner, primary_flag):
    """Trace every normal arc.  Returns (darts, starts): the exit darts of all
    components concatenated, and the start offsets (with a final sentinel)."""
    n_e = w.shape[0]
    offset = np.zeros(n_e + 1, dtype=np.int64)
    for e in range(n_e):
        offset[e + 1] = offset[e] + w[e]
    total = offset[n_e]
    seen = np.zeros(total, dtype=np.bool_)
    darts = np.empty(total, dtype=np.int64)
    starts = np.empty(total + 1, dtype=np.int64)
    n_comp = 0
    k = 0
    # the dart whose side is aligned with each edge
    prim = np.empty(n_e, dtype=np.int64)
    for d in range(partner.shape[0]):
        if primary_flag[d]:
            prim[sides[d // 3, d % 3]] = d
    for e in range(n_e):
        for p0 in range(w[e]):
            if seen[offset[e] + p0]:
                continue
            starts[n_comp] = k
            n_comp += 1
            # enter the primary triangle of e at side position p0
            d_in = prim[e]
            q = p0
            while True:
                t = d_in // 3
                s = d_in % 3
                ee = sides[t, s]
                pos = q if primary_flag[d_in] else w[ee] - 1 - q
                seen[offset[ee] + pos] = True
                ws = w[sides[t, s]]
                wm = w[sides[t, (s + 2) % 3]]
                wp = w[sides[t, (s + 1) % 3]]
                n_s = (wm + ws - wp) // 2
                if q < n_s:
                    x = (s + 2) % 3
                    qx = wm - 1 - q
                else:
                    x = (s + 1) % 3
                    qx = ws - 1 - q
                d_out = 3 * t + x
                darts[k] = d_out
                k += 1
                d_in = partner[d_out]
                # side position on the far side of the same edge is reversed
                q = w[sides[t, x]] - 1 - qx
                ee2 = sides[d_in // 3, d_in % 3]
                pos2 = q if primary_flag[d_in] else w[ee2] - 1 - q
                if ee2 == e and pos2 == p0:
                    break
    starts[n_comp] = k
    return darts, starts[: n_comp + 1]


if _kernels.USE_NUMBA:
    import numba

    _trace = numba.njit(cache=True)(_trace_loop)
else:
    _trace = _trace_loop


@lru_cache(maxsize=None)
def _tri_arrays(sig: SurfaceSig):
    tri = build_triangulation(sig)
    sides = np.array(tri.sides, dtype=np.int64)
    flag = np.zeros(tri.n_darts, dtype=np.bool_)
    flag[np.asarray(tri.primary)] = True
    partner = np.array(tri.partner, dtype=np.int64)
    edge_of = sides.reshape(-1).copy()
    return sides, partner, flag, edge_of


def tri_arrays(sig):
    """(sides, partner, primary_flag, edge_of) as numpy arrays."""
    return _tri_arrays(as_sig(sig))


def is_peripheral_path(path, partner) -> bool:
    n = len(path)
    if n == 0:
        return True
    turns = set()
    for k in range(n):
        s = partner[path[k - 1]] % 3
        x = path[k] % 3
        turns.add(x == (s + 2) % 3)
        if len(turns) > 1:
            return False
    return True


def path_weights(path, sig) -> tuple:
    _, _, _, edge_of = tri_arrays(sig)
    n_e = build_triangulation(sig).n_edges
    if len(path) == 0:
        return (0,) * n_e
    return tuple(int(x) for x in np.bincount(edge_of[np.asarray(path)], minlength=n_e))


def _component_paths(sig: SurfaceSig, weights: tuple):
    """Distinct component classes as (path, weights, multiplicity, peripheral)
    in order of first appearance, packed as a tuple of 4-tuples.  The budget
    is checked on every call, so cache hits obey the current setting."""
    _check_budget(sum(weights))
    return _component_paths_cached(sig, weights)


@lru_cache(maxsize=200_000)
def _component_paths_cached(sig: SurfaceSig, weights: tuple):
    sides, partner, flag, edge_of = tri_arrays(sig)
    w = np.array(weights, dtype=np.int64)
    darts, starts = _trace(w, sides, partner, flag)
    groups: dict[tuple, list] = {}
    order = []
    for c in range(len(starts) - 1):
        p = darts[starts[c] : starts[c + 1]].copy()
        cw = tuple(int(x) for x in np.bincount(edge_of[p], minlength=len(weights)))
        if cw in groups:
            groups[cw][2] += 1
        else:
            groups[cw] = [p, cw, 1, is_peripheral_path(p, partner)]
            order.append(cw)
    return tuple(tuple(groups[cw]) for cw in order)


def components(mc: NormalMulticurve):
    """Decompose into ``(CurveClass or "peripheral", multiplicity)`` pairs.

    Peripheral components are reported as ``("peripheral", weights, mult)``
    triples so that callers can still see which puncture they encircle.
    """
    out = []
    for path, cw, mult, periph in _component_paths(mc.sig, tuple(mc.weights)):
        if periph:
            out.append((("peripheral", cw), mult))
        else:
            out.append((CurveClass(mc.sig, cw), mult))
    return out


def essential_components(mc: NormalMulticurve):
    return [(c, m) for c, m in components(mc) if isinstance(c, CurveClass)]


def as_curve(mc) -> CurveClass:
    """Certify ``mc`` as one essential curve."""
    if isinstance(mc, CurveClass):
        return mc
    comps = components(mc)
    if len(comps) != 1 or comps[0][1] != 1:
        raise NotACurve(f"{mc} has {len(comps)} component classes")
    c = comps[0][0]
    if not isinstance(c, CurveClass):
        raise NotACurve(f"{mc} is peripheral")
    return c


def curve_from_weights(sig, weights) -> CurveClass:
    sig = as_sig(sig)
    return as_curve(validate_normal(build_triangulation(sig), weights))


def curve_from_path(sig, path) -> CurveClass:
    """Normalize a closed dual path (any, possibly unreduced) of a simple
    closed curve to its normal coordinates."""
    sig = as_sig(sig)
    _, partner, _, _ = tri_arrays(sig)
    red = _kernels.cyclic_reduce(np.asarray(path, dtype=np.int64), partner)
    if len(red) == 0:
        raise NotACurve("path is null-homotopic")
    if is_peripheral_path(red, partner):
        raise NotACurve("path is peripheral")
    c = curve_from_weights(sig, path_weights(red, sig))
    return c


def multicurve_from_paths(sig, paths) -> NormalMulticurve:
    sig = as_sig(sig)
    total = None
    for p in paths:
        w = np.array(path_weights(p, sig), dtype=object)
        total = w if total is None else total + w
    return validate_normal(build_triangulation(sig), tuple(int(x) for x in total))


def multicurve_from_classes(classes, mults=None) -> NormalMulticurve:
    classes = list(classes)
    if not classes:
        raise EmptyMulticurve("no components")
    sig = classes[0].sig
    mults = mults or [1] * len(classes)
    w = [0] * len(classes[0].weights)
    for c, m in zip(classes, mults):
        if c.sig != sig:
            raise MixedTriangulations("components live on different surfaces")
        for e, x in enumerate(c.weights):
            w[e] += m * x
    return NormalMulticurve(sig, tuple(w))


# --------------------------------------------------------------------------
# intersection


def _class_intersection(a: CurveClass, b: CurveClass) -> int:
    if a.weights == b.weights:
        return 0
    _, partner, _, _ = tri_arrays(a.sig)
    return int(_kernels.path_intersection(a.path, b.path, partner))


@lru_cache(maxsize=500_000)
def _pair_cached(sig, wa, wb):
    return _class_intersection(CurveClass(sig, wa), CurveClass(sig, wb))


def class_intersection(a: CurveClass, b: CurveClass) -> int:
    wa, wb = tuple(a.weights), tuple(b.weights)
    if wb < wa:
        wa, wb = wb, wa
    return _pair_cached(a.sig, wa, wb)


def intersection_number(a: NormalMulticurve, b: NormalMulticurve) -> int:
    """Geometric intersection number, additive over components.  Peripheral
    components meet nothing."""
    if a.sig != b.sig:
        raise MixedTriangulations(f"{a.sig} vs {b.sig}")
    ca = essential_components(a) if not isinstance(a, CurveClass) else [(a, 1)]
    cb = essential_components(b) if not isinstance(b, CurveClass) else [(b, 1)]
    total = 0
    for x, mx in ca:
        for y, my in cb:
            total += mx * my * class_intersection(x, y)
    return total


def self_intersection_of_path(sig, path) -> int:
    _, partner, _, _ = tri_arrays(sig)
    red = _kernels.cyclic_reduce(np.asarray(path, dtype=np.int64), partner)
    return int(_kernels.path_self_intersection(red, partner))


def is_simple_path(sig, path) -> bool:
    """True if the reduced cyclic path is primitive and has no
    self-crossings."""
    _, partner, _, _ = tri_arrays(sig)
    red = _kernels.cyclic_reduce(np.asarray(path, dtype=np.int64), partner)
    n = len(red)
    if n == 0:
        return False
    for p in range(1, n):
        if n % p == 0 and np.array_equal(red, np.roll(red, p)):
            return False
    return int(_kernels.path_self_intersection(red, partner)) == 0


# --------------------------------------------------------------------------
# enumeration


def enumerate_normal_weights(sig, max_total: int):
    """All valid nonzero weight vectors with total weight <= max_total,
    in lexicographic order."""
    sig = as_sig(sig)
    tri = build_triangulation(sig)
    n_e = tri.n_edges
    # triangles become checkable once all three edges are assigned
    last = {}
    for t, row in enumerate(tri.sides):
        last.setdefault(max(row), []).append(row)
    w = [0] * n_e
    out = []

    def ok(e):
        for a, b, c in last.get(e, ()):
            x, y, z = w[a], w[b], w[c]
            if (x + y + z) % 2 or x > y + z or y > x + z or z > x + y:
                return False
        return True

    def rec(e, budget):
        if e == n_e:
            if any(w):
                out.append(tuple(w))
            return
        for v in range(budget + 1):
            w[e] = v
            if ok(e):
                rec(e + 1, budget - v)
        w[e] = 0

    rec(0, max_total)
    return out


def enumerate_curves(sig, max_total: int) -> list[CurveClass]:
    """All essential curves with total weight <= max_total, sorted by
    (total weight, weights)."""
    sig = as_sig(sig)
    out = []
    for w in enumerate_normal_weights(sig, max_total):
        comps = _component_paths(sig, w)
        if len(comps) == 1 and comps[0][2] == 1 and not comps[0][3]:
            out.append(CurveClass(sig, w))
    out.sort(key=lambda c: (c.total_weight, c.weights))
    return out


def curve_to_json(mc: NormalMulticurve) -> dict:
    return {
        "surface": {"genus": mc.sig.genus, "punctures": mc.sig.punctures},
        "triangulation": TRIANGULATION_TAG,
        "weights": [str(x) for x in mc.weights],
    }


def curve_from_json(obj) -> NormalMulticurve:
    if not isinstance(obj, dict):
        raise CurveError("curve record must be a JSON object")
    try:
        surf = obj["surface"]
        sig = SurfaceSig(int(surf["genus"]), int(surf["punctures"]))
        tag = obj["triangulation"]
        raw = obj["weights"]
    except (KeyError, TypeError) as exc:
        raise CurveError(f"malformed curve record: missing {exc}") from None
    if tag != TRIANGULATION_TAG:
        raise CurveError(f"triangulation tag {tag!r} does not match {TRIANGULATION_TAG!r}")
    if not isinstance(raw, list):
        raise CurveError("weights must be a list of decimal strings")
    weights = []
    for k, x in enumerate(raw):
        if isinstance(x, bool) or not isinstance(x, (str, int)):
            raise CurveError(f"weight {k} is not a decimal string")
        s = str(x).strip()
        if not s.isdigit():
            raise CurveError(f"weight {k} ({x!r}) is not a non-negative decimal integer")
        weights.append(int(s))
    return validate_normal(build_triangulation(sig), weights)
