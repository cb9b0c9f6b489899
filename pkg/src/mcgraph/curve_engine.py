"""Curve operations built on explicit arrangements: Dehn twists, cutting,
and the bigon-removal intersection oracle.

The coordinate layer (validation, tracing, intersection numbers) lives in
:mod:`mcgraph.curves` and is re-exported here.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from . import _kernels
from .arrangement import Arrangement, regions
from .curves import (  # noqa: F401  (public re-exports)
    CurveClass,
    CurveError,
    EmptyMulticurve,
    MixedTriangulations,
    NormalMulticurve,
    NotACurve,
    ParityViolation,
    TracingBudgetExceeded,
    TriangleInequalityViolation,
    as_curve,
    components,
    curve_from_path,
    curve_from_weights,
    essential_components,
    intersection_number,
    is_peripheral_path,
    multicurve_from_classes,
    path_weights,
    tri_arrays,
    validate_normal,
)
from .surface_core import as_sig
from .triangulation import build_triangulation  # noqa: F401


class OverlappingCurves(ValueError):
    pass


def bigon_intersection(a: NormalMulticurve, b: NormalMulticurve) -> int:
    """Crossing count after exhaustive bigon removal on an explicit
    realization.  Independent of the dual-path algorithm."""
    if a.sig != b.sig:
        raise MixedTriangulations(f"{a.sig} vs {b.sig}")
    arr = Arrangement(a.sig, [a.weights, b.weights])
    arr.remove_bigons()
    return arr.crossing_count()


def minimal_arrangement(a, b) -> Arrangement:
    arr = Arrangement(a.sig, [a.weights, b.weights])
    arr.remove_bigons()
    return arr


# --------------------------------------------------------------------------
# Dehn twists


def _gamma_darts(amap, v):
    fwd = back = None
    for x in amap.rot[v]:
        if amap.link_kind[x >> 1] == 1:
            if x % 2 == 0:
                fwd = x
            else:
                back = x
    return fwd, back


def _twist_component_path(amap, d0, n, partner):
    out = []
    cache = {}
    d = d0
    while True:
        h = int(amap.head_exit[d])
        v = amap.head(d)
        if h >= 0:
            out.append(h)
        da = amap.straight(d)
        if amap.vertex_kind[v] == "crossing":
            fwd, back = _gamma_darts(amap, v)
            # alpha leaving to the left of gamma turns back along gamma
            left = int(amap.rot_next[fwd]) == da
            key = (v, left)
            if key not in cache:
                _, loop = amap.walk_curve(back if left else fwd)
                if n < 0:
                    loop = partner[loop[::-1]]
                cache[key] = [int(x) for x in loop]
            out.extend(cache[key] * abs(n))
        d = da
        if d == d0:
            return np.array(out, dtype=np.int64)


def dehn_twist(gamma, power: int, target: NormalMulticurve) -> NormalMulticurve:
    """Image of ``target`` under the ``power``-th Dehn twist about ``gamma``."""
    gamma = as_curve(gamma)
    if gamma.sig != target.sig:
        raise MixedTriangulations(f"{gamma.sig} vs {target.sig}")
    power = int(power)
    if power == 0:
        return target
    sig = target.sig
    _, partner, _, _ = tri_arrays(sig)
    arr = Arrangement(sig, [target.weights, gamma.weights])
    amap = arr.build_map()
    total = np.zeros(len(target.weights), dtype=object)
    for cid, chain in enumerate(arr.components):
        if arr.comp_family[cid] != 0:
            continue
        d0 = 2 * amap.chord_links[chain[0]][0]
        path = _twist_component_path(amap, d0, power, partner)
        red = _kernels.cyclic_reduce(path, partner)
        total += np.array(path_weights(red, sig), dtype=object)
    w = tuple(int(x) for x in total)
    out = validate_normal(build_triangulation(sig), w)
    if isinstance(target, CurveClass):
        return CurveClass(sig, w)
    return out


# --------------------------------------------------------------------------
# cutting


@dataclass(frozen=True)
class CutPiece:
    genus: int
    ends: int
    curves: tuple = ()  # indices into the ``others`` argument of cut_along
    punctures: int = 0
    boundary: tuple = ()  # weights of the cut curves bounding the piece, with repetition

    @property
    def chi(self) -> int:
        return 2 - 2 * self.genus - self.ends

    @property
    def is_pants(self) -> bool:
        return self.genus == 0 and self.ends == 3

    @property
    def signature(self) -> tuple:
        return (self.genus, self.ends)


def classify_walk(sig, path):
    """("null" | "peripheral" | "essential", CurveClass or None) for a
    closed dual path."""
    _, partner, _, _ = tri_arrays(sig)
    red = _kernels.cyclic_reduce(np.asarray(path, dtype=np.int64), partner)
    if len(red) == 0:
        return "null", None
    if is_peripheral_path(red, partner):
        return "peripheral", None
    return "essential", CurveClass(sig, path_weights(red, sig))


def check_disjoint_family(nu) -> None:
    nu = list(nu)
    keys = [c.weights for c in nu]
    if len(set(keys)) != len(keys):
        raise OverlappingCurves("duplicated component")
    for i in range(len(nu)):
        for j in range(i + 1, len(nu)):
            if intersection_number(nu[i], nu[j]) != 0:
                raise OverlappingCurves(f"components {i} and {j} intersect")


def cut_regions(sig, nu, others=()):
    """Arrangement, map and regions of the surface cut along ``nu``.  The
    curves in ``others`` (if any) form the second family."""
    sig = as_sig(sig)
    nu = [as_curve(c) for c in nu]
    fam = [multicurve_from_classes(nu).weights]
    if others:
        fam.append(multicurve_from_classes(list(others)).weights)
        arr = Arrangement(sig, fam)
        arr.remove_bigons()
    else:
        arr = Arrangement(sig, fam)
    amap = arr.build_map()
    H = amap.curve_links(0)
    return arr, amap, regions(amap, H)


def cut_along(sig, nu, others=()) -> list[CutPiece]:
    """Complementary pieces of the disjoint family ``nu``; each curve in
    ``others`` (disjoint from ``nu``) is assigned to the piece containing it."""
    sig = as_sig(sig)
    nu = [as_curve(c) for c in nu]
    if not nu:
        raise EmptyMulticurve("cut along an empty family")
    check_disjoint_family(nu)
    others = [as_curve(c) for c in others]
    for j, c in enumerate(others):
        if intersection_number(multicurve_from_classes(nu), c) != 0:
            raise OverlappingCurves(f"curve {j} crosses the cut family")
    arr, amap, regs = cut_regions(sig, nu, others)
    face_region = {}
    for r, reg in enumerate(regs):
        for f in reg.faces:
            face_region[f] = r
    assigned = [[] for _ in regs]
    if others:
        # component order in the arrangement follows chord order; match by weights
        cls_of_comp = {}
        for cid, chain in enumerate(arr.components):
            if arr.comp_family[cid] == 1:
                w = path_weights(arr.comp_path(cid), sig)
                cls_of_comp.setdefault(w, []).append(cid)
        for j, c in enumerate(others):
            cid = cls_of_comp[c.weights][0]
            link = amap.chord_links[arr.components[cid][0]][0]
            assigned[face_region[int(amap.face_of[2 * link])]].append(j)
    pieces = []
    for r, reg in enumerate(regs):
        bnd = []
        for _, path in reg.boundary:
            kind, cls = classify_walk(sig, path)
            bnd.append(cls.weights if cls is not None else None)
        pieces.append(CutPiece(reg.genus, reg.ends, tuple(assigned[r]), len(reg.punctures), tuple(bnd)))
    assert sum(p.chi for p in pieces) == sig.chi
    return pieces
