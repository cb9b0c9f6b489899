"""Canonical ideal triangulations of punctured surfaces.

A triangulation is stored side-wise.  Triangle ``t`` has corners
``c0, c1, c2`` in counterclockwise order and side ``i`` runs from corner ``i``
to corner ``i + 1``.  A *dart* is the integer ``3 * t + i``: it names the
half-edge of the dual trivalent graph leaving triangle ``t`` through side
``i``.  ``partner[d]`` is the dart on the other side of the same edge.

The canonical triangulation (version tag ``canonical-v1``):

* genus ``g >= 1``: the ``4g``-gon with word ``a1 b1 a1^-1 b1^-1 ...``,
  fan-triangulated from polygon corner 0; all corners become one puncture.
* genus 0: two triangles glued along their boundary (three punctures).
* every further puncture is added by a stellar subdivision of triangle
  ``(2 * p) % F`` where ``p`` counts punctures added so far and ``F`` is the
  current triangle count.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .surface_core import InvalidSignature, SurfaceSig, as_sig

TRIANGULATION_TAG = "canonical-v1"


class UnsupportedSurface(ValueError):
    pass


@dataclass(frozen=True, eq=False)
class IdealTriangulation:
    sig: SurfaceSig
    sides: tuple  # sides[t] = (e0, e1, e2)
    partner: np.ndarray  # dart -> dart
    corners: tuple  # corners[t] = (v0, v1, v2)
    edge_names: tuple
    tag: str = TRIANGULATION_TAG
    primary: np.ndarray = field(default=None)  # edge -> dart whose side runs along the edge

    @property
    def n_triangles(self) -> int:
        return len(self.sides)

    @property
    def n_edges(self) -> int:
        return len(self.edge_names)

    @property
    def n_vertices(self) -> int:
        return self.sig.punctures

    @property
    def n_darts(self) -> int:
        return 3 * len(self.sides)

    def edge_of(self, dart: int) -> int:
        return self.sides[dart // 3][dart % 3]

    def is_primary(self, dart: int) -> bool:
        return int(self.primary[self.edge_of(dart)]) == dart

    def edge_darts(self, e: int) -> tuple[int, int]:
        d = int(self.primary[e])
        return d, int(self.partner[d])

    def vertex_cycles(self) -> list[list[int]]:
        """Corners around each puncture, in counterclockwise order.

        Each corner is reported as the dart ``3t + i`` of the side leaving
        corner ``i``.  Going counterclockwise around the vertex crosses side
        ``i - 1`` into the neighbouring triangle.
        """
        seen = set()
        cycles = [None] * self.n_vertices
        for t in range(self.n_triangles):
            for i in range(3):
                if (t, i) in seen:
                    continue
                cyc = []
                tt, ii = t, i
                while (tt, ii) not in seen:
                    seen.add((tt, ii))
                    cyc.append(3 * tt + ii)
                    back = int(self.partner[3 * tt + (ii - 1) % 3])
                    tt, ii = back // 3, back % 3
                cycles[self.corners[t][i]] = cyc
        return cycles

    def __repr__(self):
        return f"IdealTriangulation({self.sig}, F={self.n_triangles}, E={self.n_edges})"


def _assemble(sig, tri_sides, names):
    """tri_sides[t][i] = (edge_id, orientation) with orientation +1 if the side
    runs along the edge's reference direction."""
    n_t = len(tri_sides)
    partner = np.full(3 * n_t, -1, dtype=np.int64)
    occ: dict[int, list[int]] = {}
    for t, row in enumerate(tri_sides):
        for i, (e, _) in enumerate(row):
            occ.setdefault(e, []).append(3 * t + i)
    primary = np.zeros(len(names), dtype=np.int64)
    for e, ds in occ.items():
        if len(ds) != 2:
            raise AssertionError(f"edge {e} glued to {len(ds)} sides")
        a, b = ds
        partner[a], partner[b] = b, a
        oa = tri_sides[a // 3][a % 3][1]
        primary[e] = a if oa > 0 else b
    # union-find on corners
    parent = list(range(3 * n_t))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for d in range(3 * n_t):
        p = int(partner[d])
        t, i = divmod(d, 3)
        u, j = divmod(p, 3)
        # side (t,i) runs c_i -> c_{i+1}; side (u,j) runs the other way
        for x, y in ((3 * t + i, 3 * u + (j + 1) % 3), (3 * t + (i + 1) % 3, 3 * u + j)):
            rx, ry = find(x), find(y)
            if rx != ry:
                parent[rx] = ry
    labels: dict[int, int] = {}
    corners = []
    for t in range(n_t):
        row = []
        for i in range(3):
            r = find(3 * t + i)
            if r not in labels:
                labels[r] = len(labels)
            row.append(labels[r])
        corners.append(tuple(row))
    if len(labels) != sig.punctures:
        raise AssertionError(f"built {len(labels)} vertices for {sig}")
    sides = tuple(tuple(e for e, _ in row) for row in tri_sides)
    partner.setflags(write=False)
    primary.setflags(write=False)
    return IdealTriangulation(sig, sides, partner, tuple(corners), tuple(names), primary=primary)


def _polygon_model(g):
    m = 4 * g
    names = []
    side_edge = []  # polygon side k -> (edge, orientation)
    for h in range(g):
        a = len(names)
        names += [f"a{h + 1}", f"b{h + 1}"]
        side_edge += [(a, 1), (a + 1, 1), (a, -1), (a + 1, -1)]
    diag = {}
    for j in range(2, m - 1):
        diag[j] = len(names)
        names.append(f"d{j}")
    tris = []
    for j in range(1, m - 1):
        s0 = side_edge[0] if j == 1 else (diag[j], 1)
        s1 = side_edge[j]
        s2 = side_edge[m - 1] if j + 1 == m - 1 else (diag[j + 1], -1)
        tris.append([s0, s1, s2])
    return tris, names


def _sphere_model():
    names = ["e0", "e1", "e2"]
    tris = [[(0, 1), (1, 1), (2, 1)], [(2, -1), (1, -1), (0, -1)]]
    return tris, names


def _stellar(tris, names, t):
    old = tris[t]
    f = [len(names), len(names) + 1, len(names) + 2]
    names += [f"s{f[0]}", f"s{f[1]}", f"s{f[2]}"]
    # spoke f[i] runs from the new vertex to corner i
    new = []
    for i in range(3):
        new.append([old[i], (f[(i + 1) % 3], -1), (f[i], 1)])
    tris[t] = new[0]
    tris.extend(new[1:])


@lru_cache(maxsize=None)
def _build(sig: SurfaceSig) -> IdealTriangulation:
    if sig.genus == 0:
        tris, names = _sphere_model()
        base = 3
    else:
        tris, names = _polygon_model(sig.genus)
        base = 1
    for p in range(sig.punctures - base):
        _stellar(tris, names, (2 * p) % len(tris))
    tri = _assemble(sig, tris, names)
    assert tri.n_triangles == -2 * sig.chi and tri.n_edges == -3 * sig.chi
    return tri


def build_triangulation(sig) -> IdealTriangulation:
    """Deterministic ideal triangulation of ``sig`` (which needs a puncture)."""
    try:
        sig = as_sig(sig)
    except InvalidSignature:
        raise
    if sig.punctures == 0:
        raise UnsupportedSurface("closed surfaces have no ideal triangulation")
    return _build(sig)
