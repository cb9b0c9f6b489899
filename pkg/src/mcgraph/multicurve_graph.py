"""The k-multicurve graph: vertices, adjacency, finite universes, BFS, and a
graph-level cone-off.

Vertices are sets of k pairwise disjoint, pairwise non-isotopic essential
curves.  Two k-multicurves are adjacent when they share k - 1 curves and the
remaining pair is disjoint (k < xi) or differs by an elementary pants move in
the complement of the shared curves (k = xi).
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

import networkx as nx

from .arrangement import Arrangement, regions
from .curve_engine import (
    CurveClass,
    OverlappingCurves,
    as_curve,
    check_disjoint_family,
    cut_along,
    dehn_twist,
    intersection_number,
    multicurve_from_classes,
)
from .curves import class_intersection
from .surface_core import InvalidMulticurveSize, SurfaceSig, as_sig


class GraphError(ValueError):
    pass


class NonFillingMarking(ValueError):
    pass


@dataclass(frozen=True)
class KMulticurve:
    sig: SurfaceSig
    curves: tuple  # CurveClass values sorted by weights

    @classmethod
    def of(cls, curves, check=True) -> "KMulticurve":
        curves = [as_curve(c) for c in curves]
        if not curves:
            raise InvalidMulticurveSize("a k-multicurve needs k >= 1 curves")
        sig = curves[0].sig
        sig.check_k(len(curves))
        if check:
            check_disjoint_family(curves)
        return cls(sig, tuple(sorted(curves, key=lambda c: c.weights)))

    @property
    def k(self) -> int:
        return len(self.curves)

    def key(self) -> tuple:
        return tuple(c.weights for c in self.curves)

    def as_multicurve(self):
        return multicurve_from_classes(self.curves)

    def __contains__(self, c):
        return any(x.weights == c.weights for x in self.curves)

    def replace(self, old, new) -> "KMulticurve":
        rest = [x for x in self.curves if x.weights != old.weights]
        return KMulticurve(self.sig, tuple(sorted(rest + [new], key=lambda c: c.weights)))


def multicurve_intersection(a: KMulticurve, b: KMulticurve) -> int:
    return sum(class_intersection(x, y) for x in a.curves for y in b.curves)


@dataclass(frozen=True)
class AdjacencyCertificate:
    adjacent: bool
    nu: tuple  # shared curves (weights)
    dropped: tuple | None  # weights of alpha's extra curve
    added: tuple | None  # weights of beta's extra curve
    piece: tuple | None  # (genus, ends) of the piece holding both, k = xi only
    i_cc: int | None
    reason: str = ""

    def to_json(self) -> dict:
        return {
            "adjacent": self.adjacent,
            "nu": [[str(x) for x in w] for w in self.nu],
            "dropped": None if self.dropped is None else [str(x) for x in self.dropped],
            "added": None if self.added is None else [str(x) for x in self.added],
            "piece": None if self.piece is None else list(self.piece),
            "i": self.i_cc,
            "reason": self.reason,
        }


@lru_cache(maxsize=100_000)
def _move_piece(sig: SurfaceSig, nu_key: tuple):
    """(genus, ends) of the unique non-pants piece of the complement of a
    (xi - 1)-multicurve."""
    if not nu_key:
        return (sig.genus, sig.punctures)
    pieces = cut_along(sig, [CurveClass(sig, w) for w in nu_key])
    odd = [p for p in pieces if not p.is_pants]
    if len(odd) != 1:
        raise AssertionError(f"complement of {len(nu_key)} curves has {len(odd)} non-pants pieces")
    return odd[0].signature


def move_piece(sig, nu) -> tuple:
    return _move_piece(as_sig(sig), tuple(sorted(c.weights for c in nu)))


PANTS_MOVE_I = {(1, 1): 1, (0, 4): 2}


def is_adjacent(a: KMulticurve, b: KMulticurve) -> AdjacencyCertificate:
    if a.sig != b.sig:
        raise GraphError(f"surfaces differ: {a.sig} vs {b.sig}")
    if a.k != b.k:
        raise GraphError(f"sizes differ: {a.k} vs {b.k}")
    ka, kb = set(a.key()), set(b.key())
    nu = tuple(sorted(ka & kb))
    if len(nu) != a.k - 1:
        why = "equal" if ka == kb else f"share {len(nu)} curves, need {a.k - 1}"
        return AdjacencyCertificate(False, nu, None, None, None, None, why)
    (c,) = ka - kb
    (c2,) = kb - ka
    cc, cc2 = CurveClass(a.sig, c), CurveClass(a.sig, c2)
    i = class_intersection(cc, cc2)
    if a.k < a.sig.xi:
        ok = i == 0
        return AdjacencyCertificate(ok, nu, c, c2, None, i, "" if ok else "replacement curves intersect")
    piece = _move_piece(a.sig, nu)
    need = PANTS_MOVE_I.get(piece)
    ok = need is not None and i == need
    return AdjacencyCertificate(ok, nu, c, c2, piece, i, "" if ok else f"i={i} in piece {piece}")


# --------------------------------------------------------------------------
# paths


@dataclass
class MulticurvePath:
    vertices: list
    certificates: list = field(default_factory=list)

    @property
    def length(self) -> int:
        return len(self.vertices) - 1

    def certify(self) -> "MulticurvePath":
        self.certificates = [is_adjacent(x, y) for x, y in zip(self.vertices, self.vertices[1:])]
        return self

    def is_valid(self) -> bool:
        return all(c.adjacent for c in self.certify().certificates)

    def to_json(self) -> dict:
        if len(self.certificates) != self.length:
            self.certify()
        return {
            "surface": {"genus": self.vertices[0].sig.genus, "punctures": self.vertices[0].sig.punctures},
            "k": self.vertices[0].k,
            "vertices": [[[str(x) for x in c.weights] for c in v.curves] for v in self.vertices],
            "certificates": [c.to_json() for c in self.certificates],
        }


# --------------------------------------------------------------------------
# universes


def split_disjoint_families(curves):
    """Greedy partition into pairwise disjoint families."""
    fams = []
    for c in curves:
        for fam in fams:
            if all(class_intersection(c, x) == 0 for x in fam):
                fam.append(c)
                break
        else:
            fams.append([c])
    return fams


def fills(sig, curves) -> bool:
    """True if the complement of ``curves`` is a union of disks and
    once-punctured disks.  The curves must split into two disjoint
    families."""
    sig = as_sig(sig)
    curves = [as_curve(c) for c in curves]
    fams = split_disjoint_families(curves)
    if len(fams) > 2:
        raise NonFillingMarking("filling test needs a marking made of two disjoint families")
    arr = Arrangement(sig, [multicurve_from_classes(f).weights for f in fams])
    if len(fams) == 2:
        arr.remove_bigons()
    amap = arr.build_map()
    for reg in regions(amap, amap.curve_links()):
        disk = reg.chi == 1 and not reg.punctures
        pdisk = reg.chi == 0 and len(reg.punctures) == 1
        if not (disk or pdisk):
            return False
    return True


@dataclass
class CurveUniverse:
    sig: SurfaceSig
    seed: tuple
    L: int
    R: int
    curves: tuple
    index: dict = field(default_factory=dict, repr=False)
    _disjoint: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        self.index = {c.weights: j for j, c in enumerate(self.curves)}

    def __len__(self):
        return len(self.curves)

    def __contains__(self, c):
        return c.weights in self.index

    def disjoint_from(self, j: int) -> frozenset:
        """Indices of universe curves disjoint from (and distinct from) curve j."""
        if j not in self._disjoint:
            c = self.curves[j]
            self._disjoint[j] = frozenset(
                x for x, d in enumerate(self.curves) if x != j and class_intersection(c, d) == 0
            )
        return self._disjoint[j]

    def extended(self, extra) -> "CurveUniverse":
        have = set(self.index)
        more = [c for c in extra if c.weights not in have and not have.add(c.weights)]
        return CurveUniverse(self.sig, self.seed, self.L, self.R, self.curves + tuple(more))


def enumerate_universe(sig, seed, L: int, R: int, check_filling=True) -> CurveUniverse:
    """Curves reached from the seed marking by twist words of length <= L in
    twists (either sign) about seed curves, keeping only images whose total
    intersection with the seed is at most R at every step."""
    sig = as_sig(sig)
    seed = [as_curve(c) for c in seed]
    if check_filling and not fills(sig, seed):
        raise NonFillingMarking("seed marking does not fill the surface")
    seen = {}
    for c in seed:
        seen.setdefault(c.weights, c)
    level = list(seen.values())
    for _ in range(L):
        nxt = []
        for c in level:
            for g in seed:
                if class_intersection(c, g) == 0:
                    continue
                for p in (1, -1):
                    img = dehn_twist(g, p, c)
                    if img.weights in seen:
                        continue
                    if sum(class_intersection(img, m) for m in seed) > R:
                        continue
                    seen[img.weights] = img
                    nxt.append(img)
        level = nxt
    curves = tuple(sorted(seen.values(), key=lambda c: (c.total_weight, c.weights)))
    return CurveUniverse(sig, tuple(seed), L, R, curves)


# --------------------------------------------------------------------------
# BFS


@dataclass
class BFSResult:
    distance: int | None
    path: list | None
    explored: int

    @property
    def reachable(self) -> bool:
        return self.distance is not None


def _neighbors(v: tuple, U: CurveUniverse, k: int, xi: int):
    """Neighbours of a vertex given as a sorted tuple of universe indices."""
    vs = set(v)
    for c in v:
        rest = [x for x in v if x != c]
        if rest:
            cand = set.intersection(*(set(U.disjoint_from(x)) for x in rest))
        else:
            cand = set(range(len(U)))
        cand -= vs
        if k < xi:
            cand &= U.disjoint_from(c)
            for c2 in sorted(cand):
                yield tuple(sorted(rest + [c2]))
        else:
            nu = tuple(sorted(U.curves[x].weights for x in rest))
            need = PANTS_MOVE_I.get(_move_piece(U.sig, nu))
            for c2 in sorted(cand):
                if class_intersection(U.curves[c], U.curves[c2]) == need:
                    yield tuple(sorted(rest + [c2]))


def bfs_distance_upper(a: KMulticurve, b: KMulticurve, U: CurveUniverse, max_nodes=200_000) -> BFSResult:
    """Shortest path from a to b among k-multicurves with all curves in U."""
    if a.sig != b.sig or a.k != b.k:
        raise GraphError("endpoints differ in surface or size")
    for c in a.curves + b.curves:
        if c not in U:
            raise GraphError(f"endpoint curve {list(c.weights)} not in universe")
    k, xi = a.k, a.sig.xi
    src = tuple(sorted(U.index[c.weights] for c in a.curves))
    dst = tuple(sorted(U.index[c.weights] for c in b.curves))
    prev = {src: None}
    q = deque([src])
    while q:
        v = q.popleft()
        if v == dst:
            chain = []
            while v is not None:
                chain.append(v)
                v = prev[v]
            chain.reverse()
            path = [KMulticurve(a.sig, tuple(U.curves[x] for x in sorted(w, key=lambda x: U.curves[x].weights)))
                    for w in chain]
            return BFSResult(len(chain) - 1, path, len(prev))
        if len(prev) > max_nodes:
            break
        for w in _neighbors(v, U, k, xi):
            if w not in prev:
                prev[w] = v
                q.append(w)
    return BFSResult(None, None, len(prev))


# --------------------------------------------------------------------------
# cone-off


class ConeError(ValueError):
    pass


@dataclass
class ConedGraph:
    base: nx.Graph
    subsets: list
    graph: nx.Graph  # edge attribute "w" holds twice the length

    def cone_vertex(self, j: int):
        return ("cone", j)


def cone_off(G: nx.Graph, subsets) -> ConedGraph:
    """Add one cone vertex per subset, joined to each member by an edge of
    length 1/2; base edges have length 1."""
    H = nx.Graph()
    H.add_nodes_from(G.nodes)
    H.add_edges_from(G.edges, w=2)
    subsets = [frozenset(s) for s in subsets]
    for j, s in enumerate(subsets):
        if not s:
            raise ConeError(f"subset {j} is empty")
        for v in s:
            if v not in G:
                raise ConeError(f"subset {j} references unknown vertex {v!r}")
        cv = ("cone", j)
        if cv in G:
            raise ConeError(f"vertex name {cv!r} is reserved for cone vertices")
        H.add_edges_from(((cv, v) for v in s), w=1)
    return ConedGraph(G, subsets, H)


def cone_distance(cg: ConedGraph, u, v) -> Fraction | None:
    """Exact path-metric distance in the coned graph (None if disconnected)."""
    try:
        d = nx.dijkstra_path_length(cg.graph, u, v, weight="w")
    except nx.NetworkXNoPath:
        return None
    return Fraction(d, 2)


def cone_distances_from(cg: ConedGraph, u) -> dict:
    dist = nx.single_source_dijkstra_path_length(cg.graph, u, weight="w")
    return {x: Fraction(d, 2) for x, d in dist.items()}


def base_distance(G: nx.Graph, u, v) -> int | None:
    try:
        return nx.shortest_path_length(G, u, v)
    except nx.NetworkXNoPath:
        return None
