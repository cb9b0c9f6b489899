"""Pre-triangulations from superimposed pants decompositions, the pants
decomposition read off an edge ordering by successive thickening, and the
adjacent-swap experiment behind the quadratic pants-distance bound.

A pre-triangulation is stored as a minimal arrangement of one or two curve
families together with its combinatorial map.  Its vertices are the
crossings, and its edges are the curve pieces between consecutive crossings.
A curve with no crossing is a single vertexless edge.  The thickening of a
set of edges is computed on the map: its complement regions are unions of
the complement cells of the whole pre-triangulation, merged across the
unused edges, and boundary curves of the thickening are the region boundary
walks.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .arrangement import Arrangement, regions
from .curve_engine import CurveClass, as_curve, classify_walk, cut_along
from .curves import class_intersection
from .extension_surgery import ConstructionDefect
from .multicurve_graph import (
    CurveUniverse,
    KMulticurve,
    MulticurvePath,
    bfs_distance_upper,
    multicurve_intersection,
)
from .surface_core import as_sig


class PreTriangulationError(ValueError):
    pass


class CommonComponent(PreTriangulationError):
    pass


class InvalidOrdering(PreTriangulationError):
    pass


@dataclass(frozen=True)
class TEdge:
    index: int
    family: int
    links: frozenset  # map links making up the edge
    ends: tuple  # crossing vertices at the two ends, empty for a closed edge
    curve: tuple  # weights of the curve carrying the edge

    @property
    def closed(self) -> bool:
        return not self.ends


def _region_kind(reg) -> str:
    if reg.genus == 0 and reg.ends == 1 and reg.chi == 1:
        return "disk"
    if reg.genus == 0 and reg.ends == 2:
        return "annulus" if not reg.punctures else "punctured-disk"
    if reg.genus == 0 and reg.ends == 3:
        return "pants"
    return f"other({reg.genus},{reg.ends})"


class PreTriangulation:
    """Union of one or two disjoint curve families in minimal position."""

    def __init__(self, sig, families):
        self.sig = as_sig(sig)
        fams = [[as_curve(c) for c in f] for f in families if f]
        if not fams or len(fams) > 2:
            raise PreTriangulationError("need one or two non-empty curve families")
        from .curves import multicurve_from_classes

        self.families = [tuple(sorted(f, key=lambda c: c.weights)) for f in fams]
        arr = Arrangement(self.sig, [multicurve_from_classes(list(f)).weights for f in self.families])
        arr.remove_bigons()
        self.arr = arr
        self.amap = amap = arr.build_map()
        first = {c.weights for c in self.families[0]}
        edges = []
        for cid, chain in enumerate(arr.components):
            fam = arr.comp_family[cid]
            w = _comp_weights(arr, cid)
            if fam == 1 and w in first:
                # a common component is carried once, by the first family
                continue
            links = [k for c in chain for k in amap.chord_links[c]]
            cross = [j for j, k in enumerate(links) if amap.vertex_kind[amap.tail[2 * k]] == "crossing"]
            if not cross:
                edges.append((fam, frozenset(links), (), w))
                continue
            s = cross[0]
            links = links[s:] + links[:s]
            cur = []
            for k in links:
                if cur and amap.vertex_kind[amap.tail[2 * k]] == "crossing":
                    edges.append((fam, frozenset(cur), (amap.tail[2 * cur[0]], amap.head(2 * cur[-1])), w))
                    cur = []
                cur.append(k)
            edges.append((fam, frozenset(cur), (amap.tail[2 * cur[0]], amap.head(2 * cur[-1])), w))
        self.edges = [TEdge(j, f, ls, e, w) for j, (f, ls, e, w) in enumerate(edges)]
        self.n_vertices = sum(len(x) for x in arr.crossings())
        self._gamma_cache = {}
        self._region_cache = {}
        cells = regions(amap, self.all_links())
        self.region_kinds = [_region_kind(r) for r in cells]
        bad = [k for k in self.region_kinds if k.startswith("other")]
        if bad:
            raise PreTriangulationError(f"complement regions {bad} are not disks, annuli or pants")
        # complement cells of T; thickening merges them across unused edges
        self.cell_chi = [r.chi for r in cells]
        self.cell_punct = [len(r.punctures) for r in cells]
        face_cell = np.zeros(amap.n_faces, dtype=np.int64)
        for c, r in enumerate(cells):
            face_cell[r.faces] = c
        self.face_cell = face_cell
        self.edge_cells = []
        for e in self.edges:
            k = min(e.links)
            self.edge_cells.append((int(face_cell[amap.face_of[2 * k]]), int(face_cell[amap.face_of[2 * k + 1]])))
        self.link_edge = np.full(len(amap.link_kind), -1, dtype=np.int64)
        for e in self.edges:
            self.link_edge[list(e.links)] = e.index
        self._ea = np.array([a for a, _ in self.edge_cells], dtype=np.int64)
        self._eb = np.array([b for _, b in self.edge_cells], dtype=np.int64)
        self._closed = np.array([e.closed for e in self.edges], dtype=bool)
        self._cell_chi = np.array(self.cell_chi, dtype=np.float64)
        self._cell_punct = np.array(self.cell_punct, dtype=np.float64)
        inc = {}
        for e in self.edges:
            for v in e.ends:
                inc.setdefault(v, []).append(e.index)
        verts = sorted(inc)
        width = max((len(inc[v]) for v in verts), default=1)
        self._vinc = np.array([inc[v] + inc[v][:1] * (width - len(inc[v])) for v in verts],
                              dtype=np.int64).reshape(len(verts), width)
        self._vcell = np.array([self.edge_cells[inc[v][0]][0] for v in verts], dtype=np.int64)

    @property
    def n_edges(self) -> int:
        return len(self.edges)

    def all_links(self):
        out = set()
        for e in self.edges:
            out |= e.links
        return out

    def canonical_ordering(self, first_family: int) -> list:
        """Closed edges first, then the edges of ``first_family``, then the
        rest, each block in edge-index order."""
        closed = [e.index for e in self.edges if e.closed]
        a = [e.index for e in self.edges if not e.closed and e.family == first_family]
        b = [e.index for e in self.edges if not e.closed and e.family != first_family]
        return closed + a + b

    # ------------------------------------------------------------------
    # thickening

    def step(self, edge_set: frozenset) -> "StepRecord":
        """Thicken the edges in ``edge_set``; cap disk components."""
        edge_set = frozenset(edge_set)
        hit = self._gamma_cache.get(edge_set)
        if hit is not None:
            return hit
        n = len(self.cell_chi)
        in_g = np.zeros(self.n_edges, dtype=bool)
        in_g[list(edge_set)] = True
        keep = ~in_g
        lab = _kernels.merge_cells(self._ea, self._eb, keep, n)
        chi = np.bincount(lab, weights=self._cell_chi, minlength=n)
        chi -= np.bincount(lab[self._ea[keep & ~self._closed]], minlength=n)
        free = ~in_g[self._vinc].any(axis=1)
        chi += np.bincount(lab[self._vcell[free]], minlength=n)
        punct = np.bincount(lab, weights=self._cell_punct, minlength=n)
        edge_lab = lab[self._ea]
        kinds, gamma = [], {}
        chi_f = self.sig.chi
        for r in np.unique(lab).tolist():
            cr, pr = int(chi[r]), int(punct[r])
            if cr == 1 and pr == 0:
                kinds.append("disk")
                continue
            chi_f -= cr
            cells = np.nonzero(lab == r)[0]
            key = (cells.tobytes(), np.nonzero(keep & (edge_lab == r))[0].tobytes())
            info = self._region_cache.get(key)
            if info is None:
                info = self._region_boundary(set(cells.tolist()), edge_set, cr, pr)
                self._region_cache[key] = info
            kind, classes = info
            kinds.append(kind)
            for w in classes:
                gamma[w] = True
        rec = StepRecord(edge_set, tuple(kinds), tuple(sorted(gamma)), chi_f)
        self._gamma_cache[edge_set] = rec
        return rec

    def _region_boundary(self, cells, edge_set, chi, punct):
        """Kind and essential boundary classes of one complement region of
        the thickened edge set."""
        amap = self.amap
        le = self.link_edge
        fc = self.face_cell

        def in_h(k):
            j = le[k]
            return j >= 0 and j in edge_set

        walks = []
        seen = set()
        for j in sorted(edge_set):
            for k in sorted(self.edges[j].links):
                for h0 in (2 * k, 2 * k + 1):
                    if h0 in seen or int(fc[amap.face_of[h0]]) not in cells:
                        continue
                    path = []
                    h = h0
                    while True:
                        seen.add(h)
                        x = int(amap.rot_prev[h ^ 1])
                        while not in_h(x >> 1):
                            if amap.left_side[x] >= 0:
                                path.append(3 * int(amap.left_tri[x]) + int(amap.left_side[x]))
                            x = int(amap.rot_prev[x])
                        h = x
                        if h == h0:
                            break
                    walks.append(path)
        ends = punct + len(walks)
        genus = (2 - chi - ends) // 2
        if genus == 0 and ends == 2:
            kind = "annulus" if not punct else "punctured-disk"
        elif genus == 0 and ends == 3:
            kind = "pants"
        else:
            kind = f"other({genus},{ends})"
        classes = set()
        for path in walks:
            cls_kind, cls = classify_walk(self.sig, path)
            if cls_kind == "essential":
                classes.add(cls.weights)
        return kind, tuple(sorted(classes))


@dataclass(frozen=True)
class StepRecord:
    edges: frozenset
    region_kinds: tuple  # complement regions of the thickened edges
    gamma: tuple  # weights of the essential boundary classes after capping
    chi_f: int  # Euler characteristic of the capped subsurface

    def to_json(self) -> dict:
        return {
            "edges": sorted(self.edges),
            "regions": list(self.region_kinds),
            "gamma": [[str(x) for x in w] for w in self.gamma],
            "chi_F": self.chi_f,
        }


@dataclass
class ThickeningTrace:
    ordering: tuple
    steps: list  # StepRecord per prefix length 1..n
    result: tuple = ()  # weights of the pants decomposition

    def to_json(self) -> dict:
        return {
            "ordering": list(self.ordering),
            "steps": [dict(j=j + 1, **s.to_json()) for j, s in enumerate(self.steps)],
            "result": [[str(x) for x in w] for w in self.result],
        }


def _comp_weights(arr, cid):
    from .curves import path_weights

    return path_weights(arr.comp_path(cid), arr.sig)


def _check_ordering(T: PreTriangulation, O) -> tuple:
    O = tuple(int(x) for x in O)
    if sorted(O) != list(range(T.n_edges)):
        raise InvalidOrdering(f"ordering is not a permutation of the {T.n_edges} edges")
    return O


def verify_pants(sig, curves) -> list:
    """Problems preventing ``curves`` from being a pants decomposition
    (empty when it is one)."""
    sig = as_sig(sig)
    curves = [as_curve(c) for c in curves]
    problems = []
    if len(curves) != sig.xi:
        problems.append(f"{len(curves)} curves, expected {sig.xi}")
    if len({c.weights for c in curves}) != len(curves):
        problems.append("repeated curve")
    for a in range(len(curves)):
        for b in range(a + 1, len(curves)):
            if class_intersection(curves[a], curves[b]):
                problems.append(f"curves {a} and {b} intersect")
    if not problems and curves:
        pieces = cut_along(sig, curves)
        if not all(p.is_pants for p in pieces):
            problems.append(f"pieces {[p.signature for p in pieces]} are not all pants")
    return problems


def _chi_problems(steps, lo=0, hi=None):
    hi = len(steps) if hi is None else hi
    out = []
    for j in range(max(lo, 1), min(hi, len(steps))):
        prev = steps[j - 2].chi_f if j >= 2 else 0
        if steps[j].chi_f - prev < -2:
            out.append(f"chi(F_{j + 1}) - chi(F_{j - 1}) = {steps[j].chi_f - prev} < -2")
    return out


def _union(T, steps):
    out = {}
    for rec in steps:
        for w in rec.gamma:
            out.setdefault(w, CurveClass(T.sig, w))
    return out


def _finish(T, O, steps, problems, verified=None):
    union = _union(T, steps)
    trace = ThickeningTrace(O, list(steps), tuple(sorted(union)))
    key = tuple(sorted(union))
    if verified is None or key not in verified:
        problems = problems + verify_pants(T.sig, list(union.values()))
        if not problems and verified is not None:
            verified.add(key)
    if problems:
        raise ConstructionDefect("; ".join(problems), trace)
    return KMulticurve.of(list(union.values()), check=False), trace


def pants_from_ordering(T: PreTriangulation, O) -> tuple:
    """Pants decomposition read off the ordering ``O``, with its trace."""
    O = _check_ordering(T, O)
    steps = [T.step(frozenset(O[:j])) for j in range(1, len(O) + 1)]
    return _finish(T, O, steps, _chi_problems(steps))


class OrderingWalk:
    """An ordering with its thickening steps, updated in place by adjacent
    swaps.  Exchanging positions j and j + 1 only changes the j-th prefix."""

    def __init__(self, T: PreTriangulation, O):
        self.T = T
        self.O = list(_check_ordering(T, O))
        self.steps = []
        acc = set()
        for e in self.O:
            acc.add(e)
            self.steps.append(T.step(frozenset(acc)))
        self._verified = set()
        self.current, self.trace = _finish(T, tuple(self.O), self.steps, _chi_problems(self.steps), self._verified)

    def swap(self, j: int) -> KMulticurve:
        if not 1 <= j < len(self.O):
            raise InvalidOrdering(f"j={j} outside 1..{len(self.O) - 1}")
        O = self.O
        O[j - 1], O[j] = O[j], O[j - 1]
        base = self.steps[j - 2].edges if j >= 2 else frozenset()
        self.steps[j - 1] = self.T.step(base | {O[j - 1]})
        problems = _chi_problems(self.steps, j - 1, j + 2)
        self.current, self.trace = _finish(self.T, tuple(O), self.steps, problems, self._verified)
        return self.current


# --------------------------------------------------------------------------
# superimposition


def _as_pants(P) -> KMulticurve:
    if isinstance(P, KMulticurve):
        return P
    return KMulticurve.of([as_curve(c) for c in P])


def superimpose(P, P2) -> PreTriangulation:
    """The pre-triangulation made of two pants decompositions without common
    components."""
    P, P2 = _as_pants(P), _as_pants(P2)
    if P.sig != P2.sig:
        raise PreTriangulationError(f"{P.sig} vs {P2.sig}")
    for X in (P, P2):
        problems = verify_pants(X.sig, X.curves)
        if problems:
            raise PreTriangulationError("not a pants decomposition: " + "; ".join(problems))
    common = set(P.key()) & set(P2.key())
    if common:
        raise CommonComponent(f"{len(common)} common component(s); cut along them first")
    i = multicurve_intersection(P, P2)
    if i == 0:
        raise PreTriangulationError("distinct pants decompositions with zero intersection")
    T = PreTriangulation(P.sig, [P.curves, P2.curves])
    assert T.n_vertices == i and T.n_edges == 2 * i
    return T


# --------------------------------------------------------------------------
# local universes


def surgery_curves(a, b) -> list:
    """Essential boundary classes of regular neighbourhoods of ``a`` together
    with one arc of ``b`` cut at its crossings with ``a``."""
    from .extension_surgery import _arcs_in_region

    a, b = as_curve(a), as_curve(b)
    if class_intersection(a, b) == 0:
        return []
    sig = a.sig
    arr = Arrangement(sig, [a.weights, b.weights])
    arr.remove_bigons()
    amap = arr.build_map()
    H_a = set(amap.curve_links(0))
    out = {}
    arcs = _arcs_in_region(amap, set(range(amap.n_faces)))
    for comp, closed, _ in arcs:
        if closed:
            continue
        H = H_a | set(comp)
        arc_darts = {2 * k for k in comp} | {2 * k + 1 for k in comp}
        for reg in regions(amap, H):
            for darts, path in reg.boundary:
                if not arc_darts.intersection(darts):
                    continue
                kind, cls = classify_walk(sig, path)
                if kind == "essential" and cls.weights != a.weights:
                    out[cls.weights] = cls
    return [out[w] for w in sorted(out)]


def _smooth_walks(amap, choice):
    """Dual paths of the components of the curve links after smoothing each
    crossing ``v`` by ``choice[v]``: 0 joins rotation slots (0,1),(2,3) and
    1 joins (1,2),(3,0)."""
    seen = set()
    out = []
    for k0 in amap.curve_links():
        if k0 in seen:
            continue
        d0 = 2 * k0
        d = d0
        path = []
        while True:
            seen.add(d >> 1)
            h = int(amap.head_exit[d])
            if h >= 0:
                path.append(h)
            v = amap.head(d)
            if amap.vertex_kind[v] == "crossing":
                rot = amap.rot[v]
                p = rot.index(d ^ 1)
                if choice[v] == 0:
                    q = p ^ 1
                else:
                    q = (p + 1) % 4 if p % 2 else (p - 1) % 4
                d = rot[q]
            else:
                d = amap.straight(d)
            if d == d0:
                break
        out.append(path)
    return out


def resolution_curves(a, b, max_all: int = 8) -> list:
    """Essential components of resolutions of ``a`` and ``b``: every
    smoothing pattern of the crossings when there are at most ``max_all``
    of them, otherwise the two orientation-compatible patterns."""
    a, b = as_curve(a), as_curve(b)
    n = class_intersection(a, b)
    if n == 0:
        return []
    sig = a.sig
    arr = Arrangement(sig, [a.weights, b.weights])
    arr.remove_bigons()
    amap = arr.build_map()
    verts = [v for v, kind in enumerate(amap.vertex_kind) if kind == "crossing"]
    if n <= max_all:
        patterns = [{v: (m >> j) & 1 for j, v in enumerate(verts)} for m in range(1 << n)]
    else:
        patterns = []
        for sign in (0, 1):
            pat = {}
            for v in verts:
                rot = amap.rot[v]
                # an incoming family-0 dart leaves along family 1 with parity ``sign``
                pa = rot.index(next(x for x in rot if amap.link_kind[x >> 1] == 0 and x % 2 == 1))
                pb = rot.index(next(x for x in rot if amap.link_kind[x >> 1] == 1 and x % 2 == sign))
                pat[v] = 0 if pb == pa ^ 1 else 1
            patterns.append(pat)
    out = {}
    for pat in patterns:
        for path in _smooth_walks(amap, pat):
            kind, cls = classify_walk(sig, path)
            if kind == "essential":
                out[cls.weights] = cls
    return [out[w] for w in sorted(out)]


def local_universe(decompositions, rounds: int = 1) -> CurveUniverse:
    """Curves of the given decompositions closed ``rounds`` times under
    pairwise arc surgery and oriented resolution."""
    decompositions = [_as_pants(D) for D in decompositions]
    sig = decompositions[0].sig
    have = {}
    for D in decompositions:
        for c in D.curves:
            have.setdefault(c.weights, c)
    base = list(have.values())
    level = base
    for _ in range(rounds):
        nxt = []
        pool = list(have.values())
        for x in level:
            for y in pool:
                if x.weights == y.weights or class_intersection(x, y) == 0:
                    continue
                for c in surgery_curves(x, y) + surgery_curves(y, x) + resolution_curves(x, y):
                    if c.weights not in have:
                        have[c.weights] = c
                        nxt.append(c)
        level = nxt
    curves = tuple(sorted(have.values(), key=lambda c: (c.total_weight, c.weights)))
    return CurveUniverse(sig, tuple(base), 0, 0, curves)


def pants_distance_upper(P, P2, universe=None, rounds=1, max_nodes=200_000):
    """BFS upper bound for the pants distance, or None if unreachable."""
    P, P2 = _as_pants(P), _as_pants(P2)
    if P.key() == P2.key():
        return 0, [P]
    U = universe if universe is not None else local_universe([P, P2], rounds)
    missing = [c for c in P.curves + P2.curves if c not in U]
    if missing:
        U = U.extended(missing)
    res = bfs_distance_upper(P, P2, U, max_nodes=max_nodes)
    return res.distance, res.path


# --------------------------------------------------------------------------
# swaps and the appendix bound


SWAP_CONSTANT = 3


@dataclass
class SwapReport:
    j: int
    before: tuple
    after: tuple
    distance: int | None
    status: str  # "Satisfied" | "Falsified" | "Inconclusive"
    path: list | None = None

    def row(self) -> dict:
        return {
            "j": str(self.j),
            "changed": str(int(self.before != self.after)),
            "distance": "" if self.distance is None else str(self.distance),
            "satisfied": self.status,
        }


def _swapped(O, j):
    O = list(O)
    O[j - 1], O[j] = O[j], O[j - 1]
    return tuple(O)


def swap_experiment(T: PreTriangulation, O, j: int, universe=None, rounds=1) -> SwapReport:
    """Compare the decompositions of ``O`` and of ``O`` with positions j and
    j + 1 (1-based) exchanged."""
    O = _check_ordering(T, O)
    if not 1 <= j < len(O):
        raise InvalidOrdering(f"j={j} outside 1..{len(O) - 1}")
    A, _ = pants_from_ordering(T, O)
    B, _ = pants_from_ordering(T, _swapped(O, j))
    d, path = pants_distance_upper(A, B, universe, rounds)
    status = "Inconclusive" if d is None else ("Satisfied" if d <= SWAP_CONSTANT else "Falsified")
    return SwapReport(j, A.key(), B.key(), d, status, path)


def appendix_bound(i: int) -> int:
    i = int(i)
    if i < 0:
        raise ValueError("intersection number must be non-negative")
    return 6 * i * i - 3 * i


@dataclass
class AppendixReport:
    i: int
    bound: int
    coarse_bound: int
    swaps: list  # SwapReport per adjacent swap that changed the decomposition
    n_swaps: int
    constructive_len: int | None
    bfs_upper: int | None
    recovered: bool
    status: str
    path: MulticurvePath | None = None
    extra: dict = field(default_factory=dict)

    @property
    def max_swap(self) -> int | None:
        ds = [s.distance for s in self.swaps if s.distance is not None]
        return max(ds, default=0)

    def row(self) -> dict:
        return {
            "i": str(self.i),
            "bound": str(self.bound),
            "coarse_bound": str(self.coarse_bound),
            "swaps": str(self.n_swaps),
            "max_swap": str(self.max_swap),
            "constructive_len": "" if self.constructive_len is None else str(self.constructive_len),
            "bfs_upper": "" if self.bfs_upper is None else str(self.bfs_upper),
            "satisfied": self.status,
        }


def bubble_chain(O, O2):
    """Adjacent swaps (1-based positions) turning ``O`` into ``O2``."""
    cur = list(O)
    rank = {e: r for r, e in enumerate(O2)}
    out = []
    n = len(cur)
    for a in range(n):
        for b in range(n - 1 - a):
            if rank[cur[b]] > rank[cur[b + 1]]:
                cur[b], cur[b + 1] = cur[b + 1], cur[b]
                out.append(b + 1)
    assert cur == list(O2)
    return out


def check_appendix(P, P2, universe=None, rounds=1, bfs=True, max_nodes=200_000) -> AppendixReport:
    """Walk the bubble-sort chain between the two canonical orderings of the
    superimposition, join consecutive decompositions by short pants paths,
    and compare with 6 i^2 - 3 i and 6 i^2."""
    P, P2 = _as_pants(P), _as_pants(P2)
    i = multicurve_intersection(P, P2)
    bound = appendix_bound(i)
    coarse = 6 * i * i
    if P.key() == P2.key():
        return AppendixReport(i, bound, coarse, [], 0, 0, 0, True, "Satisfied", MulticurvePath([P]))
    common = set(P.key()) & set(P2.key())
    if common:
        T = PreTriangulation(P.sig, [P.curves, P2.curves])
    else:
        T = superimpose(P, P2)
    O = T.canonical_ordering(0)
    O2 = T.canonical_ordering(1)
    B, _ = pants_from_ordering(T, O2)
    walk = OrderingWalk(T, O)
    A = walk.current
    recovered = A.key() == P.key() and B.key() == P2.key()
    chain = bubble_chain(O, O2)
    cur = A
    vertices = [A]
    swaps = []
    ok = True
    for j in chain:
        nxt = walk.swap(j)
        if nxt.key() != cur.key():
            d, path = pants_distance_upper(cur, nxt, universe, rounds, max_nodes)
            status = "Inconclusive" if d is None else ("Satisfied" if d <= SWAP_CONSTANT else "Falsified")
            swaps.append(SwapReport(j, cur.key(), nxt.key(), d, status, path))
            if d is None:
                ok = False
            else:
                vertices.extend(path[1:])
        cur = nxt
    if cur.key() != B.key():
        raise ConstructionDefect("the swap chain does not end at the second canonical decomposition")
    constructive = MulticurvePath(vertices).certify() if ok else None
    c_len = constructive.length if constructive is not None else None
    bfs_up = None
    if bfs:
        bfs_up, _ = pants_distance_upper(P, P2, universe, rounds, max_nodes)
    got = [x for x in (c_len, bfs_up) if x is not None]
    if not got:
        status = "Inconclusive"
    elif min(got) <= bound and min(got) <= coarse:
        status = "Satisfied"
    else:
        status = "Falsified"
    if any(s.status == "Falsified" for s in swaps) or not recovered:
        status = "Falsified"
    return AppendixReport(i, bound, coarse, swaps, len(chain), c_len, bfs_up, recovered, status, constructive)
