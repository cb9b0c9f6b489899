"""Extension of multicurves by one curve with controlled intersection,
iteration to pants decompositions, transfer of pants paths to the
k-multicurve graph, and the resulting distance bound.

Every construction checks its own output.  A failed check raises
:class:`ConstructionDefect` carrying the full report.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field

from .arrangement import Arrangement, regions
from .curve_engine import CurveClass, classify_walk, multicurve_from_classes
from .curves import class_intersection, is_simple_path, tri_arrays
from .multicurve_graph import (
    KMulticurve,
    MulticurvePath,
    is_adjacent,
    multicurve_intersection,
)
from .surface_core import InvalidMulticurveSize, as_sig, f_of_k


class ConstructionDefect(RuntimeError):
    def __init__(self, message, report=None):
        super().__init__(message)
        self.report = report


@dataclass
class ExtensionReport:
    alpha: tuple  # weights of alpha's curves
    beta: tuple
    piece: tuple  # (genus, ends) of the chosen complement piece X
    case: str  # "i", "ii", "iii-distinct" or "iii-same"
    new_curve: tuple
    i_before: int
    i_after: int
    arcs: int  # number of components of X cap b
    checks: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "alpha": [[str(x) for x in w] for w in self.alpha],
            "beta": [[str(x) for x in w] for w in self.beta],
            "piece": list(self.piece),
            "case": self.case,
            "new_curve": [str(x) for x in self.new_curve],
            "i_before": str(self.i_before),
            "i_after": str(self.i_after),
            "arcs": self.arcs,
            "checks": self.checks,
        }


def _as_curves(x):
    if isinstance(x, KMulticurve):
        return list(x.curves)
    return list(x)


# --------------------------------------------------------------------------
# candidate curves inside a region


def _region_loops(amap, reg_faces, H):
    """Fundamental cycles of the face-adjacency graph of a region, as based
    dual paths (all based at the lowest face)."""
    faces = set(reg_faces)
    fo = amap.face_of
    adj = {f: [] for f in faces}
    for k in range(len(amap.link_kind)):
        if k in H or amap.left_side[2 * k] < 0:
            continue
        a, b = int(fo[2 * k]), int(fo[2 * k + 1])
        if a in faces and b in faces:
            da = 3 * int(amap.left_tri[2 * k]) + int(amap.left_side[2 * k])
            db = 3 * int(amap.left_tri[2 * k + 1]) + int(amap.left_side[2 * k + 1])
            adj[a].append((b, da, k))
            adj[b].append((a, db, k))
    root = min(faces)
    to_root = {root: []}
    tree_links = set()
    q = deque([root])
    while q:
        u = q.popleft()
        for v, d, k in sorted(adj[u], key=lambda x: x[2]):
            if v not in to_root:
                to_root[v] = to_root[u] + [d]
                tree_links.add(k)
                q.append(v)
    _, partner, _, _ = tri_arrays(amap.arr.sig)
    loops = []
    done = set()
    for u in sorted(faces):
        for v, d, k in adj[u]:
            if k in tree_links or k in done:
                continue
            done.add(k)
            back = [int(partner[x]) for x in reversed(to_root[v])]
            loops.append(to_root[u] + [d] + back)
    return loops


def _candidates_in_region(sig, amap, reg, H):
    _, partner, _, _ = tri_arrays(sig)
    loops = _region_loops(amap, reg.faces, H)
    inv = [[int(partner[x]) for x in reversed(l)] for l in loops]
    paths = list(loops)
    for i in range(len(loops)):
        for j in range(i + 1, len(loops)):
            paths.append(loops[i] + loops[j])
            paths.append(loops[i] + inv[j])
    out = {}
    for p in paths:
        if not p or not is_simple_path(sig, p):
            continue
        kind, cls = classify_walk(sig, p)
        if kind == "essential":
            out[cls.weights] = cls
    return list(out.values())


# --------------------------------------------------------------------------
# single extension


def _arcs_in_region(amap, faces, fam=1):
    """Components of the family-``fam`` links lying inside a set of faces,
    split at crossings.  Returns lists of links; closed components are
    flagged."""
    fo = amap.face_of
    links = [k for k in amap.curve_links(fam) if int(fo[2 * k]) in faces and int(fo[2 * k + 1]) in faces]
    lset = set(links)
    seen = set()
    arcs = []
    for k0 in links:
        if k0 in seen:
            continue
        comp = [k0]
        seen.add(k0)
        closed = False
        ends = []
        for start in (2 * k0, 2 * k0 + 1):
            d = start
            while True:
                v = amap.head(d)
                if amap.vertex_kind[v] == "crossing":
                    ends.append(v)
                    break
                d = amap.straight(d)
                if (d >> 1) == k0:
                    closed = True
                    break
                if (d >> 1) not in lset:
                    raise AssertionError("arc leaves its region away from a crossing")
                if (d >> 1) not in seen:
                    seen.add(d >> 1)
                    comp.append(d >> 1)
            if closed:
                break
        arcs.append((comp, closed, ends))
    return arcs


def extend_once(alpha, beta):
    """Add one curve to ``alpha`` at most doubling the intersection with
    ``beta``.  Returns ``(alpha_tilde, report)``."""
    alpha_c = _as_curves(alpha)
    beta_c = _as_curves(beta)
    if not alpha_c or not beta_c:
        raise InvalidMulticurveSize("alpha and beta must be non-empty")
    sig = alpha_c[0].sig
    k = len(alpha_c)
    if k >= sig.xi:
        raise InvalidMulticurveSize(f"k={k} leaves no room to extend on {sig} (xi={sig.xi})")
    A = KMulticurve.of(alpha_c)
    i0 = sum(class_intersection(a, b) for a in alpha_c for b in beta_c)
    a_keys = set(A.key())

    arr = Arrangement(sig, [multicurve_from_classes(alpha_c).weights, multicurve_from_classes(beta_c).weights])
    arr.remove_bigons()
    amap = arr.build_map()
    H_a = set(amap.curve_links(0))
    pieces = regions(amap, H_a)
    X = next((r for r in pieces if not r.is_pants), None)
    if X is None:
        raise ConstructionDefect("no complement piece of alpha is a non-pants surface")
    xfaces = set(X.faces)
    arcs = _arcs_in_region(amap, xfaces)

    def report(case, new, i1):
        return ExtensionReport(tuple(A.key()), tuple(sorted(b.weights for b in beta_c)),
                               (X.genus, X.ends), case, new, i0, i1, len(arcs))

    cands = []
    case = None
    # (i) closed components of X cap b not parallel to alpha
    for comp, closed, _ in arcs:
        if closed:
            chord = amap.link_chord[comp[0]]
            cid = int(arr.ch_comp[chord])
            kind, cls = classify_walk(sig, arr.comp_path(cid))
            if kind == "essential" and cls.weights not in a_keys:
                cands.append(cls)
    if cands:
        case = "i"
    # (ii) essential curves in the complement of alpha and b inside X
    if not cands:
        H_ab = set(amap.curve_links())
        for reg in regions(amap, H_ab):
            if not set(reg.faces) <= xfaces:
                continue
            if reg.genus == 0 and reg.ends <= 3:
                continue
            cands += [c for c in _candidates_in_region(sig, amap, reg, H_ab) if c.weights not in a_keys]
        if cands:
            case = "ii"
    # (iii) neighbourhood of an arc and the alpha curves at its ends
    if not cands:
        cands, case = _case_three(sig, amap, arcs, a_keys, alpha_c, beta_c, i0)
    valid = []
    for c in sorted(cands, key=lambda c: c.weights):
        ia = sum(class_intersection(c, a) for a in alpha_c)
        ib = sum(class_intersection(c, b) for b in beta_c)
        if ia == 0 and c.weights not in a_keys and ib <= i0:
            valid.append((c, ib))
    if not valid:
        rep = report(case or "none", (), -1)
        raise ConstructionDefect(f"no valid new curve ({len(cands)} candidates, case {case})", rep)
    new, ib = valid[0]
    out = KMulticurve.of(alpha_c + [new])
    i1 = i0 + ib
    rep = report(case, new.weights, i1)
    rep.checks = {
        "essential": True,
        "disjoint_from_alpha": True,
        "not_in_alpha": True,
        "i_tilde_le_2i": i1 <= 2 * i0,
    }
    _verify_extension(alpha_c, beta_c, out, new, i0, rep)
    return out, rep


def _case_three(sig, amap, arcs, a_keys, alpha_c, beta_c, i0):
    """Curves from neighbourhoods of (arc + alpha curves at its ends).

    Arcs are tried in a fixed order and the first arc yielding a curve that
    passes every check is used.  An arc whose ends lie on the two sides of
    one alpha curve gives a neighbourhood boundary running twice along that
    curve, which may meet b more than i(alpha, beta) times; such arcs are
    skipped when that happens.
    """
    alpha_links = {}
    for k in amap.curve_links(0):
        chord = amap.link_chord[k]
        alpha_links.setdefault(int(amap.arr.ch_comp[chord]), set()).add(k)
    vertex_comp = {}
    for cid, ls in alpha_links.items():
        for k in ls:
            vertex_comp[amap.tail[2 * k]] = cid
            vertex_comp[amap.tail[2 * k + 1]] = cid
    order = sorted((a for a in arcs if not a[1]), key=lambda a: min(a[0]))
    for comp, _, ends in order:
        c1, c2 = vertex_comp[ends[0]], vertex_comp[ends[1]]
        H = set(comp) | alpha_links[c1] | alpha_links[c2]
        arc_darts = {2 * k for k in comp} | {2 * k + 1 for k in comp}
        found = {}
        n_walks = 0
        for reg in regions(amap, H):
            for darts, path in reg.boundary:
                if not arc_darts.intersection(darts):
                    continue
                n_walks += 1
                kind, cls = classify_walk(sig, path)
                if kind == "essential" and cls.weights not in a_keys:
                    found[cls.weights] = cls
        good = []
        for c in found.values():
            if any(class_intersection(c, a) for a in alpha_c):
                continue
            if sum(class_intersection(c, b) for b in beta_c) <= i0:
                good.append(c)
        if good:
            tag = "iii-distinct" if n_walks == 1 else "iii-same"
            return good, tag
    return [], "iii"


def _verify_extension(alpha_c, beta_c, out, new, i0, rep):
    problems = []
    if any(class_intersection(new, a) for a in alpha_c):
        problems.append("new curve meets alpha")
    if new.weights in {a.weights for a in alpha_c}:
        problems.append("new curve already in alpha")
    if out.k != len(alpha_c) + 1:
        problems.append("size did not grow by one")
    i1 = multicurve_intersection(out, KMulticurve(out.sig, tuple(beta_c))) if beta_c else 0
    if i1 > 2 * i0:
        problems.append(f"i(alpha~, beta) = {i1} > 2 * {i0}")
    if problems:
        raise ConstructionDefect("; ".join(problems), rep)


# --------------------------------------------------------------------------
# iteration


@dataclass
class PantsExtension:
    alpha_tilde: KMulticurve
    beta_tilde: KMulticurve
    steps: list  # ("alpha" | "beta", ExtensionReport)
    i_start: int
    i_end: int
    bound: int

    @property
    def satisfied(self) -> bool:
        return self.i_end <= self.bound


def extend_to_pants(alpha: KMulticurve, beta: KMulticurve) -> PantsExtension:
    """Extend both sides to pants decompositions, alternating alpha-side and
    beta-side steps."""
    sig = alpha.sig
    if alpha.k != beta.k:
        raise InvalidMulticurveSize("alpha and beta must have the same size")
    k = alpha.k
    if k >= sig.xi:
        raise InvalidMulticurveSize(f"k={k} is already a pants decomposition size")
    i0 = multicurve_intersection(alpha, beta)
    a, b = alpha, beta
    steps = []
    while a.k < sig.xi or b.k < sig.xi:
        if a.k < sig.xi:
            a, rep = extend_once(a, b)
            steps.append(("alpha", rep))
        if b.k < sig.xi:
            b, rep = extend_once(b, a)
            steps.append(("beta", rep))
    i1 = multicurve_intersection(a, b)
    bound = 4 ** (sig.xi - k) * i0
    out = PantsExtension(a, b, steps, i0, i1, bound)
    if not (set(alpha.key()) <= set(a.key()) and set(beta.key()) <= set(b.key())):
        raise ConstructionDefect("extension lost an original curve", out)
    if i1 > bound:
        raise ConstructionDefect(f"i(alpha~, beta~) = {i1} exceeds 4^(xi-k) i = {bound}", out)
    return out


# --------------------------------------------------------------------------
# path transfer


def _sub(P: KMulticurve, keys) -> KMulticurve:
    return KMulticurve(P.sig, tuple(sorted((c for c in P.curves if c.weights in keys), key=lambda c: c.weights)))


def transfer_path(pants_path, alpha: KMulticurve, beta: KMulticurve) -> MulticurvePath:
    """Turn a pants-graph path from a pants decomposition containing
    ``alpha`` to one containing ``beta`` into a k-multicurve path."""
    P = list(pants_path.vertices if isinstance(pants_path, MulticurvePath) else pants_path)
    sig = alpha.sig
    k = alpha.k
    if not set(alpha.key()) <= set(P[0].key()):
        raise InvalidMulticurveSize("alpha is not contained in the first pants decomposition")
    if not set(beta.key()) <= set(P[-1].key()):
        raise InvalidMulticurveSize("beta is not contained in the last pants decomposition")
    gamma = alpha
    out = [gamma]
    for prev, cur in zip(P, P[1:]):
        g = set(gamma.key())
        if g <= set(cur.key()):
            continue
        (delta,) = set(prev.key()) - set(cur.key())
        (delta2,) = set(cur.key()) - set(prev.key())
        rest = g - {delta}
        # a replacement other than delta2 stays disjoint from delta
        choices = sorted(set(cur.key()) - rest - {delta2})
        if not choices:
            if k < sig.xi:
                raise ConstructionDefect("no replacement curve disjoint from the dropped one")
            choices = [delta2]
        gamma = _sub(cur, rest | {choices[0]})
        out.append(gamma)
    # stitch inside the last pants decomposition
    target = set(beta.key())
    while set(gamma.key()) != target:
        drop = sorted(set(gamma.key()) - target)[0]
        add = sorted(target - set(gamma.key()))[0]
        gamma = _sub(P[-1], (set(gamma.key()) - {drop}) | {add})
        out.append(gamma)
    path = MulticurvePath(out).certify()
    limit = len(P) - 1 + f_of_k(sig, k)
    if path.length > limit:
        raise ConstructionDefect(f"transferred path has length {path.length} > {limit}", path)
    if not all(c.adjacent for c in path.certificates):
        raise ConstructionDefect("transferred path has a non-adjacent step", path)
    return path


# --------------------------------------------------------------------------
# the distance bound


def bound_theorem_e(sig, k: int, i: int) -> int:
    sig = as_sig(sig)
    sig.check_k(k)
    if k == sig.xi:
        raise InvalidMulticurveSize("k = xi is outside the range of this bound; use appendix_bound")
    if i < 0:
        raise ValueError("intersection number must be non-negative")
    return 6 * 4 ** (6 * sig.genus - 6 + 2 * sig.punctures - 2 * k) * i * i + f_of_k(sig, k)


@dataclass
class BoundReport:
    i: int
    k: int
    bound: int
    constructive_len: int | None
    bfs_upper: int | None
    status: str  # "Satisfied" | "Falsified" | "Inconclusive"
    constructive_path: MulticurvePath | None = None
    pants_i: int | None = None
    pants_len: int | None = None

    @property
    def satisfied(self) -> bool:
        return self.status == "Satisfied"

    def row(self) -> dict:
        return {
            "i": str(self.i),
            "bound": str(self.bound),
            "constructive_len": "" if self.constructive_len is None else str(self.constructive_len),
            "bfs_upper": "" if self.bfs_upper is None else str(self.bfs_upper),
            "satisfied": self.status,
        }


def judge(bound, lengths) -> str:
    got = [x for x in lengths if x is not None]
    if not got:
        return "Inconclusive"
    return "Satisfied" if min(got) <= bound else "Falsified"


def check_bound(alpha: KMulticurve, beta: KMulticurve, universe=None, max_nodes=200_000,
                constructive=True) -> BoundReport:
    """Compare the distance bound with a constructive path (extension to
    pants decompositions, swap chain between them, transfer) and with a BFS
    upper bound inside ``universe``."""
    from .multicurve_graph import bfs_distance_upper
    from .pretriangulation import check_appendix

    sig = alpha.sig
    if alpha.k != beta.k:
        raise InvalidMulticurveSize("alpha and beta must have the same size")
    k = alpha.k
    i = multicurve_intersection(alpha, beta)
    bound = bound_theorem_e(sig, k, i)
    c_len = pants_i = pants_len = None
    path = None
    if constructive:
        ext = extend_to_pants(alpha, beta)
        app = check_appendix(ext.alpha_tilde, ext.beta_tilde, bfs=False)
        pants_i = app.i
        if app.path is not None:
            pants_len = app.path.length
            path = transfer_path(app.path, alpha, beta)
            c_len = path.length
    bfs_up = None
    if universe is not None:
        if all(c in universe for c in alpha.curves + beta.curves):
            res = bfs_distance_upper(alpha, beta, universe, max_nodes=max_nodes)
            bfs_up = res.distance
    status = judge(bound, [c_len, bfs_up])
    return BoundReport(i, k, bound, c_len, bfs_up, status, path, pants_i, pants_len)
