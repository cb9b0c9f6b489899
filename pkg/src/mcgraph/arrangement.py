"""Explicit realizations of one or two normal multicurves.

Each family is drawn as straight normal arcs inside the triangles of the
canonical triangulation.  On every edge the points of the two families are
interleaved by a *merged order*; two chords in one triangle cross iff their
endpoints interleave on the triangle boundary, so the whole picture is
combinatorial.  Bigon removal permutes the merged orders until the two
families are in minimal position.

:meth:`Arrangement.build_map` turns the picture into a combinatorial map whose
vertices are the punctures, the curve points on edges and the crossings, and
whose links are edge segments and chord pieces.  Darts are ``2 * link`` (along
the link) and ``2 * link + 1`` (against it); ``rot_next``/``rot_prev`` give the
counterclockwise/clockwise neighbour of a dart around its tail vertex.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import _kernels
from .curves import tri_arrays
from .surface_core import as_sig
from .triangulation import build_triangulation


class BigonRemovalStalled(RuntimeError):
    pass


def _inarc(x, lo, hi):
    """x strictly inside the counterclockwise boundary arc from lo to hi."""
    return np.where(lo < hi, (lo < x) & (x < hi), (x > lo) | (x < hi))


class Arrangement:
    def __init__(self, sig, families, orders=None):
        self.sig = as_sig(sig)
        self.tri = tri = build_triangulation(self.sig)
        self.sides, self.partner, self.prim_flag, self.edge_of = tri_arrays(self.sig)
        self.families = [tuple(int(x) for x in w) for w in families]
        if not 1 <= len(self.families) <= 2:
            raise ValueError("an arrangement holds one or two families")
        E = tri.n_edges
        pf, pe, pp = [], [], []
        self.base = {}
        for f, w in enumerate(self.families):
            for e in range(E):
                self.base[f, e] = len(pf)
                pf += [f] * w[e]
                pe += [e] * w[e]
                pp += list(range(w[e]))
        self.pt_family = np.array(pf, dtype=np.int64)
        self.pt_edge = np.array(pe, dtype=np.int64)
        self.pt_fpos = np.array(pp, dtype=np.int64)
        self.W = [sum(w[e] for w in self.families) for e in range(E)]
        self._build_chords()
        if orders is None:
            orders = [
                [self.base[f, e] + p for f, w in enumerate(self.families) for p in range(w[e])]
                for e in range(E)
            ]
        self.orders = [list(o) for o in orders]
        self.mpos = np.zeros(len(pf), dtype=np.int64)
        for o in self.orders:
            for m, pid in enumerate(o):
                self.mpos[pid] = m
        self._big = max(self.W) + 2
        self._W_arr = np.asarray(self.W, dtype=np.int64)
        self._by_tri = None
        self._cross_t = {}
        self._along_t = {}
        self._n_cross = None

    # ------------------------------------------------------------------
    # chords and components

    def _fam_pid(self, f, t, s, sp):
        e = int(self.sides[t, s])
        w = self.families[f][e]
        fpos = sp if self.prim_flag[3 * t + s] else w - 1 - sp
        return self.base[f, e] + fpos

    def _build_chords(self):
        ends = []  # (f, t, s_a, pid_a, s_b, pid_b)
        for f, w in enumerate(self.families):
            for t in range(self.tri.n_triangles):
                ws = [w[int(self.sides[t, i])] for i in range(3)]
                for i in range(3):
                    n_i = (ws[i - 1] + ws[i] - ws[(i + 1) % 3]) // 2
                    for k in range(n_i):
                        ends.append(
                            (f, t, i, self._fam_pid(f, t, i, k), (i - 1) % 3,
                             self._fam_pid(f, t, (i - 1) % 3, ws[i - 1] - 1 - k))
                        )
        at = {}
        for c, (f, t, sa, pa, sb, pb) in enumerate(ends):
            at[pa, 3 * t + sa] = c
            at[pb, 3 * t + sb] = c
        # orient chords along traced components
        n = len(ends)
        self.ch_family = np.zeros(n, dtype=np.int64)
        self.ch_tri = np.zeros(n, dtype=np.int64)
        self.ch_in_side = np.zeros(n, dtype=np.int64)
        self.ch_out_side = np.zeros(n, dtype=np.int64)
        self.ch_in_pt = np.zeros(n, dtype=np.int64)
        self.ch_out_pt = np.zeros(n, dtype=np.int64)
        self.ch_comp = np.full(n, -1, dtype=np.int64)
        self.ch_index = np.zeros(n, dtype=np.int64)
        self.components = []  # list of chord-id lists
        self.comp_family = []
        for c0 in range(n):
            if self.ch_comp[c0] >= 0:
                continue
            cid = len(self.components)
            f, t, sa, pa, sb, pb = ends[c0]
            chain = []
            c, s_in, p_in = c0, sa, pa
            while True:
                f, t, xa, qa, xb, qb = ends[c]
                if (xa, qa) == (s_in, p_in):
                    s_out, p_out = xb, qb
                else:
                    s_out, p_out = xa, qa
                self.ch_family[c] = f
                self.ch_tri[c] = t
                self.ch_in_side[c], self.ch_in_pt[c] = s_in, p_in
                self.ch_out_side[c], self.ch_out_pt[c] = s_out, p_out
                self.ch_comp[c] = cid
                self.ch_index[c] = len(chain)
                chain.append(c)
                d = int(self.partner[3 * t + s_out])
                c = at[p_out, d]
                s_in, p_in = d % 3, p_out
                if c == c0:
                    break
            self.components.append(chain)
            self.comp_family.append(f)
        # chord on each side of each point: pt_chord[pid] = {dart: chord}
        self.chord_at = at

    def comp_path(self, cid):
        """Exit darts of component ``cid`` in travel order."""
        return np.array(
            [3 * int(self.ch_tri[c]) + int(self.ch_out_side[c]) for c in self.components[cid]],
            dtype=np.int64,
        )

    # ------------------------------------------------------------------
    # crossings

    def _key(self, pid, t, s):
        e = int(self.sides[t, s])
        m = int(self.mpos[pid])
        sp = m if self.prim_flag[3 * t + s] else self.W[e] - 1 - m
        return s * self._big + sp

    def _chord_keys(self, chords):
        big = self._big
        t = self.ch_tri[chords]
        ki = self._keys_vec(self.ch_in_pt[chords], t, self.ch_in_side[chords], big)
        ko = self._keys_vec(self.ch_out_pt[chords], t, self.ch_out_side[chords], big)
        return ki, ko

    def _keys_vec(self, pids, t, s, big):
        e = self.sides[t, s]
        m = self.mpos[pids]
        sp = np.where(self.prim_flag[3 * t + s], m, self._W_arr[e] - 1 - m)
        return s * big + sp

    def _tri_chords(self, t):
        if self._by_tri is None:
            nt = self.tri.n_triangles
            fam = [[[], []] for _ in range(nt)]
            for c in range(len(self.ch_family)):
                fam[int(self.ch_tri[c])][int(self.ch_family[c])].append(c)
            self._by_tri = [tuple(np.array(x, dtype=np.int64) for x in f) for f in fam]
        return self._by_tri[t]

    def _invalidate(self, t):
        self._n_cross = None
        self._cross_t.pop(t, None)
        self._along_t.pop(t, None)

    def _crossings_in(self, t):
        """Crossing pairs (family-0 chord, family-1 chord) in triangle ``t``."""
        got = self._cross_t.get(t)
        if got is not None:
            return got[0]
        A, B = self._tri_chords(t)
        if len(A) == 0 or len(B) == 0:
            self._cross_t[t] = ([], None)
            return []
        allc = np.concatenate([A, B])
        ki, ko = self._chord_keys(allc)
        ia, ib, own, oth = _kernels.tri_cross(ki, ko, len(A), 3 * self._big)
        xs = list(zip(A[ia].tolist(), B[ib].tolist()))
        self._cross_t[t] = (xs, (allc, own, oth))
        return xs

    def crossings(self):
        """Per triangle, crossing pairs (family-0 chord, family-1 chord)."""
        return [self._crossings_in(t) for t in range(self.tri.n_triangles)]

    def crossing_count(self):
        if self._n_cross is not None:
            return self._n_cross
        return sum(len(x) for x in self.crossings())

    def _along_in(self, t):
        """Chords of triangle ``t`` mapped to the chords crossing them, in
        travel order."""
        out = self._along_t.get(t)
        if out is not None:
            return out
        out = {}
        if self._crossings_in(t):
            allc, own, oth = self._cross_t[t][1]
            for c, o in zip(allc[own].tolist(), allc[oth].tolist()):
                lst = out.get(c)
                if lst is None:
                    out[c] = [o]
                else:
                    lst.append(o)
        self._along_t[t] = out
        return out

    def _orders_along(self):
        """For every chord, the chords crossing it in travel order."""
        if not hasattr(self, "_along_all"):
            self._along_all = {}
        for t in range(self.tri.n_triangles):
            if t not in self._along_t:
                A, B = self._tri_chords(t)
                for c in A.tolist() + B.tolist():
                    self._along_all.pop(c, None)
                self._along_all.update(self._along_in(t))
        return self._along_all

    # ------------------------------------------------------------------
    # bigon removal

    def _end(self, c, forward):
        if forward:
            return int(self.ch_out_pt[c]), 3 * int(self.ch_tri[c]) + int(self.ch_out_side[c])
        return int(self.ch_in_pt[c]), 3 * int(self.ch_tri[c]) + int(self.ch_in_side[c])

    def _find_bigon(self, along):
        """Edge points to swap for one innermost bigon, or None."""
        found = self._find_bigons(along, first_only=True)
        return found[0] if found else None

    def _swap_tris(self, swaps):
        out = set()
        for pa, _ in swaps:
            d0 = int(self.tri.primary[int(self.pt_edge[pa])])
            out.add(d0 // 3)
            out.add(int(self.partner[d0]) // 3)
        return out

    def _find_bigons(self, along, first_only=False):
        """Innermost bigons whose neighbourhoods are pairwise disjoint, so
        that they can be removed together."""
        found, used = [], set()
        for t, xs in enumerate(self.crossings()):
            if t in used:
                continue
            for a, b in xs:
                la, lb = along[a], along[b]
                dirs_a = [d for d, ok in ((True, la[-1] == b), (False, la[0] == b)) if ok]
                dirs_b = [d for d, ok in ((True, lb[-1] == a), (False, lb[0] == a)) if ok]
                swaps = None
                for da in dirs_a:
                    for db in dirs_b:
                        swaps = self._follow(a, da, b, db, along)
                        if swaps:
                            break
                    if swaps:
                        break
                if not swaps:
                    continue
                tris = self._swap_tris(swaps)
                if tris & used:
                    continue
                found.append(swaps)
                if first_only:
                    return found
                used |= tris
                if t in used:
                    break
        return found

    def _follow(self, a, da, b, db, along):
        swaps = []
        limit = sum(self.W) + 1
        while len(swaps) <= limit:
            pa, dart_a = self._end(a, da)
            pb, dart_b = self._end(b, db)
            if dart_a != dart_b or abs(int(self.mpos[pa]) - int(self.mpos[pb])) != 1:
                return None
            swaps.append((pa, pb))
            nd = int(self.partner[dart_a])
            a2 = self.chord_at[pa, nd]
            b2 = self.chord_at[pb, nd]
            # direction of travel away from the shared edge
            da = int(self.ch_in_pt[a2]) == pa and 3 * int(self.ch_tri[a2]) + int(self.ch_in_side[a2]) == nd
            db = int(self.ch_in_pt[b2]) == pb and 3 * int(self.ch_tri[b2]) + int(self.ch_in_side[b2]) == nd
            la, lb = along.get(a2, []), along.get(b2, [])
            if la or lb:
                first_a = (la[0] if da else la[-1]) if la else None
                first_b = (lb[0] if db else lb[-1]) if lb else None
                if first_a == b2 and first_b == a2:
                    return swaps
                return None
            a, b = a2, b2
        return None

    def remove_bigons(self, max_rounds=None):
        """Remove innermost bigons until none is left; returns the number of
        bigons removed."""
        if _kernels.USE_NUMBA:
            return self._remove_bigons_kernel(max_rounds)
        return self._remove_bigons_py(max_rounds)

    def _kernel_arrays(self):
        nt = self.tri.n_triangles
        starts, chords, na = [0], [], []
        for t in range(nt):
            A, B = self._tri_chords(t)
            chords += A.tolist() + B.tolist()
            starts.append(len(chords))
            na.append(len(A))
        at = np.full((len(self.pt_family), 2), -1, dtype=np.int64)
        for (pid, dart), c in self.chord_at.items():
            at[pid, 0 if self.prim_flag[dart] else 1] = c
        return (np.array(starts, dtype=np.int64), np.array(chords, dtype=np.int64), np.array(na, dtype=np.int64), at)

    def _remove_bigons_kernel(self, max_rounds):
        starts, chords, na, at = self._kernel_arrays()
        mpos = self.mpos.copy()
        count = np.zeros(1, dtype=np.int64)
        removed = _kernels.bigon_loop_numba(
            starts, chords, na, self.ch_tri, self.ch_in_side, self.ch_out_side, self.ch_in_pt, self.ch_out_pt,
            at, mpos, self.sides, self.partner, self.prim_flag, np.asarray(self.tri.primary, dtype=np.int64),
            self.pt_edge, self._W_arr, self._big, -1 if max_rounds is None else int(max_rounds), count)
        if removed < 0:
            raise BigonRemovalStalled(f"more than {max_rounds} bigons")
        if removed:
            self.mpos = mpos
            for o in self.orders:
                o.sort(key=lambda pid: mpos[pid])
            self._cross_t.clear()
            self._along_t.clear()
            self.__dict__.pop("_along_all", None)
        self._n_cross = int(count[0])
        return int(removed)

    def _remove_bigons_py(self, max_rounds=None):
        removed = 0
        while True:
            found = self._find_bigons(self._orders_along())
            if not found:
                return removed
            for swaps in found:
                for pa, pb in swaps:
                    e = int(self.pt_edge[pa])
                    ma, mb = int(self.mpos[pa]), int(self.mpos[pb])
                    self.orders[e][ma], self.orders[e][mb] = pb, pa
                    self.mpos[pa], self.mpos[pb] = mb, ma
                for t in self._swap_tris(swaps):
                    self._invalidate(t)
                removed += 1
            if max_rounds is not None and removed > max_rounds:
                raise BigonRemovalStalled(f"more than {max_rounds} bigons")

    # ------------------------------------------------------------------
    # combinatorial map

    def build_map(self) -> "ArrMap":
        return ArrMap(self)


@dataclass
class ArrMap:
    """Combinatorial map of an arrangement (see module docstring)."""

    arr: Arrangement
    n_vertices: int = 0
    puncture_vertex: list = field(default_factory=list)
    link_kind: list = field(default_factory=list)  # "seg" or family index
    link_chord: list = field(default_factory=list)
    tail: list = field(default_factory=list)  # per dart
    rot_next: np.ndarray = None
    rot_prev: np.ndarray = None
    left_tri: np.ndarray = None
    left_side: np.ndarray = None
    head_exit: np.ndarray = None  # dual dart crossed when a curve dart reaches an edge point
    vertex_kind: list = field(default_factory=list)  # "puncture" | "point" | "crossing"

    def __post_init__(self):
        self._build()

    def _new_vertex(self, kind):
        self.vertex_kind.append(kind)
        self.n_vertices += 1
        return self.n_vertices - 1

    def _new_link(self, kind, u, v, chord=-1):
        k = len(self.link_kind)
        self.link_kind.append(kind)
        self.link_chord.append(chord)
        self.tail += [u, v]
        return k

    def _build(self):
        arr = self.arr
        tri = arr.tri
        partner = arr.partner
        for _ in range(tri.n_vertices):
            self.puncture_vertex.append(self._new_vertex("puncture"))
        pt_vertex = np.array([self._new_vertex("point") for _ in range(len(arr.pt_family))], dtype=np.int64)
        self.pt_vertex = pt_vertex
        rot = {}  # vertex -> list of darts counterclockwise
        left_tri, left_side = {}, {}
        # edge segments
        seg = {}
        for e in range(tri.n_edges):
            d0 = int(tri.primary[e])
            t0, s0 = divmod(d0, 3)
            d1 = int(partner[d0])
            t1, s1 = divmod(d1, 3)
            start = tri.corners[t0][s0]
            end = tri.corners[t0][(s0 + 1) % 3]
            nodes = [start] + [int(pt_vertex[p]) for p in arr.orders[e]] + [end]
            for s in range(len(nodes) - 1):
                k = self._new_link("seg", nodes[s], nodes[s + 1])
                seg[e, s] = k
                left_tri[2 * k], left_side[2 * k] = t0, s0
                left_tri[2 * k + 1], left_side[2 * k + 1] = t1, s1
        # chord pieces; crossings become vertices
        along = arr._orders_along()
        cross_vertex = {}
        for t, xs in enumerate(arr.crossings()):
            for a, b in xs:
                cross_vertex[a, b] = self._new_vertex("crossing")
        self.cross_vertex = cross_vertex
        piece_out = {}  # (chord, node index) -> dart leaving node forward
        self.chord_links = {}
        for c in range(len(arr.ch_family)):
            f = int(arr.ch_family[c])
            t = int(arr.ch_tri[c])
            xs = along.get(c, [])
            ids = [int(pt_vertex[arr.ch_in_pt[c]])]
            for o in xs:
                ids.append(cross_vertex[(c, o) if f == 0 else (o, c)])
            ids.append(int(pt_vertex[arr.ch_out_pt[c]]))
            links = []
            for j in range(len(ids) - 1):
                k = self._new_link(f, ids[j], ids[j + 1], c)
                links.append(k)
                left_tri[2 * k] = left_tri[2 * k + 1] = t
                left_side[2 * k] = left_side[2 * k + 1] = -1
            self.chord_links[c] = links
        n_d = 2 * len(self.link_kind)
        # rotations
        for e in range(tri.n_edges):
            d0 = int(tri.primary[e])
            d1 = int(partner[d0])
            for m, pid in enumerate(arr.orders[e]):
                v = int(pt_vertex[pid])
                fwd = 2 * seg[e, m + 1]
                bwd = 2 * seg[e, m] + 1
                c0 = arr.chord_at[pid, d0]
                c1 = arr.chord_at[pid, d1]
                rot[v] = [fwd, self._chord_dart_from_point(c0, pid, d0), bwd,
                          self._chord_dart_from_point(c1, pid, d1)]
        for t, xs in enumerate(arr.crossings()):
            for a, b in xs:
                v = cross_vertex[a, b]
                ia = along[a].index(b)
                ib = along[b].index(a)
                la, lb = self.chord_links[a], self.chord_links[b]
                a_f, a_b = 2 * la[ia + 1], 2 * la[ia] + 1
                b_f, b_b = 2 * lb[ib + 1], 2 * lb[ib] + 1
                # b's forward end lies right of a iff it is on the ccw arc a_in -> a_out
                k_in = arr._key(int(arr.ch_in_pt[a]), t, int(arr.ch_in_side[a]))
                k_out = arr._key(int(arr.ch_out_pt[a]), t, int(arr.ch_out_side[a]))
                kb = arr._key(int(arr.ch_out_pt[b]), t, int(arr.ch_out_side[b]))
                if _inarc(np.int64(kb), k_in, k_out):
                    rot[v] = [a_f, b_b, a_b, b_f]
                else:
                    rot[v] = [a_f, b_f, a_b, b_b]
        for vtx, cyc in enumerate(tri.vertex_cycles()):
            out = []
            for corner in cyc:
                t, i = divmod(corner, 3)
                e = int(arr.sides[t, i])
                if arr.prim_flag[corner]:
                    out.append(2 * seg[e, 0])
                else:
                    out.append(2 * seg[e, arr.W[e]] + 1)
            rot[self.puncture_vertex[vtx]] = out
        rn = np.full(n_d, -1, dtype=np.int64)
        rp = np.full(n_d, -1, dtype=np.int64)
        for v, cyc in rot.items():
            for j, d in enumerate(cyc):
                rn[d] = cyc[(j + 1) % len(cyc)]
                rp[d] = cyc[j - 1]
        assert (rn >= 0).all(), "dart missing from rotation"
        self.rot_next, self.rot_prev = rn, rp
        self.rot = rot
        self.left_tri = np.array([left_tri[d] for d in range(n_d)], dtype=np.int64)
        self.left_side = np.array([left_side[d] for d in range(n_d)], dtype=np.int64)
        # dual dart crossed when a curve dart arrives at an edge point
        he = np.full(n_d, -1, dtype=np.int64)
        for c, links in self.chord_links.items():
            t = int(arr.ch_tri[c])
            he[2 * links[-1]] = 3 * t + int(arr.ch_out_side[c])
            he[2 * links[0] + 1] = 3 * t + int(arr.ch_in_side[c])
        self.head_exit = he
        self._faces()

    def _chord_dart_from_point(self, c, pid, dart):
        arr = self.arr
        links = self.chord_links[c]
        t = int(arr.ch_tri[c])
        if int(arr.ch_in_pt[c]) == pid and 3 * t + int(arr.ch_in_side[c]) == dart:
            return 2 * links[0]
        return 2 * links[-1] + 1

    # ------------------------------------------------------------------

    @property
    def n_darts(self):
        return 2 * len(self.link_kind)

    def head(self, d):
        return self.tail[d ^ 1]

    def face_next(self, d):
        return int(self.rot_prev[d ^ 1])

    def _faces(self):
        n = self.n_darts
        face = np.full(n, -1, dtype=np.int64)
        nf = 0
        for d in range(n):
            if face[d] >= 0:
                continue
            x = d
            while face[x] < 0:
                face[x] = nf
                x = self.face_next(x)
            nf += 1
        self.face_of = face
        self.n_faces = nf

    def straight(self, d):
        """Continue a curve dart through its head vertex."""
        r = self.rot_next
        return int(r[r[d ^ 1]])

    def euler_check(self) -> int:
        return self.n_vertices - len(self.link_kind) + self.n_faces

    def curve_links(self, family=None):
        return [k for k, kind in enumerate(self.link_kind)
                if kind != "seg" and (family is None or kind == family)]

    def walk_curve(self, d0, turn=None):
        """Follow curve darts from ``d0`` until it closes up.  ``turn`` is
        None (go straight everywhere) or "left"/"right" (turn at crossings).
        Returns (darts, dual path)."""
        darts, path = [], []
        d = d0
        while True:
            darts.append(d)
            h = int(self.head_exit[d])
            v = self.head(d)
            if h >= 0:
                path.append(h)
            if self.vertex_kind[v] == "crossing" and turn == "left":
                d = int(self.rot_prev[d ^ 1])
            elif self.vertex_kind[v] == "crossing" and turn == "right":
                d = int(self.rot_next[d ^ 1])
            else:
                d = self.straight(d)
            if d == d0:
                return darts, np.array(path, dtype=np.int64)
            if len(darts) > self.n_darts:
                raise RuntimeError("curve walk did not close")


def reduce_path(sig, path):
    _, partner, _, _ = tri_arrays(sig)
    return _kernels.cyclic_reduce(np.asarray(path, dtype=np.int64), partner)


@dataclass
class Region:
    """A connected component of the surface cut along a set of curve links."""

    faces: list
    chi: int
    punctures: list
    boundary: list  # list of (H darts, dual path) per boundary circle

    @property
    def ends(self) -> int:
        return len(self.punctures) + len(self.boundary)

    @property
    def genus(self) -> int:
        return (2 - self.chi - self.ends) // 2

    @property
    def is_disk(self) -> bool:
        return self.chi == 1 and not self.punctures

    @property
    def is_pants(self) -> bool:
        return self.genus == 0 and self.ends == 3


def regions(amap: ArrMap, H) -> list[Region]:
    """Regions of the surface minus the links in ``H`` (a set of link ids)."""
    H = set(H)
    n_l = len(amap.link_kind)
    parent = list(range(amap.n_faces))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    fo = amap.face_of
    for k in range(n_l):
        if k not in H:
            a, b = find(int(fo[2 * k])), find(int(fo[2 * k + 1]))
            if a != b:
                parent[a] = b
    roots = {}
    for f in range(amap.n_faces):
        roots.setdefault(find(f), []).append(f)
    order = sorted(roots, key=lambda r: min(roots[r]))
    idx = {r: j for j, r in enumerate(order)}
    chi = [len(roots[r]) for r in order]
    for k in range(n_l):
        if k not in H:
            chi[idx[find(int(fo[2 * k]))]] -= 1
    on_h = set()
    for k in H:
        on_h.add(amap.tail[2 * k])
        on_h.add(amap.tail[2 * k + 1])
    punct = [[] for _ in order]
    for v, cyc in amap.rot.items():
        r = idx[find(int(fo[cyc[0]]))]
        if amap.vertex_kind[v] == "puncture":
            punct[r].append(v)
        elif v not in on_h:
            chi[r] += 1
    walks = [[] for _ in order]
    seen = set()
    for k in sorted(H):
        for h0 in (2 * k, 2 * k + 1):
            if h0 in seen:
                continue
            darts, path = [], []
            h = h0
            while True:
                seen.add(h)
                darts.append(h)
                x = int(amap.rot_prev[h ^ 1])
                while (x >> 1) not in H:
                    if amap.left_side[x] >= 0:
                        path.append(3 * int(amap.left_tri[x]) + int(amap.left_side[x]))
                    x = int(amap.rot_prev[x])
                h = x
                if h == h0:
                    break
            r = idx[find(int(fo[h0]))]
            walks[r].append((darts, np.array(path, dtype=np.int64)))
    return [Region(roots[r], chi[j], punct[j], walks[j]) for j, r in enumerate(order)]
