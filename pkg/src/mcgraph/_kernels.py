"""Inner loops over dual-graph paths, arrangement triangles and cell
merging.

Paths are int64 arrays of darts (``3 * triangle + side``).  Every kernel has
a numba version and a numpy/Python version with identical results.  The
numba versions are used unless ``MCGRAPH_DISABLE_NUMBA`` is set to a
non-empty value other than ``0`` before import.
"""
from __future__ import annotations

import os

import numpy as np

try:
    import numba

    HAVE_NUMBA = True
except ImportError:  # pragma: no cover
    HAVE_NUMBA = False

USE_NUMBA = HAVE_NUMBA and os.environ.get("MCGRAPH_DISABLE_NUMBA", "0") in ("", "0")


# --------------------------------------------------------------------------
# numpy / Python reference versions


def linked_count_numpy(u, w, partner):
    """Number of maximal common segments of the cyclic paths ``u`` and ``w``
    (same direction) along which the two strands swap sides."""
    L, M = len(u), len(w)
    if L == 0 or M == 0:
        return 0
    up = np.roll(u, 1)
    wp = np.roll(w, 1)
    ii, jj = np.nonzero((u[:, None] == w[None, :]) & (up[:, None] != wp[None, :]))
    if len(ii) == 0:
        return 0
    s = u[ii] % 3
    a_u = partner[up[ii]] % 3
    sign_start = a_u == (s + 1) % 3
    ell = np.ones(len(ii), dtype=np.int64)
    active = np.ones(len(ii), dtype=bool)
    for _ in range(L + M):
        idx = np.nonzero(active)[0]
        if len(idx) == 0:
            break
        same = u[(ii[idx] + ell[idx]) % L] == w[(jj[idx] + ell[idx]) % M]
        ell[idx[same]] += 1
        active[idx[~same]] = False
    last = u[(ii + ell - 1) % L]
    t = partner[last] % 3
    b_v = w[(jj + ell) % M] % 3
    sign_end = b_v == (t + 1) % 3
    # segments that never ended are coincident cycles, not crossings
    return int(np.count_nonzero((sign_start != sign_end) & ~active))


def _inarc_vec(x, lo, hi):
    return np.where(lo < hi, (lo < x) & (x < hi), (x > lo) | (x < hi))


def tri_cross_numpy(ki, ko, na, perim):
    """Crossings between the first ``na`` chords of a triangle and the rest.

    Chord j joins boundary keys ``ki[j]`` and ``ko[j]`` (positions on the
    triangle perimeter).  Returns ``(ia, ib, own, oth)``: crossing pairs in
    row-major order (``ib`` local to the second block), and every crossing
    seen from each of its chords, sorted by chord and then by position
    along it."""
    ai, ao, bi, bo = ki[:na], ko[:na], ki[na:], ko[na:]
    x1 = _inarc_vec(bi[None, :], ai[:, None], ao[:, None])
    x2 = _inarc_vec(bo[None, :], ai[:, None], ao[:, None])
    ia, ib = np.nonzero(x1 != x2)
    own = np.concatenate([ia, ib + na])
    oth = np.concatenate([ib + na, ia])
    lo, hi = ki[own], ko[own]
    oi, oo = ki[oth], ko[oth]
    inside = np.where(_inarc_vec(oi, lo, hi), oi, oo)
    pos = (inside - lo) % perim
    order = np.lexsort((pos, own))
    return ia.astype(np.int64), ib.astype(np.int64), own[order].astype(np.int64), oth[order].astype(np.int64)


def merge_cells_numpy(ea, eb, keep, n):
    """Component labels of ``n`` cells joined across the kept edges; every
    cell is labelled by the smallest cell of its component."""
    lab = np.arange(n, dtype=np.int64)
    a, b = ea[keep], eb[keep]
    while True:
        m = np.minimum(lab[a], lab[b])
        new = lab.copy()
        np.minimum.at(new, a, m)
        np.minimum.at(new, b, m)
        new = new[new]
        if np.array_equal(new, lab):
            return lab
        lab = new


def reverse_path_numpy(u, partner):
    return partner[u[::-1]].copy()


def cyclic_reduce_numpy(u, partner):
    stack = []
    for d in u.tolist():
        if stack and partner[stack[-1]] == d:
            stack.pop()
        else:
            stack.append(d)
    lo, hi = 0, len(stack)
    while hi - lo >= 2 and partner[stack[hi - 1]] == stack[lo]:
        lo += 1
        hi -= 1
    return np.array(stack[lo:hi], dtype=np.int64)


# --------------------------------------------------------------------------
# numba versions


def _linked_count_loop(u, w, partner):
    L = u.shape[0]
    M = w.shape[0]
    count = 0
    if L == 0 or M == 0:
        return 0
    for i in range(L):
        ui = u[i]
        uprev = u[(i - 1) % L]
        for j in range(M):
            if w[j] != ui or w[(j - 1) % M] == uprev:
                continue
            ell = 1
            while ell < L + M and u[(i + ell) % L] == w[(j + ell) % M]:
                ell += 1
            if ell >= L + M:
                continue
            s = ui % 3
            a_u = partner[uprev] % 3
            t = partner[u[(i + ell - 1) % L]] % 3
            b_v = w[(j + ell) % M] % 3
            if (a_u == (s + 1) % 3) != (b_v == (t + 1) % 3):
                count += 1
    return count


def _cyclic_reduce_loop(u, partner):
    n = u.shape[0]
    stack = np.empty(n, dtype=np.int64)
    top = 0
    for k in range(n):
        d = u[k]
        if top > 0 and partner[stack[top - 1]] == d:
            top -= 1
        else:
            stack[top] = d
            top += 1
    lo = 0
    hi = top
    while hi - lo >= 2 and partner[stack[hi - 1]] == stack[lo]:
        lo += 1
        hi -= 1
    return stack[lo:hi].copy()


def _inarc_s(x, lo, hi):
    if lo < hi:
        return lo < x and x < hi
    return x > lo or x < hi


def _tri_cross_loop(ki, ko, na, perim):
    n = ki.shape[0]
    nb = n - na
    flags = np.zeros((na, nb), dtype=np.bool_)
    cnt = 0
    for a in range(na):
        for b in range(nb):
            if _inarc_s(ki[na + b], ki[a], ko[a]) != _inarc_s(ko[na + b], ki[a], ko[a]):
                flags[a, b] = True
                cnt += 1
    ia = np.empty(cnt, dtype=np.int64)
    ib = np.empty(cnt, dtype=np.int64)
    own = np.empty(2 * cnt, dtype=np.int64)
    oth = np.empty(2 * cnt, dtype=np.int64)
    key = np.empty(2 * cnt, dtype=np.int64)
    m = 0
    for a in range(na):
        for b in range(nb):
            if flags[a, b]:
                ia[m] = a
                ib[m] = b
                m += 1
    for r in range(2 * cnt):
        if r < cnt:
            x, y = ia[r], ib[r] + na
        else:
            x, y = ib[r - cnt] + na, ia[r - cnt]
        lo, hi = ki[x], ko[x]
        inside = ki[y] if _inarc_s(ki[y], lo, hi) else ko[y]
        own[r] = x
        oth[r] = y
        key[r] = x * perim + (inside - lo) % perim
    order = np.argsort(key, kind="mergesort")
    return ia, ib, own[order], oth[order]


def _chord_key(pid, t, s, mpos, sides, prim_flag, W, big):
    m = mpos[pid]
    if prim_flag[3 * t + s]:
        return s * big + m
    return s * big + W[sides[t, s]] - 1 - m


def _bigon_loop(tri_start, tri_chords, tri_na, ch_tri, ch_in_side, ch_out_side, ch_in_pt, ch_out_pt,
                chord_at, mpos, sides, partner, prim_flag, primary, pt_edge, W, big, max_rounds, out_count):
    """Innermost-bigon removal on an explicit arrangement.

    Each round lists the crossings of every triangle, orders the crossings
    along every chord, collects innermost bigons whose swap triangles are
    pairwise disjoint (scanning triangles and crossings in order) and
    exchanges the edge points along each of them.  ``mpos`` is updated in
    place and the final crossing count goes to ``out_count[0]``.  Returns
    the number of bigons removed, or -1 once it exceeds ``max_rounds``
    (when non-negative)."""
    nt = tri_na.shape[0]
    n = ch_tri.shape[0]
    perim = 3 * big
    limit = 0
    for x in W:
        limit += x
    limit += 1
    al_start = np.zeros(n + 1, dtype=np.int64)
    removed = 0
    while True:
        # crossings per triangle (row-major) and the along lists
        xa_list = []
        xb_list = []
        x_start = np.zeros(nt + 1, dtype=np.int64)
        al_cnt = np.zeros(n, dtype=np.int64)
        own_all = []
        oth_all = []
        for t in range(nt):
            lo_c, hi_c = tri_start[t], tri_start[t + 1]
            na = tri_na[t]
            m = hi_c - lo_c
            if na == 0 or na == m:
                x_start[t + 1] = x_start[t]
                continue
            ki = np.empty(m, dtype=np.int64)
            ko = np.empty(m, dtype=np.int64)
            for j in range(m):
                c = tri_chords[lo_c + j]
                ki[j] = _chord_key(ch_in_pt[c], t, ch_in_side[c], mpos, sides, prim_flag, W, big)
                ko[j] = _chord_key(ch_out_pt[c], t, ch_out_side[c], mpos, sides, prim_flag, W, big)
            ia, ib, own, oth = _tri_cross_loop(ki, ko, na, perim)
            for r in range(ia.shape[0]):
                xa_list.append(tri_chords[lo_c + ia[r]])
                xb_list.append(tri_chords[lo_c + na + ib[r]])
            x_start[t + 1] = x_start[t] + ia.shape[0]
            for r in range(own.shape[0]):
                c = tri_chords[lo_c + own[r]]
                own_all.append(c)
                oth_all.append(tri_chords[lo_c + oth[r]])
                al_cnt[c] += 1
        for c in range(n):
            al_start[c + 1] = al_start[c] + al_cnt[c]
        al_buf = np.empty(al_start[n], dtype=np.int64)
        fill = al_start[:n].copy()
        # own_all is grouped by chord and sorted along it within a triangle
        for r in range(len(own_all)):
            c = own_all[r]
            al_buf[fill[c]] = oth_all[r]
            fill[c] += 1
        # innermost bigons with disjoint swap triangles
        used = np.zeros(nt, dtype=np.bool_)
        sw_a = []
        sw_b = []
        tmp_a = np.empty(limit + 1, dtype=np.int64)
        tmp_b = np.empty(limit + 1, dtype=np.int64)
        n_found = 0
        for t in range(nt):
            if used[t]:
                continue
            for r in range(x_start[t], x_start[t + 1]):
                a = xa_list[r]
                b = xb_list[r]
                la0, la1 = al_start[a], al_start[a + 1]
                lb0, lb1 = al_start[b], al_start[b + 1]
                got = 0
                for ia_ in range(2):
                    da = ia_ == 0
                    if da and al_buf[la1 - 1] != b:
                        continue
                    if (not da) and al_buf[la0] != b:
                        continue
                    for ib_ in range(2):
                        db = ib_ == 0
                        if db and al_buf[lb1 - 1] != a:
                            continue
                        if (not db) and al_buf[lb0] != a:
                            continue
                        # follow the two strands from the crossing
                        ca, cb, fa, fb = a, b, da, db
                        k = 0
                        ok = False
                        while k <= limit:
                            if fa:
                                pa, dart_a = ch_out_pt[ca], 3 * ch_tri[ca] + ch_out_side[ca]
                            else:
                                pa, dart_a = ch_in_pt[ca], 3 * ch_tri[ca] + ch_in_side[ca]
                            if fb:
                                pb, dart_b = ch_out_pt[cb], 3 * ch_tri[cb] + ch_out_side[cb]
                            else:
                                pb, dart_b = ch_in_pt[cb], 3 * ch_tri[cb] + ch_in_side[cb]
                            if dart_a != dart_b or abs(mpos[pa] - mpos[pb]) != 1:
                                break
                            tmp_a[k] = pa
                            tmp_b[k] = pb
                            k += 1
                            nd = partner[dart_a]
                            side = 0 if prim_flag[nd] else 1
                            a2 = chord_at[pa, side]
                            b2 = chord_at[pb, side]
                            fa = ch_in_pt[a2] == pa and 3 * ch_tri[a2] + ch_in_side[a2] == nd
                            fb = ch_in_pt[b2] == pb and 3 * ch_tri[b2] + ch_in_side[b2] == nd
                            na_ = al_start[a2 + 1] - al_start[a2]
                            nb_ = al_start[b2 + 1] - al_start[b2]
                            if na_ > 0 or nb_ > 0:
                                first_a = -1
                                first_b = -1
                                if na_ > 0:
                                    first_a = al_buf[al_start[a2]] if fa else al_buf[al_start[a2 + 1] - 1]
                                if nb_ > 0:
                                    first_b = al_buf[al_start[b2]] if fb else al_buf[al_start[b2 + 1] - 1]
                                ok = first_a == b2 and first_b == a2
                                break
                            ca, cb = a2, b2
                        if ok:
                            got = k
                            break
                    if got:
                        break
                if not got:
                    continue
                clash = False
                for q in range(got):
                    d0 = primary[pt_edge[tmp_a[q]]]
                    if used[d0 // 3] or used[partner[d0] // 3]:
                        clash = True
                        break
                if clash:
                    continue
                for q in range(got):
                    d0 = primary[pt_edge[tmp_a[q]]]
                    used[d0 // 3] = True
                    used[partner[d0] // 3] = True
                    sw_a.append(tmp_a[q])
                    sw_b.append(tmp_b[q])
                n_found += 1
                if used[t]:
                    break
        if n_found == 0:
            out_count[0] = x_start[nt]
            return removed
        for q in range(len(sw_a)):
            pa, pb = sw_a[q], sw_b[q]
            ma, mb = mpos[pa], mpos[pb]
            mpos[pa] = mb
            mpos[pb] = ma
        removed += n_found
        if max_rounds >= 0 and removed > max_rounds:
            return -1


def _merge_cells_loop(ea, eb, keep, n):
    parent = np.arange(n, dtype=np.int64)
    for j in range(ea.shape[0]):
        if not keep[j]:
            continue
        x = ea[j]
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        y = eb[j]
        while parent[y] != y:
            parent[y] = parent[parent[y]]
            y = parent[y]
        if x != y:
            if x < y:
                parent[y] = x
            else:
                parent[x] = y
    lab = np.empty(n, dtype=np.int64)
    for c in range(n):
        x = c
        while parent[x] != x:
            x = parent[x]
        lab[c] = x
    return lab


if HAVE_NUMBA:
    merge_cells_numba = numba.njit(cache=True)(_merge_cells_loop)
    _inarc_s = numba.njit(cache=True)(_inarc_s)
    _tri_cross_loop = numba.njit(cache=True)(_tri_cross_loop)
    _chord_key = numba.njit(cache=True)(_chord_key)
    tri_cross_numba = _tri_cross_loop
    bigon_loop_numba = numba.njit(cache=True)(_bigon_loop)
    linked_count_numba = numba.njit(cache=True)(_linked_count_loop)
    cyclic_reduce_numba = numba.njit(cache=True)(_cyclic_reduce_loop)
else:  # pragma: no cover
    merge_cells_numba = _merge_cells_loop
    tri_cross_numba = _tri_cross_loop
    bigon_loop_numba = _bigon_loop
    linked_count_numba = _linked_count_loop
    cyclic_reduce_numba = _cyclic_reduce_loop


if USE_NUMBA:
    linked_count = linked_count_numba
    cyclic_reduce = cyclic_reduce_numba
    merge_cells = merge_cells_numba
    tri_cross = tri_cross_numba
else:
    linked_count = linked_count_numpy
    cyclic_reduce = cyclic_reduce_numpy
    merge_cells = merge_cells_numpy
    tri_cross = tri_cross_numpy


def path_intersection(u, w, partner) -> int:
    """Geometric intersection number of two distinct primitive closed curves
    carried by the reduced cyclic dual paths ``u`` and ``w``."""
    return linked_count(u, w, partner) + linked_count(u, reverse_path_numpy(w, partner), partner)


def path_self_intersection(u, partner) -> int:
    # every crossing shows up once from each of its two strands
    same = linked_count(u, u, partner)
    opp = linked_count(u, reverse_path_numpy(u, partner), partner)
    return (same + opp) // 2
