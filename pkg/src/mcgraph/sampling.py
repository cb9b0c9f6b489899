"""Seeded sampling of curves, k-multicurves and pants paths inside bounded
curve universes.

All randomness goes through a :class:`random.Random` built from an integer
seed, so a seed fixes every sampled input.
"""
from __future__ import annotations

import random
from functools import lru_cache

from .curves import class_intersection, enumerate_curves
from .multicurve_graph import (
    CurveUniverse,
    GraphError,
    KMulticurve,
    enumerate_universe,
    fills,
)
from .surface_core import as_sig

DEFAULT_L = 2
DEFAULT_R = 64
MARKING_WEIGHT = 8
MOVE_POOL_WEIGHT = 16


class SamplingError(RuntimeError):
    pass


def rng_for(seed: int) -> random.Random:
    return random.Random(int(seed))


@lru_cache(maxsize=None)
def seed_marking(sig) -> tuple:
    """A filling marking ``P + Q``: ``P`` a maximal disjoint family of short
    curves, ``Q`` short curves outside ``P`` added until the union fills."""
    sig = as_sig(sig)
    cs = enumerate_curves(sig, MARKING_WEIGHT)
    P = []
    for c in cs:
        if all(class_intersection(c, x) == 0 for x in P):
            P.append(c)
    keys = {c.weights for c in P}
    Q = []
    for c in cs:
        if c.weights in keys:
            continue
        if all(class_intersection(c, x) == 0 for x in Q):
            Q.append(c)
            if fills(sig, P + Q):
                return tuple(P), tuple(Q)
    raise SamplingError(f"no filling marking among curves of weight <= {MARKING_WEIGHT} on {sig}")


@lru_cache(maxsize=None)
def default_universe(sig, L: int = DEFAULT_L, R: int = DEFAULT_R) -> CurveUniverse:
    sig = as_sig(sig)
    P, Q = seed_marking(sig)
    return enumerate_universe(sig, list(P) + list(Q), L, R)


@lru_cache(maxsize=None)
def move_pool(sig) -> tuple:
    """Short curves that seed the move search next to a universe, whose
    twist levels can miss the curves of a small complementary piece."""
    return tuple(enumerate_curves(as_sig(sig), MOVE_POOL_WEIGHT))


def random_k_multicurve(U: CurveUniverse, k: int, rng: random.Random, tries: int = 100) -> KMulticurve:
    U.sig.check_k(k)
    for _ in range(tries):
        pick = [rng.randrange(len(U))]
        while len(pick) < k:
            cand = set.intersection(*(set(U.disjoint_from(j)) for j in pick))
            if not cand:
                break
            pick.append(rng.choice(sorted(cand)))
        if len(pick) == k:
            return KMulticurve.of([U.curves[j] for j in pick], check=False)
    raise SamplingError(f"could not sample a {k}-multicurve from a universe of {len(U)} curves")


def random_pair(U: CurveUniverse, k: int, rng: random.Random, distinct=True) -> tuple:
    while True:
        a = random_k_multicurve(U, k, rng)
        b = random_k_multicurve(U, k, rng)
        if not distinct or a.key() != b.key():
            return a, b


def random_pairs(sig, k: int, n: int, seed: int, U: CurveUniverse | None = None) -> list:
    sig = as_sig(sig)
    U = U if U is not None else default_universe(sig)
    rng = rng_for(seed)
    return [random_pair(U, k, rng) for _ in range(n)]


def pants_moves(P: KMulticurve, c, pool) -> list:
    """Replacements for the curve ``c`` of ``P`` by an elementary move.
    Curves of ``pool`` seed the list, which is then widened by resolutions
    with ``c``."""
    from .multicurve_graph import PANTS_MOVE_I, move_piece
    from .pretriangulation import resolution_curves

    rest = [x for x in P.curves if x.weights != c.weights]
    need = PANTS_MOVE_I[move_piece(P.sig, rest)]
    keys = set(P.key())

    def ok(x):
        return (x.weights not in keys and all(class_intersection(x, r) == 0 for r in rest)
                and class_intersection(x, c) == need)

    found = {x.weights: x for x in pool if ok(x)}
    for x in list(found.values()):
        for y in resolution_curves(c, x):
            if y.weights not in found and ok(y):
                found[y.weights] = y
    return [found[w] for w in sorted(found)]


def random_pants_path(U: CurveUniverse, length: int, rng: random.Random) -> list:
    """A random walk of at most ``length`` elementary moves starting from a
    random decomposition in ``U``; it never revisits a decomposition and
    stops early when stuck.  Each step picks among the lightest few moves so
    that weights stay small.  The seed pool is ``U`` plus :func:`move_pool`;
    curves met along the walk join it."""
    xi = U.sig.xi
    cur = random_k_multicurve(U, xi, rng)
    walk = [cur]
    seen = {cur.key()}
    pool = {c.weights: c for c in (*U.curves, *move_pool(U.sig))}
    for _ in range(length):
        options = []
        for c in cur.curves:
            for y in pants_moves(cur, c, list(pool.values())):
                nxt = cur.replace(c, y)
                if nxt.key() not in seen:
                    options.append(nxt)
        if not options:
            break
        options.sort(key=lambda m: (sum(c.total_weight for c in m.curves), m.key()))
        cur = rng.choice(options[:4])
        seen.add(cur.key())
        walk.append(cur)
        for c in cur.curves:
            pool.setdefault(c.weights, c)
    return walk


def sub_multicurve(P: KMulticurve, k: int, rng: random.Random) -> KMulticurve:
    if not 1 <= k <= P.k:
        raise GraphError(f"k={k} outside 1..{P.k}")
    return KMulticurve.of(rng.sample(list(P.curves), k), check=False)
