"""Seeded verification sweeps shared by the command line and the test suite.

A sweep draws all of its inputs from one seed up front, evaluates samples
(optionally in worker processes) and assembles rows in sample order, so the
same seed always gives the same rows.  Every row is a dict of strings.
Inequality rows record the formula, the inputs and both sides.
"""
from __future__ import annotations

from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .curves import TracingBudgetExceeded
from .extension_surgery import (
    ConstructionDefect,
    check_bound,
    extend_to_pants,
    transfer_path,
)
from .io import multicurve_to_json, pair_to_json
from .multicurve_graph import multicurve_intersection
from .pretriangulation import (
    PreTriangulation,
    check_appendix,
    pants_from_ordering,
    superimpose,
    verify_pants,
)
from .sampling import (
    DEFAULT_L,
    DEFAULT_R,
    default_universe,
    random_k_multicurve,
    random_pair,
    random_pants_path,
    rng_for,
    sub_multicurve,
)
from .surface_core import as_sig, f_of_k

SATISFIED = "Satisfied"
FALSIFIED = "Falsified"
INCONCLUSIVE = "Inconclusive"


@dataclass
class SweepResult:
    name: str
    columns: list
    rows: list = field(default_factory=list)
    failures: list = field(default_factory=list)  # reproducer dicts, one per Falsified row

    def count(self, status: str) -> int:
        return sum(r["satisfied"] == status for r in self.rows)

    @property
    def exit_status(self) -> int:
        if self.count(FALSIFIED):
            return 1
        if self.count(INCONCLUSIVE):
            return 3
        return 0

    def reproducer(self) -> dict | None:
        """The failing sample with the smallest intersection number."""
        if not self.failures:
            return None
        return min(self.failures, key=lambda f: (int(f["row"].get("i", "0") or 0), f["row"]["sample"]))


def _map(fn, items, jobs: int):
    if jobs <= 1 or len(items) <= 1:
        return [fn(x) for x in items]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        return list(ex.map(fn, items, chunksize=max(1, len(items) // (4 * jobs))))


def _run(name, columns, fn, items, jobs):
    res = SweepResult(name, columns)
    for n, (row, repro) in enumerate(_map(fn, items, jobs)):
        row = {"sample": str(n), **row}
        res.rows.append(row)
        if row["satisfied"] == FALSIFIED:
            res.failures.append({"sweep": name, "row": row, **(repro or {})})
    return res


def _verdict(ok: bool) -> str:
    return SATISFIED if ok else FALSIFIED


def _universe(sig, L, R):
    return default_universe(as_sig(sig), L, R)


# --------------------------------------------------------------------------
# distance bound for k-multicurves

THEOREM_E_COLUMNS = ["sample", "i", "bound", "constructive_len", "bfs_upper", "satisfied",
                     "k", "pants_i", "pants_len", "formula", "lhs"]
THEOREM_E_FORMULA = "min(constructive_len,bfs_upper) <= 6*4^(6g-6+2n-2k)*i^2+f(k)"


def _theorem_e_one(args):
    a, b, L, R = args
    U = _universe(a.sig, L, R)
    try:
        rep = check_bound(a, b, U)
    except (ConstructionDefect, TracingBudgetExceeded) as exc:
        i = multicurve_intersection(a, b)
        status = FALSIFIED if isinstance(exc, ConstructionDefect) else INCONCLUSIVE
        row = {"i": str(i), "bound": "", "constructive_len": "", "bfs_upper": "", "satisfied": status,
               "k": str(a.k), "pants_i": "", "pants_len": "", "formula": THEOREM_E_FORMULA, "lhs": ""}
        return row, {"pair": pair_to_json(a, b), "error": str(exc)}
    row = rep.row()
    got = [x for x in (rep.constructive_len, rep.bfs_upper) if x is not None]
    row.update(k=str(a.k), pants_i="" if rep.pants_i is None else str(rep.pants_i),
               pants_len="" if rep.pants_len is None else str(rep.pants_len),
               formula=THEOREM_E_FORMULA, lhs=str(min(got)) if got else "")
    return row, {"pair": pair_to_json(a, b)}


def sweep_theorem_e(sig, k: int, samples: int, seed: int, L=DEFAULT_L, R=DEFAULT_R, jobs=1) -> SweepResult:
    sig = as_sig(sig)
    U = _universe(sig, L, R)
    rng = rng_for(seed)
    items = [(*random_pair(U, k, rng), L, R) for _ in range(samples)]
    return _run("theorem-e", THEOREM_E_COLUMNS, _theorem_e_one, items, jobs)


# --------------------------------------------------------------------------
# one-curve extension and its iteration

LEMMA33_COLUMNS = ["sample", "i", "k", "case", "i_tilde", "bound", "pants_i", "pants_bound",
                   "essential", "disjoint", "new", "i_tilde_le_2i", "satisfied", "formula"]
LEMMA33_FORMULA = "i(alpha~,beta) <= 2*i; i(alpha~~,beta~~) <= 4^(xi-k)*i"


def _lemma33_one(args):
    a, b = args
    sig = a.sig
    i = multicurve_intersection(a, b)
    base = {"i": str(i), "k": str(a.k), "formula": LEMMA33_FORMULA}
    try:
        ext = extend_to_pants(a, b)
    except ConstructionDefect as exc:
        rep = getattr(exc, "report", None)
        row = {**base, "case": getattr(rep, "case", ""), "i_tilde": "", "bound": str(2 * i), "pants_i": "",
               "pants_bound": str(4 ** (sig.xi - a.k) * i), "essential": "", "disjoint": "", "new": "",
               "i_tilde_le_2i": "", "satisfied": FALSIFIED}
        return row, {"pair": pair_to_json(a, b), "error": str(exc)}
    first = ext.steps[0][1]
    checks = [first.checks.get(x, False) for x in ("essential", "disjoint_from_alpha", "not_in_alpha", "i_tilde_le_2i")]
    ok = all(checks) and ext.i_end <= ext.bound
    ok = ok and all(all(r.checks.values()) for _, r in ext.steps)
    row = {**base, "case": first.case, "i_tilde": str(first.i_after), "bound": str(2 * i),
           "pants_i": str(ext.i_end), "pants_bound": str(ext.bound),
           "essential": str(int(checks[0])), "disjoint": str(int(checks[1])), "new": str(int(checks[2])),
           "i_tilde_le_2i": str(int(checks[3])), "satisfied": _verdict(ok)}
    return row, {"pair": pair_to_json(a, b)}


def lemma33_pairs(sig, samples: int, seed: int, L=DEFAULT_L, R=DEFAULT_R, k=None) -> list:
    """Pairs with ``k`` drawn uniformly from 1..xi-1 when not given."""
    sig = as_sig(sig)
    U = _universe(sig, L, R)
    rng = rng_for(seed)
    out = []
    for _ in range(samples):
        kk = k if k is not None else rng.randint(1, sig.xi - 1)
        out.append(random_pair(U, kk, rng))
    return out


def sweep_lemma33(sig, samples: int, seed: int, L=DEFAULT_L, R=DEFAULT_R, k=None, jobs=1) -> SweepResult:
    items = lemma33_pairs(sig, samples, seed, L, R, k)
    return _run("lemma33", LEMMA33_COLUMNS, _lemma33_one, items, jobs)


# --------------------------------------------------------------------------
# transfer of pants paths

LEMMA35_COLUMNS = ["sample", "m", "k", "f_k", "length", "bound", "valid", "satisfied", "formula"]
LEMMA35_FORMULA = "length <= m + f(k)"


def _lemma35_one(args):
    walk, a, b = args
    m = len(walk) - 1
    fk = f_of_k(a.sig, a.k)
    base = {"m": str(m), "k": str(a.k), "f_k": str(fk), "bound": str(m + fk), "formula": LEMMA35_FORMULA}
    repro = {"pants_path": [multicurve_to_json(P) for P in walk], "pair": pair_to_json(a, b)}
    try:
        path = transfer_path(walk, a, b)
    except ConstructionDefect as exc:
        return {**base, "length": "", "valid": "0", "satisfied": FALSIFIED}, {**repro, "error": str(exc)}
    valid = path.is_valid() and path.vertices[0].key() == a.key() and path.vertices[-1].key() == b.key()
    ok = valid and path.length <= m + fk
    return {**base, "length": str(path.length), "valid": str(int(valid)), "satisfied": _verdict(ok)}, repro


def lemma35_samples(sig, samples: int, seed: int, L=DEFAULT_L, R=DEFAULT_R, k=None, max_len=8) -> list:
    sig = as_sig(sig)
    U = _universe(sig, L, R)
    rng = rng_for(seed)
    out = []
    for _ in range(samples):
        walk = random_pants_path(U, rng.randint(1, max_len), rng)
        kk = k if k is not None else rng.randint(1, sig.xi - 1)
        out.append((walk, sub_multicurve(walk[0], kk, rng), sub_multicurve(walk[-1], kk, rng)))
    return out


def sweep_lemma35(sig, samples: int, seed: int, L=DEFAULT_L, R=DEFAULT_R, k=None, max_len=8, jobs=1) -> SweepResult:
    items = lemma35_samples(sig, samples, seed, L, R, k, max_len)
    return _run("lemma35", LEMMA35_COLUMNS, _lemma35_one, items, jobs)


# --------------------------------------------------------------------------
# superimposed pants decompositions

APPENDIX_COLUMNS = ["sample", "i", "bound", "coarse_bound", "swaps", "max_swap", "constructive_len",
                    "bfs_upper", "recovered", "satisfied", "formula", "lhs"]
APPENDIX_FORMULA = "min(constructive_len,bfs_upper) <= 6*i^2-3*i <= 6*i^2; every swap <= 3"
SWAP_COLUMNS = ["sample", "i", "j", "changed", "distance", "bound", "satisfied"]
BUILD_COLUMNS = ["sample", "i", "vertices", "edges", "pants_ok", "recovered_P", "recovered_P2", "satisfied"]


def pants_pairs(sig, samples: int, seed: int, L=DEFAULT_L, R=DEFAULT_R) -> list:
    sig = as_sig(sig)
    U = _universe(sig, L, R)
    rng = rng_for(seed)
    out = []
    while len(out) < samples:
        P = random_k_multicurve(U, sig.xi, rng)
        P2 = random_k_multicurve(U, sig.xi, rng)
        if not set(P.key()) & set(P2.key()):
            out.append((P, P2))
    return out


def _appendix_one(args):
    P, P2 = args
    repro = {"pair": pair_to_json(P, P2)}
    try:
        rep = check_appendix(P, P2)
    except ConstructionDefect as exc:
        i = multicurve_intersection(P, P2)
        row = {"i": str(i), "bound": str(6 * i * i - 3 * i), "coarse_bound": str(6 * i * i), "swaps": "",
               "max_swap": "", "constructive_len": "", "bfs_upper": "", "recovered": "", "satisfied": FALSIFIED,
               "formula": APPENDIX_FORMULA, "lhs": ""}
        return (row, []), {**repro, "error": str(exc)}
    row = rep.row()
    got = [x for x in (rep.constructive_len, rep.bfs_upper) if x is not None]
    row.update(recovered=str(int(rep.recovered)), formula=APPENDIX_FORMULA, lhs=str(min(got)) if got else "")
    swaps = [{"i": str(rep.i), **s.row(), "bound": "3"} for s in rep.swaps]
    return (row, swaps), repro


def _appendix_rows(sig, samples, seed, L, R, jobs):
    items = pants_pairs(sig, samples, seed, L, R)
    return items, _map(_appendix_one, items, jobs)


def sweep_appendix(sig, samples: int, seed: int, L=DEFAULT_L, R=DEFAULT_R, jobs=1) -> SweepResult:
    _, out = _appendix_rows(sig, samples, seed, L, R, jobs)
    res = SweepResult("appendix", APPENDIX_COLUMNS)
    for n, ((row, _), repro) in enumerate(out):
        row = {"sample": str(n), **row}
        res.rows.append(row)
        if row["satisfied"] == FALSIFIED:
            res.failures.append({"sweep": "appendix", "row": row, **repro})
    return res


def sweep_swaps(sig, samples: int, seed: int, L=DEFAULT_L, R=DEFAULT_R, jobs=1) -> SweepResult:
    """One row per adjacent swap that changed the decomposition."""
    _, out = _appendix_rows(sig, samples, seed, L, R, jobs)
    res = SweepResult("swap-sweep", SWAP_COLUMNS)
    for n, ((row, swaps), repro) in enumerate(out):
        for s in swaps:
            r = {"sample": str(n), **s}
            res.rows.append(r)
            if r["satisfied"] == FALSIFIED:
                res.failures.append({"sweep": "swap-sweep", "row": r, **repro})
        if row["satisfied"] == FALSIFIED and not any(s["satisfied"] == FALSIFIED for s in swaps):
            r = {"sample": str(n), "i": row["i"], "j": "", "changed": "", "distance": "", "bound": "3",
                 "satisfied": FALSIFIED}
            res.rows.append(r)
            res.failures.append({"sweep": "swap-sweep", "row": r, **repro})
    return res


def _build_one(args):
    P, P2 = args
    repro = {"pair": pair_to_json(P, P2)}
    i = multicurve_intersection(P, P2)
    try:
        T = superimpose(P, P2)
        A, _ = pants_from_ordering(T, T.canonical_ordering(0))
        B, _ = pants_from_ordering(T, T.canonical_ordering(1))
    except ConstructionDefect as exc:
        row = {"i": str(i), "vertices": "", "edges": "", "pants_ok": "0", "recovered_P": "", "recovered_P2": "",
               "satisfied": FALSIFIED}
        return row, {**repro, "error": str(exc)}
    pants_ok = not verify_pants(P.sig, A.curves) and not verify_pants(P.sig, B.curves)
    rp, rp2 = A.key() == P.key(), B.key() == P2.key()
    row = {"i": str(i), "vertices": str(T.n_vertices), "edges": str(T.n_edges), "pants_ok": str(int(pants_ok)),
           "recovered_P": str(int(rp)), "recovered_P2": str(int(rp2)), "satisfied": _verdict(pants_ok and rp and rp2)}
    return row, repro


def sweep_build_pants(sig, samples: int, seed: int, L=DEFAULT_L, R=DEFAULT_R, jobs=1) -> SweepResult:
    items = pants_pairs(sig, samples, seed, L, R)
    return _run("build-pants", BUILD_COLUMNS, _build_one, items, jobs)


def build_trace(P, P2, first: int = 0):
    """Thickening trace of a canonical ordering of the superimposition."""
    T = PreTriangulation(P.sig, [P.curves, P2.curves]) if set(P.key()) & set(P2.key()) else superimpose(P, P2)
    _, trace = pants_from_ordering(T, T.canonical_ordering(first))
    return trace


SWEEPS = {
    "theorem-e": sweep_theorem_e,
    "lemma33": sweep_lemma33,
    "lemma35": sweep_lemma35,
    "appendix": sweep_appendix,
    "swap-sweep": sweep_swaps,
    "build-pants": sweep_build_pants,
}
