"""Compare the numba kernels with the pure fallback.

Each mode runs in a fresh interpreter because the backend is chosen at import
time from MCGRAPH_DISABLE_NUMBA.  Numba compile time is excluded by a warm-up
call.

    python3 benchmarks/bench_kernels.py [--pairs N] [--weight W]
"""
from __future__ import annotations

import argparse
import json
import os
import subprocess
import sys

WORKER = r"""
import json, sys, time
from mcgraph import _kernels as K
from mcgraph.curves import enumerate_curves, intersection_number
from mcgraph.curve_engine import bigon_intersection
from mcgraph.surface_core import SurfaceSig

pairs, weight = int(sys.argv[1]), int(sys.argv[2])
out = {"numba": K.USE_NUMBA}
for g, n in ((1, 1), (0, 5), (1, 2)):
    sig = SurfaceSig(g, n)
    cs = enumerate_curves(sig, weight)
    ps = [(cs[j % len(cs)], cs[(7 * j + 3) % len(cs)]) for j in range(pairs)]
    bigon_intersection(*ps[0]); intersection_number(*ps[0])
    row = {}
    for name, fn in (("dual_path", intersection_number), ("bigon_removal", bigon_intersection)):
        t = time.perf_counter()
        for a, b in ps:
            fn(a, b)
        row[name] = (time.perf_counter() - t) / pairs * 1e3
    out[f"{g},{n}"] = row
print(json.dumps(out))
"""


def run(disable: bool, pairs: int, weight: int) -> dict:
    env = dict(os.environ, MCGRAPH_DISABLE_NUMBA="1" if disable else "0")
    p = subprocess.run([sys.executable, "-c", WORKER, str(pairs), str(weight)],
                       env=env, capture_output=True, text=True, check=True)
    return json.loads(p.stdout)


def main(argv=None) -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=300)
    ap.add_argument("--weight", type=int, default=20, help="max total weight of sampled curves")
    args = ap.parse_args(argv)
    fast = run(False, args.pairs, args.weight)
    slow = run(True, args.pairs, args.weight)
    if not fast["numba"]:
        print("numba unavailable; both runs use the fallback")
    print(f"{'surface':8} {'operation':14} {'numba ms':>9} {'fallback ms':>12} {'speedup':>8}")
    for key in (k for k in fast if k != "numba"):
        for op in fast[key]:
            a, b = fast[key][op], slow[key][op]
            print(f"{key:8} {op:14} {a:9.3f} {b:12.3f} {b / a:7.1f}x")


if __name__ == "__main__":
    main()
