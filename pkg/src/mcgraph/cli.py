"""Command line front-end.

Exit status: 0 all checks satisfied, 1 a violation was found (a reproducer
is written), 2 invalid input, 3 only inconclusive results besides
satisfied ones.  Reports are CSV; the only line that varies between runs
with the same seed is the leading ``#`` header carrying the timestamp.
"""
from __future__ import annotations

import argparse
import csv
import io as _io
import sys
from datetime import datetime, timezone

from . import io as mio
from .curve_engine import OverlappingCurves, cut_along, dehn_twist
from .curves import CurveError, TracingBudgetExceeded, curve_from_json, curve_to_json, intersection_number
from .extension_surgery import ConstructionDefect, extend_once, extend_to_pants
from .multicurve_graph import ConeError, GraphError, base_distance, bfs_distance_upper, cone_distance, cone_off
from .pretriangulation import PreTriangulationError
from .sampling import DEFAULT_L, DEFAULT_R, default_universe
from .surface_core import InvalidMulticurveSize, InvalidSignature, SurfaceSig, surface_report
from .triangulation import UnsupportedSurface

OK, VIOLATION, INVALID, INCONCLUSIVE = 0, 1, 2, 3


class UsageError(ValueError):
    pass


# --------------------------------------------------------------------------
# argument helpers


def _pair_of_ints(text: str, what: str) -> tuple:
    try:
        a, b = (int(x) for x in text.split(","))
    except ValueError:
        raise argparse.ArgumentTypeError(f"{what} must look like A,B (got {text!r})") from None
    return a, b


def _surface_arg(text):
    return _pair_of_ints(text, "surface")


def _universe_arg(text):
    L, R = _pair_of_ints(text, "universe")
    if L < 0 or R < 0:
        raise argparse.ArgumentTypeError("universe parameters must be non-negative")
    return L, R


def _sig(args) -> SurfaceSig:
    if getattr(args, "surface", None) is not None:
        return SurfaceSig(*args.surface)
    if args.genus is None or args.punctures is None:
        raise UsageError("give --surface G,N or both --genus and --punctures")
    return SurfaceSig(args.genus, args.punctures)


def _emit(obj) -> None:
    sys.stdout.write(mio.dump_json(obj))


def _write_out(obj, path) -> None:
    if path:
        mio.dump_json(obj, path)
    else:
        _emit(obj)


def _curve(path):
    return mio.read_record(path, curve_from_json)


def _multicurve(path):
    return mio.read_record(path, mio.multicurve_from_json)


# --------------------------------------------------------------------------
# reports


def render_csv(res, header: str) -> str:
    buf = _io.StringIO()
    buf.write(header + "\n")
    w = csv.DictWriter(buf, fieldnames=res.columns, lineterminator="\n", extrasaction="ignore")
    w.writeheader()
    for row in res.rows:
        w.writerow(row)
    return buf.getvalue()


def _header(args) -> str:
    stamp = datetime.now(timezone.utc).strftime("%Y-%m-%dT%H:%M:%SZ")
    parts = [args.command, getattr(args, "action", "")]
    for key in ("surface", "k", "samples", "universe", "seed"):
        v = getattr(args, key, None)
        if v is not None:
            parts.append(f"{key}={','.join(map(str, v)) if isinstance(v, tuple) else v}")
    return "# mcgraph " + " ".join(p for p in parts if p) + f" generated={stamp}"


def _finish_sweep(args, res) -> int:
    text = render_csv(res, _header(args))
    if args.report:
        with open(args.report, "w", newline="") as fh:
            fh.write(text)
    summary = {
        "sweep": res.name,
        "samples": len(res.rows),
        "satisfied": res.count("Satisfied"),
        "falsified": res.count("Falsified"),
        "inconclusive": res.count("Inconclusive"),
        "exit": res.exit_status,
    }
    rep = res.reproducer()
    if rep is not None:
        path = args.repro or ((args.report or "mcgraph") + ".repro.json")
        mio.dump_json(rep, path)
        summary["reproducer"] = path
    _emit(summary)
    return res.exit_status


# --------------------------------------------------------------------------
# subcommands


def cmd_surface(args) -> int:
    sig = _sig(args)
    if args.action == "classify" and args.k is None:
        raise UsageError("surface classify needs --k")
    if args.k is not None:
        sig.check_k(args.k)
    _emit(surface_report(sig, args.k))
    return OK


def cmd_curve(args) -> int:
    if args.action == "intersect":
        a, b = _curve(args.a), _curve(args.b)
        _emit({"i": str(intersection_number(a, b))})
    elif args.action == "twist":
        c, t = _curve(args.about), _curve(args.target)
        _write_out(curve_to_json(dehn_twist(c, args.power, t)), args.out)
    else:
        P = _multicurve(args.curves)
        pieces = cut_along(P.sig, P.curves)
        _emit({"pieces": [{"genus": p.genus, "ends": p.ends, "punctures": p.punctures, "chi": p.chi,
                           "pants": p.is_pants} for p in pieces]})
    return OK


def _vertex(G, name):
    if name in G:
        return name
    try:
        v = int(name)
    except ValueError:
        v = None
    if v is not None and v in G:
        return v
    raise UsageError(f"unknown vertex {name!r}")


def cmd_graph(args) -> int:
    if args.action == "distance":
        a, b = _multicurve(args.src), _multicurve(args.dst)
        if a.sig != b.sig:
            raise UsageError(f"endpoints on {a.sig} and {b.sig}")
        if args.k is not None and not (a.k == b.k == args.k):
            raise UsageError(f"endpoints have sizes {a.k}, {b.k}; --k is {args.k}")
        L, R = args.universe
        U = default_universe(a.sig, L, R).extended(a.curves + b.curves)
        res = bfs_distance_upper(a, b, U, max_nodes=args.max_nodes)
        out = {"distance_upper": None if res.distance is None else str(res.distance),
               "explored": res.explored, "universe_size": len(U)}
        if res.path is not None and args.path:
            from .multicurve_graph import MulticurvePath

            mio.dump_json(mio.path_to_json(MulticurvePath(res.path).certify()), args.path)
            out["path"] = args.path
        _emit(out)
        return OK if res.distance is not None else INCONCLUSIVE
    G, subsets = mio.read_record(args.graph, mio.graph_from_json)
    u, v = _vertex(G, args.src), _vertex(G, args.dst)
    cg = cone_off(G, subsets)
    db = base_distance(G, u, v)
    dc = cone_distance(cg, u, v)
    _emit({"base": None if db is None else str(db), "cone": None if dc is None else str(dc),
           "cone_le_base": None if db is None else dc <= db})
    return OK


def cmd_extend(args) -> int:
    a, b = mio.read_record(args.input, mio.pair_from_json)
    try:
        if args.pants:
            ext = extend_to_pants(a, b)
            out = {"alpha_tilde": mio.multicurve_to_json(ext.alpha_tilde),
                   "beta_tilde": mio.multicurve_to_json(ext.beta_tilde),
                   "i": str(ext.i_start), "i_tilde": str(ext.i_end), "bound": str(ext.bound),
                   "steps": [{"side": s, **r.to_json()} for s, r in ext.steps]}
        else:
            at, rep = extend_once(a, b)
            out = {"alpha_tilde": mio.multicurve_to_json(at), "report": rep.to_json()}
    except ConstructionDefect as exc:
        rep = getattr(exc, "report", None)
        dump = {"pair": mio.pair_to_json(a, b), "error": str(exc),
                "report": rep.to_json() if hasattr(rep, "to_json") else None}
        path = args.repro or "mcgraph.repro.json"
        mio.dump_json(dump, path)
        print(f"construction check failed: {exc} (reproducer in {path})", file=sys.stderr)
        return VIOLATION
    _write_out(out, args.out)
    return OK


def _sweep_kwargs(args):
    L, R = args.universe
    return dict(samples=args.samples, seed=args.seed, L=L, R=R, jobs=args.jobs)


def cmd_verify(args) -> int:
    from . import sweeps

    sig = _sig(args)
    kw = _sweep_kwargs(args)
    if args.action == "theorem-e":
        k = 1 if args.k is None else args.k
        sig.check_k(k)
        if k >= sig.xi:
            raise UsageError(f"theorem-e needs k < xi = {sig.xi}")
        res = sweeps.sweep_theorem_e(sig, k, **kw)
    elif args.action == "lemma33":
        res = sweeps.sweep_lemma33(sig, k=args.k, **kw)
    elif args.action == "lemma35":
        res = sweeps.sweep_lemma35(sig, k=args.k, **kw)
    else:
        res = sweeps.sweep_appendix(sig, **kw)
    return _finish_sweep(args, res)


def cmd_appendix(args) -> int:
    from . import sweeps

    if args.input:
        P, P2 = mio.read_record(args.input, mio.pair_from_json)
        trace = sweeps.build_trace(P, P2, args.first)
        _write_out(trace.to_json(), args.trace)
        return OK
    sig = _sig(args)
    kw = _sweep_kwargs(args)
    fn = sweeps.sweep_build_pants if args.action == "build-pants" else sweeps.sweep_swaps
    return _finish_sweep(args, fn(sig, **kw))


# --------------------------------------------------------------------------
# parser


def _add_surface(p):
    p.add_argument("--surface", type=_surface_arg, metavar="G,N", help="genus and puncture count")
    p.add_argument("--genus", type=int)
    p.add_argument("--punctures", type=int)


def _add_sweep(p, k=True):
    _add_surface(p)
    if k:
        p.add_argument("--k", type=int)
    p.add_argument("--samples", type=int, default=100)
    p.add_argument("--universe", type=_universe_arg, default=(DEFAULT_L, DEFAULT_R), metavar="L,R")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--report", help="CSV report path")
    p.add_argument("--repro", help="reproducer path (default: REPORT.repro.json)")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="mcgraph", description="k-multicurve graph toolkit")
    sub = ap.add_subparsers(dest="command", required=True)

    p = sub.add_parser("surface", help="invariants and geometry class")
    p.add_argument("action", choices=["info", "classify"])
    _add_surface(p)
    p.add_argument("--k", type=int)
    p.set_defaults(fn=cmd_surface)

    p = sub.add_parser("curve", help="curve operations on weight records")
    csub = p.add_subparsers(dest="action", required=True)
    q = csub.add_parser("intersect")
    q.add_argument("--a", required=True)
    q.add_argument("--b", required=True)
    q = csub.add_parser("twist")
    q.add_argument("--about", required=True, help="twisting curve record")
    q.add_argument("--target", required=True)
    q.add_argument("--power", type=int, default=1)
    q.add_argument("--out")
    q = csub.add_parser("cut")
    q.add_argument("--curves", required=True, help="multicurve record")
    p.set_defaults(fn=cmd_curve)

    p = sub.add_parser("graph", help="k-multicurve graph and cone-off distances")
    gsub = p.add_subparsers(dest="action", required=True)
    q = gsub.add_parser("distance")
    q.add_argument("--k", type=int)
    q.add_argument("--universe", type=_universe_arg, default=(DEFAULT_L, DEFAULT_R), metavar="L,R")
    q.add_argument("--from", dest="src", required=True)
    q.add_argument("--to", dest="dst", required=True)
    q.add_argument("--max-nodes", type=int, default=200_000)
    q.add_argument("--path", help="write the path record here")
    q = gsub.add_parser("cone")
    q.add_argument("--graph", required=True)
    q.add_argument("--from", dest="src", required=True)
    q.add_argument("--to", dest="dst", required=True)
    p.set_defaults(fn=cmd_graph)

    p = sub.add_parser("extend", help="add one curve (or extend to pants decompositions)")
    p.add_argument("--input", required=True, help="pair record with alpha and beta")
    p.add_argument("--pants", action="store_true", help="extend both sides to pants decompositions")
    p.add_argument("--out")
    p.add_argument("--repro")
    p.set_defaults(fn=cmd_extend)

    p = sub.add_parser("verify", help="seeded verification sweeps")
    p.add_argument("action", choices=["theorem-e", "appendix", "lemma33", "lemma35"])
    _add_sweep(p)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("appendix", help="superimposition sweeps and trace dumps")
    p.add_argument("action", choices=["build-pants", "swap-sweep"])
    _add_sweep(p, k=False)
    p.add_argument("--input", help="pair of pants decompositions; dumps the thickening trace")
    p.add_argument("--first", type=int, choices=[0, 1], default=0, help="family placed first in the ordering")
    p.add_argument("--trace", help="trace dump path")
    p.set_defaults(fn=cmd_appendix)
    return ap


INVALID_INPUT = (
    mio.SchemaError,
    CurveError,
    InvalidSignature,
    InvalidMulticurveSize,
    UnsupportedSurface,
    GraphError,
    ConeError,
    OverlappingCurves,
    PreTriangulationError,
    UsageError,
)


def main(argv=None) -> int:
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as exc:
        return INVALID if exc.code else OK
    try:
        return args.fn(args)
    except INVALID_INPUT as exc:
        print(f"mcgraph: invalid input: {exc}", file=sys.stderr)
        return INVALID
    except TracingBudgetExceeded as exc:
        print(f"mcgraph: tracing budget exceeded: {exc}", file=sys.stderr)
        return INCONCLUSIVE
    except ConstructionDefect as exc:
        print(f"mcgraph: construction check failed: {exc}", file=sys.stderr)
        return VIOLATION


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
