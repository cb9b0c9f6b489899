"""JSON records for curves, k-multicurves, pairs, paths and graphs.

Weights travel as decimal strings.  Every record names its surface and the
triangulation tag; a mismatch is a schema error.  Schema errors carry the
line of the offending value when the source text is available.
"""
from __future__ import annotations

import json
from pathlib import Path

from .curves import CurveError, curve_from_json, curve_to_json
from .multicurve_graph import KMulticurve, MulticurvePath
from .surface_core import SurfaceSig
from .triangulation import TRIANGULATION_TAG


class SchemaError(ValueError):
    def __init__(self, message, source=None, line=None):
        where = ""
        if source is not None:
            where = f"{source}:{line}: " if line is not None else f"{source}: "
        super().__init__(where + message)
        self.source = source
        self.line = line


def _line_of(text: str, key: str) -> int | None:
    """First line mentioning ``"key"``; good enough to point at a field."""
    if not key:
        return None
    needle = json.dumps(key)
    for n, ln in enumerate(text.splitlines(), 1):
        if needle in ln:
            return n
    return None


def load_json(path):
    path = Path(path)
    try:
        text = path.read_text()
    except OSError as exc:
        raise SchemaError(f"cannot read: {exc.strerror}", str(path)) from None
    try:
        return json.loads(text), text
    except json.JSONDecodeError as exc:
        raise SchemaError(f"invalid JSON: {exc.msg} (column {exc.colno})", str(path), exc.lineno) from None


def dump_json(obj, path=None) -> str:
    s = json.dumps(obj, indent=2, sort_keys=True) + "\n"
    if path is not None:
        Path(path).write_text(s)
    return s


# --------------------------------------------------------------------------
# records


def _sig_of(obj, where="surface") -> SurfaceSig:
    try:
        s = obj[where]
        return SurfaceSig(int(s["genus"]), int(s["punctures"]))
    except (KeyError, TypeError, ValueError) as exc:
        raise CurveError(f"bad {where!r} field: {exc}") from None


def multicurve_to_json(P: KMulticurve) -> dict:
    return {
        "surface": {"genus": P.sig.genus, "punctures": P.sig.punctures},
        "triangulation": TRIANGULATION_TAG,
        "curves": [[str(x) for x in c.weights] for c in P.curves],
    }


def multicurve_from_json(obj) -> KMulticurve:
    """A k-multicurve record, or a single curve record (k = 1)."""
    if not isinstance(obj, dict):
        raise CurveError("multicurve record must be a JSON object")
    if "weights" in obj:
        return KMulticurve.of([curve_from_json(obj)])
    sig = _sig_of(obj)
    cs = obj.get("curves")
    if not isinstance(cs, list) or not cs:
        raise CurveError("'curves' must be a non-empty list of weight lists")
    tag = obj.get("triangulation")
    curves = []
    for j, w in enumerate(cs):
        rec = {"surface": obj["surface"], "triangulation": tag, "weights": w}
        try:
            curves.append(curve_from_json(rec))
        except CurveError as exc:
            raise CurveError(f"curve {j}: {exc}") from None
    return KMulticurve.of(curves)


def pair_to_json(a: KMulticurve, b: KMulticurve) -> dict:
    return {"alpha": multicurve_to_json(a), "beta": multicurve_to_json(b)}


def pair_from_json(obj) -> tuple:
    if not isinstance(obj, dict) or "alpha" not in obj or "beta" not in obj:
        raise CurveError("pair record needs 'alpha' and 'beta'")
    a = multicurve_from_json(obj["alpha"])
    b = multicurve_from_json(obj["beta"])
    if a.sig != b.sig:
        raise CurveError(f"alpha on {a.sig}, beta on {b.sig}")
    return a, b


def path_to_json(path: MulticurvePath) -> dict:
    out = path.to_json()
    out["triangulation"] = TRIANGULATION_TAG
    return out


def path_from_json(obj) -> MulticurvePath:
    if not isinstance(obj, dict) or not isinstance(obj.get("vertices"), list) or not obj["vertices"]:
        raise CurveError("path record needs a non-empty 'vertices' list")
    verts = []
    for j, v in enumerate(obj["vertices"]):
        rec = {"surface": obj.get("surface"), "triangulation": obj.get("triangulation"), "curves": v}
        try:
            verts.append(multicurve_from_json(rec))
        except CurveError as exc:
            raise CurveError(f"vertex {j}: {exc}") from None
    return MulticurvePath(verts).certify()


def graph_from_json(obj):
    """``{"vertices": [...], "edges": [[u, v], ...], "subsets": [[...], ...]}``
    with hashable vertex names (strings or integers)."""
    import networkx as nx

    if not isinstance(obj, dict):
        raise CurveError("graph record must be a JSON object")
    G = nx.Graph()
    G.add_nodes_from(obj.get("vertices", []))
    for j, e in enumerate(obj.get("edges", [])):
        if not isinstance(e, list) or len(e) != 2:
            raise CurveError(f"edge {j} is not a pair")
        G.add_edge(*e)
    subsets = obj.get("subsets", [])
    if not isinstance(subsets, list) or not all(isinstance(s, list) for s in subsets):
        raise CurveError("'subsets' must be a list of vertex lists")
    return G, subsets


def read_record(path, parse):
    """Load ``path`` and run ``parse`` on it, mapping failures to
    :class:`SchemaError` with a line number."""
    obj, text = load_json(path)
    try:
        return parse(obj)
    except (CurveError, ValueError) as exc:
        msg = str(exc)
        key = None
        for needle, cand in (("weight", "weights"), ("curve", "curves"), ("vertex", "vertices"),
                             ("vertices", "vertices"), ("surface", "surface"), ("triangulation", "triangulation"),
                             ("tag", "triangulation"), ("alpha", "alpha"), ("beta", "beta"), ("edge", "edges")):
            if needle in msg:
                key = cand
                break
        raise SchemaError(msg, str(path), _line_of(text, key or "")) from None


__all__ = [
    "SchemaError",
    "curve_from_json",
    "curve_to_json",
    "dump_json",
    "graph_from_json",
    "load_json",
    "multicurve_from_json",
    "multicurve_to_json",
    "pair_from_json",
    "pair_to_json",
    "path_from_json",
    "path_to_json",
    "read_record",
]
