"""JSON/CSV encodings of verdicts, witnesses, estimates and reports.

Points are written as bitstrings with argument 1 leftmost.  That is a
display convention only: in truth-table files argument 1 is the *least*
significant bit of the table index, so the point "100" (x1=1) sits at
table index 1.
"""

from __future__ import annotations

import csv
import io
import json
from typing import Any

from .core import Point, UsageError
from .exact import DistanceValue
from .testers import (
    ArgDependency,
    EstimateResult,
    NonConstancy,
    NonSymmetry,
    QuasiAsymmetry,
    RestrictedNonSymmetry,
    Verdict,
)

_PAIR_KINDS = {"non-symmetry": NonSymmetry, "non-constancy": NonConstancy}


def _pt(p: Point) -> str:
    return str(p)


def witness_to_dict(w) -> dict | None:
    if w is None:
        return None
    if isinstance(w, (NonSymmetry, NonConstancy)):
        kind = "non-symmetry" if isinstance(w, NonSymmetry) else "non-constancy"
        return {"kind": kind, "points": [_pt(w.x), _pt(w.y)], "values": [w.fx, w.fy]}
    if isinstance(w, ArgDependency):
        return {"kind": "arg-dependency", "indices": [w.index], "points": [_pt(w.x), _pt(w.y)], "values": [w.fx, w.fy]}
    if isinstance(w, RestrictedNonSymmetry):
        lx, ly = w.lifted()
        return {
            "kind": "restricted-non-symmetry",
            "n": w.n,
            "assignment": {str(i): b for i, b in sorted(w.assignment.items())},
            "points": [_pt(w.pair.x), _pt(w.pair.y)],
            "lifted": [_pt(lx), _pt(ly)],
            "values": [w.pair.fx, w.pair.fy],
        }
    if isinstance(w, QuasiAsymmetry):
        d = witness_to_dict(w.restricted)
        d["kind"] = "quasi-asymmetry"
        d["indices"] = list(w.J)
        d["dependencies"] = [witness_to_dict(x) for x in w.dependencies]
        return d
    raise TypeError(f"not a witness: {w!r}")


def witness_from_dict(d: dict):
    """Inverse of :func:`witness_to_dict`; raises UsageError on malformed input."""
    try:
        kind = d["kind"]
        if kind in _PAIR_KINDS:
            x, y = (Point.from_string(s) for s in d["points"])
            fx, fy = d.get("values", [0, 1])
            return _PAIR_KINDS[kind](x, y, int(fx), int(fy))
        if kind == "arg-dependency":
            x, y = (Point.from_string(s) for s in d["points"])
            fx, fy = d.get("values", [0, 1])
            (i,) = d["indices"]
            return ArgDependency(int(i), x, y, int(fx), int(fy))
        if kind in ("restricted-non-symmetry", "quasi-asymmetry"):
            x, y = (Point.from_string(s) for s in d["points"])
            fx, fy = d.get("values", [0, 1])
            assignment = {int(i): int(b) for i, b in d["assignment"].items()}
            r = RestrictedNonSymmetry(assignment, NonSymmetry(x, y, int(fx), int(fy)), int(d["n"]))
            if kind == "restricted-non-symmetry":
                return r
            deps = tuple(witness_from_dict(x) for x in d["dependencies"])
            if not all(isinstance(x, ArgDependency) for x in deps):
                raise UsageError("quasi-asymmetry dependencies must be arg-dependency witnesses")
            return QuasiAsymmetry(deps, r)
    except (KeyError, ValueError, TypeError) as exc:
        raise UsageError(f"malformed witness: {exc}") from exc
    raise UsageError(f"unknown witness kind {d.get('kind')!r}")


def verdict_to_dict(v: Verdict, **extra) -> dict:
    out = {"verdict": v.answer, "queries": v.queries_used, "k": v.k, "witness": witness_to_dict(v.witness)}
    out.update(extra)
    return out


def estimate_to_dict(est: EstimateResult, **extra) -> dict:
    out = {
        "J": sorted(est.J),
        "queries": est.queries_used,
        "evidence": [witness_to_dict(w) for w in est.evidence],
        "search_queries": list(est.search_queries),
    }
    out.update(extra)
    return out


def distance_to_dict(d: DistanceValue) -> dict:
    return {"numerator": d.numerator, "denominator": d.denominator, "value": float(d)}


def _default(o: Any):
    if isinstance(o, DistanceValue):
        return distance_to_dict(o)
    if isinstance(o, (set, frozenset)):
        return sorted(o)
    if hasattr(o, "to_dict"):
        return o.to_dict()
    raise TypeError(f"cannot encode {type(o).__name__}")


def to_json(obj: Any) -> str:
    return json.dumps(obj, default=_default, indent=2, sort_keys=False)


def flatten(obj: Any, prefix: str = "") -> dict[str, Any]:
    """Flatten nested dicts/lists into dotted keys for one CSV row."""
    obj = json.loads(json.dumps(obj, default=_default))
    out: dict[str, Any] = {}

    def walk(o, key):
        if isinstance(o, dict):
            for k, v in o.items():
                walk(v, f"{key}.{k}" if key else str(k))
        elif isinstance(o, list):
            if not o:
                out[key] = ""
            for i, v in enumerate(o):
                walk(v, f"{key}.{i}")
        else:
            out[key] = "" if o is None else o

    walk(obj, prefix)
    return out


def to_csv(obj: Any) -> str:
    row = flatten(obj)
    buf = io.StringIO()
    w = csv.DictWriter(buf, fieldnames=list(row), lineterminator="\n")
    w.writeheader()
    w.writerow({k: (repr(v) if isinstance(v, float) else v) for k, v in row.items()})
    return buf.getvalue()
