"""Machine-readable output: CSV (RFC-4180 via the csv module), JSON with
no bare NaN/Inf literals, and fixed-width tables.  All floats are written
with 17 significant digits so outputs round-trip and identical invocations
are byte-identical."""

from __future__ import annotations

import csv
import io
import json
import math

ZERO_COLUMNS = ("q", "re_x", "im_x", "kind", "index", "multiplicity", "residual")
SPECTRAL_COLUMNS = ("case", "k", "q_star", "y", "character",
                    "residual_theta", "residual_theta_x")
TRACE_COLUMNS = ("step", "q", "zero_id", "re_x", "im_x", "alive", "collision_q")


def fmt(v) -> str:
    if v is None:
        return ""
    if isinstance(v, float):
        return f"{v:.17g}"
    return str(v)


def _json_safe(obj):
    if isinstance(obj, float):
        if math.isnan(obj):
            return "NaN"
        if math.isinf(obj):
            return "Infinity" if obj > 0 else "-Infinity"
        return obj
    if isinstance(obj, complex):
        return {"re": _json_safe(obj.real), "im": _json_safe(obj.imag)}
    if isinstance(obj, dict):
        return {k: _json_safe(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_json_safe(v) for v in obj]
    return obj


def to_json(payload) -> str:
    return json.dumps(_json_safe(payload), indent=2, allow_nan=False, sort_keys=False)


def write_csv(rows, columns) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        w.writerow([fmt(v) for v in row])
    return buf.getvalue()


def zero_rows(records):
    for r in records:
        yield (r.q, r.x.real, r.x.imag, r.kind, r.index, r.multiplicity, r.residual)


def zeros_to_csv(records) -> str:
    return write_csv(zero_rows(records), ZERO_COLUMNS)


def spectral_rows(points):
    for p in points:
        yield (p.case, p.k, p.q_star, p.y, p.character,
               p.residual_theta, p.residual_theta_x)


def spectral_to_csv(points) -> str:
    return write_csv(spectral_rows(points), SPECTRAL_COLUMNS)


def trace_rows(trajectories):
    for zid, t in enumerate(trajectories):
        for step, (q, x) in enumerate(zip(t.q_grid, t.points)):
            yield (step, q, zid, x.real, x.imag,
                   int(t.alive or step < len(t.q_grid) - 1), t.collision_q)


def trace_to_csv(trajectories) -> str:
    return write_csv(trace_rows(trajectories), TRACE_COLUMNS)


def zero_dicts(records):
    return [
        {"q": r.q, "re_x": r.x.real, "im_x": r.x.imag, "kind": r.kind,
         "index": r.index, "multiplicity": r.multiplicity, "residual": r.residual}
        for r in records
    ]


def separation_dict(res):
    return {
        "q": res.q,
        "kind": res.kind,
        "a": res.a,
        "line_re": res.line_re,
        "margin": res.margin,
        "degenerate": res.degenerate,
        "coverage_radius": res.coverage_radius,
        "witnesses": {"left": zero_dicts(res.left), "right": zero_dicts(res.right)},
        "notes": list(res.notes),
    }


def claim_dict(rep):
    return {
        "id": rep.id,
        "status": rep.status,
        "worst_point": list(rep.worst_point) if rep.worst_point else None,
        "worst_margin": rep.worst_margin,
        "notes": list(rep.notes),
    }


def table(columns, rows) -> str:
    cells = [[fmt(v) for v in row] for row in rows]
    widths = [max(len(c), *(len(r[i]) for r in cells)) if cells else len(c)
              for i, c in enumerate(columns)]
    out = ["  ".join(c.ljust(w) for c, w in zip(columns, widths)).rstrip()]
    for r in cells:
        out.append("  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip())
    return "\n".join(out) + "\n"


SCHEMAS = {
    "eval": {
        "type": "object",
        "required": ["q", "x", "value", "err", "tol"],
        "properties": {
            "q": {"type": "number"},
            "x": {"type": "object", "required": ["re", "im"]},
            "value": {"type": "object", "required": ["re", "im"]},
            "err": {"type": "number", "minimum": 0},
            "tol": {"type": "number"},
        },
    },
    "zeros": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["q", "re_x", "im_x", "kind", "multiplicity", "residual"],
            "properties": {
                "kind": {"enum": ["real", "complex_pair"]},
                "multiplicity": {"type": "integer", "minimum": 1},
                "residual": {"type": "number", "minimum": 0},
            },
        },
    },
    "spectral": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["case", "k", "q_star", "y", "character",
                         "residual_theta", "residual_theta_x"],
            "properties": {
                "case": {"enum": ["A", "B"]},
                "k": {"type": "integer", "minimum": 1},
                "character": {"enum": ["local_min", "local_max"]},
            },
        },
    },
    "separation": {
        "type": "object",
        "required": ["q", "kind", "a", "margin", "degenerate", "witnesses"],
        "properties": {
            "kind": {"enum": ["separating", "left", "right"]},
            "a": {"type": "number"},
            "witnesses": {
                "type": "object",
                "required": ["left", "right"],
            },
        },
    },
    "claims": {
        "type": "array",
        "items": {
            "type": "object",
            "required": ["id", "status", "notes"],
            "properties": {
                "status": {"enum": ["verified", "violated", "indeterminate", "skipped"]},
            },
        },
    },
}
