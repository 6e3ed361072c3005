"""JSON and CSV readers and writers.

Matrices are stored as ``{"dim": n, "data": [[re, im], ...]}`` with the
``n * n`` entries in row-major order. Floats use 17 significant digits so
that a write/read round trip is exact.
"""
from __future__ import annotations

import csv
import io
import json
import math
from pathlib import Path

import numpy as np

from .errors import InvalidInput
from .grassmannian import check_projection
from .lengths import DiscretizedCurve

CSV_HEADER = (
    "seed",
    "dim",
    "rank",
    "k",
    "branch",
    "geodesic_length",
    "best_competitor",
    "margin",
    "endpoint_error",
)


def _num(x) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise InvalidInput(f"cannot serialize non-finite value {x}")
    return format(x, ".17g")


def _encode(obj) -> str:
    # json.dumps would write floats with repr; this keeps the 17 digit contract
    if isinstance(obj, dict):
        return "{" + ", ".join(f"{json.dumps(k)}: {_encode(v)}" for k, v in obj.items()) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ", ".join(_encode(v) for v in obj) + "]"
    if isinstance(obj, (bool, np.bool_)) or obj is None:
        return json.dumps(bool(obj) if obj is not None else None)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return _num(obj)
    if isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot encode {type(obj).__name__}")


def dumps(obj) -> str:
    return _encode(obj) + "\n"


def matrix_to_obj(a) -> dict:
    a = np.asarray(a, dtype=complex)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise InvalidInput(f"expected a square matrix, got shape {a.shape}")
    flat = a.ravel()
    return {"dim": a.shape[0], "data": [[z.real, z.imag] for z in flat]}


def matrix_from_obj(obj) -> np.ndarray:
    try:
        n = obj["dim"]
        data = np.asarray(obj["data"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidInput(f"malformed matrix object: {exc}") from exc
    if not isinstance(n, int) or isinstance(n, bool) or n < 1:
        raise InvalidInput(f"dim must be a positive integer, got {n!r}")
    if data.shape != (n * n, 2):
        raise InvalidInput(f"expected {n * n} [re, im] pairs, got array of shape {data.shape}")
    if not np.all(np.isfinite(data)):
        raise InvalidInput("matrix data has non-finite entries")
    return (data[:, 0] + 1j * data[:, 1]).reshape(n, n)


def projection_to_obj(q) -> dict:
    q, rank = check_projection(q)
    obj = matrix_to_obj(q)
    obj["rank"] = rank
    return obj


def projection_from_obj(obj) -> np.ndarray:
    a = matrix_from_obj(obj)
    q, rank = check_projection(a, atol=1e-8)
    stated = obj.get("rank")
    if stated is not None and stated != rank:
        raise InvalidInput(f"stated rank {stated} differs from trace rank {rank}")
    if not 0 < rank < q.shape[0]:
        raise InvalidInput(f"need 0 < rank < dim, got rank {rank} in dimension {q.shape[0]}")
    return q


def geodesic_to_obj(sol) -> dict:
    return {
        "z": matrix_to_obj(sol.z),
        "branch": sol.branch,
        "norm_inf": sol.norm_inf,
        "norm_2": sol.norm_2,
        "endpoint_error": sol.endpoint_error,
    }


def curve_to_obj(c: DiscretizedCurve) -> dict:
    return {
        "kind": c.kind,
        "times": [float(t) for t in c.times],
        "points": [matrix_to_obj(p) for p in c.points],
    }


def curve_from_obj(obj) -> DiscretizedCurve:
    try:
        kind, times, points = obj["kind"], obj["times"], obj["points"]
    except (KeyError, TypeError) as exc:
        raise InvalidInput(f"malformed curve object: {exc}") from exc
    return DiscretizedCurve(np.asarray(times, dtype=float), np.stack([matrix_from_obj(p) for p in points]), kind)


def read_json(path):
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InvalidInput(f"cannot read {path}: {exc}") from exc


def write_text(text: str, path=None):
    """Write to ``path``, or return the text when ``path`` is None."""
    if path is None:
        return text
    Path(path).write_text(text)
    return text


def load_matrix(path) -> np.ndarray:
    return matrix_from_obj(read_json(path))


def load_projection(path) -> np.ndarray:
    return projection_from_obj(read_json(path))


def save_matrix(a, path):
    Path(path).write_text(dumps(matrix_to_obj(a)))


def save_projection(q, path):
    Path(path).write_text(dumps(projection_to_obj(q)))


def reports_to_csv(reports) -> str:
    """One row per report; floats use ``repr`` so the output is byte-stable."""
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for r in reports:
        writer.writerow(
            [
                r.seed,
                r.dim,
                r.rank,
                repr(float(r.k)),
                r.branch,
                repr(float(r.geodesic_length)),
                repr(float(r.best_competitor_length)),
                repr(float(r.margin)),
                repr(float(r.endpoint_error)),
            ]
        )
    return buf.getvalue()


def reports_from_csv(text: str) -> list[dict]:
    rows = list(csv.DictReader(io.StringIO(text)))
    out = []
    for row in rows:
        out.append(
            {
                "seed": int(row["seed"]),
                "dim": int(row["dim"]),
                "rank": int(row["rank"]),
                "k": float(row["k"]),
                "branch": row["branch"],
                "geodesic_length": float(row["geodesic_length"]),
                "best_competitor": float(row["best_competitor"]),
                "margin": float(row["margin"]),
                "endpoint_error": float(row["endpoint_error"]),
            }
        )
    return out
