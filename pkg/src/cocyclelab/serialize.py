"""JSON and CSV writers that keep ``-inf`` meaningful.

JSON cannot carry infinities, so they become the strings ``"neg_inf"`` and
``"pos_inf"`` (NaN becomes ``"nan"``).  CSV uses ``-inf``/``inf``/``nan``.
Floats are written with ``repr`` (shortest round-trip form); keys are sorted
so equal inputs give equal bytes.
"""

from __future__ import annotations

import csv
import dataclasses
import io
import json
import math

import numpy as np

from .linalg2 import Mat2, ProjPoint
from .model import Word

NEG_INF = "neg_inf"
POS_INF = "pos_inf"
NAN = "nan"


def encode(obj):
    """Plain JSON-ready structure with infinity sentinels."""
    if isinstance(obj, (bool, np.bool_)):
        return bool(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, (float, np.floating)):
        x = float(obj)
        if math.isnan(x):
            return NAN
        if math.isinf(x):
            return NEG_INF if x < 0 else POS_INF
        return x
    if obj is None or isinstance(obj, str):
        return obj
    if isinstance(obj, Word):
        return str(obj)
    if isinstance(obj, ProjPoint):
        return obj.theta
    if isinstance(obj, Mat2):
        return [encode(x) for x in obj.entries]
    if isinstance(obj, dict):
        return {str(k): encode(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [encode(v) for v in obj]
    if isinstance(obj, np.ndarray):
        return [encode(v) for v in obj.tolist()]
    if hasattr(obj, "to_dict"):
        return encode(obj.to_dict())
    if dataclasses.is_dataclass(obj):
        return encode(dataclasses.asdict(obj))
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def decode(obj):
    """Inverse of the sentinel mapping (strings back to floats)."""
    if obj == NEG_INF:
        return -math.inf
    if obj == POS_INF:
        return math.inf
    if obj == NAN:
        return math.nan
    if isinstance(obj, dict):
        return {k: decode(v) for k, v in obj.items()}
    if isinstance(obj, list):
        return [decode(v) for v in obj]
    return obj


def dumps_json(obj) -> str:
    return json.dumps(encode(obj), sort_keys=True, indent=2, allow_nan=False) + "\n"


def loads_json(text: str):
    return decode(json.loads(text))


def csv_cell(x) -> str:
    if isinstance(x, (bool, np.bool_)):
        return "true" if x else "false"
    if isinstance(x, (float, np.floating)):
        return repr(float(x))
    if x is None:
        return ""
    return str(x)


def dumps_csv(columns, rows) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(columns)
    for row in rows:
        if isinstance(row, dict):
            row = [row.get(c) for c in columns]
        w.writerow([csv_cell(x) for x in row])
    return buf.getvalue()


def write_text(path, text: str) -> None:
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
