"""Check reports and their serialization."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field

from .errors import EmptyReport

CSV_COLUMNS = ["check_id", "dim", "alpha", "seed", "lhs", "rhs", "ratio",
               "std_error", "pass", "runtime_ms"]


@dataclass
class CheckReport:
    check_id: str
    inputs: dict
    lhs: float
    rhs: float
    ratio: float
    tolerance: float
    passed: bool
    seed: int | None = None
    runtime_ms: float = 0.0
    std_error: float = 0.0
    extra: dict = field(default_factory=dict)

    def to_dict(self) -> dict:
        d = asdict(self)
        d["pass"] = d.pop("passed")
        return d


def safe_ratio(a: float, b: float) -> float:
    if b == 0:
        return math.inf if a != 0 else 1.0
    return a / b


def _fmt(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(float(x))
    return str(x)


def report_rows(reports, timing: bool = False) -> list[list[str]]:
    rows = []
    for r in reports:
        dim = r.inputs.get("dim", "")
        alpha = r.inputs.get("alpha", "")
        row = [r.check_id, dim, alpha, r.seed, r.lhs, r.rhs, r.ratio,
               r.std_error, r.passed, r.runtime_ms if timing else ""]
        rows.append([_fmt(v) for v in row])
    return rows


def render_report(reports, fmt: str = "csv", timing: bool = False) -> str:
    """Render reports as CSV or JSON text.

    Wall-clock time is left out unless ``timing`` is set, so that two runs
    with the same seed give byte-identical output.
    """
    reports = list(reports)
    if not reports:
        raise EmptyReport("no reports to emit")
    if fmt == "json":
        out = []
        for r in reports:
            d = r.to_dict()
            if not timing:
                d.pop("runtime_ms")
            out.append(d)
        return json.dumps(out, indent=2, sort_keys=True, default=_json_default) + "\n"
    if fmt != "csv":
        raise ValueError(f"unknown format {fmt!r}")
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(CSV_COLUMNS)
    w.writerows(report_rows(reports, timing))
    return buf.getvalue()


def emit_report(reports, path=None, fmt: str = "csv", timing: bool = False) -> str:
    text = render_report(reports, fmt, timing)
    if path is not None:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(text)
    return text


def _json_default(o):
    try:
        import numpy as np
        if isinstance(o, np.ndarray):
            return o.tolist()
        if isinstance(o, np.generic):
            return o.item()
    except ImportError:  # pragma: no cover
        pass
    if hasattr(o, "to_dict"):
        return o.to_dict()
    return str(o)
