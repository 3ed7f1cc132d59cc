"""Report records and their deterministic JSON / CSV serialization."""
from __future__ import annotations

import csv
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any

import numpy as np


@dataclass
class Assertion:
    name: str
    lhs: Any
    rhs: Any
    passed: bool

    def as_dict(self) -> dict:
        return {"name": self.name, "lhs": self.lhs, "rhs": self.rhs, "pass": bool(self.passed)}


@dataclass
class Report:
    inputs: dict = field(default_factory=dict)
    quantities: dict = field(default_factory=dict)
    assertions: list[Assertion] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return all(a.passed for a in self.assertions)

    def check_le(self, name: str, lhs: float, rhs: float, tol: float = 0.0) -> bool:
        ok = bool(lhs <= rhs + tol)
        self.assertions.append(Assertion(name, lhs, rhs, ok))
        return ok

    def check_close(self, name: str, lhs, rhs, tol: float) -> bool:
        ok = bool(abs(lhs - rhs) <= tol)
        self.assertions.append(Assertion(name, lhs, rhs, ok))
        return ok

    def check_true(self, name: str, ok: bool, lhs=None, rhs=None) -> bool:
        self.assertions.append(Assertion(name, lhs, rhs, bool(ok)))
        return bool(ok)

    def extend(self, other: "Report", prefix: str = "") -> None:
        for a in other.assertions:
            self.assertions.append(Assertion(prefix + a.name, a.lhs, a.rhs, a.passed))

    def as_dict(self) -> dict:
        return {
            "inputs": self.inputs,
            "quantities": self.quantities,
            "assertions": [a.as_dict() for a in self.assertions],
        }


def _plain(x: Any) -> Any:
    """Reduce numpy and complex values to JSON-like builtins."""
    if isinstance(x, dict):
        return {str(k): _plain(v) for k, v in x.items()}
    if isinstance(x, (list, tuple)):
        return [_plain(v) for v in x]
    if isinstance(x, np.ndarray):
        return [_plain(v) for v in x.tolist()]
    if isinstance(x, (bool, np.bool_)):
        return bool(x)
    if isinstance(x, (int, np.integer)):
        return int(x)
    if isinstance(x, (complex, np.complexfloating)):
        return {"re": float(x.real), "im": float(x.imag)}
    if isinstance(x, (float, np.floating)):
        return float(x)
    if hasattr(x, "as_dict"):
        return _plain(x.as_dict())
    return x


def _fmt_float(x: float) -> str:
    if not math.isfinite(x):
        return "null"
    if x == 0:
        return "0.0"
    s = format(x, ".17g")
    if "e" not in s and "." not in s and "n" not in s:
        s += ".0"
    return s


def _emit(x: Any, out: list[str], indent: int, level: int) -> None:
    pad = "\n" + " " * (indent * (level + 1))
    end = "\n" + " " * (indent * level)
    if x is None:
        out.append("null")
    elif isinstance(x, bool):
        out.append("true" if x else "false")
    elif isinstance(x, int):
        out.append(str(x))
    elif isinstance(x, float):
        out.append(_fmt_float(x))
    elif isinstance(x, str):
        out.append(json.dumps(x))
    elif isinstance(x, dict):
        if not x:
            out.append("{}")
            return
        out.append("{")
        for i, (k, v) in enumerate(x.items()):
            out.append(("," if i else "") + pad + json.dumps(k) + ": ")
            _emit(v, out, indent, level + 1)
        out.append(end + "}")
    elif isinstance(x, list):
        if not x:
            out.append("[]")
            return
        out.append("[")
        for i, v in enumerate(x):
            out.append(("," if i else "") + pad)
            _emit(v, out, indent, level + 1)
        out.append(end + "]")
    else:
        raise TypeError(f"cannot serialize {type(x).__name__}")


def to_json(data: Any, indent: int = 2) -> str:
    """JSON text with floats written to 17 significant digits and stable key order."""
    out: list[str] = []
    _emit(_plain(data), out, indent, 0)
    return "".join(out) + "\n"


def emit_report(report: Report | None, fmt: str = "json") -> bytes:
    report = report if report is not None else Report()
    if fmt == "json":
        return to_json(report.as_dict()).encode()
    if fmt == "csv":
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["kind", "name", "lhs", "rhs", "pass"])
        for k, v in report.quantities.items():
            w.writerow(["quantity", k, _csv_cell(v), "", ""])
        for a in report.assertions:
            w.writerow(["assertion", a.name, _csv_cell(a.lhs), _csv_cell(a.rhs), "true" if a.passed else "false"])
        return buf.getvalue().encode()
    raise ValueError(f"unknown report format {fmt!r}")


def _csv_cell(v: Any) -> str:
    v = _plain(v)
    if v is None:
        return ""
    if isinstance(v, float):
        return _fmt_float(v)
    if isinstance(v, (dict, list)):
        return to_json(v, indent=0).replace("\n", "")
    return str(v)
