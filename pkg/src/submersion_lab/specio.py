"""Spec files in, reports out.

Both are JSON.  Machine output writes every float with 17 significant digits so
that parsing a report and emitting it again reproduces the same bytes.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Any

import numpy as np

from .core import (
    AntisymmetryViolation,
    BaseRicci,
    DimensionMismatch,
    IntegrabilityData,
    IntegrabilityJet,
    ResidualReport,
    SubmersionError,
    d_f_from_entries,
)

SCHEMA_VERSION = 1


class ParseError(SubmersionError, ValueError):
    def __init__(self, message: str, field: str = "", line: int | None = None):
        super().__init__(message)
        self.field = field
        self.line = line


# --- emitting --------------------------------------------------------------------


def format_float(x: float) -> str:
    if math.isnan(x):
        return "NaN"
    if math.isinf(x):
        return "Infinity" if x > 0 else "-Infinity"
    s = "%.17g" % x
    if not any(ch in s for ch in ".e"):
        s += ".0"
    return s


def _emit(obj: Any, indent: int, level: int) -> str:
    pad = " " * (indent * (level + 1))
    end = " " * (indent * level)
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(float(obj))
    if isinstance(obj, str):
        return json.dumps(obj)
    if isinstance(obj, np.ndarray):
        return _emit(obj.tolist(), indent, level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{pad}{json.dumps(str(k))}: {_emit(v, indent, level + 1)}" for k, v in obj.items()]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        # keep flat numeric rows on one line
        if all(isinstance(v, (int, float, np.integer, np.floating)) and not isinstance(v, bool) for v in obj):
            return "[" + ", ".join(_emit(v, indent, level) for v in obj) + "]"
        items = [pad + _emit(v, indent, level + 1) for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    raise TypeError(f"cannot serialise {type(obj).__name__}")


def dumps(obj: Any, indent: int = 2) -> str:
    return _emit(obj, indent, 0) + "\n"


def dump_report(report: ResidualReport) -> str:
    return dumps(report.to_dict())


def load_report(text: str) -> ResidualReport:
    return ResidualReport.from_dict(_loads(text))


def _loads(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"line {exc.lineno}, column {exc.colno}: {exc.msg}", line=exc.lineno) from None


# --- parsing spec files -------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class ParsedSpec:
    data: IntegrabilityData
    jet: IntegrabilityJet | None
    ricci: BaseRicci | None
    c: float | None

    def jet_or_constant(self) -> IntegrabilityJet:
        return self.jet if self.jet is not None else IntegrabilityJet.constant(self.data)


def _number(value, field: str) -> float:
    if isinstance(value, bool) or not isinstance(value, (int, float)):
        raise ParseError(f"{field}: expected a number, got {value!r}", field=field)
    if not math.isfinite(value):
        raise ParseError(f"{field}: must be finite", field=field)
    return float(value)


def _array(value, shape: tuple[int, ...], field: str) -> np.ndarray:
    """Nested lists of numbers with a fixed shape; errors name the first bad entry (1-based)."""
    if not shape:
        return np.array(_number(value, field))
    if not isinstance(value, list):
        raise ParseError(f"{field}: expected a list of length {shape[0]}", field=field)
    if len(value) != shape[0]:
        raise DimensionMismatch(f"{field}: expected length {shape[0]}, got {len(value)}")
    return np.array([_array(v, shape[1:], f"{field}[{i + 1}]") for i, v in enumerate(value)])


def _entries(value, width: int, field: str) -> list:
    if not isinstance(value, list):
        raise ParseError(f"{field}: expected a list of entries", field=field)
    for pos, entry in enumerate(value):
        name = f"{field}[{pos + 1}]"
        if not isinstance(entry, list) or len(entry) != width:
            raise ParseError(f"{name}: expected a list of {width} numbers", field=name)
        for q, v in enumerate(entry[:-1]):
            if isinstance(v, bool) or not isinstance(v, int):
                raise ParseError(f"{name}: index #{q + 1} must be an integer", field=name)
        _number(entry[-1], name)
    return value


def parse_spec_dict(d: Any) -> ParsedSpec:
    if not isinstance(d, dict):
        raise ParseError("top level must be an object")
    version = d.get("schema_version", SCHEMA_VERSION)
    if version != SCHEMA_VERSION:
        raise ParseError(f"schema_version: unsupported value {version!r}", field="schema_version")
    if "n" not in d:
        raise ParseError("n: missing", field="n")
    n = d["n"]
    if isinstance(n, bool) or not isinstance(n, int) or n < 1:
        raise ParseError(f"n: expected a positive integer, got {n!r}", field="n")
    for key in ("kappa", "sigma"):
        if key not in d:
            raise ParseError(f"{key}: missing", field=key)
    kappa = _array(d["kappa"], (n,), "kappa")
    sigma = _array(d["sigma"], (n, n), "sigma")
    f = np.zeros((n, n, n))
    for pos, e in enumerate(_entries(d.get("f", []), 4, "f")):
        i, j, k = (v - 1 for v in e[:3])
        if not all(0 <= v < n for v in (i, j, k)):
            raise DimensionMismatch(f"f[{pos + 1}]: index out of range 1..{n}")
        f[i, j, k] = float(e[3])
    data = IntegrabilityData(n, f, kappa, sigma)

    c = _number(d["c"], "c") if d.get("c") is not None else None
    ricci = BaseRicci(_array(d["ricci"], (n, n), "ricci")) if d.get("ricci") is not None else None

    jet_keys = ("d_f", "d_kappa", "d_sigma", "dd_kappa_diag")
    jet = None
    if any(d.get(k) is not None for k in jet_keys):
        m = n + 1
        d_f = None
        if d.get("d_f") is not None:
            d_f = d_f_from_entries(n, _entries(d["d_f"], 5, "d_f"))
        d_kappa = _array(d["d_kappa"], (m, n), "d_kappa") if d.get("d_kappa") is not None else None
        d_sigma = _array(d["d_sigma"], (m, n, n), "d_sigma") if d.get("d_sigma") is not None else None
        dd = _array(d["dd_kappa_diag"], (m, n), "dd_kappa_diag") if d.get("dd_kappa_diag") is not None else None
        jet = IntegrabilityJet(data, d_f, d_kappa, d_sigma, dd)
    return ParsedSpec(data, jet, ricci, c)


def parse_spec_text(text: str) -> ParsedSpec:
    return parse_spec_dict(_loads(text))


def parse_spec(path) -> ParsedSpec:
    """Read and validate a spec file.

    Raises ParseError (syntax, with line and column, or a malformed field),
    DimensionMismatch or AntisymmetryViolation naming the offending entry.
    """
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as exc:
        raise ParseError(f"{path}: {exc.strerror or exc}") from None
    return parse_spec_text(text)


def spec_dict(
    data: IntegrabilityData,
    *,
    c: float | None = None,
    ricci: BaseRicci | None = None,
    jet: IntegrabilityJet | None = None,
) -> dict[str, Any]:
    d: dict[str, Any] = {"schema_version": SCHEMA_VERSION}
    d.update(jet.to_dict() if jet is not None else data.to_dict())
    if c is not None:
        d["c"] = float(c)
    if ricci is not None:
        d["ricci"] = ricci.values.tolist()
    return d


__all__ = [
    "AntisymmetryViolation",
    "ParseError",
    "ParsedSpec",
    "dump_report",
    "dumps",
    "format_float",
    "load_report",
    "parse_spec",
    "parse_spec_dict",
    "parse_spec_text",
    "spec_dict",
]
