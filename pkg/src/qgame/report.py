"""Report documents and their text, CSV and JSON-lines renderings.

A report is a list of flat records, each tagged with a ``kind``.  Numbers are
rounded to 12 significant digits when a record is built, so a JSON-lines dump
parses back to an identical document.
"""
from __future__ import annotations

import csv
import enum
import io
import json
import math
from dataclasses import dataclass, field
from typing import Any, Iterable

import numpy as np

FORMATS = ("text-table", "csv", "json-lines")
SIG_DIGITS = 12

# Record kinds that make up the row-per-result CSV view.
_SUMMARY_KINDS = {"nash_summary"}


def num(x: float) -> float:
    """Round to 12 significant digits; -0.0 becomes 0.0."""
    x = float(x)
    if not math.isfinite(x):
        return x
    r = float(f"{x:.{SIG_DIGITS}g}")
    return 0.0 if r == 0 else r


def clean(value: Any) -> Any:
    """Convert a value into plain JSON types with normalized floats."""
    if isinstance(value, enum.Enum):
        return value.value
    if isinstance(value, (bool, np.bool_)):
        return bool(value)
    if isinstance(value, (int, np.integer)):
        return int(value)
    if isinstance(value, (float, np.floating)):
        return num(value)
    if isinstance(value, complex):
        return [num(value.real), num(value.imag)]
    if isinstance(value, dict):
        return {str(k): clean(v) for k, v in value.items()}
    if isinstance(value, (list, tuple, np.ndarray)):
        return [clean(v) for v in value]
    return value


def record(kind: str, **fields) -> dict:
    return clean({"kind": kind, **fields})


@dataclass
class ReportDocument:
    scenario: dict
    results: list[dict] = field(default_factory=list)
    fixture_comparison: list[dict] | None = None
    runtime: dict = field(default_factory=dict, compare=False)

    @property
    def passed(self) -> bool:
        if self.fixture_comparison is None:
            return True
        return all(c["status"] != "fail" for c in self.fixture_comparison)

    def records(self) -> list[dict]:
        out = [{"kind": "scenario", "config": self.scenario}]
        out += self.results
        out += [{"kind": "comparison", **c} for c in self.fixture_comparison or []]
        out.append({"kind": "runtime", **self.runtime})
        return out

    @classmethod
    def from_records(cls, records: Iterable[dict]) -> "ReportDocument":
        scenario, results, comparisons, runtime = {}, [], None, {}
        for rec in records:
            kind = rec.get("kind")
            if kind == "scenario":
                scenario = rec["config"]
            elif kind == "comparison":
                comparisons = comparisons or []
                comparisons.append({k: v for k, v in rec.items() if k != "kind"})
            elif kind == "runtime":
                runtime = {k: v for k, v in rec.items() if k != "kind"}
            else:
                results.append(rec)
        return cls(scenario, results, comparisons, runtime)


def to_json_lines(doc: ReportDocument) -> str:
    return "".join(json.dumps(r, sort_keys=False) + "\n" for r in doc.records())


def from_json_lines(text: str) -> ReportDocument:
    return ReportDocument.from_records(json.loads(line) for line in text.splitlines() if line.strip())


def _fmt(v: Any) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    if isinstance(v, list):
        return "(" + ", ".join(_fmt(x) for x in v) + ")"
    if isinstance(v, dict):
        return json.dumps(v, sort_keys=True)
    return str(v)


def _groups(records: list[dict]) -> list[tuple[str, list[dict]]]:
    """Consecutive runs of records sharing a kind and key set."""
    groups: list[tuple[str, list[dict]]] = []
    for rec in records:
        if groups and groups[-1][1][0].keys() == rec.keys():
            groups[-1][1].append(rec)
        else:
            groups.append((rec["kind"], [rec]))
    return groups


def _aligned(rows: list[list[str]]) -> list[str]:
    widths = [max(len(r[i]) for r in rows) for i in range(len(rows[0]))]
    return ["  ".join(c.ljust(w) for c, w in zip(r, widths)).rstrip() for r in rows]


def to_text_table(doc: ReportDocument) -> str:
    lines = [f"scenario: {json.dumps(doc.scenario, sort_keys=True)}"]
    body = list(doc.results)
    if doc.fixture_comparison is not None:
        body += [{"kind": "comparison", **c} for c in doc.fixture_comparison]
    for kind, recs in _groups(body):
        keys = [k for k in recs[0] if k != "kind"]
        lines.append("")
        lines.append(f"[{kind}]")
        lines += _aligned([keys] + [[_fmt(r[k]) for k in keys] for r in recs])
    if doc.fixture_comparison is not None:
        lines.append("")
        lines.append("overall: " + ("PASS" if doc.passed else "FAIL"))
    if doc.runtime:
        lines.append("")
        lines.append("runtime: " + ", ".join(f"{k}={_fmt(v)}" for k, v in doc.runtime.items()))
    return "\n".join(lines) + "\n"


def _csv_value(v: Any) -> str:
    if v is None:
        return ""
    if isinstance(v, bool):
        return "true" if v else "false"
    if isinstance(v, float):
        return f"{v:.{SIG_DIGITS}g}"
    if isinstance(v, list):
        return ";".join(_csv_value(x) for x in v)
    return str(v)


def to_csv(doc: ReportDocument) -> str:
    """One row per result; each group of like records gets its own header.

    Search summaries are dropped when the equilibria themselves are listed.
    """
    recs = doc.results
    if any(r["kind"] == "equilibrium" for r in recs):
        recs = [r for r in recs if r["kind"] not in _SUMMARY_KINDS]
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    for i, (_, group) in enumerate(_groups(recs)):
        if i:
            buf.write("\n")
        keys = [k for k in group[0] if k != "kind"]
        writer.writerow(keys)
        for r in group:
            writer.writerow([_csv_value(r[k]) for k in keys])
    return buf.getvalue()


def export(doc: ReportDocument, fmt: str = "text-table") -> bytes:
    if fmt == "text-table":
        text = to_text_table(doc)
    elif fmt == "csv":
        text = to_csv(doc)
    elif fmt == "json-lines":
        text = to_json_lines(doc)
    else:
        raise ValueError(f"unknown format {fmt!r}; choose from {', '.join(FORMATS)}")
    return text.encode("utf-8")
