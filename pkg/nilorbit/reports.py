"""JSON, CSV and text rendering for every result type."""

from __future__ import annotations

import csv
import io
import json
import logging
from functools import singledispatch
from typing import Any

from .classify import Classification
from .constants import SCHEMA
from .modp import ModPResult, ScanReport
from .orbits import OrbitOutcome
from .polynomial import Polynomial
from .verify import CoefficientBox, ExploreResult, ValidationReport

logger = logging.getLogger(__name__)

CSV_HEADER = ("p", "m_p", "preperiod", "period")


@singledispatch
def to_dict(obj: Any) -> Any:
    raise TypeError(f"cannot serialise {type(obj).__name__}")


@to_dict.register
def _(obj: Polynomial) -> dict:
    return {"coefficients": list(obj.coefficients), "text": obj.pretty()}


@to_dict.register
def _(obj: OrbitOutcome) -> dict:
    data: dict[str, Any] = {
        "kind": "orbit",
        "outcome": obj.kind.value,
        "base_point": obj.base_point,
        "steps": obj.steps,
        "trajectory": list(obj.trajectory),
    }
    if obj.index is not None:
        data["index"] = obj.index
    if obj.period is not None:
        data.update(preperiod=obj.preperiod, period=obj.period, cycle=list(obj.cycle))
    if obj.escape_bound is not None:
        data["escape_bound"] = obj.escape_bound
    if obj.max_steps is not None:
        data["max_steps"] = obj.max_steps
    return data


@to_dict.register
def _(obj: ModPResult) -> dict:
    return {
        "kind": "mod-p",
        "p": obj.p,
        "m_p": obj.m_p,
        "preperiod": obj.preperiod,
        "period": obj.period,
        "cycle": list(obj.cycle),
        "partial": obj.partial,
    }


@to_dict.register
def _(obj: ScanReport) -> dict:
    return {
        "kind": "scan",
        "poly": obj.poly.to_text(),
        "r": obj.r,
        "exclude": list(obj.excluded),
        "bound": obj.bound,
        "mode": obj.mode,
        "status": obj.status.value,
        "first_witness": obj.first_witness,
        "witnesses": list(obj.witnesses),
        "certainty": obj.certainty,
        "prime_count": obj.prime_count,
        "results": [
            {"p": res.p, "m_p": res.m_p, "preperiod": res.preperiod, "period": res.period}
            for res in obj.results
        ],
    }


@to_dict.register
def _(obj: Classification) -> dict:
    data = {
        "kind": "classification",
        "verdict": obj.verdict.value,
        "index": obj.index,
        "witness": obj.witness,
        "provenance": obj.provenance,
        "certainty": obj.certainty,
        "query": {
            "poly": obj.poly.to_text(),
            "r": obj.r,
            "exclude": list(obj.excluded),
        },
    }
    if obj.reading:
        data["reading"] = obj.reading
    if obj.scan is not None:
        data["scan"] = {
            "bound": obj.scan.bound,
            "prime_count": obj.scan.prime_count,
            "status": obj.scan.status.value,
        }
    return data


@to_dict.register
def _(obj: CoefficientBox) -> dict:
    return {
        "degrees": [obj.degree_min, obj.degree_max],
        "coeffs": [obj.coeff_min, obj.coeff_max],
        "r": obj.r,
        "exclude": list(obj.excluded),
        "prime_bound": obj.prime_bound,
    }


@to_dict.register
def _(obj: ValidationReport) -> dict:
    # elapsed is left out so identical runs serialise identically
    return {
        "kind": "validation",
        "suite": obj.suite,
        "passed": obj.passed,
        "boxes": [to_dict(box) for box in obj.boxes],
        "counts": dict(sorted(obj.counts.items())),
        "contradictions": [
            {
                "poly": c.poly.to_text(),
                "r": c.r,
                "exclude": list(c.excluded),
                "verdict": c.verdict.value,
                "evidence": c.evidence,
            }
            for c in obj.contradictions
        ],
        "inconclusives": list(obj.inconclusives),
        "failures": list(obj.failures),
        "member_count": len(obj.members),
    }


@to_dict.register
def _(obj: ExploreResult) -> dict:
    return {
        "kind": "explore",
        "poly": obj.poly.to_text(),
        "window": [-obj.window, obj.window],
        "bound": obj.bound,
        "nilpotent": list(obj.nilpotent),
        "locally_nilpotent": [
            {
                "r": e.r,
                "verdict": e.verdict.value,
                "certainty": e.certainty,
                "provenance": e.provenance,
            }
            for e in obj.locally_nilpotent
        ],
    }


def to_json(obj: Any) -> str:
    """Serialise a result with the schema tag; keys are sorted."""
    data = {"schema": SCHEMA, **to_dict(obj)}
    return json.dumps(data, sort_keys=True, indent=2)


def _cell(value: int | None) -> str:
    return "-" if value is None else str(value)


def scan_to_csv(report: ScanReport) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER)
    for res in report.results:
        writer.writerow([res.p, _cell(res.m_p), _cell(res.preperiod), _cell(res.period)])
    return buf.getvalue()


def _table(rows: list[tuple[str, str]]) -> str:
    width = max(len(k) for k, _ in rows)
    return "\n".join(f"{k.ljust(width)}  {v}" for k, v in rows) + "\n"


def to_text(obj: Any) -> str:
    """Human-readable summary of a result."""
    data = to_dict(obj)
    if isinstance(obj, ScanReport):
        head = _table(
            [
                ("poly", obj.poly.pretty()),
                ("r", str(obj.r)),
                ("exclude", ",".join(map(str, obj.excluded)) or "-"),
                ("bound", str(obj.bound)),
                ("status", obj.status.value),
                ("witness", _cell(obj.first_witness)),
                ("certainty", obj.certainty),
            ]
        )
        lines = [f"{'p':>8} {'m_p':>8} {'pre':>6} {'per':>6}"]
        for res in obj.results:
            lines.append(
                f"{res.p:>8} {_cell(res.m_p):>8} {_cell(res.preperiod):>6} {_cell(res.period):>6}"
            )
        return head + "\n" + "\n".join(lines) + "\n"
    rows = []
    for key, value in data.items():
        if isinstance(value, (list, dict)):
            value = json.dumps(value, sort_keys=True)
        rows.append((key, _cell(value) if value is None else str(value)))
    return _table(rows)
