"""
CohomologyAgent
---------------

Drives preoperad.cohomology for the `cohomology` and `gerstenhaber`
commands and turns its dataclasses into report sections:

- "cohomology": one record per degree {degree, dim_ker, dim_im, dim_h, rank, square_zero, representatives}
- "oracles":    center / derivation / bar-complex dimensions and the per-degree sign probe
- "verdicts":   the Gerstenhaber axioms, the cochain-level prechecks and the well-definedness probe,
                folded into one record per check

Scalars leave this module as JSON (ints or "a/b" strings, residues as ints).
Timings are returned separately; they belong in the report's metadata block.
"""

from __future__ import annotations

import logging
from typing import Any, Dict, List, Tuple

from agents.load import RunPlan
from preoperad import oracles
from preoperad.cohomology import FAIL, PASS, SKIPPED, UNDECIDED, CohomologyEngine, CohomologyReport
from preoperad.exactfield import Field

log = logging.getLogger(__name__)

# worst status wins when instances are folded
_SEVERITY = {SKIPPED: 0, PASS: 1, UNDECIDED: 2, FAIL: 3}


def _scalars(field: Field, values) -> List[Any]:
    return [field.to_json(x) for x in values]


def degree_records(report: CohomologyReport, field: Field) -> List[Dict[str, Any]]:
    return [
        {
            "degree": r.degree,
            "dim_ker": r.dim_ker,
            "dim_im": r.dim_im,
            "dim_h": r.dim_h,
            "rank": r.rank,
            "square_zero": r.square_zero,
            "representatives": [_scalars(field, v) for v in r.representatives],
        }
        for r in report.degrees
    ]


def fold_verdicts(verdicts: List[Dict[str, Any]], seed: int) -> List[Dict[str, Any]]:
    """One record per check: worst status, instance count, methods used, first non-passing witness."""
    folded: Dict[str, Dict[str, Any]] = {}
    for v in verdicts:
        name = v["check"]
        rec = folded.setdefault(name, {"check": name, "status": SKIPPED, "instances": 0, "methods": {}, "degrees": [], "seed": seed})
        rec["instances"] += 1
        method = v.get("method") or v.get("methods", {}).get("cup", "none")
        rec["methods"][method] = rec["methods"].get(method, 0) + 1
        if v.get("degrees") not in rec["degrees"]:
            rec["degrees"].append(v.get("degrees"))
        status = v["status"]
        if _SEVERITY.get(status, 3) > _SEVERITY[rec["status"]]:
            rec["status"] = status
            if status in (UNDECIDED, FAIL):
                rec["witness"] = {k: val for k, val in v.items() if k not in ("check", "status")}
    for rec in folded.values():
        rec["degrees"] = sorted(rec["degrees"])
        rec["methods"] = dict(sorted(rec["methods"].items()))
    return list(folded.values())


class CohomologyAgent:
    def __init__(self, quotient_degree: int | None = None):
        self.quotient_degree = quotient_degree

    def _engine(self, plan: RunPlan) -> CohomologyEngine:
        engine = CohomologyEngine(plan.spec, plan.config.max_degree, quotient_degree=self.quotient_degree)
        # exit 3 before any matrix is built
        engine.require_associative()
        return engine

    def cohomology(self, plan: RunPlan) -> Tuple[Dict[str, Any], Dict[str, float]]:
        engine = self._engine(plan)
        report = engine.compute_cohomology()
        unit = engine.locate_unit()
        checks = oracles.cross_check(plan.spec, report, engine.tower.matrices)
        body = {
            "dims": report.dims,
            "cohomology": degree_records(report, plan.field),
            "unit_class": None if unit is None else _scalars(plan.field, unit),
            "oracles": checks,
            "ok": bool(checks["agree"]),
        }
        return body, dict(report.timings)

    def gerstenhaber(self, plan: RunPlan) -> Tuple[Dict[str, Any], Dict[str, float]]:
        engine = self._engine(plan)
        report = engine.gerstenhaber_suite(probe_seeds=plan.config.probe_seeds, seed=plan.config.seed)
        verdicts = fold_verdicts(report.verdicts, plan.config.seed)
        ok = all(v["status"] in (PASS, SKIPPED) for v in verdicts)
        body = {
            "dims": report.dims,
            "cohomology": degree_records(report, plan.field),
            "unit_class": None if report.unit_class is None else _scalars(plan.field, report.unit_class),
            "verdicts": verdicts,
            "ok": ok,
        }
        log.info("Gerstenhaber suite on %s: %s", plan.spec.name, "all pass" if ok else "not certified")
        return body, dict(report.timings)
