"""
VerifyAgent
-----------

Runs the pre-operad axiom checks and the identity suite on one algebra and
normalises every outcome into a check record:

    {"check": ..., "status": ..., "instances": ..., "degrees": [...], "seed": ..., "witness": {...}}

Instances of the same check are folded into one record; the witness is the
first failing instance (its degrees, seed or basis indices, and the first
coefficient where the two sides differ).

Inputs come from two places:
- every basis cochain (single, pair, triple) up to the exhaustive degree. A
  sweep whose tuple count exceeds the exhaustive limit is cut back to the
  highest degree that fits; the degrees actually swept are reported under
  "exhaustive",
- S seeded random tuples with degrees in 1..N. Instance k uses seed + k, which
  fixes both its degrees and its coefficients.

A degree-zero probe evaluates a handful of identities with a degree-0 operand.
Those failures are recorded as "finding" and do not fail the run.
"""

from __future__ import annotations

import itertools
import logging
from typing import Any, Callable, Dict, List, Optional, Sequence, Tuple

import numpy as np

from agents.load import RunPlan, basis_tuple_count, exhaustive_degree_for
from preoperad.endo import Cochain, EndomorphismPreOperad
from preoperad.errors import DegreeError, PreOperadError, ResourceError
from preoperad.opcalc import Defect, OperadCalculus

"""
Imports:
- numpy: the per-instance random generator (degrees and cochain seeds).
- preoperad.opcalc: every identity checker; each returns a Defect instead of raising.
"""

log = logging.getLogger(__name__)

PASS, FAIL, ERROR, FINDING = "pass", "fail", "error", "finding"
NOT_APPLICABLE = "not applicable (μ² ≠ 0)"

DEGREE_ZERO_SAMPLES = 10


def _check_name(defect_name: str) -> str:
    # "composition_case1[i=0,j=1]" and "unit_right[2]" fold into one record each
    return defect_name.split("[", 1)[0]


class CheckTally:
    """Folds Defects into one record per check name, in first-seen order."""

    def __init__(self, run_seed: int):
        self.run_seed = run_seed
        self.records: Dict[str, Dict[str, Any]] = {}

    def _record(self, name: str) -> Dict[str, Any]:
        if name not in self.records:
            self.records[name] = {"check": name, "status": PASS, "instances": 0, "degrees": [], "seed": self.run_seed}
        return self.records[name]

    def add(self, defect: Defect, failing_status: str = FAIL, basis: Optional[Sequence[int]] = None) -> None:
        rec = self._record(_check_name(defect.name))
        rec["instances"] += 1
        degrees = list(defect.degrees)
        if degrees not in rec["degrees"]:
            rec["degrees"].append(degrees)
        if defect.ok or rec["status"] != PASS:
            return
        rec["status"] = failing_status
        witness: Dict[str, Any] = {"instance": defect.name, "degrees": degrees}
        if defect.seed is not None:
            rec["seed"] = defect.seed
            witness["seed"] = defect.seed
        if basis is not None:
            witness["basis"] = list(basis)
        witness.update(defect.witness() or {})
        rec["witness"] = witness
        log.warning("Check %s: %s at degrees %s (%s)", defect.name, failing_status, degrees, witness.get("at", witness.get("index")))

    def error(self, name: str, degrees: Sequence[int], seed: Optional[int], exc: Exception) -> None:
        rec = self._record(name)
        rec["instances"] += 1
        if rec["status"] == PASS:
            rec["status"] = ERROR
            rec["witness"] = {"degrees": list(degrees), "seed": seed, "error": f"{type(exc).__name__}: {exc}"}
        log.warning("Check %s raised at degrees %s: %s", name, list(degrees), exc)

    def not_applicable(self, name: str) -> None:
        rec = self._record(name)
        rec["status"] = NOT_APPLICABLE

    def as_list(self) -> List[Dict[str, Any]]:
        out = []
        for rec in self.records.values():
            rec = dict(rec)
            rec["degrees"] = sorted(rec["degrees"])
            out.append(rec)
        return out


class VerifyAgent:
    """
    Runs the "axioms" and "identities" suites. `calculus_cls` can be swapped
    for a subclass, which is how the suite is tested against broken calculi.
    """

    def __init__(self, calculus_cls: Callable[..., OperadCalculus] = OperadCalculus):
        self.calculus_cls = calculus_cls
        self.coverage: Dict[str, Any] = {}

    # -------------------------
    # Entry point
    # -------------------------
    def run(self, plan: RunPlan) -> Dict[str, Any]:
        config = plan.config
        operad = EndomorphismPreOperad(plan.spec)
        calc = self.calculus_cls(operad, operad.mu())
        associative = calc.is_associative()
        if not associative:
            log.warning("%s is not associative; μ²-conditioned checks are not applicable", plan.spec.name)

        tally = CheckTally(config.seed)
        top = max(config.max_degree, 1)
        random_tuples = list(self._random_tuples(operad, config.seed, config.samples, top))
        self.coverage = {"requested_degree": config.exhaustive_degree, "limit": config.exhaustive_limit, "sweeps": {}}

        if config.runs("axioms"):
            self._axioms(calc, operad, tally, random_tuples, config)
        if config.runs("identities"):
            self._identities(calc, operad, tally, random_tuples, config, associative)
            self._degree_zero_probe(calc, operad, tally, config.seed, top)

        checks = tally.as_list()
        summary: Dict[str, int] = {}
        for rec in checks:
            summary[rec["status"]] = summary.get(rec["status"], 0) + 1
        ok = not any(rec["status"] in (FAIL, ERROR) for rec in checks)
        log.info("Verified %d checks on %s: %s", len(checks), plan.spec.name, summary)
        self.coverage["cut_back"] = any(s["degree"] < config.exhaustive_degree for s in self.coverage["sweeps"].values())
        return {"associative": associative, "ok": ok, "summary": summary, "checks": checks, "exhaustive": self.coverage}

    # -------------------------
    # Inputs
    # -------------------------
    @staticmethod
    def _random_tuples(operad: EndomorphismPreOperad, seed: int, samples: int, top: int):
        """(instance seed, f, g, h) with degrees drawn from 1..top."""
        for k in range(samples):
            s = seed + k
            rng = np.random.default_rng(s)
            degrees = rng.integers(1, top + 1, size=3)
            seeds = rng.integers(0, 2**31 - 1, size=3)
            yield (s,) + tuple(operad.random_cochain(int(n), int(t)) for n, t in zip(degrees, seeds))

    @staticmethod
    def _basis_up_to(operad: EndomorphismPreOperad, low: int, high: int) -> List[Tuple[int, Cochain]]:
        return [(i, e) for n in range(low, high + 1) for i, e in enumerate(operad.basis_cochains(n))]

    def _sweep(self, sweep: str, operad: EndomorphismPreOperad, config, arity: int) -> List[Tuple[int, Cochain]]:
        """Basis cochains for one exhaustive sweep, recorded in the coverage block."""
        wanted = config.exhaustive_degree
        degree = exhaustive_degree_for(operad.d, wanted, arity, config.exhaustive_limit)
        if degree != wanted:
            log.warning("Exhaustive %s cut back from degree %d to %d (d=%d, limit %d)", sweep, wanted, degree, operad.d, config.exhaustive_limit)
        self.coverage["sweeps"][sweep] = {"degree": degree, "tuples": basis_tuple_count(operad.d, degree, arity)}
        return self._basis_up_to(operad, 1, degree)

    def _guard(self, tally: CheckTally, name: str, operands: Sequence[Cochain], seed, fn) -> List[Defect]:
        try:
            out = fn()
        except ResourceError:
            # the run was sized wrong; the coordinator refuses it
            raise
        except PreOperadError as e:
            tally.error(name, [x.degree for x in operands], seed, e)
            return []
        return out if isinstance(out, list) else [out]

    # -------------------------
    # Suites
    # -------------------------
    def _axioms(self, calc, operad, tally: CheckTally, random_tuples, config) -> None:
        for f in itertools.chain.from_iterable(operad.basis_cochains(n) for n in range(config.exhaustive_degree + 1)):
            for d in calc.unit_laws(f):
                tally.add(d)

        basis = self._sweep("axiom_triples", operad, config, 3)
        for (a, h), (b, f), (c, g) in itertools.product(basis, repeat=3):
            for d in self._guard(tally, "composition_relations", (h, f, g), None, lambda: calc.composition_relations(h, f, g)):
                tally.add(d, basis=[a, b, c])

        for s, f, g, h in random_tuples:
            for d in calc.unit_laws(f, seed=s):
                tally.add(d)
            for d in self._guard(tally, "composition_relations", (h, f, g), s, lambda: calc.composition_relations(h, f, g, seed=s)):
                tally.add(d)
            for i in range(f.degree):
                tally.add(calc.compose_by_evaluation(f, i, g, seed=s))

    def _single(self, calc, f, seed, associative: bool) -> List[Defect]:
        out = [
            calc.delta_square(f, seed=seed),
            calc.delta_cup_form(f, seed=seed),
            calc.cup_unit_decomposition(f, seed=seed),
        ]
        out.extend(calc.total_with_unit(f, seed=seed))
        if associative:
            dd = calc.delta(calc.delta(f))
            out.append(Defect("delta_square_zero", dd, 0 * dd, (f.degree,), seed, calc.operad))
        return out

    def _pair(self, calc, f, g, seed) -> List[Defect]:
        return [
            calc.antisymmetry(f, g, seed=seed),
            calc.delta_bracket_derivation(f, g, seed=seed),
            calc.dev_total(f, g, seed=seed),
            calc.cup_as_tribrace(f, g, seed=seed),
            calc.cup_by_evaluation(f, g, seed=seed),
            calc.cup_derivation_defect(f, g, seed=seed),
        ]

    def _triple(self, calc, f, g, h, seed, associative: bool) -> List[Defect]:
        out = [
            calc.getzler(f, g, h, seed=seed),
            calc.gerstenhaber_identity(f, g, h, seed=seed),
            calc.jacobi(f, g, h, seed=seed),
            calc.right_translation_defect(f, g, h, seed=seed),
            calc.cup_associator(f, g, h, seed=seed),
        ]
        out.extend(calc.dev_tribrace(f, g, h, seed=seed))
        if associative:
            lhs = calc.cup(calc.cup(f, g), h)
            out.append(Defect("cup_cochain_associativity", lhs, calc.cup(f, calc.cup(g, h)), (f.degree, g.degree, h.degree), seed, calc.operad))
        return out

    def _identities(self, calc, operad, tally: CheckTally, random_tuples, config, associative: bool) -> None:
        for d in calc.mu_identities():
            tally.add(d)
        tally.add(calc.associator_by_evaluation())
        if not associative:
            tally.not_applicable("cup_cochain_associativity")
            tally.not_applicable("delta_square_zero")

        for i, f in self._sweep("identity_singles", operad, config, 1):
            for d in self._guard(tally, "single_identities", (f,), None, lambda: self._single(calc, f, None, associative)):
                tally.add(d, basis=[i])
        basis = self._sweep("identity_pairs", operad, config, 2)
        for (a, f), (b, g) in itertools.product(basis, repeat=2):
            for d in self._guard(tally, "pair_identities", (f, g), None, lambda: self._pair(calc, f, g, None)):
                tally.add(d, basis=[a, b])
        triple_basis = self._sweep("identity_triples", operad, config, 3)
        for (a, f), (b, g), (c, h) in itertools.product(triple_basis, repeat=3):
            for d in self._guard(tally, "triple_identities", (f, g, h), None, lambda: self._triple(calc, f, g, h, None, associative)):
                tally.add(d, basis=[a, b, c])

        for s, f, g, h in random_tuples:
            for d in self._guard(tally, "single_identities", (f,), s, lambda: self._single(calc, f, s, associative)):
                tally.add(d)
            for d in self._guard(tally, "pair_identities", (f, g), s, lambda: self._pair(calc, f, g, s)):
                tally.add(d)
            for d in self._guard(tally, "triple_identities", (f, g, h), s, lambda: self._triple(calc, f, g, h, s, associative)):
                tally.add(d)

    def _degree_zero_probe(self, calc, operad, tally: CheckTally, seed: int, top: int) -> None:
        """Identities with one degree-0 operand; failures are findings."""
        for k in range(DEGREE_ZERO_SAMPLES):
            s = seed + k
            rng = np.random.default_rng([s, 0])
            n = int(rng.integers(1, top + 1))
            a = operad.random_cochain(0, int(rng.integers(0, 2**31 - 1)))
            f = operad.random_cochain(n, int(rng.integers(0, 2**31 - 1)))
            g = operad.random_cochain(n, int(rng.integers(0, 2**31 - 1)))
            probes = [
                ("delta_square", lambda: calc.delta_square(a, seed=s)),
                ("dev_total_is_cup_commutator", lambda: calc.dev_total(a, f, seed=s)),
                ("dev_total_is_cup_commutator", lambda: calc.dev_total(f, a, seed=s)),
                ("getzler", lambda: calc.getzler(f, a, g, seed=s)),
                ("delta_derivation_of_bracket", lambda: calc.delta_bracket_derivation(a, f, seed=s)),
                ("cup_derivation_obstruction", lambda: calc.cup_derivation_defect(a, f, seed=s)),
            ]
            for name, fn in probes:
                try:
                    defect = fn()
                except DegreeError:
                    # lands in C^(-1)
                    continue
                defect.name = f"degree0_{defect.name}"
                tally.add(defect, failing_status=FINDING)

