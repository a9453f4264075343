"""
LoadAgent
---------

Turns the command-line settings into a validated RunConfig and a run "plan":
the loaded AlgebraSpec, the field it lives over, and where the report goes.
Nothing is computed here; the plan is handed to VerifyAgent or CohomologyAgent.

Sizing: a degree-n cochain is a tensor of d^(n+1) entries. Each command is
sized by the largest cochain it builds, and the run is refused before any
work starts when that tensor does not fit under the memory cap:
- cohomology:   coboundary columns in C^(N+1)
- gerstenhaber: triple cup products of classes, degree 3N
- verify:       (f⌣g)⌣h and {μ², f, g, h} on the random and exhaustive triples
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from pathlib import Path
from typing import List, Literal, Optional

from pydantic import BaseModel, Field, field_validator

from preoperad.endo import DEFAULT_MEMORY_CAP, AlgebraSpec, load_algebra
from preoperad.errors import AlgebraLoadError, ConfigurationError, ResourceError
from preoperad.exactfield import QQ, Field as ScalarField, PrimeField

"""
Imports:
- pydantic: validates the run configuration the same way the algebra document is validated.
- preoperad.endo: reads the algebra-spec JSON into an AlgebraSpec.
- preoperad.exactfield: builds the field named by a --field override.
"""

log = logging.getLogger(__name__)

Command = Literal["verify", "cohomology", "gerstenhaber"]
Suite = Literal["axioms", "identities", "cohomology", "gerstenhaber", "all"]

# largest number of basis tuples one exhaustive sweep may enumerate; 28^3 basis
# triples of degree <= 3 over a 2-dimensional algebra fit
DEFAULT_EXHAUSTIVE_LIMIT = 25000


class RunConfig(BaseModel):
    """All settings of one run; built by cli.py from argparse."""

    algebra: str
    command: Command
    max_degree: int = Field(default=3, ge=0)
    samples: int = Field(default=100, ge=1)
    seed: int = 42
    field: Optional[str] = None
    memory_cap: int = Field(default=DEFAULT_MEMORY_CAP, gt=0)
    exhaustive_degree: int = Field(default=3, ge=0)
    exhaustive_limit: int = Field(default=DEFAULT_EXHAUSTIVE_LIMIT, ge=1)
    probe_seeds: int = Field(default=50, ge=0)
    out: Optional[str] = None
    suites: List[Suite] = Field(default_factory=lambda: ["all"])

    @field_validator("field")
    @classmethod
    def _field_syntax(cls, v: Optional[str]) -> Optional[str]:
        if v is None:
            return v
        v = v.strip().lower()
        if v == "rational" or v.startswith("prime:"):
            return v
        raise ValueError(f"field must be 'rational' or 'prime:<p>', got {v!r}")

    def runs(self, suite: str) -> bool:
        return "all" in self.suites or suite in self.suites


@dataclass
class RunPlan:
    config: RunConfig
    spec: AlgebraSpec
    out_path: Path

    @property
    def field(self) -> ScalarField:
        return self.spec.field


def parse_field(text: Optional[str]) -> Optional[ScalarField]:
    """'rational' -> Q, 'prime:<p>' -> F_p, None -> keep the document's field."""
    if text is None:
        return None
    if text == "rational":
        return QQ
    _, _, p = text.partition(":")
    try:
        return PrimeField(int(p))
    except ValueError as e:
        raise ConfigurationError(f"cannot read a prime from {text!r}") from e


class LoadAgent:
    # report location when --out is not given
    RESULTS_DIR = "results"

    def build_plan(self, config: RunConfig) -> RunPlan:
        path = Path(config.algebra)
        try:
            text = path.read_text(encoding="utf-8")
        except OSError as e:
            raise AlgebraLoadError(f"cannot read algebra file {path}: {e}") from e

        spec = load_algebra(text, field_override=parse_field(config.field), memory_cap=config.memory_cap)
        self.check_sizing(spec, config)

        out = Path(config.out) if config.out else Path(self.RESULTS_DIR) / f"{spec.name}_{config.command}.json"
        log.info("Plan: %s on %s (N=%d, S=%d, seed=%d) -> %s", config.command, spec.name, config.max_degree, config.samples, config.seed, out)
        return RunPlan(config, spec, out)

    @classmethod
    def check_sizing(cls, spec: AlgebraSpec, config: RunConfig) -> None:
        """Refuse the run when its largest cochain would not fit under the cap."""
        degree = cls.largest_degree(config, spec.d)
        needed = spec.d ** (degree + 1)
        if needed <= config.memory_cap:
            return
        top = config.max_degree
        while top > 0 and spec.d ** (cls.largest_degree(config.model_copy(update={"max_degree": top}), spec.d) + 1) > config.memory_cap:
            top -= 1
        log.error(
            "Memory cap %d is below d^%d = %d for %s at N=%d; raise --memory-cap to at least %d or try --max-degree %d",
            config.memory_cap, degree + 1, needed, config.command, config.max_degree, needed, top,
        )
        raise ResourceError(needed, config.memory_cap, what=f"degree-{degree} cochain for {config.command}")

    @staticmethod
    def largest_degree(config: RunConfig, d: int) -> int:
        """Degree of the largest cochain the command builds."""
        n = config.max_degree
        if config.command == "cohomology":
            return n + 1
        if config.command == "gerstenhaber":
            return max(n + 1, 3 * n)

        r = max(n, 1)
        e = config.exhaustive_degree
        tops = []
        if config.runs("axioms"):
            # (h ∘_i f) ∘_j g
            a = exhaustive_degree_for(d, e, 3, config.exhaustive_limit)
            tops += [3 * r - 2, 3 * a - 2, e]
        if config.runs("identities"):
            p = exhaustive_degree_for(d, e, 2, config.exhaustive_limit)
            t = exhaustive_degree_for(d, e, 3, config.exhaustive_limit)
            # δδf, δ(f⌣g), (f⌣g)⌣h
            tops += [3 * r, e + 2, 2 * p + 1, 3 * t]
        return max(tops, default=0)


def basis_tuple_count(d: int, degree: int, arity: int) -> int:
    """Number of arity-tuples of basis cochains with degrees in 1..degree."""
    return sum(d ** (n + 1) for n in range(1, degree + 1)) ** arity


def exhaustive_degree_for(d: int, wanted: int, arity: int, limit: int) -> int:
    """Highest degree <= wanted whose basis tuples fit under the limit (0: none fit)."""
    degree = wanted
    while degree > 0 and basis_tuple_count(d, degree, arity) > limit:
        degree -= 1
    return degree
