import logging
import time
from typing import Any, Dict, Optional

from pydantic import ValidationError

from agents.cohomology import CohomologyAgent
from agents.load import LoadAgent, RunConfig, RunPlan
from agents.storage import StorageAgent
from agents.verify import VerifyAgent
from preoperad.errors import ConfigurationError, PreOperadError

"""
Imports:
- typing: type hints for data passed between steps.
- specialist agents: LoadAgent, VerifyAgent, CohomologyAgent, StorageAgent.
- preoperad.errors: every engine error carries the exit code the run ends with.
"""

log = logging.getLogger(__name__)

EXIT_OK = 0
EXIT_CHECK_FAILED = 1


class CoordinatorAgent:
    """
    Coordinates the system workflow for one command:
      1) Validate the config and load the algebra (LoadAgent)
      2) Run the requested computation (VerifyAgent or CohomologyAgent)
      3) Persist the report and run log (StorageAgent)

    Exit codes: 0 success, 1 a check failed, 2 config/load error,
    3 the algebra is not associative (μ² ≠ 0).
    """

    def __init__(
        self,
        loader: Optional[LoadAgent] = None,
        verifier: Optional[VerifyAgent] = None,
        cohomology: Optional[CohomologyAgent] = None,
        storage: Optional[StorageAgent] = None,
    ):
        # Instantiate specialist agents; tests pass their own.
        self.loader = loader or LoadAgent()
        self.verifier = verifier or VerifyAgent()
        self.cohomology = cohomology or CohomologyAgent()
        self.storage = storage or StorageAgent()
        self.outputs: Dict[str, str] = {}

    def run(self, config: Any) -> int:
        """
        Execute the pipeline and return the process exit code.

        `config` is a RunConfig or a plain dict of its fields. Errors are logged
        and mapped to exit codes; no report is written for a run that errored.
        """
        self.outputs = {}
        try:
            if not isinstance(config, RunConfig):
                config = RunConfig.model_validate(config)
            plan = self.loader.build_plan(config)
            started = time.perf_counter()
            body, timings = self._execute(plan)
            timings["total_seconds"] = round(time.perf_counter() - started, 6)
        except ValidationError as e:
            log.error("Invalid configuration: %s", e)
            return ConfigurationError.exit_code
        except PreOperadError as e:
            log.error("%s: %s", type(e).__name__, e)
            return e.exit_code

        code = EXIT_OK if body["ok"] else EXIT_CHECK_FAILED
        report = self._header(plan, code)
        report.update(body)
        self.outputs = self.storage.persist(plan.out_path, report, timings)
        log.info("Report: %s", self.outputs["report"])
        log.info("LOG:    %s", self.outputs["log"])
        return code

    def _execute(self, plan: RunPlan):
        command = plan.config.command
        if command == "verify":
            return self.verifier.run(plan), {}
        if command == "cohomology":
            return self.cohomology.cohomology(plan)
        return self.cohomology.gerstenhaber(plan)

    @staticmethod
    def _header(plan: RunPlan, code: int) -> Dict[str, Any]:
        c = plan.config
        return {
            "command": c.command,
            "algebra": plan.spec.name,
            "field": plan.field.describe(),
            "dimension": plan.spec.d,
            "config": {
                "max_degree": c.max_degree,
                "samples": c.samples,
                "seed": c.seed,
                "exhaustive_degree": c.exhaustive_degree,
                "exhaustive_limit": c.exhaustive_limit,
                "probe_seeds": c.probe_seeds,
                "memory_cap": c.memory_cap,
                "suites": list(c.suites),
            },
            "exit_code": code,
        }
