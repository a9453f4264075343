"""
This first section imports several libraries:
- argparse: accepts command-line inputs
- logging: time-stamped progress messages
- sys: hands the run's exit code back to the shell
- agents.coordinator: imports the agent that coordinates the full pipeline
"""

import argparse
import logging
import sys

from agents.coordinator import CoordinatorAgent
from agents.load import DEFAULT_EXHAUSTIVE_LIMIT
from preoperad.endo import DEFAULT_MEMORY_CAP


"""
This section defines the command line interface.

Three subcommands share the same options:
- verify:       pre-operad axioms and the identity suite
- cohomology:   H^0..H^N with oracle cross-checks (needs an associative algebra)
- gerstenhaber: the Gerstenhaber axioms on the computed classes (needs an associative algebra)

Exit codes: 0 success, 1 a check failed, 2 config/load error, 3 μ² ≠ 0.
"""
def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        description="Exact pre-operad calculus on endomorphism pre-operads of finite-dimensional algebras"
    )
    sub = p.add_subparsers(dest="command", required=True)
    for name, help_text in (
        ("verify", "Check the pre-operad axioms and every identity"),
        ("cohomology", "Compute H(C) and cross-check it against independent oracles"),
        ("gerstenhaber", "Certify the Gerstenhaber structure on H(C)"),
    ):
        s = sub.add_parser(name, help=help_text)
        s.add_argument("--algebra", required=True, help="Algebra-spec JSON file, e.g. fixtures/dual_numbers.json")
        s.add_argument("--max-degree", type=int, default=3, help="Top cochain degree N (default 3)")
        s.add_argument("--samples", type=int, default=100, help="Seeded random tuples per identity (default 100)")
        s.add_argument("--seed", type=int, default=42, help="Base seed; printed in the report")
        s.add_argument("--field", default=None, help="Override the document's field: 'rational' or 'prime:<p>'")
        s.add_argument("--memory-cap", type=int, default=DEFAULT_MEMORY_CAP, help="Largest tensor, in entries")
        s.add_argument("--exhaustive-degree", type=int, default=3, help="Basis cochains are checked exhaustively up to this degree (default 3)")
        s.add_argument(
            "--exhaustive-limit",
            type=int,
            default=DEFAULT_EXHAUSTIVE_LIMIT,
            help="Most basis tuples one exhaustive sweep may enumerate; larger sweeps drop to a lower degree, noted in the report",
        )
        s.add_argument("--probe-seeds", type=int, default=50, help="Well-definedness probes (gerstenhaber)")
        s.add_argument(
            "--suites",
            nargs="+",
            default=["all"],
            choices=["axioms", "identities", "cohomology", "gerstenhaber", "all"],
            help="Suites to run (verify)",
        )
        s.add_argument("--out", default=None, help="Report path (default results/<algebra>_<command>.json)")
        s.add_argument("--verbose", action="store_true", help="Debug logging")
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)

    """
    Configure logging to print messages to the console with timestamps.
    Levels used:
    - INFO: normal progress (e.g., 'D_2 built', 'report saved')
    - WARNING: a check failed, a finding, an undecided comparison
    - ERROR: the run was refused (bad config, bad algebra, μ² ≠ 0)
    """
    logging.basicConfig(
        level=logging.DEBUG if args.verbose else logging.INFO,
        format="%(asctime)s [%(levelname)s] %(message)s",
    )

    """
    Pass the parsed CLI inputs to the CoordinatorAgent.
    The Coordinator runs the pipeline: Load → Verify | Cohomology → Storage.
    """
    coord = CoordinatorAgent()
    return coord.run({
        "algebra": args.algebra,
        "command": args.command,
        "max_degree": args.max_degree,
        "samples": args.samples,
        "seed": args.seed,
        "field": args.field,
        "memory_cap": args.memory_cap,
        "exhaustive_degree": args.exhaustive_degree,
        "exhaustive_limit": args.exhaustive_limit,
        "probe_seeds": args.probe_seeds,
        "suites": args.suites,
        "out": args.out,
    })


if __name__ == "__main__":
    sys.exit(main())
