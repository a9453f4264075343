# Test Purpose: runs the three commands through cli.main and the CoordinatorAgent and checks exit codes and report contents.
# Utility: exit codes are the contract with callers (0 ok, 1 check failed, 2 config/load, 3 μ² ≠ 0).

import json

from agents.coordinator import CoordinatorAgent
from agents.verify import VerifyAgent
from cli import build_parser, main
from conftest import FIXTURES
from preoperad.opcalc import OperadCalculus

DUAL = str(FIXTURES / "dual_numbers.json")
NONASSOC = str(FIXTURES / "nonassociative.json")


def _read(path):
    with open(path, "r", encoding="utf-8") as f:
        return json.load(f)


def test_parser_defaults():
    args = build_parser().parse_args(["verify", "--algebra", DUAL])
    assert (args.max_degree, args.samples, args.seed, args.field) == (3, 100, 42, None)
    assert args.suites == ["all"]
    assert (args.exhaustive_degree, args.exhaustive_limit) == (3, 25000)


def test_verify_exits_zero_and_writes_the_report(tmp_path):
    out = tmp_path / "verify.json"
    code = main(["verify", "--algebra", DUAL, "--max-degree", "2", "--samples", "3", "--exhaustive-degree", "1", "--out", str(out)])
    assert code == 0
    report = _read(out)
    assert report["command"] == "verify"
    assert report["algebra"] == "dual_numbers"
    assert report["exit_code"] == 0
    assert report["config"]["seed"] == 42
    assert report["associative"] is True
    assert (tmp_path / "verify.log.json").exists()


def test_cohomology_exits_zero_with_oracles(tmp_path):
    out = tmp_path / "h.json"
    assert main(["cohomology", "--algebra", DUAL, "--max-degree", "2", "--out", str(out)]) == 0
    report = _read(out)
    assert report["dims"] == [2, 1, 1]
    assert report["oracles"]["agree"] is True
    assert report["unit_class"] == [1, 0]
    assert report["cohomology"][1]["dim_h"] == 1


def test_cohomology_over_a_prime_field(tmp_path):
    out = tmp_path / "hp.json"
    assert main(["cohomology", "--algebra", DUAL, "--max-degree", "2", "--field", "prime:10007", "--out", str(out)]) == 0
    report = _read(out)
    assert report["field"] == {"type": "prime", "p": 10007}
    assert report["dims"] == [2, 1, 1]


def test_gerstenhaber_exits_zero(tmp_path):
    out = tmp_path / "g.json"
    assert main(["gerstenhaber", "--algebra", DUAL, "--max-degree", "2", "--probe-seeds", "5", "--out", str(out)]) == 0
    report = _read(out)
    verdicts = {v["check"]: v for v in report["verdicts"]}
    assert verdicts["well_definedness"]["instances"] == 5
    for name in ("bracket_antisymmetry", "bracket_jacobi", "cup_associativity", "cup_graded_commutativity", "bracket_leibniz", "product_degrees"):
        assert verdicts[name]["status"] in ("pass", "skipped")


def test_failed_check_exits_one(tmp_path):
    class NoUnitShift(OperadCalculus):
        def delta_by(self, nu, f):
            return -self.total(f, nu)

    coord = CoordinatorAgent(verifier=VerifyAgent(calculus_cls=NoUnitShift))
    out = tmp_path / "bad.json"
    code = coord.run({"algebra": DUAL, "command": "verify", "max_degree": 1, "samples": 2, "exhaustive_degree": 1, "out": str(out)})
    assert code == 1
    assert _read(out)["exit_code"] == 1
    assert coord.outputs["report"] == str(out)


def test_configuration_errors_exit_two(tmp_path):
    out = str(tmp_path / "x.json")
    assert main(["verify", "--algebra", DUAL, "--field", "complex", "--out", out]) == 2
    assert main(["verify", "--algebra", str(tmp_path / "missing.json"), "--out", out]) == 2
    assert main(["verify", "--algebra", DUAL, "--field", "prime:12", "--out", out]) == 2
    # d^(N+2) = 2^5 entries do not fit under a cap of 16
    assert main(["cohomology", "--algebra", DUAL, "--memory-cap", "16", "--out", out]) == 2
    assert main(["verify", "--algebra", DUAL, "--samples", "0", "--out", out]) == 2
    # nothing is written for a refused run
    assert not (tmp_path / "x.json").exists()


def test_verify_that_outgrows_the_memory_cap_exits_two(tmp_path):
    # (f⌣g)⌣h on degree-3 cochains needs 2^10 entries
    out = tmp_path / "v.json"
    code = main(["verify", "--algebra", DUAL, "--max-degree", "3", "--samples", "3", "--memory-cap", "64", "--out", str(out)])
    assert code == 2
    assert not out.exists()


def test_verify_report_records_the_exhaustive_sweeps(tmp_path):
    out = tmp_path / "sweeps.json"
    args = ["verify", "--algebra", DUAL, "--max-degree", "1", "--samples", "2", "--exhaustive-degree", "1", "--exhaustive-limit", "20"]
    assert main(args + ["--out", str(out)]) == 0
    report = _read(out)
    assert report["config"]["exhaustive_limit"] == 20
    assert report["exhaustive"]["cut_back"] is True
    assert report["exhaustive"]["sweeps"]["identity_pairs"] == {"degree": 1, "tuples": 16}
    assert report["exhaustive"]["sweeps"]["identity_triples"] == {"degree": 0, "tuples": 0}


def test_nonassociative_cohomology_exits_three(tmp_path):
    out = tmp_path / "n.json"
    assert main(["cohomology", "--algebra", NONASSOC, "--max-degree", "1", "--out", str(out)]) == 3
    assert main(["gerstenhaber", "--algebra", NONASSOC, "--max-degree", "1", "--out", str(out)]) == 3
    assert not out.exists()


def test_reports_are_reproducible(tmp_path):
    a, b = tmp_path / "a.json", tmp_path / "b.json"
    args = ["verify", "--algebra", DUAL, "--max-degree", "2", "--samples", "3", "--exhaustive-degree", "1", "--seed", "5"]
    assert main(args + ["--out", str(a)]) == 0
    assert main(args + ["--out", str(b)]) == 0
    assert a.read_bytes() == b.read_bytes()


def test_gerstenhaber_on_a_separable_algebra(tmp_path):
    out = tmp_path / "s.json"
    assert main(["gerstenhaber", "--algebra", str(FIXTURES / "split_qq.json"), "--probe-seeds", "5", "--out", str(out)]) == 0
    report = _read(out)
    assert report["dims"] == [2, 0, 0, 0]
    assert report["unit_class"] == [1, 1]
