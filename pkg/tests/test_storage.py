# Test Purpose: verifies StorageAgent writes a byte-stable JSON report plus a separate run log.
# Utility: reproducibility is checked by comparing report bytes, so anything run-specific must stay in the log.

import json
import os

from agents.storage import StorageAgent


def test_persist_writes_report_and_log(tmp_path):
    s = StorageAgent()
    report = {"command": "verify", "algebra": "dual_numbers", "exit_code": 0, "checks": [{"check": "μ", "status": "pass"}]}
    out = s.persist(tmp_path / "nested" / "dual.json", report, timings={"total_seconds": 0.5, "H0_seconds": 0.1})

    # Files exist, parent directory was created
    assert os.path.exists(out["report"])
    assert os.path.exists(out["log"])
    assert out["log"].endswith("dual.log.json")

    with open(out["report"], "r", encoding="utf-8") as f:
        text = f.read()
    assert text.endswith("\n")
    assert "μ" in text  # not escaped
    assert json.loads(text) == report

    # Log integrity: timings and the run stamp live here, never in the report
    with open(out["log"], "r", encoding="utf-8") as f:
        log = json.load(f)
    assert log["exit_code"] == 0
    assert list(log["timings"]) == ["H0_seconds", "total_seconds"]
    assert log["generated_at"].endswith("Z")
    assert "generated_at" not in json.loads(text)


def test_same_report_same_bytes(tmp_path):
    s = StorageAgent()
    report = {"dims": [2, 1], "oracles": {"agree": True}}
    a = s.persist(tmp_path / "a.json", report, timings={"total_seconds": 1.0})
    b = s.persist(tmp_path / "b.json", dict(report), timings={"total_seconds": 2.0})
    with open(a["report"], "rb") as fa, open(b["report"], "rb") as fb:
        assert fa.read() == fb.read()
    assert StorageAgent.dumps(report) == StorageAgent.dumps(dict(report))


def test_report_keys_are_sorted(tmp_path):
    s = StorageAgent()
    out = s.persist(tmp_path / "k.json", {"oracles": {"sign_probe": {"1": 1, "0": 1}}, "exit_code": 0, "algebra": "a"})
    with open(out["report"], "r", encoding="utf-8") as f:
        text = f.read()
    assert text.index('"algebra"') < text.index('"exit_code"') < text.index('"oracles"')
    assert text.index('"0"') < text.index('"1"')
    assert StorageAgent.dumps({"b": 1, "a": 2}) == StorageAgent.dumps({"a": 2, "b": 1})
