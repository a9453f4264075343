# Purpose: verifies VerifyAgent end to end on the shipped fixtures, and that it catches deliberately broken calculi.
# Utility: a suite that passes everything proves nothing; the mutants show a wrong sign or a dropped term turns the run red.

import pytest

import preoperad.endo as endo
from agents.load import DEFAULT_EXHAUSTIVE_LIMIT, LoadAgent, RunConfig, basis_tuple_count, exhaustive_degree_for
from agents.verify import FAIL, NOT_APPLICABLE, PASS, CheckTally, VerifyAgent
from conftest import FIXTURES, calculus_for
from preoperad.errors import ResourceError
from preoperad.opcalc import OperadCalculus, sign


def _plan(name, **overrides):
    settings = {"algebra": str(FIXTURES / f"{name}.json"), "command": "verify", "max_degree": 2, "samples": 4, "exhaustive_degree": 1}
    settings.update(overrides)
    return LoadAgent().build_plan(RunConfig(**settings))


def _by_name(result):
    return {rec["check"]: rec for rec in result["checks"]}


class DroppedTermCalculus(OperadCalculus):
    """δ without the ν • f term."""

    def delta_by(self, nu, f):
        return -self.total(f, nu)


class DroppedTotalCalculus(OperadCalculus):
    """δ without the f • ν term."""

    def delta_by(self, nu, f):
        return sign((f.degree - 1) * (nu.degree - 1)) * self.total(nu, f)


def test_associative_fixture_passes_every_check():
    result = VerifyAgent().run(_plan("dual_numbers"))
    assert result["associative"] is True
    assert result["ok"] is True, [r for r in result["checks"] if r["status"] != PASS]
    checks = _by_name(result)
    for name in ("unit_left", "compose_vs_evaluation", "getzler", "dev_total_is_cup_commutator", "dev_tribrace_bracket_form", "cup_associator", "delta_square_zero", "cup_cochain_associativity"):
        assert checks[name]["status"] == PASS
        assert checks[name]["instances"] > 0


def test_nonassociative_fixture_passes_unconditional_identities():
    result = VerifyAgent().run(_plan("nonassociative"))
    assert result["associative"] is False
    assert result["ok"] is True
    checks = _by_name(result)
    assert checks["cup_cochain_associativity"]["status"] == NOT_APPLICABLE
    assert checks["delta_square_zero"]["status"] == NOT_APPLICABLE
    for name in ("delta_square", "cup_associator", "cup_derivation_obstruction", "right_translation", "dev_tribrace_left_form"):
        assert checks[name]["status"] == PASS


def test_suite_selection():
    result = VerifyAgent().run(_plan("dual_numbers", suites=["axioms"]))
    checks = _by_name(result)
    assert "unit_left" in checks
    assert "getzler" not in checks


def test_records_carry_seed_and_degrees():
    result = VerifyAgent().run(_plan("dual_numbers", seed=9))
    for rec in result["checks"]:
        assert rec["seed"] == 9 or "witness" in rec
        assert rec["degrees"] == sorted(rec["degrees"])


def test_unsigned_composition_is_caught(monkeypatch):
    monkeypatch.setattr(endo, "composition_sign", lambda i, g_degree: 1)
    calc = calculus_for(_plan("dual_numbers").spec)
    f = calc.operad.basis_cochain(2, 0)
    # f ∘_1 f needs the sign (-1)^(1·|f|) = -1
    defect = calc.compose_by_evaluation(f, 1, f)
    assert not defect.ok
    assert defect.witness()["at"] == {"out": "1", "inputs": ["1", "1", "1"]}

    # the two tribrace orders no longer cancel: (μ•f)•f - μ•(f•f) = 2{μ,f,f} against 0
    getzler = calc.getzler(calc.mu, f, f)
    assert not getzler.ok
    w = getzler.witness()
    assert w["at"] == {"out": "1", "inputs": ["1", "1", "1", "1"]}
    assert (w["lhs"], w["rhs"]) == ("2", "0")

    # only tuples with deg f = deg g = 2 hit the slot where the sign matters
    result = VerifyAgent().run(_plan("dual_numbers", suites=["axioms"], samples=40))
    assert result["ok"] is False
    record = _by_name(result)["compose_vs_evaluation"]
    assert record["status"] == FAIL
    assert "index" in record["witness"]


@pytest.mark.parametrize(
    "calculus_cls, lhs",
    [
        (DroppedTermCalculus, "-1"),  # δ𝟙 = -𝟙 • μ = -μ
        (DroppedTotalCalculus, "2"),  # δ𝟙 = μ • 𝟙 = 2μ
    ],
)
def test_dropped_coboundary_term_is_caught(calculus_cls, lhs):
    result = VerifyAgent(calculus_cls=calculus_cls).run(_plan("dual_numbers"))
    assert result["ok"] is False
    witness = _by_name(result)["delta_of_unit"]["witness"]
    assert _by_name(result)["delta_of_unit"]["status"] == FAIL
    assert witness["at"] == {"out": "1", "inputs": ["1", "1"]}
    assert (witness["lhs"], witness["rhs"]) == (lhs, "1")


def test_tally_keeps_the_first_failure(dual_calc):
    tally = CheckTally(run_seed=3)
    f = dual_calc.operad.basis_cochain(1, 0)
    ok = dual_calc._defect("probe[0]", f, f, f, seed=5)
    bad = dual_calc._defect("probe[1]", f, 0 * f, f, seed=6)
    worse = dual_calc._defect("probe[2]", f, 2 * f, f, seed=7)
    for d in (ok, bad, worse):
        tally.add(d)
    (record,) = tally.as_list()
    assert record["check"] == "probe"
    assert record["instances"] == 3
    assert record["status"] == FAIL
    assert record["seed"] == 6
    assert record["witness"]["instance"] == "probe[1]"


@pytest.mark.parametrize("field", ["rational", "prime:10007"])
def test_field_override_does_not_change_verdicts(field):
    assert VerifyAgent().run(_plan("dual_numbers", field=field, samples=2))["ok"] is True


def test_requested_degree_fits_for_dimension_two():
    # 28^3 basis triples of degree <= 3 over a 2-dimensional algebra
    assert basis_tuple_count(2, 3, 3) == 21952
    assert exhaustive_degree_for(2, 3, 3, DEFAULT_EXHAUSTIVE_LIMIT) == 3
    assert exhaustive_degree_for(2, 3, 2, DEFAULT_EXHAUSTIVE_LIMIT) == 3
    # M2: (16 + 64)^3 triples are too many, 16^3 are not
    assert exhaustive_degree_for(4, 3, 3, DEFAULT_EXHAUSTIVE_LIMIT) == 1
    assert exhaustive_degree_for(4, 3, 3, 10) == 0


def test_exhaustive_sweeps_are_reported():
    result = VerifyAgent().run(_plan("dual_numbers"))
    coverage = result["exhaustive"]
    assert coverage["cut_back"] is False
    assert coverage["sweeps"]["axiom_triples"] == {"degree": 1, "tuples": 64}
    assert coverage["sweeps"]["identity_triples"] == {"degree": 1, "tuples": 64}
    checks = _by_name(result)
    assert [1, 1, 1] in checks["getzler"]["degrees"]


def test_cut_back_lands_in_the_report():
    # degree 2 gives 12 singles, 144 pairs and 1728 triples
    result = VerifyAgent().run(_plan("dual_numbers", exhaustive_degree=2, exhaustive_limit=100))
    assert result["ok"] is True
    coverage = result["exhaustive"]
    assert coverage["cut_back"] is True
    assert coverage["requested_degree"] == 2
    assert coverage["limit"] == 100
    assert coverage["sweeps"]["identity_singles"] == {"degree": 2, "tuples": 12}
    assert coverage["sweeps"]["identity_pairs"] == {"degree": 1, "tuples": 16}
    assert coverage["sweeps"]["identity_triples"] == {"degree": 1, "tuples": 64}
    assert coverage["sweeps"]["axiom_triples"] == {"degree": 1, "tuples": 64}


def test_resource_errors_escape_the_suite():
    class OversizedCalculus(OperadCalculus):
        def getzler(self, h, f, g, seed=None):
            raise ResourceError(128, 64, what="degree-6 tensor")

    with pytest.raises(ResourceError):
        VerifyAgent(calculus_cls=OversizedCalculus).run(_plan("dual_numbers", suites=["identities"]))
