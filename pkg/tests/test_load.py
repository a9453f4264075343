# Purpose: verifies LoadAgent sizes every command by the largest cochain it builds and refuses runs that cannot fit.
# Utility: a refused run must fail up front with exit code 2, never halfway through the checks.

import pytest

from agents.load import LoadAgent, RunConfig, parse_field
from conftest import FIXTURES
from preoperad.errors import ConfigurationError, ResourceError
from preoperad.exactfield import QQ, PrimeField


def _config(name, command, **overrides):
    settings = {"algebra": str(FIXTURES / f"{name}.json"), "command": command}
    settings.update(overrides)
    return RunConfig(**settings)


@pytest.mark.parametrize(
    "command, max_degree, expected",
    [
        ("cohomology", 3, 4),
        ("gerstenhaber", 3, 9),
        ("gerstenhaber", 0, 1),
        ("verify", 3, 9),
        ("verify", 1, 9),  # exhaustive triples of degree 3 still build (f⌣g)⌣h in degree 9
    ],
)
def test_largest_degree_per_command(command, max_degree, expected):
    assert LoadAgent.largest_degree(_config("dual_numbers", command, max_degree=max_degree), 2) == expected


def test_axioms_alone_need_less_room():
    config = _config("dual_numbers", "verify", max_degree=3, exhaustive_degree=1, suites=["axioms"])
    # (h ∘_i f) ∘_j g with three degree-3 operands
    assert LoadAgent.largest_degree(config, 2) == 7


def test_verify_is_refused_when_the_triple_products_do_not_fit():
    config = _config("dual_numbers", "verify", max_degree=3, memory_cap=64)
    with pytest.raises(ResourceError) as e:
        LoadAgent().build_plan(config)
    assert e.value.exit_code == 2
    assert (e.value.requested, e.value.cap) == (2**10, 64)


def test_default_verify_on_m2_is_refused_up_front():
    # 4^10 entries for (f⌣g)⌣h at N = 3
    with pytest.raises(ResourceError):
        LoadAgent().build_plan(_config("m2_q", "verify"))
    plan = LoadAgent().build_plan(_config("m2_q", "verify", max_degree=2, exhaustive_degree=2))
    assert plan.spec.d == 4


def test_cohomology_fits_where_verify_does_not():
    plan = LoadAgent().build_plan(_config("dual_numbers", "cohomology", max_degree=3, memory_cap=64))
    assert plan.out_path.name == "dual_numbers_cohomology.json"


def test_parse_field():
    assert parse_field(None) is None
    assert parse_field("rational") is QQ
    assert parse_field("prime:10007") == PrimeField(10007)
    with pytest.raises(ConfigurationError):
        parse_field("prime:x")
