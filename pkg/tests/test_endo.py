# Purpose: verifies algebra loading and the endomorphism pre-operad E_A (∘_i, unit, cochain arithmetic).
# Utility: ∘_i is checked against a brute-force evaluator, so sign or slot mistakes cannot hide.

import itertools
import json
from fractions import Fraction

import pytest

from conftest import FIXTURES, load_fixture
from preoperad.endo import EndomorphismPreOperad, composition_sign, load_algebra
from preoperad.errors import (
    AlgebraLoadError,
    ArityError,
    ConfigurationError,
    DegreeError,
    PositionError,
    ResourceError,
)
from preoperad.exactfield import PrimeField
from preoperad.opcalc import OperadCalculus


def _doc(**overrides):
    doc = json.loads((FIXTURES / "dual_numbers.json").read_text(encoding="utf-8"))
    doc.update(overrides)
    return doc


def test_load_shipped_fixtures(dual, split, m2, nonassoc):
    assert (dual.d, split.d, m2.d, nonassoc.d) == (2, 2, 4, 2)
    # x · x = 0 in the dual numbers
    assert list(dual.product[1, 1]) == [0, 0]
    # E12 · E21 = E11
    assert list(m2.product[1, 2]) == [1, 0, 0, 0]
    assert nonassoc.unit is None


def test_load_rejects_wrong_arity_and_names_the_product():
    doc = _doc()
    doc["product"][1][0] = [0, 1, 0]
    with pytest.raises(AlgebraLoadError) as e:
        load_algebra(doc)
    assert e.value.product == (1, 0)
    assert "x·1" in str(e.value)


def test_load_rejects_false_unit():
    with pytest.raises(AlgebraLoadError) as e:
        load_algebra(_doc(unit=[0, 1]))
    assert "unit" in str(e.value)


def test_load_rejects_bad_prime_and_bad_json():
    with pytest.raises(AlgebraLoadError):
        load_algebra(_doc(field={"type": "prime", "p": 12}))
    with pytest.raises(AlgebraLoadError):
        load_algebra("{not json")
    with pytest.raises(AlgebraLoadError):
        load_algebra(_doc(basis=["1"]))


def test_rational_strings_and_prime_override():
    doc = _doc()
    doc["product"][0][1] = [0, "2/2"]
    spec = load_algebra(doc)
    assert spec.product[0, 1, 1] == Fraction(1)
    p = load_fixture("dual_numbers", field_override=PrimeField(10007))
    assert p.field == PrimeField(10007)
    assert p.product[0, 0, 0] == 1


def test_unit_laws_on_every_basis_cochain(dual):
    operad = EndomorphismPreOperad(dual)
    one = operad.unit()
    for n in range(4):
        for f in operad.basis_cochains(n):
            assert operad.compose(one, 0, f) == f
            for i in range(n):
                assert operad.compose(f, i, one) == f


def test_compose_matches_brute_force_substitution(dual, nonassoc):
    for spec in (dual, nonassoc):
        operad = EndomorphismPreOperad(spec)
        for (n, m), seed in zip(itertools.product(range(1, 4), range(0, 3)), itertools.count(7)):
            f = operad.random_cochain(n, seed)
            g = operad.random_cochain(m, seed + 100)
            for i in range(n):
                assert operad.compose(f, i, g) == operad.substitute(f, i, g)


def test_composition_sign_and_degrees(dual):
    operad = EndomorphismPreOperad(dual)
    assert composition_sign(1, 2) == -1
    assert composition_sign(0, 2) == 1
    assert composition_sign(2, 2) == 1
    # |g| = -1 for an element of A
    assert composition_sign(1, 0) == -1
    f = operad.random_cochain(2, 1)
    g = operad.random_cochain(3, 2)
    assert operad.compose(f, 1, g).degree == 4
    assert operad.compose(f, 0, operad.random_cochain(0, 3)).degree == 1


def test_compose_rejects_bad_slots(dual):
    operad = EndomorphismPreOperad(dual)
    f = operad.random_cochain(2, 1)
    with pytest.raises(PositionError):
        operad.compose(f, 2, f)
    with pytest.raises(PositionError):
        operad.compose(operad.random_cochain(0, 1), 0, f)


def test_mu_evaluates_to_the_product(dual):
    operad = EndomorphismPreOperad(dual)
    mu = operad.mu()
    one, x = [1, 0], [0, 1]
    assert list(operad.evaluate(mu, [x, one])) == [0, 1]
    assert list(operad.evaluate(mu, [x, x])) == [0, 0]
    with pytest.raises(ArityError):
        operad.evaluate(mu, [x])


def test_cochain_arithmetic(dual):
    operad = EndomorphismPreOperad(dual)
    f = operad.random_cochain(2, 5)
    assert (f - f).is_zero()
    assert f + f == 2 * f
    assert -f == (-1) * f
    with pytest.raises(DegreeError):
        f + operad.random_cochain(1, 5)
    assert len(f.coordinates()) == 8


def test_random_cochain_is_deterministic(dual):
    operad = EndomorphismPreOperad(dual)
    assert operad.random_cochain(3, 42) == operad.random_cochain(3, 42)
    assert operad.random_cochain(3, 42) != operad.random_cochain(3, 43)


def test_memory_cap_refuses_large_tensors():
    spec = load_fixture("dual_numbers", memory_cap=16)
    operad = EndomorphismPreOperad(spec)
    operad.zero(3)
    with pytest.raises(ResourceError) as e:
        operad.zero(4)
    assert e.value.requested == 32


def test_formal_associator_matches_evaluation(dual, nonassoc):
    for spec, associative in ((dual, True), (nonassoc, False)):
        operad = EndomorphismPreOperad(spec)
        calc = OperadCalculus(operad, operad.mu())
        assert calc.formal_associator() == operad.associator()
        assert calc.is_associative() is associative


def test_cochains_over_different_algebras_do_not_mix(dual, split):
    a = EndomorphismPreOperad(dual).random_cochain(1, 1)
    b = EndomorphismPreOperad(split).random_cochain(1, 1)
    with pytest.raises(ConfigurationError):
        a + b
