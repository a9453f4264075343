# Purpose: verifies the exact scalar fields (Q and F_p): axioms, inverses, parsing and JSON form.
# Utility: every coefficient in the engine is one of these scalars, so field bugs would surface everywhere.

from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from preoperad.errors import ConfigurationError, FieldMismatchError, ZeroDivisionFieldError
from preoperad.exactfield import QQ, PrimeField, Residue, add, div, field_from_config, inv, mul, neg, power, sub

F7 = PrimeField(7)
F10007 = PrimeField(10007)

rationals = st.fractions(max_denominator=50).filter(lambda x: abs(x) < 1000)
residues = st.integers(min_value=0, max_value=10006).map(F10007.element)


@settings(derandomize=True, max_examples=200)
@given(rationals, rationals, rationals)
def test_rational_field_axioms(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(a, add(b, c)) == add(mul(a, b), mul(a, c))
    assert add(a, neg(a)) == 0
    assert sub(a, b) == add(a, neg(b))
    if b != 0:
        assert mul(div(a, b), b) == a


@settings(derandomize=True, max_examples=200)
@given(residues, residues, residues)
def test_prime_field_axioms(a, b, c):
    assert add(add(a, b), c) == add(a, add(b, c))
    assert mul(add(a, b), c) == add(mul(a, c), mul(b, c))
    assert mul(a, b) == mul(b, a)
    assert add(a, neg(a)) == 0
    if b != 0:
        assert mul(b, inv(b)) == 1
        assert mul(div(a, b), b) == a


def test_inverse_of_zero_raises_in_both_fields():
    with pytest.raises(ZeroDivisionFieldError):
        inv(Fraction(0))
    with pytest.raises(ZeroDivisionFieldError):
        inv(F7.zero())
    # still a ZeroDivisionError for callers that only know the builtin
    with pytest.raises(ZeroDivisionError):
        F7.element(3) / F7.element(0)


def test_mixed_fields_are_rejected():
    with pytest.raises(FieldMismatchError):
        F7.element(2) + PrimeField(11).element(2)
    with pytest.raises(FieldMismatchError):
        F7.element(2) * Fraction(1, 2)
    with pytest.raises(FieldMismatchError):
        mul(F7.element(2), Fraction(1, 3))


def test_ints_embed_into_prime_field():
    x = F7.element(5)
    assert x + 3 == 1
    assert 3 - x == 5
    assert (2 * x).value == 3
    assert F7.element(-1) == 6


def test_parse_and_to_json():
    assert QQ.element("3/4") == Fraction(3, 4)
    assert QQ.to_json(Fraction(3, 4)) == "3/4"
    assert QQ.to_json(Fraction(4, 2)) == 2
    # 1/2 in F_7 is 4
    assert F7.element("1/2") == 4
    assert F7.to_json(F7.element("1/2")) == 4
    with pytest.raises(ConfigurationError):
        PrimeField(7).element("1/7")
    with pytest.raises(ConfigurationError):
        QQ.element("x/2")
    with pytest.raises(ConfigurationError):
        QQ.element(True)


def test_field_configuration():
    assert field_from_config({"type": "rational"}) == QQ
    assert field_from_config({"type": "prime", "p": 10007}) == F10007
    with pytest.raises(ConfigurationError):
        field_from_config({"type": "prime", "p": 10})
    with pytest.raises(ConfigurationError):
        field_from_config({"type": "complex"})


def test_residue_is_immutable_and_hashable():
    r = Residue(9, 7)
    assert r.value == 2
    with pytest.raises(AttributeError):
        r.value = 3
    assert len({Residue(2, 7), Residue(9, 7)}) == 1


def test_power():
    assert power(Fraction(2, 3), 3) == Fraction(8, 27)
    assert power(Fraction(2, 3), -2) == Fraction(9, 4)
    assert power(Fraction(5), 0) == 1
    # Fermat: a^(p-1) = 1
    assert power(F7.element(3), 6) == 1
    assert power(F7.element(3), -1) == F7.element(5)
    with pytest.raises(ZeroDivisionFieldError):
        power(F7.zero(), -1)
