from fractions import Fraction

import pytest

from gtkit.field import GF, QQ, field_from_json, field_from_spec


def test_rational_roundtrip():
    assert QQ.convert("3/4") == Fraction(3, 4)
    assert QQ.format(Fraction(-6, 3)) == "-2"
    assert field_from_json(QQ.to_json()) == QQ


def test_prime_field_arithmetic():
    F = GF(7)
    assert F.convert(Fraction(1, 2)) == 4
    assert F.inv(3) * 3 % 7 == 1
    assert F.format(6) == "-1"
    assert field_from_json(F.to_json()) == F
    assert field_from_spec("fp", 7) == F


@pytest.mark.parametrize("p", [1, 2, 4, 9, 32004])
def test_prime_field_rejects_non_odd_primes(p):
    with pytest.raises(ValueError):
        GF(p)


def test_prime_field_rejects_bad_denominator():
    with pytest.raises(ZeroDivisionError):
        GF(5).convert(Fraction(1, 5))
