from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from hopf_algebroid.field import QQ, PrimeField, Residue, parse_field, rational_reconstruct

P = 2147483647


def test_parse_field():
    assert parse_field("rational") is QQ
    assert parse_field("gf:7").p == 7
    with pytest.raises(ValueError):
        parse_field("gf:8")
    with pytest.raises(ValueError):
        parse_field("reals")


def test_residue_arithmetic_mod_7():
    a, b = Residue(3, 7), Residue(5, 7)
    assert a + b == Residue(1, 7)
    assert a * b == Residue(1, 7)
    assert a / b == a * Residue(3, 7)  # 5^-1 = 3 mod 7
    assert -a == Residue(4, 7)


def test_prime_field_rejects_composites():
    with pytest.raises(ValueError):
        PrimeField(9)


@given(st.integers(-1000, 1000), st.integers(1, 1000))
def test_rational_reconstruct_roundtrip(n, d):
    x = Fraction(n, d)
    a = x.numerator * pow(x.denominator, -1, P) % P
    assert rational_reconstruct(a, P) == x


@given(st.integers(0, 96), st.integers(1, 96))
def test_field_axioms_mod_97(u, v):
    a, b = Residue(u, 97), Residue(v, 97)
    assert (a / b) * b == a
    assert a * (b + a) == a * b + a * a
