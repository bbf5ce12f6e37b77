import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majorder.core import ResourceError
from majorder.identity import (
    beta_integral,
    gen2_verify,
    lemma8_constant,
    lemma8_extract_F,
    lemma8_verify,
    simplex_integral,
)
from majorder.sympoly import F

signed = st.fractions(-5, 5, max_denominator=4)


def test_beta_values():
    assert beta_integral((1, 0)) == Fraction(1, 6)
    assert beta_integral((0, 0, 0)) == Fraction(1, 6)
    assert beta_integral((0,)) == 1
    assert beta_integral((1,)) == Fraction(1, 2)


def test_beta_by_iterated_integration():
    # integrate z1^a z2^b over the triangle by the one-dimensional beta function
    for a in range(4):
        for b in range(4):
            inner = Fraction(math.factorial(a) * math.factorial(b), math.factorial(a + b + 1))
            want = inner / (a + b + 2)
            assert beta_integral((a, b)) == want


def test_one_dimensional_case():
    # integral over [0, 1] of (z + 3 t) dz = 1/2 + 3 t
    assert simplex_integral((3,), 1).coeffs == (Fraction(1, 2), 3)
    assert lemma8_constant(1, 1, 1) == 1


@given(st.integers(1, 3), st.integers(1, 3), st.data())
@settings(max_examples=30, deadline=None)
def test_simplex_identity(n, r, data):
    x = tuple(data.draw(signed) for _ in range(n))
    assert lemma8_verify(n, r, x).info["exact"]


@given(st.integers(1, 3), st.integers(0, 4), st.data())
@settings(max_examples=30, deadline=None)
def test_orthant_identity(n, r, data):
    x = tuple(data.draw(signed) for _ in range(n))
    assert gen2_verify(n, r, x)


def test_extracted_coefficients_match():
    x = (Fraction(2), Fraction(1, 3), Fraction(5, 2))
    assert lemma8_extract_F(3, 2, x) == [F(k, 2, x) for k in range(7)]


def test_limits():
    with pytest.raises(ResourceError):
        lemma8_verify(4, 1, (1, 1, 1, 1))
    with pytest.raises(ResourceError):
        gen2_verify(2, 5, (1, 1))
