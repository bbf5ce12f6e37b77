import math
from fractions import Fraction
from itertools import product

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from majorder.core import DomainError, ResourceError
from majorder.sympoly import (
    F,
    G,
    H_S,
    IndexSet,
    M,
    M_via_Gbar,
    common_scale,
    elem_sym,
    gen_poly,
    grad_F,
    grad_F_exact,
    grad_H_S_exact,
    is_schur_concave_indexset,
    multi_indices,
    scaled_gen_coeffs,
)

from conftest import points


def brute_F(k, r, x):
    """Direct enumeration over bounded exponent vectors."""
    total = Fraction(0)
    for p in product(range(r + 1), repeat=len(x)):
        if sum(p) == k:
            term = Fraction(1)
            for v, e in zip(x, p):
                term *= Fraction(v) ** e / math.factorial(e)
            total += term
    return total


def test_elementary_values():
    assert elem_sym((1, 2, 3), 2) == 11
    assert elem_sym((1, 2, 3), 0) == 1
    with pytest.raises(DomainError):
        elem_sym((1, 2), 3)


def test_generating_polynomial_values():
    g = gen_poly((1, 2), 2)
    # (1 + t + t^2/2)(1 + 2t + 2t^2)
    assert g.coeffs == (1, 3, Fraction(9, 2), 3, 1)
    assert F(2, 2, (1, 1, 1)) == Fraction(9, 2)
    assert F(2, 2, (2, 2, 2)) == 18
    assert F(4, 2, (1, 1, 0)) == Fraction(1, 4) and F(5, 2, (1, 1)) == 0


def test_G_and_M_values():
    assert G(2, 2, (1, 1)) == 1
    assert G(2, 1, (1, 1)) == 2
    assert G(3, 3, (1, 1)) == 0
    assert M(2, 2, (1, 2, 3)) == 50
    with pytest.raises(ResourceError):
        G(2, 1, tuple(range(10)))


@given(points(1, 4), st.integers(1, 3))
@settings(max_examples=60, deadline=None)
def test_F_matches_enumeration(x, r):
    for k in range(len(x) * r + 2):
        assert F(k, r, x) == brute_F(k, r, x)


@given(points(2, 5))
@settings(max_examples=40, deadline=None)
def test_M_through_Gbar(x):
    n = len(x)
    for r in range(1, n):
        for k in range(r, 7):
            assert M(k, r, x) / math.factorial(k) == M_via_Gbar(k, r, x)


def test_index_sets():
    S = IndexSet.bounded(3, 4, 2)
    assert is_schur_concave_indexset(S)
    x = (Fraction(1, 2), 3, 2)
    assert H_S(x, S) == F(4, 2, x)
    assert H_S(x, IndexSet.full(3, 4)) == Fraction(sum(x)) ** 4 / 24
    v = is_schur_concave_indexset(IndexSet(2, {(2, 0)}))
    assert not v and v.witness == ((2, 0), (1, 1))
    # spreading mass never reduces the support, so this set is closed too
    assert is_schur_concave_indexset(IndexSet.support_at_least(3, 4, 2))


def test_downward_closure_is_schur_concave():
    for gen in multi_indices(3, 5):
        assert is_schur_concave_indexset(IndexSet.downward_closure([gen]))


def test_gradient_against_sympy():
    xs = sympy.symbols("a b c")
    for k, r in [(2, 1), (3, 2), (4, 2), (5, 3)]:
        expr = sum(sympy.prod([v**e / sympy.factorial(e) for v, e in zip(xs, p)])
                   for p in multi_indices(3, k) if max(p) <= r)
        pt = {xs[0]: sympy.Rational(5, 2), xs[1]: 2, xs[2]: sympy.Rational(1, 3)}
        want = [sympy.diff(expr, v).subs(pt) for v in xs]
        got = grad_F_exact(k, r, (Fraction(5, 2), 2, Fraction(1, 3)))
        assert [sympy.Rational(g.numerator, g.denominator) for g in got] == want
    assert grad_F(3, 2, (1, 2, 3)) == pytest.approx((17.5, 16.0, 13.5))


def test_H_S_gradient_matches_bounded_family():
    x = (Fraction(3), Fraction(2), Fraction(1, 2))
    assert grad_H_S_exact(x, IndexSet.bounded(3, 4, 2)) == grad_F_exact(4, 2, x)


@given(points(1, 4), points(1, 4), st.integers(1, 4))
@settings(max_examples=50, deadline=None)
def test_scaled_coefficients(x, y, r):
    if len(x) != len(y):
        return
    D, (mx, _) = common_scale(x, y)
    c = scaled_gen_coeffs(mx, r)
    n = len(x)
    for k in range(n * r + 1):
        assert Fraction(c[k], D**k * math.factorial(r) ** n) == F(k, r, x)
