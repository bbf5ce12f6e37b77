import math
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majorder.core import (
    DomainError,
    Status,
    Tolerance,
    Verdict,
    jsonable,
    majorizes,
    pnorm,
    rearrange_desc,
    tensor,
    to_fraction,
    weak_prec,
)

from conftest import pairs, points


def test_tolerance_rule():
    tol = Tolerance(1e-12, 1e-9)
    assert tol.le(1.0 + 5e-10, 1.0)
    assert not tol.le(1.0 + 5e-9, 1.0)
    assert tol.le(1e-13, 0.0)
    with pytest.raises(DomainError):
        Tolerance(-1.0, 0.0)


def test_verdict_contract():
    with pytest.raises(ValueError):
        Verdict(Status.FAILS)
    with pytest.raises(ValueError):
        Verdict(Status.HOLDS_UP_TO)
    v = Verdict(Status.HOLDS_UP_TO, None, 0.5, 8)
    assert v and v.to_dict()["truncation"] == 8
    assert not Verdict.fails(3, -1.0)


def test_jsonable_rationals():
    assert jsonable(Fraction(3, 4)) == "3/4"
    assert jsonable(Fraction(6, 3)) == 2
    assert jsonable([math.inf, (Fraction(1, 2),)]) == ["inf", ["1/2"]]


def test_rearrange_and_tensor():
    assert rearrange_desc((1, 3, 2)) == (3, 2, 1)
    assert tensor((1, 2), (3, 4)) == (3, 4, 6, 8)


def test_majorization_example_pair():
    x, y = (15, 2, 2), (9, 9, 1)
    assert majorizes(x, y).witness == 2
    assert majorizes(y, x).witness == 1
    assert weak_prec(x, y).witness == 3
    assert majorizes((2, 0), (1, 1))
    assert majorizes((1, 1), (1, 2)).witness == "sum mismatch"


def test_pnorm_endpoints():
    x = (4, 1)
    assert pnorm(x, 0, normalized=True) == pytest.approx(2.0)
    assert pnorm(x, math.inf, normalized=True) == 4
    assert pnorm(x, 1, normalized=True) == pytest.approx(2.5)
    assert pnorm(x, 1, normalized=False) == pytest.approx(5.0)
    assert pnorm((0, 3), 0, normalized=True) == 0.0
    with pytest.raises(DomainError):
        pnorm((0, 3), -1, normalized=True)


def test_domain_errors():
    with pytest.raises(DomainError):
        majorizes((1, -1), (0, 0))
    with pytest.raises(DomainError):
        majorizes((1, 2), (1,))
    with pytest.raises(DomainError):
        to_fraction(float("nan"))


@given(points(1, 6))
def test_majorization_reflexive(x):
    assert majorizes(x, x)
    assert weak_prec(x, x)


@given(pairs(1, 5))
@settings(max_examples=200)
def test_majorization_implies_weak(xy):
    # the more spread vector has the smaller bottom tails
    x, y = xy
    if majorizes(x, y):
        assert weak_prec(x, y)


@given(points(2, 5), st.data())
@settings(max_examples=100)
def test_transfer_is_majorized(x, data):
    # a transfer from a larger to a smaller entry yields a majorized vector
    i = data.draw(st.integers(0, len(x) - 1))
    j = data.draw(st.integers(0, len(x) - 1))
    if x[i] < x[j]:
        i, j = j, i
    a = (x[i] - x[j]) * data.draw(st.fractions(0, Fraction(1, 2)))
    y = list(x)
    y[i] -= a
    y[j] += a
    assert majorizes(x, y)
