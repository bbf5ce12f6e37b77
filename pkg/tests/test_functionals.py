import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from majorder.core import DomainError
from majorder.functionals import (
    I1,
    L1,
    Iinf,
    I_direct_mc,
    Linf,
    Psi,
    check_saddle,
    grad_Psi,
    legendre_inverse,
    maximize_concave,
    saddle_point,
    script_L,
    script_L_direct,
    sup_prod,
    supdet_check,
    water_fill,
)
from majorder.spectra import random_psd

pos_vec = st.lists(st.floats(0.01, 50), min_size=1, max_size=6)


def test_water_fill_examples():
    r = water_fill((3, 1), 2, "raw")
    assert (r.c, r.ztilde, r.supval) == (3, (0, 2), 9)
    r = water_fill((3, 1), 6, "raw")
    assert r.c == 5 and r.supval == 25
    r = water_fill((3, 1), 1, "normalized")
    assert r.c == 3
    assert isinstance(water_fill((Fraction(1, 3), 1), Fraction(1, 2)).c, Fraction)
    with pytest.raises(DomainError):
        water_fill((1, 2), -1)
    with pytest.raises(DomainError):
        water_fill((1, 2), 1, "other")


@given(pos_vec, st.floats(0.0, 20))
@settings(max_examples=200)
def test_water_fill_uses_budget(x, vol):
    r = water_fill(x, vol, "raw")
    assert math.fsum(r.ztilde) == pytest.approx(vol, abs=1e-9 * (1 + vol))
    assert all(z >= 0 for z in r.ztilde)
    for v, z in zip(x, r.ztilde):
        if z > 0:
            assert v + z == pytest.approx(r.c)


@given(pos_vec, st.floats(0.1, 10), st.integers(0, 2**32 - 1))
@settings(max_examples=60)
def test_random_fills_never_beat_water(x, vol, seed):
    rng = np.random.default_rng(seed)
    best = water_fill(x, vol, "raw").supval
    for _ in range(50):
        z = rng.dirichlet(np.ones(len(x))) * vol
        assert math.prod(np.asarray(x) + z) <= best * (1 + 1e-10)


def test_psi_and_gradient():
    assert Psi((2, 1), 1) == pytest.approx(2 + math.log(2))
    assert grad_Psi((2, 1), 1) == (0.5, 1.0)
    with pytest.raises(DomainError):
        Psi((1,), 0)


@given(pos_vec, st.floats(0.05, 20))
def test_psi_gradient_by_difference(x, lam):
    g = grad_Psi(x, lam)
    h = 1e-6
    for i in range(len(x)):
        if abs(x[i] - lam) < 1e-3:
            continue
        xp = list(x)
        xp[i] += h
        assert (Psi(xp, lam) - Psi(x, lam)) / h == pytest.approx(g[i], rel=1e-4, abs=1e-6)


def test_L_values():
    assert L1((1, 4), 2) == pytest.approx(math.sqrt(18) - 2)
    assert Linf((3, 1), 1) == pytest.approx(2.0)
    assert L1((1, 4), 0) == pytest.approx(2.0)


@given(pos_vec, st.floats(0.01, 100))
@settings(max_examples=100)
def test_L1_below_Linf(x, lam):
    assert L1(x, lam) <= Linf(x, lam) + 1e-9 * (1 + max(x))


def test_maximize_concave():
    arg, val = maximize_concave(lambda t: -(t - 3.0) ** 2 + 1.0, 0.0, 1.0)
    assert arg == pytest.approx(3.0, abs=1e-6) and val == pytest.approx(1.0)


def test_I_at_zero_is_mean():
    assert I1((1, 2), 0) == pytest.approx(1.5)
    assert Iinf((1, 2), 0) == pytest.approx(1.5)


@given(st.lists(st.floats(0.1, 10), min_size=2, max_size=4), st.floats(0.05, 3))
@settings(max_examples=40, deadline=None)
def test_I1_below_Iinf(x, t):
    assert I1(x, t) <= Iinf(x, t) + 1e-9


@given(st.lists(st.floats(0.1, 10), min_size=2, max_size=4), st.floats(0.1, 5))
@settings(max_examples=25, deadline=None)
def test_legendre_round_trip(x, lam):
    back = legendre_inverse(lambda t: I1(x, t), lam)
    assert back == pytest.approx(L1(x, lam), rel=1e-7, abs=1e-7)


@pytest.mark.parametrize("kind,func", [("inf", Iinf), ("1", I1)])
def test_I_upper_estimates(kind, func):
    rng = np.random.default_rng(3)
    x = (3.0, 1.0, 0.5)
    for t in (0.0, 0.5, 2.0):
        est = I_direct_mc(x, t, kind, samples=4000, rng=rng)
        assert func(x, t) <= est + 1e-9


def test_script_L_identity():
    assert script_L((2, 1), 1) == pytest.approx(math.log(2) / 2)
    for t in (0.1, 0.7, 3.0):
        for x in [(2, 1), (5, 0.3, 1), (0.01, 9)]:
            lhs = script_L(x, t)
            assert lhs == pytest.approx(script_L_direct(x, t), abs=1e-12)
            assert lhs == pytest.approx(t * Psi(x, 1 / t) / len(x) - 1 - math.log(t), abs=1e-12)


def test_saddle_point_inequalities():
    rng = np.random.default_rng(7)
    for x in [(3, 1, 0.5), (1, 1, 1), (10, 0.1)]:
        pair = saddle_point(x, 0.7)
        rep = check_saddle(x, 0.7, pair, samples=200, rng=rng)
        assert rep["left_violations"] == 0 and rep["right_violations"] == 0


def test_supdet_one_sided():
    rng = np.random.default_rng(11)
    for _ in range(30):
        n = int(rng.integers(2, 5))
        A = random_psd(n, rng, trace=float(rng.uniform(0.5, 3)))
        Z = random_psd(n, rng)
        eigs = np.linalg.eigvalsh(A)
        for t in (0.1, 1.0, 5.0):
            lhs, rhs = supdet_check(eigs, Z, A, t)
            assert lhs <= rhs * (1 + 1e-9) + 1e-12


def test_sup_prod_modes():
    assert sup_prod((3, 1), 1, 2, "raw") == pytest.approx(9.0)
    assert sup_prod((3, 1), 1, 1, "normalized") == pytest.approx(9.0)
