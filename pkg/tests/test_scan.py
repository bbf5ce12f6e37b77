from fractions import Fraction

import numpy as np
import pytest

from majorder.core import DomainError, majorizes
from majorder.relations import prec_F, prec_L
from majorder.scan import (
    GENERATORS,
    ScanConfig,
    collect,
    evaluate,
    exit_code,
    make_pair,
    psi_grid_gap,
)
from majorder.core import DEFAULT_TOL


def test_config_validation():
    with pytest.raises(DomainError):
        ScanConfig("nope")
    with pytest.raises(DomainError):
        ScanConfig("L_not_w", n=2, n_min=3)


@pytest.mark.parametrize("kind", GENERATORS + ("shift",))
def test_generators_are_valid(kind):
    rng = np.random.default_rng(0)
    for _ in range(50):
        x, y = make_pair(rng, 3, kind)
        assert len(x) == len(y) == 3
        assert all(isinstance(v, Fraction) and v >= 0 for v in x + y)
        if kind in ("comp", "robin", "shift"):
            assert sum(x) == sum(y)
        if kind == "robin":
            assert majorizes(x, y)


def test_prefilter_never_drops_a_holding_pair():
    rng = np.random.default_rng(1)
    for _ in range(500):
        x, y = make_pair(rng, int(rng.integers(1, 5)), GENERATORS[int(rng.integers(5))])
        if prec_L(x, y):
            assert psi_grid_gap(x, y) <= 1e-9


def test_example_pair_is_a_finding():
    rec = evaluate("L_not_w", (15, 2, 2), (9, 9, 1), 6, DEFAULT_TOL)
    assert rec is not None and rec["second"]["witness"] == 3
    rec = evaluate("F_not_maj", (15, 2, 2), (9, 9, 1), 8, DEFAULT_TOL)
    assert rec is not None
    assert evaluate("L_not_F", (15, 2, 2), (9, 9, 1), 8, DEFAULT_TOL) is None


def test_scan_rediscovers_separations():
    f, s = collect(ScanConfig("L_not_w", n=3, samples=1000))
    assert s["findings"] > 0
    for rec in f[:20]:
        assert prec_L(rec["x"], rec["y"]) and not majorizes(rec["x"], rec["y"])
    f, s = collect(ScanConfig("F_not_maj", n=3, samples=3000))
    assert s["findings"] > 0
    for rec in f:
        assert sum(rec["x"]) == sum(rec["y"])
        assert prec_F(rec["x"], rec["y"], 6) and not majorizes(rec["x"], rec["y"])


def test_exit_code_only_for_refutations():
    cfg = ScanConfig("L_not_w", n=3, samples=10)
    assert exit_code(cfg, {"findings": 5}) == 0
    cfg = ScanConfig("L_not_F", n=3, samples=10)
    assert exit_code(cfg, {"findings": 1}) == 1
    assert exit_code(cfg, {"findings": 0}) == 0


def test_deterministic_across_workers():
    a = collect(ScanConfig("L_not_w", n=4, n_min=2, samples=600, workers=1))
    b = collect(ScanConfig("L_not_w", n=4, n_min=2, samples=600, workers=3))
    assert a == b
