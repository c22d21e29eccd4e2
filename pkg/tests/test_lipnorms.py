import math

import numpy as np
import pytest

from almostnorlund import signals
from almostnorlund.errors import ParameterError
from almostnorlund.lipnorms import (
    INF,
    LipClassSpec,
    default_t_samples,
    grid,
    lip_membership_estimate,
    modulus,
    norm,
    partial_sum_error,
)


def test_grid_half_shifted():
    x = grid(8)
    assert x[0] == pytest.approx(math.pi / 8) and x[-1] < 2 * math.pi and len(x) == 8


def test_norm_constant():
    assert norm(lambda x: np.full(x.shape, -3.0), 2) == pytest.approx(3 * math.sqrt(2 * math.pi),
                                                                       rel=1e-14)


def test_norm_sin():
    assert norm(np.sin, 2) == pytest.approx(math.sqrt(math.pi), abs=1e-8)
    assert norm(np.sin, INF) == pytest.approx(1.0, abs=1e-8)
    assert norm(np.sin, 1) == pytest.approx(4.0, abs=1e-6)


def test_norm_zero_and_validation():
    assert norm(lambda x: np.zeros(x.shape), 3) == 0.0
    with pytest.raises(ParameterError):
        norm(np.sin, 0.5)
    with pytest.raises(ParameterError):
        norm(np.sin, 2, grid_points=10)


def test_norm_monotone_in_r():
    # ||g||_r (2pi)^(-1/r) is nondecreasing in r
    g = signals.weierstrass(0.5, 6)
    vals = [norm(g, r) * (2 * math.pi) ** (-1 / r) for r in (1, 2, 4, 8)]
    assert all(a <= b + 1e-12 for a, b in zip(vals, vals[1:]))
    assert vals[-1] <= norm(g, INF) + 1e-12


def test_spec_exponents():
    s = LipClassSpec(0.9, 2.0)
    assert s.conjugate_exponent == 2.0 and s.rate_exponent == pytest.approx(-0.4)
    assert LipClassSpec(0.5).rate_exponent == -0.5
    assert LipClassSpec(0.5, 1.0).conjugate_exponent == INF
    assert LipClassSpec(0.5, INF).conjugate_exponent == 1.0
    for bad in [(0.0, 2.0), (1.2, 2.0), (0.5, 0.9)]:
        with pytest.raises(ParameterError):
            LipClassSpec(*bad)


def test_modulus_sin():
    t = 0.01
    assert modulus(np.sin, t, INF) == pytest.approx(2 * math.sin(t / 2), rel=1e-6)


def test_weierstrass_estimate():
    rep = lip_membership_estimate(signals.weierstrass(0.5, 12), LipClassSpec(0.5, INF))
    assert rep.alpha_hat == pytest.approx(0.5, abs=0.1)
    assert rep.passed


def test_sin_estimate():
    for r in (1.0, 2.0, INF):
        rep = lip_membership_estimate(signals.sink(1), LipClassSpec(1.0, r))
        assert rep.alpha_hat >= 0.9 and rep.passed


def test_constant_degenerate():
    rep = lip_membership_estimate(signals.constant(2.0), LipClassSpec(0.7))
    assert rep.degenerate and rep.passed and rep.alpha_hat is None
    assert rep.summary() == {"alpha_hat": None, "C_hat": None, "pass": True}


def test_too_smooth_class_rejected():
    rep = lip_membership_estimate(signals.weierstrass(0.3, 12), LipClassSpec(0.9, INF))
    assert not rep.passed


def test_sup_pass_implies_finite_pass():
    for text in ("weierstrass(0.5, 12)", "weierstrass(0.9, 12)", "cosk(2)"):
        f = signals.from_spec(text)
        alpha = f.known_alpha
        if lip_membership_estimate(f, LipClassSpec(alpha, INF)).passed:
            for r in (1.0, 2.0, 4.0):
                assert lip_membership_estimate(f, LipClassSpec(alpha, r)).passed


def test_t_samples_validation():
    assert len(default_t_samples()) == 11
    with pytest.raises(ParameterError):
        lip_membership_estimate(signals.sink(1), LipClassSpec(1.0), t_samples=[0.1, 0.2])
    with pytest.raises(ParameterError):
        lip_membership_estimate(signals.sink(1), LipClassSpec(1.0), t_samples=[-1.0, 0.001])


def test_partial_sum_error():
    assert partial_sum_error(signals.cosk(3), 3, 2) < 1e-12
    assert partial_sum_error(signals.cosk(3), 2, 2) == pytest.approx(math.sqrt(math.pi), 1e-8)
    f = signals.sawtooth()
    assert partial_sum_error(f, 32, 2) < partial_sum_error(f, 8, 2)
