import math

import numpy as np
import pytest
from scipy.integrate import quad

from almostnorlund import signals
from almostnorlund.errors import InsufficientDataError, ParameterError
from almostnorlund.fourier import PrincipalValueSpec
from almostnorlund.lipnorms import INF, LipClassSpec
from almostnorlund.means import MethodSpec, classic_method
from almostnorlund.verify import (
    CSV_COLUMNS,
    CondIntegralSpec,
    condition_integrals,
    corollary_suite,
    fit_slope,
    rate_experiment,
    reference_conjugate,
    summary_json,
)
from almostnorlund.weights import WeightSequence

W = WeightSequence
NS = (16, 32, 64, 128, 256)
WEI = signals.weierstrass(0.9, 12)
L2 = LipClassSpec(0.9, 2.0)


# condition integrals ------------------------------------------------------------------


def test_cond_spec_conjugate_exponent():
    assert CondIntegralSpec(0.5, 2.0).s == 2.0
    assert CondIntegralSpec(0.5, 1.0).s == INF
    assert CondIntegralSpec(0.5, INF).s == 1.0
    assert CondIntegralSpec(0.5, 4.0).s == pytest.approx(4 / 3)
    with pytest.raises(ParameterError):
        CondIntegralSpec(0.5, 2.0, delta=math.inf)


def test_condition_integrals_constant_zero():
    for spec in (CondIntegralSpec(0.9, 2.0), CondIntegralSpec(0.3, INF, x=0.4)):
        assert condition_integrals(signals.constant(-1.0), spec, 16) == (0.0, 0.0)


def test_inner_integral_decreases():
    spec = CondIntegralSpec(0.9, 2.0, delta=0.25)
    vals = [condition_integrals(WEI, spec, R) for R in (8, 32, 128)]
    inner = [v[0] for v in vals]
    assert inner[0] > inner[1] > inner[2]
    assert all(v[1] > 0 for v in vals)


def test_inner_integral_cos_closed_form():
    # psi = -2 sin x sin t, r = 1, alpha = 0.5: int_0^a 2|sin x| sin t t^-0.5 dt
    spec = CondIntegralSpec(0.5, 1.0, x=1.0)
    R = 4.0
    a = math.pi / R
    ref, _ = quad(lambda t: 2 * math.sin(1.0) * math.sin(t) / math.sqrt(t), 0, a,
                  epsabs=1e-14, epsrel=1e-13)
    assert condition_integrals(signals.cosk(1), spec, R)[0] == pytest.approx(ref, rel=1e-10)


def test_sup_variant():
    spec = CondIntegralSpec(0.5, INF, x=math.pi / 2)
    inner, outer = condition_integrals(signals.cosk(1), spec, 2.0)
    assert inner == pytest.approx(2 * math.sin(math.pi / 2), rel=1e-6)
    assert outer == pytest.approx(2.0, rel=1e-6)


def test_condition_integrals_validation():
    with pytest.raises(ParameterError):
        condition_integrals(WEI, CondIntegralSpec(0.9, 2.0), 0.0)
    with pytest.raises(ParameterError):
        condition_integrals(WEI, CondIntegralSpec(0.9, 2.0), 1.0)


# slope fitting -------------------------------------------------------------------------


def test_fit_slope_exact_power():
    R = np.array([2.0, 4.0, 8.0, 16.0])
    assert fit_slope(R, 3 * R ** -0.7) == pytest.approx(-0.7, abs=1e-12)


def test_fit_slope_insufficient():
    with pytest.raises(InsufficientDataError):
        fit_slope([1.0, 1.0, 2.0], [1.0, 0.5, 0.2])
    with pytest.raises(InsufficientDataError):
        fit_slope([1.0, 2.0, 3.0, 4.0], [1.0, 0.5, 1e-15, 1e-16])


# rate experiments -----------------------------------------------------------------------


def test_rate_l2_passes():
    rep = rate_experiment(WEI, classic_method("cesaro", 1), L2, NS)
    assert rep.passed and not rep.degenerate
    assert rep.theoretical_slope == pytest.approx(-0.4)
    assert rep.fitted_slope <= -0.4 + 0.15
    assert all(a > b for a, b in zip(rep.errors, rep.errors[1:]))
    assert rep.R_values == tuple(float(n + 1) for n in NS)


def test_rate_constant_degenerate():
    rep = rate_experiment(signals.constant(1.0), classic_method("harmonic"), L2, NS)
    assert rep.degenerate and rep.passed and rep.fitted_slope is None
    assert rep.summary_line() == "none,-0.4,true"


def test_zero_tolerance_can_fail():
    # ordinary (C,2) decays like R_n^-0.4 here; the one-sided rule with no slack fails it
    rep = rate_experiment(WEI, classic_method("cesaro", 2, mode="ordinary"),
                          LipClassSpec(0.9, INF), NS, slope_tolerance=0.0)
    assert not rep.passed


def test_normalizer_choice_and_errors():
    rep = rate_experiment(WEI, MethodSpec(W.harmonic(), W.ones()), L2, NS, normalizer="P")
    assert rep.normalizer_values == rep.P_values
    H = [math.fsum(1 / (k + 1) for k in range(n + 1)) for n in NS]
    assert rep.P_values == tuple(H)
    with pytest.raises(ParameterError):
        rate_experiment(WEI, classic_method("cesaro", 1), L2, NS, normalizer="X")
    with pytest.raises(ParameterError):
        rate_experiment(WEI, classic_method("cesaro", 1), L2, (32, 16, 64))
    with pytest.raises(InsufficientDataError):
        rate_experiment(WEI, classic_method("riesz", "1, 0"), L2, (4, 8, 16))


def test_rate_without_exact_data_uses_quadrature():
    f = signals.cosk(3) + signals.weierstrass(0.9, 5)
    g = type(f)(f.evaluator, "opaque", 0.9)
    pv = PrincipalValueSpec(levels=3)
    a = rate_experiment(g, classic_method("cesaro", 1), L2, (8, 16, 32), x_grid=512, pv=pv)
    b = rate_experiment(f, classic_method("cesaro", 1), L2, (8, 16, 32), x_grid=512)
    assert np.allclose(a.errors, b.errors, rtol=1e-6)


def test_reference_conjugate():
    ref = reference_conjugate(signals.cosk(2))
    assert np.allclose(ref(np.array([0.3])), np.sin(0.6))
    g = type(WEI)(np.cos, "opaque")
    assert np.allclose(reference_conjugate(g)(np.array([[0.3, 1.0]])), np.sin([[0.3, 1.0]]),
                       atol=1e-8)


def test_csv_schema():
    rep = rate_experiment(WEI, classic_method("cesaro", 1), L2, NS)
    lines = rep.to_csv().split("\n")
    assert lines[0] == ",".join(CSV_COLUMNS) and lines[-1] == ""
    first = lines[1].split(",")
    assert first[0] == "16" and float(first[1]) == 17.0
    assert float(first[5]) == pytest.approx(math.log(float(first[4])))
    assert "\r" not in rep.to_csv()


def test_corollary_suite_presets():
    reps = corollary_suite(WEI, L2, NS, p=W.harmonic())
    assert [r.label for r in reps] == ["sup_norm", "riesz_q1", "norlund_p1"]
    assert reps[0].norm_r == INF and reps[0].theoretical_slope == pytest.approx(-0.9)
    assert reps[1].normalizer == "P" and reps[1].P_values == reps[1].R_values
    assert reps[2].normalizer == "Q" and reps[2].Q_values == reps[2].R_values
    text = summary_json([r.summary() for r in reps])
    assert text.endswith("\n") and '"label": "riesz_q1"' in text
