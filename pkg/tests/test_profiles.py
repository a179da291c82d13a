import numpy as np
import pytest

import sympwave as sw
from sympwave.errors import DivergenceError, UnsupportedOrderError, UsageError


def test_exponential_second_derivative_at_zero():
    p = sw.Profile("exponential", 1.0)
    assert p.eval(2, 0.0) == pytest.approx(1.0)


def test_rational_value():
    p = sw.Profile("rational", 4.0)
    assert p.eval(0, 1.0) == pytest.approx(0.25)


def test_bump_plateau_and_tail():
    p = sw.Profile("bump", 2.0)
    assert p.eval(0, 1.0) == 1.0
    assert p.eval(0, 0.0) == 1.0
    assert p.eval(0, 5.0) == 0.0
    for k in range(1, 7):
        assert p.eval(k, 1.0) == 0.0
        assert p.eval(k, 4.5) == 0.0
    assert 0.0 < p.eval(0, 3.0) < 1.0


@pytest.mark.parametrize("family,param", [("exponential", 1.3), ("rational", 6.0), ("bump", 1.5)])
def test_derivative_finite_difference_consistency(family, param):
    p = sw.Profile(family, param)
    rs = np.linspace(0.1, 5.0, 23)
    h = 1e-5
    for k in range(5):
        fd = (p.eval(k, rs + h) - p.eval(k, rs - h)) / (2 * h)
        exact = p.eval(k + 1, rs)
        scale = np.max(np.abs(exact)) + 1.0
        assert np.max(np.abs(fd - exact)) <= 1e-6 * scale, (family, k)


def test_order_cap():
    p = sw.Profile("exponential", 1.0)
    with pytest.raises(UnsupportedOrderError):
        p.eval(13, 1.0)
    with pytest.raises(UnsupportedOrderError):
        p.constant_C(13, 0.0)


def test_constant_exponential_exact():
    p = sw.Profile("exponential", 1.0)
    assert p.constant_C(0, 0.0) == pytest.approx(1.0, rel=1e-9)
    # antiderivative oracle: int e^{-r}(r+1) dr = 2
    assert p.constant_C(0, 1.0) == pytest.approx(2.0, rel=1e-9)


def test_constant_rational_divergence():
    p = sw.Profile("rational", 2.0)
    with pytest.raises(DivergenceError, match="k=0"):
        p.constant_C(0, 2.0)


def test_constant_rational_finite_case():
    p = sw.Profile("rational", 6.0)
    # integrand (1+r^2)^{-3} (r+1): halves into arctan/rational pieces; check
    # against a dense trapezoid evaluation
    val = p.constant_C(0, 1.0)
    r = np.linspace(0, 400, 4_000_001)
    from scipy.integrate import trapezoid
    ref = trapezoid((1 + r**2) ** -3.0 * (r + 1), r)
    assert val == pytest.approx(ref, rel=1e-7)


def test_constant_bump_matches_plateau_piece():
    p = sw.Profile("bump", 2.0)
    val = p.constant_C(0, 0.0)
    # psi integrates to at least the plateau length and at most the support
    assert 2.0 < val < 4.0


def test_truncation_radius():
    p = sw.Profile("exponential", 2.0)
    r = p.truncation_radius(1e-14)
    assert p.eval(0, r) == pytest.approx(1e-14, rel=1e-6)
    assert sw.Profile("bump", 2.0).truncation_radius(1e-14) == 4.0


def test_parse_profile():
    p = sw.parse_profile("exp:1.5")
    assert p.family == "exponential" and p.param == 1.5
    assert sw.parse_profile("rational:6.0").family == "rational"
    assert sw.parse_profile("bump:2.0").param == 2.0
    with pytest.raises(UsageError):
        sw.parse_profile("weird:1")
    with pytest.raises(UsageError):
        sw.parse_profile("exp")


def test_invalid_parameters():
    with pytest.raises(UsageError):
        sw.Profile("exponential", 0.0)
    with pytest.raises(UsageError):
        sw.Profile("nope", 1.0)


def test_smooth_cutoff_shape():
    c = sw.SmoothCutoff(1.0, 2.0)
    assert c.value(0.5) == 1.0
    assert c.value(2.5) == 0.0
    mid = c.value(1.5)
    assert 0.0 < mid < 1.0
    # derivative consistency in the transition
    xs = np.linspace(1.05, 1.95, 19)
    h = 1e-6
    for k in range(4):
        fd = (c.eval(k, xs + h) - c.eval(k, xs - h)) / (2 * h)
        exact = c.eval(k + 1, xs)
        assert np.max(np.abs(fd - exact)) <= 1e-5 * (np.max(np.abs(exact)) + 1.0)
