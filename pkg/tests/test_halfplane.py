import math

import numpy as np
import pytest

from hausdorff_bergman import (
    HalfPlanePoint,
    ParameterOutOfRange,
    Sector,
    check_sector_inequality,
    dilate,
    parse_function_spec,
    rational_power,
    sample_sector,
)
from hausdorff_bergman.halfplane import ModulusFunction, TestFunction, case_constant


def random_upper_halfplane(rng, n, r_lo=1e-2, r_hi=1e3):
    r = np.exp(rng.uniform(math.log(r_lo), math.log(r_hi), n))
    th = rng.uniform(1e-9, math.pi - 1e-9, n)
    return r * np.exp(1j * th)


# ---------------------------------------------------------------------------
# points and sectors
# ---------------------------------------------------------------------------


def test_halfplane_point():
    z = HalfPlanePoint(0.3, 1.2)
    assert complex(z) == 0.3 + 1.2j
    with pytest.raises(ValueError):
        HalfPlanePoint(0.0, 0.0)
    with pytest.raises(ValueError):
        HalfPlanePoint(1.0, -1.0)


def test_truncated_sector_membership():
    s = Sector(0.0, math.pi / 2.0, lo_open=True, truncated=True)
    assert s.contains(1j)          # arg pi/2, |z| = 1
    assert not s.contains(0.5j)    #

    a = Sector(math.pi / 4.0, math.pi / 2.0)
    assert a.contains(1.0 + 1.0j)  # arg = pi/4 included
    assert not a.contains(2.0 + 0.1j)


def test_sector_open_flags():
    s = Sector(math.pi / 4.0, math.pi / 2.0, lo_open=True, hi_open=True)
    assert not s.contains(1.0 + 1.0j)
    assert not s.contains(1j)
    assert s.contains(0.5 + 1.0j)


def test_sector_validation():
    with pytest.raises(ValueError):
        Sector(1.0, 0.5)


# ---------------------------------------------------------------------------
# test-function family
# ---------------------------------------------------------------------------


def test_small_eps_limit_at_i():
    tf = TestFunction(2.0, 1e-9)
    assert abs(tf(1j) - (-1j)) < 1e-7


def test_direct_value_at_i():
    tf = TestFunction(2.0, 1.0)
    np.testing.assert_allclose(tf(1j), -0.25, atol=1e-15)


def test_phase_at_i():
    tf = TestFunction(2.0, 1.0)
    ph = tf.phase(1j)
    np.testing.assert_allclose(ph, -1j, atol=1e-15)
    assert np.angle(ph) == pytest.approx(-math.pi / 2.0)


def test_modulus_matches_g_family():
    rng = np.random.default_rng(101)
    z = random_upper_halfplane(rng, 10_000)
    for p, eps in ((1.0, 0.3), (2.0, 0.7), (4.0, 0.1)):
        tf = TestFunction(p, eps)
        g = ModulusFunction(p * eps, eps, p)
        np.testing.assert_allclose(np.abs(tf(z)), g(z), atol=1e-12, rtol=1e-12)


def test_phase_identity():
    rng = np.random.default_rng(17)
    z = random_upper_halfplane(rng, 10_000)
    tf = TestFunction(2.0, 0.4)
    ph = tf.phase(z)
    lhs = tf(z)
    rhs = np.exp(tf.exponent * np.log(ph)) * np.abs(tf(z))
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)
    np.testing.assert_allclose(np.abs(ph), 1.0, atol=1e-14)


def test_phase_argument_range():
    rng = np.random.default_rng(23)
    z = random_upper_halfplane(rng, 10_000)
    ang = np.angle(TestFunction(1.0, 0.2).phase(z))
    assert np.all(ang > -math.pi)
    assert np.all(ang < 0.0)


def test_parameter_validation():
    with pytest.raises(ValueError):
        TestFunction(0.5, 0.1)
    with pytest.raises(ValueError):
        TestFunction(2.0, 0.0)
    with pytest.raises(ValueError):
        ModulusFunction(0.0, 1.0, 2.0)


# ---------------------------------------------------------------------------
# modulus family and its norm bounds
# ---------------------------------------------------------------------------


def test_modulus_values():
    g = ModulusFunction(1.0, 1.0, 1.0)
    np.testing.assert_allclose(g(1j), 0.125, atol=1e-15)  # |2i|^-3
    g = ModulusFunction(2.0, 1.0, 2.0)
    np.testing.assert_allclose(g(1.0 + 1.0j), 0.2, atol=1e-15)  # |1+2i|^-2


def test_modulus_decreases_along_rays():
    g = ModulusFunction(1.5, 0.7, 2.0)
    for theta in (0.3, 1.2, 2.8):
        r = np.linspace(0.1, 50.0, 200)
        vals = g(r * np.exp(1j * theta))
        assert np.all(np.diff(vals) < 0.0)


def test_norm_bounds_values():
    np.testing.assert_allclose(
        ModulusFunction(1.0, 1.0, 2.0).norm_bounds(), (0.125, 2.0**1.5)
    )
    np.testing.assert_allclose(
        ModulusFunction(2.0, 0.5, 1.0).norm_bounds(), (0.125, 8.0)
    )


def test_norm_bounds_delta_scaling():
    for lam in (0.5, 1.0, 2.0, 3.7):
        for delta in (0.25, 1.0, 3.0):
            lo1, up1 = ModulusFunction(lam, delta, 2.0).norm_bounds()
            lo2, up2 = ModulusFunction(lam, 2.0 * delta, 2.0).norm_bounds()
            assert lo1 < up1
            np.testing.assert_allclose(lo2, lo1 * 2.0**-lam, rtol=1e-14)
            np.testing.assert_allclose(up2, up1 * 2.0**-lam, rtol=1e-14)


# ---------------------------------------------------------------------------
# sector inequalities
# ---------------------------------------------------------------------------


def test_case_I_example():
    tf = TestFunction(4.0, 0.1)
    assert check_sector_inequality("I", tf, 1.0 + 1.0j)


def test_case_II_example():
    tf = TestFunction(2.0, 0.3)
    assert check_sector_inequality("II", tf, 1j)


def test_case_III_example():
    tf = TestFunction(1.0, 0.05)
    z = 2.0 * np.exp(1j * (math.pi / 2.0 + math.pi / 64.0))
    assert check_sector_inequality("III", tf, z, theta0=math.pi / 32.0)


@pytest.mark.parametrize(
    "case,p,eps,theta0",
    [
        ("I", 6.0, 0.05, None),
        ("I", 4.0, 0.3, None),
        ("II", 2.0, 0.4, None),
        ("II", 1.5, 0.1, None),
        ("III", 1.0, 0.05, math.pi / 32.0),
        ("III", 1.0, 0.2, math.pi / 20.0),
    ],
)
def test_sector_inequality_holds_on_samples(case, p, eps, theta0):
    tf = TestFunction(p, eps)
    if case == "I":
        sector = Sector(0.0, math.pi / 2.0, lo_open=True)
    elif case == "II":
        sector = Sector(math.pi / 4.0, math.pi / 2.0)
    else:
        sector = Sector(math.pi / 2.0, math.pi / 2.0 + theta0)
    rng = np.random.default_rng(5)
    z = sample_sector(sector, 10_000, rng)
    ok = check_sector_inequality(case, tf, z, theta0=theta0)
    assert int(np.sum(~ok)) == 0


def test_case_constant_range():
    c = case_constant(2.0, 0.4)
    assert 0.0 < c <= math.sqrt(2.0) / 2.0


def test_hypothesis_enforcement():
    with pytest.raises(ParameterOutOfRange):
        check_sector_inequality("I", TestFunction(2.0, 0.1), 1.0 + 1.0j)
    with pytest.raises(ParameterOutOfRange):
        check_sector_inequality("II", TestFunction(4.0, 0.1), 1.0 + 1.0j)
    with pytest.raises(ParameterOutOfRange):
        check_sector_inequality("III", TestFunction(1.0, 0.05), 1j,
                                theta0=math.pi / 4.0)
    with pytest.raises(ParameterOutOfRange):
        check_sector_inequality("IV", TestFunction(2.0, 0.1), 1j)


def test_sample_sector_respects_bounds():
    sector = Sector(math.pi / 4.0, math.pi / 2.0, truncated=True)
    rng = np.random.default_rng(9)
    n = 2000
    z = sample_sector(sector, n, rng)
    # random bulk lies strictly inside; boundary rays may land one ulp off
    # the closed angular endpoints, so check those by angle distance
    assert np.all(sector.contains(z[:n]))
    ang = np.angle(z[n:])
    dist = np.minimum(np.abs(ang - sector.arg_lo), np.abs(ang - sector.arg_hi))
    assert np.all(dist < 1e-12)
    assert np.all(np.abs(z) >= 1.0)


# ---------------------------------------------------------------------------
# function specs and helpers
# ---------------------------------------------------------------------------


def test_parse_function_specs():
    f = parse_function_spec("test:p=2,eps=0.1")
    tf = TestFunction(2.0, 0.1)
    z = 0.7 + 1.3j
    np.testing.assert_allclose(f(z), tf(z), rtol=1e-15)

    g = parse_function_spec("gmod:lambda=1,delta=1,p=2")
    np.testing.assert_allclose(g(1j), ModulusFunction(1.0, 1.0, 2.0)(1j))

    r = parse_function_spec("ratpow:shift=1,exp=2")
    np.testing.assert_allclose(r(1j), -0.25, atol=1e-15)
    assert r.decay_hint == (2.0, 1.0)


def test_parse_function_spec_errors():
    for bad in ("nope:p=2", "test:p=2", "test:p=2,eps=0.1,extra=1", "test:p=x,eps=0.1"):
        with pytest.raises(ValueError):
            parse_function_spec(bad)


def test_dilate_decay_hint():
    f = rational_power(0.5, 2.0)
    g = dilate(f, 4.0)
    assert g.decay_hint == (2.0, 2.0)
    np.testing.assert_allclose(g(4.0j), f(1.0j), rtol=1e-15)


def test_function_arithmetic():
    f = rational_power(1.0, 2.0)
    g = rational_power(2.0, 3.0)
    h = f + 2.0 * g
    z = 0.4 + 0.9j
    np.testing.assert_allclose(h(z), f(z) + 2.0 * g(z), rtol=1e-15)
    assert h.decay_hint == (2.0, 1.0)
    np.testing.assert_allclose((f - f)(z), 0.0, atol=1e-18)
