import json
import math

import numpy as np
import pytest

from hausdorff_bergman import (
    Atom,
    Boundedness,
    DensitySegment,
    Measure,
    MissingExponentMetadata,
    QuadratureConfig,
    classify_boundedness,
    dump_measure,
    load_measure,
    measure_from_json,
    measure_to_json,
    moment,
    pushforward_inverse,
    restrict,
    theoretical_norm,
    truncate,
)

CFG = QuadratureConfig()


def uniform_12() -> Measure:
    return Measure(segments=(DensitySegment.from_spec(1.0, 2.0, ("const", (1.0,))),))


def exp_tail() -> Measure:
    seg = DensitySegment.from_spec(
        0.0, math.inf, ("exp", (1.0, 1.0)), exp_lo=0.0, exp_hi=-math.inf
    )
    return Measure(segments=(seg,))


# ---------------------------------------------------------------------------
# construction and validation
# ---------------------------------------------------------------------------


def test_atom_validation():
    with pytest.raises(ValueError):
        Atom(0.0, 1.0)
    with pytest.raises(ValueError):
        Atom(-1.0, 1.0)
    with pytest.raises(ValueError):
        Atom(1.0, -0.5)
    Atom(1.0, 0.0)  # zero weight is fine


def test_segment_validation():
    with pytest.raises(ValueError):
        DensitySegment.from_spec(2.0, 1.0, ("const", (1.0,)))
    with pytest.raises(ValueError):
        DensitySegment.from_spec(-0.5, 1.0, ("const", (1.0,)))


def test_distinct_atom_locations():
    with pytest.raises(ValueError):
        Measure(atoms=(Atom(1.0, 1.0), Atom(1.0, 2.0)))


def test_sigma_finiteness_check():
    mu = exp_tail()
    assert mu.check_finite_on_compacts() < 1.0


# ---------------------------------------------------------------------------
# moment
# ---------------------------------------------------------------------------


def test_moment_single_atom_any_alpha():
    mu = Measure.from_atoms((1.0, 1.0))
    for alpha in (-3.0, -1.0, 0.0, 0.5, 4.0):
        assert moment(mu, alpha).value == 1.0


def test_moment_uniform_segment():
    res = moment(uniform_12(), 0.0, CFG)
    np.testing.assert_allclose(res.value, 1.0, rtol=1e-12)


def test_moment_divergence_flag():
    seg = DensitySegment.from_spec(0.0, 1.0, ("const", (1.0,)), exp_lo=0.0)
    res = moment(Measure(segments=(seg,)), -1.0, CFG)
    assert res.diverged
    assert math.isinf(res.value)


def test_moment_exponential_density():
    # oracle: Gamma(2) = 1
    res = moment(exp_tail(), 1.0, CFG)
    np.testing.assert_allclose(res.value, 1.0, rtol=1e-8)


def test_moment_power_density_near_minus_two():
    # separate evaluation of t^alpha * (c*t^a) overflows in denormal range;
    # the fused power must hit the antiderivative oracle c*b^(2+a)/(2+a)
    c, a, b = 1.2524071996318948, -1.7182488627084722, 1.5487436993152013
    seg = DensitySegment.from_spec(0.0, b, ("power", (c, a)), exp_lo=a)
    res = moment(Measure(segments=(seg,)), 1.0, CFG)
    oracle = c * b ** (2.0 + a) / (2.0 + a)
    np.testing.assert_allclose(res.value, oracle, rtol=1e-10)


def test_closure_integrand_with_overflowing_factors():
    # the factored form c*t^a overflows for tiny t, but the sweep stops on
    # negligible blocks before ever sampling that region; a converged result
    # must be finite and match the antiderivative oracle
    from hausdorff_bergman import integrate_segment

    c, a = 1.25, -1.72
    res = integrate_segment(lambda t: t * (c * t**a), 0.0, 1.5, CFG)
    assert not (res.converged and not math.isfinite(res.value))
    if res.converged:
        np.testing.assert_allclose(res.value, c * 1.5 ** (2.0 + a) / (2.0 + a),
                                   rtol=1e-7)


def test_moment_missing_metadata_raises():
    seg = DensitySegment(0.0, 1.0, lambda t: np.ones_like(t))
    with pytest.raises(MissingExponentMetadata):
        moment(Measure(segments=(seg,)), 0.0, CFG)
    seg = DensitySegment(1.0, math.inf, lambda t: np.exp(-t))
    with pytest.raises(MissingExponentMetadata):
        moment(Measure(segments=(seg,)), 0.0, CFG)


def test_moment_linearity():
    mu1 = Measure.from_atoms((0.5, 2.0))
    mu2 = uniform_12()
    combined = Measure(atoms=mu1.atoms, segments=mu2.segments)
    alpha = 0.7
    total = moment(combined, alpha, CFG).value
    np.testing.assert_allclose(
        total, moment(mu1, alpha, CFG).value + moment(mu2, alpha, CFG).value,
        rtol=1e-10,
    )


# ---------------------------------------------------------------------------
# theoretical_norm
# ---------------------------------------------------------------------------


def test_norm_p2_is_total_mass():
    mu = Measure(atoms=(Atom(0.3, 1.5), Atom(7.0, 0.25)),
                 segments=uniform_12().segments)
    res = theoretical_norm(mu, 2.0, CFG)
    np.testing.assert_allclose(res.value, 1.5 + 0.25 + 1.0, rtol=1e-10)


def test_norm_p4_atom():
    res = theoretical_norm(Measure.from_atoms((4.0, 1.0)), 4.0)
    np.testing.assert_allclose(res.value, 0.5, rtol=1e-14)


def test_norm_p1_atom():
    res = theoretical_norm(Measure.from_atoms((3.0, 0.7)), 1.0)
    np.testing.assert_allclose(res.value, 0.7 * 3.0, rtol=1e-14)


def test_norm_requires_valid_p():
    with pytest.raises(ValueError):
        theoretical_norm(uniform_12(), 0.5)


# ---------------------------------------------------------------------------
# truncate / restrict
# ---------------------------------------------------------------------------


def test_truncate_drops_outside_atoms():
    mu = truncate(Measure.from_atoms((3.0, 1.0)), 0.5)
    assert mu.is_zero


def test_truncate_keeps_boundary_atom():
    mu = truncate(Measure.from_atoms((0.5, 1.0)), 0.5)
    assert len(mu.atoms) == 1


def test_truncate_clips_segments():
    mu = truncate(exp_tail(), 0.25)
    seg = mu.segments[0]
    assert seg.lower == 0.25
    assert seg.upper == 4.0
    assert seg.exp_lo is None and seg.exp_hi is None


def test_truncate_moment_monotone():
    # clipped-interval length oracle for the uniform density on [1, 2]
    mu = uniform_12()
    m_09 = moment(truncate(mu, 0.9), 0.0, CFG).value
    m_04 = moment(truncate(mu, 0.4), 0.0, CFG).value
    np.testing.assert_allclose(m_09, 1.0 / 0.9 - 1.0, rtol=1e-10)  # 0.111...
    np.testing.assert_allclose(m_04, 1.0, rtol=1e-10)
    full = moment(mu, 0.0, CFG).value
    assert m_09 <= m_04 <= full + 1e-12


def test_truncate_validates_delta():
    with pytest.raises(ValueError):
        truncate(uniform_12(), 1.5)


def test_restrict_window():
    mu = restrict(uniform_12(), 1.25, 1.75)
    np.testing.assert_allclose(moment(mu, 0.0, CFG).value, 0.5, rtol=1e-10)


# ---------------------------------------------------------------------------
# push-forward under inversion
# ---------------------------------------------------------------------------


def test_pushforward_atom():
    nu = pushforward_inverse(Measure.from_atoms((2.0, 3.0)))
    assert nu.atoms[0].location == 0.5
    assert nu.atoms[0].weight == 3.0


def test_pushforward_segment_change_of_variables():
    # oracle: int_{1/2}^{1} t^-2 dt = 1
    nu = pushforward_inverse(uniform_12())
    seg = nu.segments[0]
    assert (seg.lower, seg.upper) == (0.5, 1.0)
    np.testing.assert_allclose(moment(nu, 0.0, CFG).value, 1.0, rtol=1e-10)


def test_pushforward_involution_moments():
    mu = Measure(atoms=(Atom(2.0, 0.5),), segments=uniform_12().segments)
    back = pushforward_inverse(pushforward_inverse(mu))
    for alpha in (-1.0, 0.0, 1.0):
        np.testing.assert_allclose(
            moment(back, alpha, CFG).value, moment(mu, alpha, CFG).value,
            rtol=1e-10,
        )


def test_pushforward_moment_identity():
    mu = Measure(atoms=(Atom(0.8, 1.2),), segments=exp_tail().segments)
    nu = pushforward_inverse(mu)
    for alpha in (-0.5, 0.0, 1.0):
        np.testing.assert_allclose(
            moment(nu, alpha, CFG).value, moment(mu, -alpha, CFG).value,
            rtol=1e-9,
        )


def test_pushforward_exponent_transform():
    seg = DensitySegment.from_spec(1.0, math.inf, ("power", (1.0, -3.0)),
                                   exp_hi=-3.0)
    nu = pushforward_inverse(Measure(segments=(seg,)))
    new = nu.segments[0]
    assert new.lower == 0.0 and new.upper == 1.0
    assert new.exp_lo == 1.0  # -(-3) - 2


# ---------------------------------------------------------------------------
# boundedness classification
# ---------------------------------------------------------------------------


def test_classify_bounded_at_zero():
    seg = DensitySegment.from_spec(0.0, 1.0, ("const", (1.0,)), exp_lo=0.0)
    assert classify_boundedness(Measure(segments=(seg,)), 2.0) is Boundedness.BOUNDED


def test_classify_unbounded_at_infinity():
    seg = DensitySegment.from_spec(1.0, math.inf, ("const", (1.0,)), exp_hi=0.0)
    assert classify_boundedness(Measure(segments=(seg,)), 2.0) is Boundedness.UNBOUNDED


def test_classify_negative_power_bounded_for_p1():
    seg = DensitySegment.from_spec(0.0, 1.0, ("power", (1.0, -1.5)), exp_lo=-1.5)
    mu = Measure(segments=(seg,))
    assert classify_boundedness(mu, 1.0) is Boundedness.BOUNDED
    # cross-check: the moment integral indeed converges numerically
    res = moment(mu, 2.0 / 1.0 - 1.0, CFG)
    np.testing.assert_allclose(res.value, 2.0, rtol=1e-8)  # int_0^1 t^-0.5 dt


def test_classify_borderline_is_unbounded():
    seg = DensitySegment.from_spec(0.0, 1.0, ("power", (1.0, -1.0)), exp_lo=-1.0)
    assert classify_boundedness(Measure(segments=(seg,)), 2.0) is Boundedness.UNBOUNDED


def test_classify_missing_metadata_inconclusive():
    seg = DensitySegment(0.0, 1.0, lambda t: np.ones_like(t))
    assert (
        classify_boundedness(Measure(segments=(seg,)), 2.0)
        is Boundedness.INCONCLUSIVE
    )


def test_bounded_implies_finite_moment():
    mu = exp_tail()
    for p in (1.0, 2.0, 4.0):
        if classify_boundedness(mu, p) is Boundedness.BOUNDED:
            assert theoretical_norm(mu, p, CFG).is_finite


def test_bounded_implies_finite_moment_random():
    from hausdorff_bergman.harness import _random_bounded_measure

    rng = np.random.default_rng(404)
    for _ in range(25):
        p = float(rng.choice([1.0, 1.5, 2.0, 4.0]))
        mu = _random_bounded_measure(rng, p)
        assert classify_boundedness(mu, p) is Boundedness.BOUNDED
        assert theoretical_norm(mu, p, CFG).is_finite


# ---------------------------------------------------------------------------
# JSON serialization
# ---------------------------------------------------------------------------


def test_json_roundtrip(tmp_path):
    seg_c = DensitySegment.from_spec(1.0, 2.0, ("const", (1.0,)))
    seg_p = DensitySegment.from_spec(0.0, 1.0, ("power", (2.0, -0.5)), exp_lo=-0.5)
    seg_e = DensitySegment.from_spec(
        0.5, math.inf, ("exp", (1.0, 2.0)), exp_hi=-math.inf
    )
    mu = Measure(atoms=(Atom(2.0, 3.0),), segments=(seg_c, seg_p, seg_e))
    path = tmp_path / "mu.json"
    dump_measure(mu, path)
    back = load_measure(path)
    assert back.atoms == mu.atoms
    for alpha in (-0.25, 0.0, 1.0):
        np.testing.assert_allclose(
            moment(back, alpha, CFG).value, moment(mu, alpha, CFG).value,
            rtol=1e-12,
        )
    doc = json.loads(path.read_text())
    assert doc["segments"][2]["hi"] == "inf"
    assert doc["segments"][2]["exp_hi"] == "-inf"
    assert "schema_version" in doc


def test_json_expr_density():
    doc = {
        "atoms": [],
        "segments": [
            {"lo": 1.0, "hi": 2.0,
             "density": {"kind": "expr", "params": ["t**2 * exp(-t)"]}}
        ],
    }
    mu = measure_from_json(doc)
    expected = float(
        moment(Measure(segments=(DensitySegment.from_spec(
            1.0, 2.0, ("expr", ("t**2 * exp(-t)",))),)), 0.0, CFG).value
    )
    np.testing.assert_allclose(moment(mu, 0.0, CFG).value, expected, rtol=1e-12)


def test_closure_density_not_serializable():
    seg = DensitySegment(1.0, 2.0, lambda t: np.ones_like(t))
    with pytest.raises(ValueError):
        measure_to_json(Measure(segments=(seg,)))


def test_pushforward_specs_survive_roundtrip(tmp_path):
    mu = Measure(segments=(
        DensitySegment.from_spec(1.0, 2.0, ("const", (1.0,))),
        DensitySegment.from_spec(0.5, 3.0, ("power", (1.0, 1.0))),
        DensitySegment.from_spec(0.5, math.inf, ("exp", (1.0, 1.0)),
                                 exp_hi=-math.inf),
    ))
    nu = pushforward_inverse(mu)
    path = tmp_path / "nu.json"
    dump_measure(nu, path)
    back = load_measure(path)
    np.testing.assert_allclose(
        moment(back, 0.5, CFG).value, moment(nu, 0.5, CFG).value, rtol=1e-10
    )
