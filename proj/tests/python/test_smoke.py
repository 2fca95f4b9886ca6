import math

import numpy as np
import pytest

import needlets as nd


def test_scales_and_windows():
    scales = nd.ScaleSequence.geometric(2.0, 6)
    assert scales.values() == [1, 2, 4, 8, 16, 32, 64]
    assert scales.support_interval(2) == (2.0, 8.0)

    w = nd.WindowFamily(scales)
    assert w.count == 6
    assert w.value(3, 8.0) == pytest.approx(1.0, abs=1e-15)
    grid = list(np.linspace(1.0, 32.0, 400))
    assert w.partition_deviation(grid) < 1e-10

    with pytest.raises(ValueError):
        nd.ScaleSequence.geometric(0.9, 4)
    with pytest.raises(ValueError):
        nd.ScaleSequence.custom([1.0, 4.0, 6.0])


def test_harmonics_and_kernels():
    d2 = nd.SphereDim(2)
    assert d2.omega == pytest.approx(4 * math.pi)
    assert nd.gegenbauer(2, 0.5, 0.5) == pytest.approx(-0.125)
    assert nd.eigenspace_dimension(4, d2) == 9
    assert nd.zonal(3, d2, 1.0) == pytest.approx(7 / (4 * math.pi))

    w = nd.WindowFamily(nd.ScaleSequence.geometric(2.0, 6))
    spec = nd.PowerSpectrum.power_law(3.0)
    assert spec(2) == pytest.approx(0.125)
    assert nd.needlet_correlation(w, d2, spec, 3, 0.0) == pytest.approx(1.0)
    # correlation magnitude at a fixed angle decays across bands
    c3 = abs(nd.needlet_correlation(w, d2, spec, 3, 0.4))
    c5 = abs(nd.needlet_correlation(w, d2, spec, 5, 0.4))
    assert c5 < c3

    osc = nd.PowerSpectrum.oscillatory(3.0, [(1.0, 2.0, 1.0, 0.5)])
    assert osc(4) == pytest.approx((2 + math.sin(2.0)) / 64.0)
    assert osc.beta_effective == 0.5


def test_transform_round_trip():
    w = nd.WindowFamily(nd.ScaleSequence.geometric(2.0, 5))
    transform = nd.NeedletTransform(w)
    assert transform.coverage_l_max == 16
    rng = np.random.default_rng(7)
    alm = rng.standard_normal(nd.packed_size(16))
    assert transform.parseval_ratio(16, alm) == pytest.approx(1.0, abs=1e-9)
    bands = transform.analyze_all(16, alm)
    back = transform.synthesize(bands, 16)
    np.testing.assert_allclose(back, alm, atol=1e-9)


def test_sampling_is_deterministic():
    spec = nd.PowerSpectrum.power_law(3.0)
    a = nd.sample_harmonics(spec, 8, seed=42, replication=0)
    b = nd.sample_harmonics(spec, 8, seed=42, replication=0)
    np.testing.assert_array_equal(a, b)
    c = nd.sample_harmonics(spec, 8, seed=42, replication=1)
    assert not np.array_equal(a, c)

    pts = np.array([[0.0, 0.0, 1.0], [1.0, 0.0, 0.0]])
    vals = nd.synthesize_field(8, a, pts)
    assert vals.shape == (2,)
    assert np.all(np.isfinite(vals))


def test_gof_statistic_and_run():
    beta = np.full(8, 2.0)
    expected = np.full(8, 4.0)
    expected[0] = 2.0
    assert nd.gof_statistic(beta, expected) == pytest.approx(0.25)

    w = nd.WindowFamily(nd.ScaleSequence.geometric(2.0, 5))
    spec = nd.PowerSpectrum.power_law(3.0)
    result = nd.run_gof(w, spec, spec, j=3, n_reps=300, seed=5)
    assert result["card"] >= 2
    assert result["statistics"].shape == (300,)
    assert abs(result["mean"]) < 0.5
    assert 0.5 < result["variance"] < 1.6


def test_cubature_and_subsample():
    grid = nd.CubatureGrid.build(8)
    assert grid.weights().sum() == pytest.approx(4 * math.pi, abs=1e-10)
    pts = grid.points()
    np.testing.assert_allclose((pts**2).sum(axis=1), 1.0, atol=1e-14)

    scales = nd.ScaleSequence.geometric(2.0, 6)
    idx = nd.select_subsample(grid, scales, 2, delta=1.0, epsilon=0.1)
    assert len(idx) >= 2
    x = np.array([0.0, 0.0, 1.0])
    assert nd.geodesic_distance(x, -x) == pytest.approx(math.pi, abs=1e-14)
