import math

import numpy as np
import pytest

from nfcs import (
    ArrayConfig,
    analyze,
    build_dft,
    build_dmu,
    build_polar_baseline,
    coherence_limited_rings,
    dft_grid,
    export_dictionary,
    field_boundaries,
    load_dictionary_matrix,
    mutual_coherence,
    near_steering,
    sample_channel,
    synthesize_channel,
)


@pytest.fixture
def cfg():
    return ArrayConfig(carrier_freq=100e9, n_antennas=256)


def brute_force_coherence(matrix):
    """Independent double-loop oracle for the mutual coherence."""
    m = matrix.shape[1]
    best = 0.0
    for i in range(m):
        for j in range(i + 1, m):
            u, v = matrix[:, i], matrix[:, j]
            val = abs(np.vdot(u, v)) / (np.linalg.norm(u) * np.linalg.norm(v))
            best = max(best, val)
    return best


def test_dft_grid():
    grid = dft_grid(4)
    np.testing.assert_allclose(grid, [-3 / 4, -1 / 4, 1 / 4, 3 / 4])
    g256 = dft_grid(256)
    assert np.all(np.diff(g256) == pytest.approx(2 / 256))


def test_dmu_unitary(cfg):
    d = build_dmu(cfg, 20.0)
    gram = np.conj(d.matrix.T) @ d.matrix
    assert np.abs(gram - np.eye(256)).max() < 1e-10
    outer = d.matrix @ np.conj(d.matrix.T)
    assert np.abs(outer - np.eye(256)).max() < 1e-10


def test_dmu_constant_modulus(cfg):
    d = build_dmu(cfg, 7.5)
    np.testing.assert_allclose(np.abs(d.matrix), 1 / 16.0, atol=1e-14)


def test_dmu_infinite_mu_is_dft(cfg):
    via_inf = build_dmu(cfg, math.inf)
    dft = build_dft(cfg)
    np.testing.assert_array_equal(via_inf.matrix, dft.matrix)
    assert dft.kind == "dft"


def test_dmu_columns_are_steering_vectors(cfg):
    mu = 20.0
    d = build_dmu(cfg, mu)
    grid = dft_grid(256)
    for col in (0, 100, 255):
        theta = math.asin(grid[col])
        r = mu * math.cos(theta) ** 2
        expected = near_steering(cfg, theta, r, mode="taylor")
        np.testing.assert_allclose(d.matrix[:, col], expected, atol=1e-12)


def test_dictionary_requires_half_wavelength():
    cfg_bad = ArrayConfig(carrier_freq=100e9, n_antennas=16, spacing=0.002)
    with pytest.raises(ValueError):
        build_dmu(cfg_bad, 10.0)


def test_analyze_round_trip(cfg):
    d = build_dmu(cfg, 20.0)
    rng = np.random.default_rng(0)
    for _ in range(100):
        h = rng.standard_normal(256) + 1j * rng.standard_normal(256)
        rep = analyze(d, h)
        assert np.linalg.norm(rep.beta) == pytest.approx(np.linalg.norm(h), rel=1e-12)
        assert np.linalg.norm(rep.synthesize() - h) < 1e-10


def test_analyze_unit_coordinate(cfg):
    d = build_dmu(cfg, 20.0)
    k = 37
    rep = analyze(d, d.matrix[:, k])
    expected = np.zeros(256)
    expected[k] = 1.0
    np.testing.assert_allclose(rep.beta, expected, atol=1e-12)


def test_analyze_dimension_mismatch(cfg):
    d = build_dmu(cfg, 20.0)
    with pytest.raises(ValueError):
        analyze(d, np.ones(128, dtype=complex))


def test_transform_rows_and_single(cfg):
    d = build_dmu(cfg, 20.0)
    rng = np.random.default_rng(5)
    h = rng.standard_normal((3, 256)) + 1j * rng.standard_normal((3, 256))
    batch = d.transform(h)
    assert batch.shape == (3, 256)
    np.testing.assert_allclose(batch[1], d.transform(h[1]), atol=1e-14)
    back = d.inverse_transform(batch)
    np.testing.assert_allclose(back, h, atol=1e-10)


def test_dictionary_fit_is_noop(cfg):
    d = build_dmu(cfg, 20.0)
    assert d.fit(None) is d


def test_polar_single_ring_is_dft(cfg):
    polar = build_polar_baseline(cfg, n_rings=1)
    dft = build_dft(cfg)
    np.testing.assert_array_equal(polar.matrix, dft.matrix)


def test_polar_shape_and_norms(cfg):
    polar = build_polar_baseline(cfg, n_rings=6)
    assert polar.matrix.shape == (256, 6 * 256)
    np.testing.assert_allclose(np.linalg.norm(polar.matrix, axis=0), 1.0, atol=1e-12)
    assert polar.radii is not None and polar.radii.size == 6 * 256
    assert math.isinf(polar.radii[0])


def test_polar_ring_distances(cfg):
    fresnel, rayleigh = field_boundaries(cfg)
    polar = build_polar_baseline(cfg, n_rings=3, distance_range=(fresnel, rayleigh))
    radii = np.unique(polar.radii[np.isfinite(polar.radii)])
    inv = np.sort(1.0 / radii)
    np.testing.assert_allclose(inv, [1 / rayleigh, 1 / fresnel], rtol=1e-12)


def test_polar_is_coherent():
    cfg64 = ArrayConfig(carrier_freq=100e9, n_antennas=64)
    polar = build_polar_baseline(cfg64, n_rings=3)
    assert mutual_coherence(polar.matrix) > 0.0


def test_polar_rejects_bad_args(cfg):
    with pytest.raises(ValueError):
        build_polar_baseline(cfg, n_rings=0)
    with pytest.raises(ValueError):
        build_polar_baseline(cfg, n_rings=3, distance_range=(5.0, 2.0))


def test_coherence_limited_rings(cfg):
    n_rings, (lo, hi) = coherence_limited_rings(cfg)
    fresnel, _ = field_boundaries(cfg)
    assert n_rings >= 2
    assert lo >= fresnel * 0.9
    # ring radii follow hi/q for q = 1..n_rings-1
    assert lo == pytest.approx(hi / (n_rings - 1))
    polar = build_polar_baseline(cfg, n_rings, (lo, hi))
    assert polar.matrix.shape[1] == n_rings * 256


def test_mutual_coherence_unitary(cfg):
    d = build_dmu(cfg, 20.0)
    assert mutual_coherence(d.matrix) < 1e-10


def test_mutual_coherence_repeated_column():
    col = np.exp(1j * np.linspace(0, 3, 32))
    matrix = np.stack([col, 2.0 * col, np.ones(32, complex)], axis=1)
    assert mutual_coherence(matrix) == pytest.approx(1.0, rel=1e-12)


def test_mutual_coherence_matches_brute_force():
    rng = np.random.default_rng(1234)
    matrix = rng.standard_normal((100, 256)) + 1j * rng.standard_normal((100, 256))
    assert mutual_coherence(matrix) == pytest.approx(brute_force_coherence(matrix), rel=1e-10)


def test_mutual_coherence_rejects_single_column():
    with pytest.raises(ValueError):
        mutual_coherence(np.ones((4, 1), dtype=complex))


def test_export_round_trip(cfg, tmp_path):
    d = build_dmu(cfg, 20.0)
    path = tmp_path / "dict.bin"
    export_dictionary(d, path)
    raw = path.read_bytes()
    assert raw[:4] == b"NFCS"
    assert int.from_bytes(raw[4:8], "little") == 256
    assert int.from_bytes(raw[8:12], "little") == 256
    assert len(raw) == 16 + 256 * 256 * 8  # header + complex64 payload
    loaded = load_dictionary_matrix(path)
    # complex64 round trip keeps single precision
    np.testing.assert_allclose(loaded, d.matrix, atol=1e-6)


def test_load_rejects_bad_magic(tmp_path):
    path = tmp_path / "bogus.bin"
    path.write_bytes(b"XXXX" + b"\x00" * 12)
    with pytest.raises(ValueError):
        load_dictionary_matrix(path)


def test_parseval_on_sampled_channels(cfg):
    d = build_dmu(cfg, 20.0)
    for seed in range(10):
        spec = sample_channel(cfg, 3, seed=seed)
        h = synthesize_channel(cfg, spec)
        rep = analyze(d, h)
        assert np.linalg.norm(rep.beta) == pytest.approx(np.linalg.norm(h), rel=1e-12)


def test_dictionary_matrix_immutable(cfg):
    d = build_dmu(cfg, 20.0)
    with pytest.raises(ValueError):
        d.matrix[0, 0] = 0.0
