import math

import numpy as np
import pytest

from nfcs import (
    ArrayConfig,
    CoherenceParams,
    build_dmu,
    coherence_approx,
    coherence_exact,
    empirical_sparsity,
    field_boundaries,
    fresnel,
    fresnel_increment_bound_check,
    near_steering,
    params_from_geometry,
    predicted_support,
    sparsity_bound,
    thresholds,
)
from nfcs.dictionaries import dft_grid

# frozen from piecewise adaptive quadrature of cos(t^2), sin(t^2) between
# integrand sign changes (absolute error < 1e-12)
QUADRATURE_TABLE = {
    0.5: (0.4968840292147948, 0.04148102426854748),
    1.0: (0.904524237900272, 0.3102683017233811),
    2.0: (0.4614614624332164, 0.8047764893437562),
    5.0: (0.6114667663964624, 0.5279172811653227),
    50.0: (0.6201542745528246, 0.6190601186888826),
}


@pytest.fixture
def cfg():
    return ArrayConfig(carrier_freq=100e9, n_antennas=256)


class TestFresnel:
    def test_zero(self):
        c, s = fresnel(0.0)
        assert c == 0.0 and s == 0.0

    @pytest.mark.parametrize("x,expected", sorted(QUADRATURE_TABLE.items()))
    def test_against_quadrature(self, x, expected):
        c, s = fresnel(x)
        assert c == pytest.approx(expected[0], abs=1e-10)
        assert s == pytest.approx(expected[1], abs=1e-10)

    def test_odd_symmetry(self):
        xs = np.array([0.1, 0.7, 1.3, 4.0, 17.0])
        c_pos, s_pos = fresnel(xs)
        c_neg, s_neg = fresnel(-xs)
        np.testing.assert_array_equal(c_neg, -c_pos)
        np.testing.assert_array_equal(s_neg, -s_pos)

    def test_limit_at_large_argument(self):
        limit = math.sqrt(math.pi / 8)
        c, s = fresnel(50.0)
        # residual oscillation decays like 1/(2x)
        assert abs(c - limit) < 1.1 / (2 * 50.0)
        assert abs(s - limit) < 1.1 / (2 * 50.0)

    def test_global_caps(self):
        # numerically verified envelope constants used by the support analysis
        xs = np.linspace(1e-6, 200.0, 200_001)
        c, s = fresnel(xs)
        assert c.max() < 0.98
        assert s.max() < 0.90


class TestParams:
    def test_zero_cases(self, cfg):
        p = params_from_geometry(cfg, 0.4, 0.4, 20.0, 20.0)
        assert p.a == 0.0 and p.b == 0.0 and p.a_tilde == 0.0
        p2 = params_from_geometry(cfg, 0.9, -0.2, 50.0, 50.0)
        assert p2.b == 0.0 and p2.a != 0.0

    def test_half_wavelength_reduction(self, cfg):
        p = params_from_geometry(cfg, 0.5, -0.3, 30.0, 10.0)
        assert p.a == pytest.approx(math.pi * (math.sin(0.5) - math.sin(-0.3)), rel=1e-12)
        assert p.b == pytest.approx(
            (math.pi * cfg.wavelength / 4.0) * (1 / 10.0 - 1 / 30.0), rel=1e-12
        )

    def test_a_tilde_range(self, cfg):
        rng = np.random.default_rng(2)
        for _ in range(200):
            p = CoherenceParams(a=float(rng.uniform(-7, 7)), b=0.0, n_antennas=16)
            assert -math.pi <= p.a_tilde <= math.pi

    def test_admissible_quadratic_phase_is_bounded(self, cfg):
        # sources at or beyond the Fresnel distance keep |b| under the
        # (pi/1.24) (N-1)^(-1) sqrt(2/(N-1)) cap
        n = cfg.n_antennas
        cap = (math.pi / 1.24) / (n - 1) * math.sqrt(2.0 / (n - 1))
        fresnel_d, rayleigh = field_boundaries(cfg)
        rng = np.random.default_rng(8)
        for _ in range(500):
            s1, s2 = rng.uniform(-1, 1, 2)
            r1, r2 = rng.uniform(fresnel_d, 10 * rayleigh, 2)
            mu1 = r1 / (1 - s1**2)
            mu2 = r2 / (1 - s2**2)
            p = params_from_geometry(cfg, math.asin(s1), math.asin(s2), mu1, mu2)
            assert abs(p.b) < cap
        assert cap < math.pi

    def test_infinite_effective_distance(self, cfg):
        p = params_from_geometry(cfg, 0.1, 0.2, math.inf, math.inf)
        assert p.b == 0.0


class TestExact:
    def test_aligned(self):
        assert coherence_exact(CoherenceParams(0.0, 0.0, 256)) == pytest.approx(1.0)

    def test_orthogonal_grid_shift(self):
        n = 256
        p = CoherenceParams(2 * math.pi / n, 0.0, n)
        assert coherence_exact(p) == pytest.approx(0.0, abs=1e-12)

    def test_matches_inner_product(self, cfg):
        # |<chirped column, second-order steering vector>| equals the kernel
        mu = 20.0
        d = build_dmu(cfg, mu)
        grid = dft_grid(cfg.n_antennas)
        rng = np.random.default_rng(4)
        for _ in range(20):
            m = int(rng.integers(0, cfg.n_antennas))
            sin0 = float(rng.uniform(-1, 1))
            r0 = float(rng.uniform(3.0, 90.0))
            theta0 = math.asin(sin0)
            mu0 = r0 / math.cos(theta0) ** 2
            vec = near_steering(cfg, theta0, r0, "taylor")
            direct = abs(np.vdot(d.matrix[:, m], vec))
            p = params_from_geometry(cfg, math.asin(grid[m]), theta0, mu, mu0)
            assert coherence_exact(p) == pytest.approx(direct, abs=1e-12)


class TestApprox:
    def test_aligned(self):
        assert coherence_approx(CoherenceParams(0.0, 0.0, 256)) == pytest.approx(1.0)

    def test_geometric_branch_is_exact(self):
        rng = np.random.default_rng(6)
        for _ in range(100):
            p = CoherenceParams(float(rng.uniform(-6, 6)), 0.0, 256)
            assert coherence_approx(p) == pytest.approx(coherence_exact(p), abs=1e-12)

    def test_sign_symmetry_exact(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            a = float(rng.uniform(-2 * math.pi, 2 * math.pi))
            b = float(rng.uniform(1e-6, 8e-4))
            plus = coherence_approx(CoherenceParams(a, b, 256))
            minus = coherence_approx(CoherenceParams(-a, -b, 256))
            assert plus == minus

    def _mean_error(self, cfg, trials, seed):
        fresnel_d, rayleigh = field_boundaries(cfg)
        rng = np.random.default_rng(seed)
        errs = np.empty(trials)
        for i in range(trials):
            s1, s2 = rng.uniform(-1, 1, 2)
            r1, r2 = rng.uniform(fresnel_d, rayleigh, 2)
            p = params_from_geometry(
                cfg, math.asin(s1), math.asin(s2), r1 / (1 - s1**2), r2 / (1 - s2**2)
            )
            errs[i] = abs(coherence_approx(p) - coherence_exact(p))
        return errs.mean()

    def test_mean_error_small(self, cfg):
        assert self._mean_error(cfg, 300, seed=100) < 1e-2

    def test_error_shrinks_with_array_size(self):
        cfg_small = ArrayConfig(100e9, 256)
        cfg_large = ArrayConfig(100e9, 2560)
        e_small = self._mean_error(cfg_small, 1000, seed=200)
        e_large = self._mean_error(cfg_large, 1000, seed=200)
        assert e_large < e_small


class TestThresholds:
    def test_frozen_values(self):
        eta0, eta1, eta2 = thresholds(256, 0.01)
        # frozen from direct evaluation with math.acos
        assert eta0 == pytest.approx(0.2554821590477533, rel=1e-12)
        assert eta1 == pytest.approx(0.3516860609988696, rel=1e-12)
        assert eta2 == eta1

    def test_nonzero_b_widens_one_side(self):
        b_abs = 3e-4
        _, eta1, eta2 = thresholds(256, 0.01, b_abs)
        assert eta2 == pytest.approx(eta1 + 2 * 255 * b_abs / math.pi, rel=1e-12)

    def test_aperture_form_matches(self):
        # eta2 - eta1 = 2 (N-1) |b| / pi also equals D |1/mu0 - 1/mu|
        cfg = ArrayConfig(100e9, 256)
        mu0, mu = 6.0, 20.0
        p = params_from_geometry(cfg, 0.0, 0.0, mu, mu0)
        _, eta1, eta2 = thresholds(256, 0.01, abs(p.b))
        assert eta2 - eta1 == pytest.approx(cfg.aperture * abs(1 / mu0 - 1 / mu), rel=1e-12)

    def test_validity_floors(self):
        # between the two floors: only the binding geometric floor is named
        with pytest.raises(ValueError, match="geometric") as excinfo:
            thresholds(256, 0.0039)
        assert "Fresnel" not in str(excinfo.value)
        # below both floors: both are named
        with pytest.raises(ValueError, match="Fresnel"):
            thresholds(256, 0.003)
        with pytest.raises(ValueError, match="geometric"):
            thresholds(256, 0.003)
        with pytest.raises(ValueError):
            thresholds(256, 0.01, b_abs=-1e-3)


class TestPredictedSupport:
    def test_matched_window_on_grid(self, cfg):
        grid = dft_grid(cfg.n_antennas)
        k = 120
        delta = 0.05
        idx = predicted_support(cfg, math.asin(grid[k]), 20.0, 20.0, delta)
        eta0, _, _ = thresholds(cfg.n_antennas, delta)
        expected_count = math.ceil(eta0 * cfg.n_antennas)  # 13 for these values
        assert expected_count == 13
        assert len(idx) == expected_count
        assert np.array_equal(idx, np.arange(k - 6, k + 7))

    def test_wraparound_split(self, cfg):
        # oblique source near the grid edge splits the window across both ends
        theta0 = math.radians(-85.0)
        mu0 = 4.0 / math.cos(theta0) ** 2
        idx = predicted_support(cfg, theta0, mu0, 6.0, 0.01)
        assert idx[0] == 0 and idx[-1] == cfg.n_antennas - 1
        gaps = np.diff(idx)
        assert (gaps > 1).sum() == 1  # exactly one hole -> two edge clusters

    def test_asymmetry_follows_mismatch_sign(self, cfg):
        theta0 = 0.0
        delta = 0.01
        # dictionary farther than source: positive mismatch, wider left side
        idx_pos = predicted_support(cfg, theta0, 10.0, 40.0, delta)
        left = (idx_pos < 128).sum()
        right = (idx_pos >= 128).sum()
        assert left > right
        # flipped pair mirrors the support
        idx_neg = predicted_support(cfg, theta0, 40.0, 10.0, delta)
        np.testing.assert_array_equal(np.sort(255 - idx_neg), idx_pos)

    def test_contains_all_large_coefficients(self, cfg):
        # necessary-condition containment, checked against the exact kernel
        rng = np.random.default_rng(31)
        delta = 0.05
        grid = dft_grid(cfg.n_antennas)
        for _ in range(25):
            s0 = float(rng.uniform(-1, 1))
            r0 = float(rng.uniform(*field_boundaries(cfg)))
            theta0 = math.asin(s0)
            mu0 = r0 / math.cos(theta0) ** 2
            mu = float(rng.uniform(3.0, 100.0))
            vec = near_steering(cfg, theta0, r0, "taylor")
            alpha = np.abs(build_dmu(cfg, mu).matrix.conj().T @ vec)
            support = set(predicted_support(cfg, theta0, mu0, mu, delta).tolist())
            above = set(np.flatnonzero(alpha >= delta).tolist())
            assert above <= support


class TestSparsityBound:
    def test_matched_regime(self, cfg):
        report = sparsity_bound(cfg, 0.01, 0.0)
        assert report.regime == "b_zero"
        assert report.k_bar == 66  # ceil(N/pi * acos(1 - 2/(N delta)^2))
        assert report.asymptotic_k_bar == 64  # ceil(2/(pi delta))
        assert report.interval_width == pytest.approx(2 * report.eta0)

    def test_mismatched_regime(self, cfg):
        p = params_from_geometry(cfg, 0.0, 0.0, 20.0, 6.0)
        report = sparsity_bound(cfg, 0.01, p.b)
        assert report.regime == "b_nonzero"
        assert report.k_bar == 96  # ceil(90.03 + 5.71)
        assert report.interval_width == pytest.approx(report.eta1 + report.eta2)

    def test_sublinear_cap(self, cfg):
        report = sparsity_bound(cfg, 0.01, 1e-4)
        assert report.sublinear_cap == pytest.approx(
            (256 / 1.24) * math.sqrt(2.0 / 255.0), rel=1e-12
        )

    def test_mismatch_term_capped_for_admissible_sources(self, cfg):
        # the b-dependent part of k_bar never exceeds the sublinear cap
        fres, ray = field_boundaries(cfg)
        rng = np.random.default_rng(77)
        for _ in range(200):
            s1, s2 = rng.uniform(-1, 1, 2)
            r1, r2 = rng.uniform(fres, 5 * ray, 2)
            p = params_from_geometry(
                cfg, math.asin(s1), math.asin(s2), r1 / (1 - s1**2), r2 / (1 - s2**2)
            )
            report = sparsity_bound(cfg, 0.01, p.b)
            mismatch_term = 256 * 255 * abs(p.b) / math.pi
            assert mismatch_term <= report.sublinear_cap * (1 + 1e-12)


class TestEmpiricalSparsity:
    def test_unit_vector(self):
        alpha = np.zeros(128, dtype=complex)
        alpha[17] = 1.0
        assert empirical_sparsity(alpha, 0.5) == (1, 1 / 128)

    def test_zero_vector(self):
        assert empirical_sparsity(np.zeros(64, dtype=complex), 0.01) == (0, 0.0)

    def test_accepts_sparse_rep(self, cfg):
        d = build_dmu(cfg, 20.0)
        from nfcs import analyze

        rep = analyze(d, d.matrix[:, 3])
        count, frac = empirical_sparsity(rep, 0.01)
        assert count == 1 and frac == pytest.approx(1 / 256)


class TestFresnelIncrementBound:
    @pytest.mark.parametrize("x,dx", [(1.0, 100.0), (0.1, 5.0), (3.0, 0.5)])
    def test_examples(self, x, dx):
        assert fresnel_increment_bound_check(x, dx)

    def test_random_sweep(self):
        rng = np.random.default_rng(12)
        for _ in range(500):
            x = float(rng.uniform(0.05, 20.0))
            dx = float(rng.uniform(1e-6, 100.0))
            assert fresnel_increment_bound_check(x, dx)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            fresnel_increment_bound_check(0.0, 1.0)
        with pytest.raises(ValueError):
            fresnel_increment_bound_check(1.0, -1.0)
