import math

import mpmath
import numpy as np
import pytest
from hypothesis import given, settings, strategies as st
from scipy.integrate import quad

from nsbounds import (
    LikelihoodKernel,
    PhaseAmplitudes,
    alignment_fidelity,
    berry_wiseman_state,
    covariant_likelihood,
    diffusion_prior,
    jacobi_theta4,
    max_likelihood_ratio,
    ml_state,
    ns_alignment_fidelity_exact,
    ns_diffused_bound,
    ns_step_distribution,
    prior_error,
    quantum_alignment_fidelity,
    stationarity_window,
)
from nsbounds.circular import CircularDistribution
from nsbounds.metrology import diffused_bound_error

from conftest import random_amps

GRID = np.linspace(-np.pi, np.pi, 4096, endpoint=False)


def grid_integral(values):
    # periodic trapezoid: exact for trigonometric polynomials of degree < 4096
    return float(np.sum(values) * (2 * np.pi / GRID.size))


class TestLikelihood:
    def test_flat_probe_peak(self):
        for N in (0, 1, 5, 20):
            assert covariant_likelihood(ml_state(N), 0.0) == pytest.approx((N + 1) / (2 * np.pi))

    def test_flat_probe_zeros(self):
        N = 6
        for k in range(1, N + 1):
            assert covariant_likelihood(ml_state(N), 2 * np.pi * k / (N + 1)) == pytest.approx(0, abs=1e-15)

    def test_ground_state_uninformative(self):
        vals = covariant_likelihood(PhaseAmplitudes([1, 0, 0]), GRID)
        assert np.allclose(vals, 1 / (2 * np.pi))

    def test_completeness(self, rng):
        for _ in range(50):
            N = int(rng.integers(0, 65))
            assert grid_integral(covariant_likelihood(random_amps(rng, N + 1), GRID)) == pytest.approx(1.0, abs=1e-10)

    def test_matches_povm_trace(self, rng):
        # oracle: tr(U_theta rho U_theta^dag E(theta')) with the covariant POVM built explicitly
        N, th, thp = 4, 0.7, -1.9
        s = random_amps(rng, N + 1)
        n = np.arange(N + 1)
        E = np.exp(1j * thp * (n[:, None] - n[None, :]))
        psi = s.amps * np.exp(1j * n * th)
        val = np.vdot(psi, E @ psi).real / (2 * np.pi)
        assert covariant_likelihood(s, thp - th) == pytest.approx(val, abs=1e-14)

    def test_kernel_wrapper(self, rng):
        s = PhaseAmplitudes(rng.normal(size=5))
        k = LikelihoodKernel(s)
        assert k(0.3) == pytest.approx(covariant_likelihood(s, 0.3))
        dist = k.distribution()
        assert np.allclose(dist.density(GRID), covariant_likelihood(s, GRID), atol=1e-13)

    def test_complex_probe_kernel_is_not_even(self, rng):
        s = random_amps(rng, 4)
        assert covariant_likelihood(s, 0.4) != pytest.approx(covariant_likelihood(s, -0.4))
        with pytest.raises(ValueError):
            LikelihoodKernel(s).distribution()


class TestMaxLikelihood:
    def test_flat_state_attains_bound(self):
        for N in range(0, 65):
            assert max_likelihood_ratio(ml_state(N)) == pytest.approx(N + 1, abs=1e-12)

    def test_random_probes_below_bound(self, rng):
        for _ in range(1000):
            N = int(rng.integers(0, 30))
            assert max_likelihood_ratio(random_amps(rng, N + 1)) <= N + 1 + 1e-9

    def test_sine_probe_value(self):
        # sin(36)+sin(72)+sin(108)+sin(144) = 2(sin 36 + sin 72); norm^2 = 5/2
        expected = (2 * (math.sin(math.pi / 5) + math.sin(2 * math.pi / 5))) ** 2 / 2.5
        assert max_likelihood_ratio(berry_wiseman_state(3)) == pytest.approx(expected, abs=1e-12)
        assert expected == pytest.approx(3.78885, abs=1e-5)

    def test_ml_state_examples(self):
        assert np.allclose(ml_state(0).amps, [1])
        assert np.allclose(ml_state(1).amps, [2 ** -0.5] * 2)
        assert np.allclose(ml_state(3).amps, [0.5] * 4)


class TestStepDistribution:
    def test_uniform_when_no_copies(self):
        d = ns_step_distribution(0)
        assert np.allclose(d.density(GRID), 1 / (2 * np.pi))

    def test_qubit_window(self):
        d = ns_step_distribution(1)
        assert d.density(0.0) == pytest.approx(1 / np.pi)
        assert d.density(np.pi / 2) == pytest.approx(1 / np.pi)
        assert d.density(np.pi / 2 + 1e-6) == 0.0
        assert d.fourier_coefficient(1) == pytest.approx(2 / np.pi)

    @pytest.mark.parametrize("N", [0, 1, 3, 10])
    def test_component_at_n_plus_one_vanishes(self, N):
        assert ns_step_distribution(N).fourier_coefficient(N + 1) == pytest.approx(0.0, abs=1e-15)

    @pytest.mark.parametrize("N", [1, 2, 7])
    def test_components_by_quadrature(self, N):
        a = np.pi / (N + 1)
        d = ns_step_distribution(N)
        for k in range(1, 12):
            val, _ = quad(lambda x: (N + 1) / (2 * np.pi) * np.cos(k * x), -a, a)
            assert d.fourier_coefficient(k) == pytest.approx(val, abs=1e-12)

    def test_nonnegative(self):
        for N in (0, 1, 5, 30):
            assert ns_step_distribution(N).is_nonnegative()


class TestAlignment:
    def test_uniform(self):
        assert alignment_fidelity(CircularDistribution.uniform()) == 0.5

    def test_delta_limit(self):
        assert alignment_fidelity(CircularDistribution(np.ones(50))) == 1.0

    @pytest.mark.parametrize("N", [0, 1, 2, 5, 17, 100])
    def test_step_window_by_quadrature(self, N):
        a = np.pi / (N + 1)
        err, _ = quad(lambda x: (N + 1) / (2 * np.pi) * np.sin(x / 2) ** 2, -a, a, epsabs=1e-15)
        assert alignment_fidelity(ns_step_distribution(N)) == pytest.approx(1 - err, abs=1e-12)
        assert ns_alignment_fidelity_exact(N) == pytest.approx(1 - err, abs=1e-12)

    def test_closed_form_routes_agree(self):
        for N in range(0, 101):
            assert ns_alignment_fidelity_exact(N) == pytest.approx(
                alignment_fidelity(ns_step_distribution(N)), abs=1e-12)

    def test_fourier_form_matches_grid_quadrature(self, rng):
        for _ in range(10):
            f = rng.uniform(-0.3, 0.3, size=8) / np.arange(1, 9)
            d = CircularDistribution(f)
            quad_val = 1 - grid_integral(d.density(GRID) * np.sin(GRID / 2) ** 2)
            assert alignment_fidelity(d) == pytest.approx(quad_val, abs=1e-8)

    def test_exact_limits(self):
        assert ns_alignment_fidelity_exact(0) == pytest.approx(0.5)
        N = 200
        assert N * N * (1 - ns_alignment_fidelity_exact(N)) == pytest.approx(math.pi ** 2 / 12, rel=1e-2)

    def test_small_angle_against_high_precision(self):
        vals = [ns_alignment_fidelity_exact(N) for N in range(300, 330)]
        with mpmath.workdps(50):
            ref = [float(1 - (N + 1) * (mpmath.pi / (N + 1) - mpmath.sin(mpmath.pi / (N + 1))) / (2 * mpmath.pi))
                   for N in range(300, 330)]
        assert np.allclose(vals, ref, rtol=0, atol=2.3e-16)


class TestSineProbe:
    def test_examples(self):
        assert np.allclose(berry_wiseman_state(1).amps, [2 ** -0.5] * 2)
        assert np.allclose(berry_wiseman_state(2).amps, np.array([2 ** -0.5, 1, 2 ** -0.5]) / np.sqrt(2))

    @pytest.mark.parametrize("N", [0, 1, 2, 5, 40, 200])
    def test_fidelity_closed_form(self, N):
        f = quantum_alignment_fidelity(berry_wiseman_state(N))
        assert f == pytest.approx(math.cos(math.pi / (2 * (N + 2))) ** 2, abs=1e-12)

    def test_quantum_fidelity_by_quadrature(self, rng):
        for _ in range(5):
            s = random_amps(rng, int(rng.integers(1, 10)))
            dens = covariant_likelihood(s, GRID)
            assert quantum_alignment_fidelity(s) == pytest.approx(
                grid_integral(dens * np.cos(GRID / 2) ** 2), abs=1e-10)

    def test_ml_state_qubit(self):
        assert quantum_alignment_fidelity(ml_state(1)) == pytest.approx(0.75)

    def test_single_level(self):
        assert quantum_alignment_fidelity(PhaseAmplitudes([1, 0, 0])) == 0.5
        assert quantum_alignment_fidelity(PhaseAmplitudes([1])) == 0.5

    def test_heisenberg_constant(self):
        N = 200
        val = N * N * (1 - quantum_alignment_fidelity(berry_wiseman_state(N)))
        assert val == pytest.approx(math.pi ** 2 / 4, rel=5e-2)

    def test_no_signaling_dominates(self):
        for N in range(0, 501):
            assert ns_alignment_fidelity_exact(N) >= quantum_alignment_fidelity(berry_wiseman_state(N))


class TestDiffusionPrior:
    def test_coefficients(self):
        d = diffusion_prior(1.0)
        assert d.fourier_coefficient(1) == pytest.approx(math.exp(-1))
        assert d.fourier_coefficient(2) == pytest.approx(math.exp(-4))
        assert d.fourier[-1] >= 1e-16 > math.exp(-((d.K + 1) ** 2))
        assert diffusion_prior(1.0, K=3).K == 3

    def test_long_time_uniform(self):
        d = diffusion_prior(60.0)
        assert np.allclose(d.density(GRID), 1 / (2 * np.pi), atol=1e-16)

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            diffusion_prior(0.0)

    @pytest.mark.parametrize("t", [0.01, 0.1, 0.3, 0.49, 0.5, 1.0, 3.0])
    def test_density_normalized_and_positive(self, t):
        d = diffusion_prior(t)
        assert grid_integral(d.density(GRID)) == pytest.approx(1.0, abs=1e-10)
        assert d.is_nonnegative()

    @pytest.mark.parametrize("t", [0.05, 0.2, 0.45])
    def test_dual_density_matches_series(self, t):
        d = diffusion_prior(t)
        # both forms agree where the series has not lost precision
        assert np.allclose(d.density(GRID), d.series_density(GRID), atol=1e-13)
        assert np.allclose(d.density_derivative(GRID),
                           -(np.sin(np.multiply.outer(GRID, np.arange(1, d.K + 1)))
                             @ (np.arange(1, d.K + 1) * d.fourier)) / np.pi, atol=1e-12)


class TestPriorError:
    @pytest.mark.parametrize("t", [0.1, 1.0, 5.0])
    def test_closed_form_vs_quadrature(self, t):
        d = diffusion_prior(t)
        assert prior_error(t) == pytest.approx(grid_integral(d.density(GRID) * np.sin(GRID / 2) ** 2), abs=1e-12)

    def test_values(self):
        assert prior_error(1.0) == pytest.approx(0.31606, abs=1e-5)
        assert prior_error(0.1) == pytest.approx(0.04758, abs=1e-5)
        assert prior_error(80.0) == pytest.approx(0.5)
        assert prior_error(1e-12) == pytest.approx(5e-13, rel=1e-6)


class TestTheta4:
    def test_four_term_sum_at_one(self):
        four = 1 + 2 * sum((-1) ** n * math.exp(-n * n) for n in range(1, 5))
        assert jacobi_theta4(1.0) == pytest.approx(four, abs=1e-7)
        assert jacobi_theta4(1.0) == pytest.approx(0.30062, abs=1e-5)

    @pytest.mark.parametrize("t", [0.01, 0.03, 0.1, 0.3, 0.4999, 0.5, 0.7, 1.0, 2.0, 5.0, 40.0])
    def test_against_mpmath(self, t):
        # mpmath sums the alternating series directly, so give it room for the cancellation
        with mpmath.workdps(300):
            ref = float(mpmath.jtheta(4, 0, mpmath.exp(-mpmath.mpf(t))))
        assert jacobi_theta4(t) == pytest.approx(ref, rel=1e-12)

    def test_underflow_is_zero_not_negative(self):
        assert jacobi_theta4(1e-3) == 0.0

    def test_limits(self):
        assert jacobi_theta4(50.0) == pytest.approx(1.0, abs=1e-15)
        assert jacobi_theta4(0.01) < 1e-100

    def test_monotone(self):
        ts = np.linspace(0.02, 6, 300)
        vals = [jacobi_theta4(t) for t in ts]
        assert all(b > a for a, b in zip(vals, vals[1:]))

    def test_rejects_nonpositive(self):
        with pytest.raises(ValueError):
            jacobi_theta4(-1.0)

    def test_equals_density_at_antipode(self):
        for t in (0.2, 1.0, 2.5):
            assert diffusion_prior(t).density(np.pi) * 2 * np.pi == pytest.approx(jacobi_theta4(t), rel=1e-10)


class TestDiffusedBound:
    def test_uniform_limit(self):
        N = 50
        assert ns_diffused_bound(N, 60.0) == pytest.approx(1 - math.pi ** 2 / (12 * N * N))

    def test_perfect_prior(self):
        assert ns_diffused_bound(7, 0.01) == pytest.approx(1.0, abs=1e-15)

    def test_reference_value(self):
        assert 1 - ns_diffused_bound(100, 1.0) == pytest.approx(2.4726e-5, rel=1e-3)
        assert diffused_bound_error(100, 1.0) == pytest.approx(math.pi ** 2 / 120000 * jacobi_theta4(1.0))

    def test_monotone_in_t(self):
        ts = np.linspace(0.05, 5, 100)
        for N in (1, 10, 100):
            b = [ns_diffused_bound(N, t) for t in ts]
            e = [diffused_bound_error(N, t) for t in ts]
            assert all(y <= x for x, y in zip(b, b[1:]))
            assert all(y > x for x, y in zip(e, e[1:]))


class TestStationarityWindow:
    def test_min_density_at_antipode(self):
        w = stationarity_window(1.0)
        assert w.min_density == pytest.approx(jacobi_theta4(1.0) / (2 * np.pi), rel=1e-10)
        assert w.min_density == pytest.approx(0.04785, abs=1e-5)

    def test_slope_against_dense_scan(self):
        w = stationarity_window(1.0)
        d = diffusion_prior(1.0)
        xs = np.linspace(-np.pi, np.pi, 200001)
        assert w.max_slope == pytest.approx(np.max(np.abs(d.density_derivative(xs))), rel=1e-8)

    def test_wide_for_flat_prior(self):
        assert stationarity_window(30.0).width == pytest.approx(np.pi, abs=1e-6)

    def test_shrinks_with_t(self):
        widths = [stationarity_window(t).width for t in (2.0, 1.0, 0.5, 0.2, 0.05)]
        assert all(b < a for a, b in zip(widths, widths[1:]))
        assert widths[-1] > 0

    def test_threshold_formula(self):
        w = stationarity_window(1.3)
        m, s = w.min_density, w.max_slope
        assert w.threshold == pytest.approx(m * math.sin(w.width / 2) ** 2, rel=1e-12)
        assert w.threshold == pytest.approx(m ** 3 / (s * s + m * m))
        assert math.pi / (w.n_threshold + 1) <= w.width < math.pi / w.n_threshold

    @given(st.floats(0.2, 4.0), st.floats(-np.pi, np.pi))
    @settings(max_examples=25, deadline=None)
    def test_penalty_increases_inside_window(self, t, estimate):
        # p(theta; t) sin^2((theta - estimate)/2) grows with |theta - estimate| inside the window
        w = stationarity_window(t)
        d = diffusion_prior(t)
        ds = np.linspace(0.0, w.width * 0.999, 400)
        for sign in (1, -1):
            g = d.density(estimate + sign * ds) * np.sin(ds / 2) ** 2
            assert np.all(np.diff(g) > -1e-15)
