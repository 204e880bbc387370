"""Tests for diagnostics records, envelope fits, trajectory checks, Osgood."""

import math

import numpy as np
import pytest

from bqsim import (
    ConfigurationError,
    DiagnosticsRecord,
    DiagnosticsTracker,
    Grid,
    PhysicalField,
    RECORD_FIELDS,
    SimState,
    SpectralField,
    check_energy,
    check_gamma_smoothing,
    check_lipschitz,
    check_max_principle,
    fit_double_exponential_envelope,
    fit_exponential_envelope,
    forward_transform,
    linear_exact_solution,
    linear_gamma_smoothing_integral,
    osgood_bound,
    sobolev_norm,
    state_difference,
)
from bqsim.fields import random_scalar_field

L2_SIN = 4.442882938158366


def grid64():
    return Grid(64)


def zero_field(grid):
    return SpectralField(grid, np.zeros((grid.n, grid.n), dtype=complex))


def spectral_sin(grid, k=1):
    x1, _ = grid.nodes()
    return forward_transform(PhysicalField(grid, np.sin(k * x1)))


def decay_states(grid, times):
    """Free vorticity decay omega(t) = e^{-t} sin x1 (theta = 0, alpha = 1)."""
    w0 = spectral_sin(grid)
    z = zero_field(grid)
    return [linear_exact_solution(w0, z, 1.0, t) for t in times]


def mkrec(t, **kw):
    base = {name: 0.0 for name in RECORD_FIELDS}
    base["t"] = t
    base.update(kw)
    return DiagnosticsRecord(**base)


class TestRecordLayout:
    def test_field_order_is_pinned(self):
        assert RECORD_FIELDS == [
            "t",
            "l2_v",
            "hhalf_v_sq_cum",
            "l2_theta",
            "l4_theta",
            "linf_theta",
            "l2_omega",
            "lr_omega",
            "l2_gamma",
            "hhalf_gamma_sq_cum",
            "besov_theta",
            "besov_omega_cum",
            "lip_v",
            "V_t",
            "energy_residual",
            "hhalf_omega_sq_cum",
        ]


class TestTracker:
    def test_first_record_has_zero_cumulatives(self):
        g = grid64()
        tracker = DiagnosticsTracker()
        rec = tracker.record(SimState(0.0, spectral_sin(g), zero_field(g), 1.0))
        assert rec.hhalf_v_sq_cum == 0.0
        assert rec.V_t == 0.0
        assert rec.energy_residual == 0.0
        assert rec.l2_omega == pytest.approx(L2_SIN, rel=1e-12)

    def test_trapezoid_cumulative_on_constant_integrand(self):
        g = grid64()
        tracker = DiagnosticsTracker()
        w = spectral_sin(g)
        z = zero_field(g)
        # identical vorticity at both samples: integrand is constant
        tracker.record(SimState(0.0, w, z, 1.0))
        rec = tracker.record(SimState(0.1, w, z, 1.0))
        hhalf_sq = sobolev_norm(w, 0.5, homogeneous=True) ** 2
        assert rec.hhalf_omega_sq_cum == pytest.approx(0.1 * hhalf_sq, rel=1e-12)
        assert rec.hhalf_gamma_sq_cum == pytest.approx(0.1 * hhalf_sq, rel=1e-12)

    def test_rejects_non_increasing_times(self):
        g = grid64()
        tracker = DiagnosticsTracker()
        s = SimState(0.0, spectral_sin(g), zero_field(g), 1.0)
        tracker.record(s)
        with pytest.raises(ConfigurationError):
            tracker.record(s)

    def test_energy_residual_shrinks_quadratically(self):
        g = grid64()

        def max_residual(h):
            tracker = DiagnosticsTracker()
            records = [
                tracker.record(s) for s in decay_states(g, [k * h for k in range(6)])
            ]
            return max(abs(r.energy_residual) for r in records)

        coarse, fine = max_residual(0.02), max_residual(0.01)
        assert coarse / fine > 3.5

    def test_tracked_norms_of_decaying_shear(self):
        g = grid64()
        tracker = DiagnosticsTracker()
        states = decay_states(g, [0.0, 0.5])
        tracker.record(states[0])
        rec = tracker.record(states[1])
        assert rec.l2_omega == pytest.approx(math.exp(-0.5) * L2_SIN, rel=1e-10)
        assert rec.l2_v == pytest.approx(math.exp(-0.5) * L2_SIN, rel=1e-10)
        assert rec.lip_v == pytest.approx(math.exp(-0.5), rel=1e-10)
        assert rec.besov_theta == 0.0


class TestEnvelopeFits:
    def test_exponential_recovery(self):
        t = np.linspace(0.0, 2.0, 40)
        y = 3.0 * np.exp(1.7 * t)
        profile = fit_exponential_envelope(t, y)
        assert profile.form == "exponential"
        assert profile.constants["rate"] == pytest.approx(1.7, rel=1e-6)
        assert profile.r_squared > 0.999999
        assert np.all(profile.evaluate(t) >= y * (1 - 1e-9))

    def test_exponential_excludes_startup_zeros(self):
        t = np.linspace(0.0, 1.0, 21)
        y = np.where(t < 0.2, 0.0, np.exp(3.0 * t))
        profile = fit_exponential_envelope(t, y)
        assert profile.constants["rate"] == pytest.approx(3.0, rel=1e-6)

    def test_exponential_on_zero_series(self):
        t = np.linspace(0.0, 1.0, 5)
        profile = fit_exponential_envelope(t, np.zeros_like(t))
        assert profile.constants["scale"] == 0.0
        assert profile.r_squared == 1.0

    def test_double_exponential_recovery(self):
        t = np.linspace(0.0, 1.5, 30)
        y = np.exp(np.exp(0.5 + 1.2 * t)) - math.e
        profile = fit_double_exponential_envelope(t, y)
        assert profile.constants["inner_rate"] == pytest.approx(1.2, rel=1e-3)
        assert profile.r_squared > 0.999
        assert np.max(np.abs(profile.evaluate(t) - y) / y.max()) < 1e-6


class TestTrajectoryChecks:
    def test_max_principle_passes_within_drift(self):
        records = [mkrec(0.0, l2_theta=1.0), mkrec(1.0, l2_theta=1.0005)]
        report = check_max_principle(records, 2)
        assert report.passed
        assert report.details["drift"] == pytest.approx(5e-4)

    def test_max_principle_fails_beyond_drift(self):
        records = [mkrec(0.0, linf_theta=1.0), mkrec(1.0, linf_theta=1.01)]
        report = check_max_principle(records, math.inf)
        assert not report.passed

    def test_max_principle_rejects_untracked_exponent(self):
        records = [mkrec(0.0, l2_theta=1.0)]
        with pytest.raises(ConfigurationError):
            check_max_principle(records, 3)

    def test_energy_bound_pass_and_fail(self):
        ok = [
            mkrec(0.0, l2_v=1.0, l2_theta=2.0),
            mkrec(1.0, l2_v=2.9, l2_theta=2.0),
        ]
        assert check_energy(ok).passed
        bad = [
            mkrec(0.0, l2_v=1.0, l2_theta=2.0),
            mkrec(1.0, l2_v=3.2, l2_theta=2.0),
        ]
        assert not check_energy(bad).passed

    def test_gamma_smoothing_on_exponential_series(self):
        times = np.linspace(0.0, 2.0, 30)
        records = [
            mkrec(t, hhalf_gamma_sq_cum=2.0 * math.exp(0.8 * t), hhalf_omega_sq_cum=5.0)
            for t in times
        ]
        report = check_gamma_smoothing(records)
        assert report.passed
        assert report.details["r_squared"] > 0.999
        assert report.details["omega_fit"].constants["rate"] == pytest.approx(0.0, abs=1e-9)

    def test_gamma_smoothing_saturating_series_threshold(self):
        # Cumulative integral of a decaying integrand: log-concave, so the
        # log-linear fit cannot explain it, yet the envelope bound is finite.
        times = np.linspace(0.0, 2.0, 30)
        records = [
            mkrec(t, hhalf_gamma_sq_cum=0.1 * (1.0 - math.exp(-4.0 * t)), hhalf_omega_sq_cum=t)
            for t in times
        ]
        default = check_gamma_smoothing(records)
        assert default.passed
        gated = check_gamma_smoothing(records, r2_threshold=0.95)
        assert not gated.passed
        assert gated.details["r_squared"] < 0.95

    def test_gamma_smoothing_fails_on_nonfinite(self):
        records = [
            mkrec(0.0, hhalf_gamma_sq_cum=0.0),
            mkrec(0.5, hhalf_gamma_sq_cum=1.0),
            mkrec(1.0, hhalf_gamma_sq_cum=math.inf),
            mkrec(1.5, hhalf_gamma_sq_cum=math.inf),
        ]
        assert not check_gamma_smoothing(records).passed

    def test_lipschitz_check_reports_envelopes(self):
        times = np.linspace(0.0, 1.0, 20)
        records = [
            mkrec(t, besov_omega_cum=t, lr_omega=1.0 + t, lip_v=0.5, V_t=0.5 * t)
            for t in times
        ]
        report = check_lipschitz(records)
        assert report.passed
        assert report.details["besov_cum_fit"].form == "exponential"
        assert report.details["lr_fit"].form == "double-exponential"
        bad = records + [mkrec(2.0, lr_omega=math.inf)]
        assert not check_lipschitz(bad).passed


class TestOsgood:
    def test_gronwall_constant_rate(self):
        t = np.linspace(0.0, 2.0, 201)
        g = np.full_like(t, 0.7)
        bound = osgood_bound(1.5, t, g, mu="gronwall")
        assert bound[0] == pytest.approx(1.5)
        assert bound[-1] == pytest.approx(1.5 * math.exp(1.4), rel=1e-12)

    def test_gronwall_zero_initial(self):
        t = np.linspace(0.0, 1.0, 11)
        assert np.all(osgood_bound(0.0, t, np.ones_like(t)) == 0.0)

    def test_log_modulus_small_data(self):
        t = np.linspace(0.0, 1.0, 101)
        g = np.ones_like(t)
        a = 1e-6
        bound = osgood_bound(a, t, g, mu="log")
        shrink = math.exp(-1.0)
        expected = a**shrink * math.exp(1.0 - shrink)
        assert bound[0] == pytest.approx(a)
        assert bound[-1] == pytest.approx(expected, rel=1e-10)
        assert np.all(np.isfinite(bound))

    def test_log_modulus_goes_vacuous_for_large_data(self):
        t = np.linspace(0.0, 5.0, 51)
        g = np.ones_like(t)
        bound = osgood_bound(0.9, t, g, mu="log")
        assert bound[0] == pytest.approx(0.9)
        assert np.isinf(bound[-1])

    def test_log_bound_dominates_gronwall_for_small_data(self):
        # the log modulus exceeds the linear one below r = 1, so its
        # admissible bound sits above the Gronwall bound
        t = np.linspace(0.0, 0.5, 51)
        g = np.ones_like(t)
        a = 1e-8
        log_bound = osgood_bound(a, t, g, mu="log")
        lin_bound = osgood_bound(a, t, g, mu="gronwall")
        assert np.all(log_bound[1:] >= lin_bound[1:])

    def test_rejects_negative_initial(self):
        with pytest.raises(ConfigurationError):
            osgood_bound(-1.0, [0.0, 1.0], [1.0, 1.0])

    def test_rejects_unknown_modulus(self):
        with pytest.raises(ConfigurationError):
            osgood_bound(1.0, [0.0, 1.0], [1.0, 1.0], mu="quadratic")


class TestClosedFormSmoothing:
    def test_matches_fine_quadrature(self):
        g = grid64()
        gamma0 = random_scalar_field(g, 2.5, 1.0, (61, 1))
        t_end = 0.8
        closed = linear_gamma_smoothing_integral(gamma0, t_end)
        # independent check: trapezoid quadrature of the decaying H^1/2 norm
        times = np.linspace(0.0, t_end, 4001)
        z = zero_field(g)
        values = [
            sobolev_norm(
                linear_exact_solution(gamma0, z, 1.0, t).omega_hat, 0.5, homogeneous=True
            )
            ** 2
            for t in times
        ]
        quad = float(np.trapezoid(values, times))
        assert closed == pytest.approx(quad, rel=1e-6)

    def test_saturates_at_half_h_half_squared(self):
        g = grid64()
        gamma0 = spectral_sin(g, 2)
        # as t -> inf the integral tends to ||gamma0||_{H^{-1/2}}^2 ... for a
        # single mode |k| = 2: (2 pi)^2 |c|^2 / 2 summed over the pair
        closed = linear_gamma_smoothing_integral(gamma0, 50.0)
        expected = (2 * math.pi) ** 2 * (0.25 + 0.25) / 2.0
        assert closed == pytest.approx(expected, rel=1e-12)


class TestStateDifference:
    def test_zero_for_identical_states(self):
        g = grid64()
        s = SimState(0.0, spectral_sin(g), zero_field(g), 1.0)
        assert state_difference(s, s.copy()) == 0.0

    def test_scales_linearly_in_vorticity_perturbation(self):
        g = grid64()
        base = SimState(0.0, spectral_sin(g), zero_field(g), 1.0)
        bump = random_scalar_field(g, 2.5, 1.0, (62, 1))
        one = SimState(0.0, base.omega_hat + bump, base.theta_hat, 1.0)
        half = SimState(0.0, base.omega_hat + bump * 0.5, base.theta_hat, 1.0)
        x1 = state_difference(one, base)
        x2 = state_difference(half, base)
        assert x1 == pytest.approx(2.0 * x2, rel=1e-12)
        assert x1 > 0.0
