"""Trajectory diagnostics, a-priori-bound checks, and Osgood-type bounds.

A `DiagnosticsTracker` consumes states at the sampling cadence and emits
`DiagnosticsRecord` rows; cumulative time integrals use the trapezoid rule
over the cadence points.  All `check_*` functions are pure functions of the
record series, so re-running them on a diagnostics CSV reproduces the same
verdicts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, fields as dataclass_fields

import numpy as np

from .dynamics import SimState, gamma
from .errors import ConfigurationError
from .littlewood_paley import BesovSpec, besov_norm, build_filter_bank
from .spectral import (
    PhysicalField,
    SpectralField,
    biot_savart,
    integrate,
    inverse_transform,
    lp_norm,
    max_gradient,
    sobolev_norm,
    to_physical,
    vector_sobolev_norm,
)


@dataclass
class DiagnosticsRecord:
    """One cadence sample of the tracked norms and cumulative integrals.

    `hhalf_*_sq_cum` are running integrals of squared homogeneous H^(1/2)
    norms; `besov_omega_cum` and `V_t` integrate the vorticity B^0_(inf,1)
    norm and the grid Lipschitz seminorm of the velocity.  The trailing
    `hhalf_omega_sq_cum` column carries the vorticity analogue of the
    damped-combination smoothing integral for side-by-side comparison.
    """

    t: float
    l2_v: float
    hhalf_v_sq_cum: float
    l2_theta: float
    l4_theta: float
    linf_theta: float
    l2_omega: float
    lr_omega: float
    l2_gamma: float
    hhalf_gamma_sq_cum: float
    besov_theta: float
    besov_omega_cum: float
    lip_v: float
    V_t: float
    energy_residual: float
    hhalf_omega_sq_cum: float


RECORD_FIELDS = [f.name for f in dataclass_fields(DiagnosticsRecord)]


class DiagnosticsTracker:
    """Accumulates records from successive states handed in time order."""

    def __init__(self, omega_lr: float = 3.0):
        if not omega_lr >= 1:
            raise ConfigurationError(f"omega_lr exponent must be >= 1, got {omega_lr}")
        self.omega_lr = omega_lr
        self._prev = None  # (t, instantaneous integrands, record)

    def record(self, state: SimState) -> DiagnosticsRecord:
        """Compute all tracked quantities for this state and append integrals."""
        bank = build_filter_bank(state.grid)
        v = biot_savart(state.omega_hat)
        v_phys = to_physical(v)
        theta_phys = inverse_transform(state.theta_hat)
        omega_phys = inverse_transform(state.omega_hat)
        gam = gamma(state)
        gamma_phys = inverse_transform(gam)

        hhalf_v_sq = vector_sobolev_norm(v, 0.5, homogeneous=True) ** 2
        hhalf_gamma_sq = sobolev_norm(gam, 0.5, homogeneous=True) ** 2
        hhalf_omega_sq = sobolev_norm(state.omega_hat, 0.5, homogeneous=True) ** 2
        besov_omega = besov_norm(state.omega_hat, BesovSpec(0.0, math.inf, 1.0), bank)
        lip_v = max_gradient(v)

        l2_v = lp_norm(v_phys, 2)
        energy = 0.5 * l2_v**2
        dissipation = vector_sobolev_norm(v, 0.5 * state.alpha, homogeneous=True) ** 2
        buoyancy_power = integrate(
            PhysicalField(state.grid, theta_phys.samples * v_phys.x2.samples)
        )
        instantaneous = {
            "hhalf_v_sq": hhalf_v_sq,
            "hhalf_gamma_sq": hhalf_gamma_sq,
            "hhalf_omega_sq": hhalf_omega_sq,
            "besov_omega": besov_omega,
            "lip_v": lip_v,
            "energy": energy,
            "dissipation": dissipation,
            "buoyancy_power": buoyancy_power,
        }

        if self._prev is None:
            cums = {"hhalf_v_sq_cum": 0.0, "hhalf_gamma_sq_cum": 0.0,
                    "hhalf_omega_sq_cum": 0.0, "besov_omega_cum": 0.0, "V_t": 0.0}
            energy_residual = 0.0
        else:
            t_prev, prev_inst, prev_rec = self._prev
            dt = state.t - t_prev
            if dt <= 0:
                raise ConfigurationError(
                    f"states must be recorded in increasing time order (got {t_prev} -> {state.t})"
                )

            def trap(key, prev_cum):
                return prev_cum + 0.5 * dt * (prev_inst[key] + instantaneous[key])

            cums = {
                "hhalf_v_sq_cum": trap("hhalf_v_sq", prev_rec.hhalf_v_sq_cum),
                "hhalf_gamma_sq_cum": trap("hhalf_gamma_sq", prev_rec.hhalf_gamma_sq_cum),
                "hhalf_omega_sq_cum": trap("hhalf_omega_sq", prev_rec.hhalf_omega_sq_cum),
                "besov_omega_cum": trap("besov_omega", prev_rec.besov_omega_cum),
                "V_t": trap("lip_v", prev_rec.V_t),
            }
            # Discrete balance d/dt(kinetic energy) + dissipation = buoyancy
            # power, sampled midpoint-consistently between cadence points.
            energy_residual = (instantaneous["energy"] - prev_inst["energy"]) / dt + 0.5 * (
                instantaneous["dissipation"] + prev_inst["dissipation"]
            ) - 0.5 * (instantaneous["buoyancy_power"] + prev_inst["buoyancy_power"])

        rec = DiagnosticsRecord(
            t=state.t,
            l2_v=l2_v,
            hhalf_v_sq_cum=cums["hhalf_v_sq_cum"],
            l2_theta=lp_norm(theta_phys, 2),
            l4_theta=lp_norm(theta_phys, 4),
            linf_theta=lp_norm(theta_phys, math.inf),
            l2_omega=lp_norm(omega_phys, 2),
            lr_omega=lp_norm(omega_phys, self.omega_lr),
            l2_gamma=lp_norm(gamma_phys, 2),
            hhalf_gamma_sq_cum=cums["hhalf_gamma_sq_cum"],
            besov_theta=besov_norm(state.theta_hat, BesovSpec(0.0, math.inf, 1.0), bank),
            besov_omega_cum=cums["besov_omega_cum"],
            lip_v=lip_v,
            V_t=cums["V_t"],
            energy_residual=energy_residual,
            hhalf_omega_sq_cum=cums["hhalf_omega_sq_cum"],
        )
        self._prev = (state.t, instantaneous, rec)
        return rec


# ---------------------------------------------------------------------------
# Envelope fitting


@dataclass
class BoundProfile:
    """A fitted growth envelope: form name, constants, and fit quality."""

    form: str
    constants: dict
    r_squared: float

    def evaluate(self, t):
        t = np.asarray(t, dtype=float)
        c = self.constants
        if self.form == "exponential":
            return c["scale"] * np.exp(c["rate"] * t)
        if self.form == "double-exponential":
            return np.exp(np.exp(c["inner_intercept"] + c["inner_rate"] * t)) - np.e
        raise ConfigurationError(f"unknown bound profile form {self.form!r}")


def _log_linear_fit(t, logy):
    rate, intercept = np.polyfit(t, logy, 1)
    fitted = intercept + rate * t
    ss_res = float(np.sum((logy - fitted) ** 2))
    ss_tot = float(np.sum((logy - np.mean(logy)) ** 2))
    r2 = 1.0 if ss_tot == 0.0 else 1.0 - ss_res / ss_tot
    return rate, intercept, r2


def fit_exponential_envelope(times, values, startup_fraction: float = 1e-3) -> BoundProfile:
    """Least-squares fit of scale * exp(rate t) to the growth of a series.

    Startup samples below `startup_fraction` of the series maximum sit far
    under any single-exponential envelope and are excluded from the fit; the
    scale is then inflated so the profile upper-bounds every sample.
    """
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    top = float(np.max(y[np.isfinite(y)], initial=0.0))
    if top <= 0.0:
        return BoundProfile("exponential", {"scale": 0.0, "rate": 0.0}, 1.0)
    mask = np.isfinite(y) & (y > top * startup_fraction)
    if np.count_nonzero(mask) < 2:
        return BoundProfile("exponential", {"scale": top, "rate": 0.0}, 0.0)
    rate, intercept, r2 = _log_linear_fit(t[mask], np.log(y[mask]))
    scale = math.exp(intercept)
    finite = np.isfinite(y)
    with np.errstate(over="ignore"):
        envelope = scale * np.exp(rate * t[finite])
        lift = float(np.max(y[finite] / np.maximum(envelope, 1e-300)))
    return BoundProfile("exponential", {"scale": scale * max(lift, 1.0), "rate": rate}, r2)


def fit_double_exponential_envelope(times, values) -> BoundProfile:
    """Fit exp(exp(a + b t)) - e to a positive series via log(log(e + y))."""
    t = np.asarray(times, dtype=float)
    y = np.asarray(values, dtype=float)
    keep = np.isfinite(y)
    if np.count_nonzero(keep) < 2:
        return BoundProfile("double-exponential", {"inner_intercept": 0.0, "inner_rate": 0.0}, 0.0)
    z = np.log(np.log(np.e + np.maximum(y[keep], 0.0)))
    rate, intercept, r2 = _log_linear_fit(t[keep], z)
    return BoundProfile(
        "double-exponential", {"inner_intercept": intercept, "inner_rate": rate}, r2
    )


# ---------------------------------------------------------------------------
# Trajectory checks (pure functions of the record series)


def _series(records, name):
    return np.array([getattr(r, name) for r in records], dtype=float)


@dataclass
class CheckReport:
    name: str
    passed: bool
    details: dict


def check_max_principle(records, p, drift_tol: float = 1e-3) -> CheckReport:
    """Temperature L^p norms may not rise above their initial value.

    Fails when the relative drift max_t ||theta(t)||_p / ||theta(0)||_p - 1
    exceeds `drift_tol`.
    """
    field = {2: "l2_theta", 4: "l4_theta", math.inf: "linf_theta"}.get(p)
    if field is None:
        raise ConfigurationError(f"max principle tracked for p in {{2, 4, inf}}, got {p}")
    series = _series(records, field)
    initial = series[0]
    drift = 0.0 if initial == 0.0 else float(np.max(series / initial) - 1.0)
    return CheckReport(
        name=f"max-principle-p{p}",
        passed=drift <= drift_tol,
        details={"p": p, "drift": drift, "tolerance": drift_tol, "initial": float(initial)},
    )


def check_energy(records, slack: float = 1e-3) -> CheckReport:
    """Velocity growth bound ||v(t)|| <= ||v0|| + t ||theta0|| at every sample.

    Also reports the quadratic-envelope constant for kinetic energy plus the
    cumulative H^(1/2) dissipation, which should stay O(1 + t^2).
    """
    t = _series(records, "t")
    l2v = _series(records, "l2_v")
    bound = l2v[0] + (t - t[0]) * records[0].l2_theta
    ok = bool(np.all(l2v <= bound * (1.0 + slack)))
    margin = float(np.max(l2v - bound))
    quad = (l2v**2 + _series(records, "hhalf_v_sq_cum")) / (1.0 + (t - t[0]) ** 2)
    residuals = _series(records, "energy_residual")
    return CheckReport(
        name="energy-bound",
        passed=ok,
        details={
            "worst_excess": margin,
            "slack": slack,
            "quadratic_envelope_C0": float(np.max(quad)),
            "max_energy_residual": float(np.max(np.abs(residuals))),
        },
    )


def check_gamma_smoothing(records, r2_threshold: float | None = None) -> CheckReport:
    """The damped combination accrues a finite smoothing integral.

    Fits the single-exponential envelope to the cumulative homogeneous
    H^(1/2) integral of gamma and, for contrast, to the same integral of the
    raw vorticity.  The default pass criterion is "finite and
    envelope-fittable": every sample finite and the fitted envelope finite.
    A quantitative gate on fit quality is opt-in via `r2_threshold`; note
    that the cumulative integral of a decaying integrand is log-concave, so
    a saturating series (the smoothing effect at work) caps the attainable
    log-linear R^2 well below 1.  Series with fewer than four samples carry
    no fit information and pass on finiteness alone.
    """
    t = _series(records, "t")
    gamma_cum = _series(records, "hhalf_gamma_sq_cum")
    omega_cum = _series(records, "hhalf_omega_sq_cum")
    fit_gamma = fit_exponential_envelope(t, gamma_cum)
    fit_omega = fit_exponential_envelope(t, omega_cum)
    finite = bool(np.all(np.isfinite(gamma_cum)))
    fittable = finite and math.isfinite(fit_gamma.constants["scale"])
    fit_informative = len(records) >= 4
    passed = fittable
    if r2_threshold is not None and fit_informative:
        passed = fittable and fit_gamma.r_squared >= r2_threshold
    return CheckReport(
        name="gamma-smoothing",
        passed=passed,
        details={
            "gamma_fit": fit_gamma,
            "omega_fit": fit_omega,
            "r_squared": fit_gamma.r_squared,
            "threshold": r2_threshold,
            "final_gamma_integral": float(gamma_cum[-1]),
            "final_omega_integral": float(omega_cum[-1]),
        },
    )


def check_lipschitz(records) -> CheckReport:
    """Lipschitz-velocity budget: tracked vorticity norms stay finite.

    Reports a single-exponential envelope for the cumulative B^0_(inf,1)
    vorticity integral and a double-exponential envelope for the L^r
    vorticity norm.
    """
    t = _series(records, "t")
    besov_cum = _series(records, "besov_omega_cum")
    lr = _series(records, "lr_omega")
    lip = _series(records, "lip_v")
    finite = bool(
        np.all(np.isfinite(besov_cum)) and np.all(np.isfinite(lr)) and np.all(np.isfinite(lip))
    )
    return CheckReport(
        name="lipschitz-velocity",
        passed=finite,
        details={
            "besov_cum_fit": fit_exponential_envelope(t, besov_cum),
            "lr_fit": fit_double_exponential_envelope(t, lr),
            "max_lip_v": float(np.max(lip)),
            "final_V_t": float(records[-1].V_t),
        },
    )


# ---------------------------------------------------------------------------
# Osgood bounds


def osgood_bound(a: float, times, gamma_values, mu: str = "gronwall") -> np.ndarray:
    """Upper bound for alpha(t) <= a + int gamma(s) mu(alpha(s)) ds.

    mu = 'gronwall' is the linear modulus mu(r) = r, giving a * exp(G(t))
    with G the running integral of gamma (trapezoid).  mu = 'log' is the
    modulus r (1 - log r), giving a^exp(-G) * e^(1 - exp(-G)) wherever the
    smallness condition a <= e^(1 - exp(G)) holds; points where it fails
    are reported as vacuous (+inf).  a = 0 propagates to the zero bound.
    """
    if a < 0:
        raise ConfigurationError(f"initial size a must be nonnegative, got {a}")
    t = np.asarray(times, dtype=float)
    g = np.asarray(gamma_values, dtype=float)
    if t.shape != g.shape:
        raise ConfigurationError("times and gamma series must have matching shapes")
    running = np.concatenate(
        [[0.0], np.cumsum(0.5 * np.diff(t) * (g[:-1] + g[1:]))]
    )
    if mu == "gronwall":
        return a * np.exp(running)
    if mu == "log":
        if a == 0.0:
            return np.zeros_like(t)
        with np.errstate(over="ignore"):
            admissible = a <= np.exp(1.0 - np.exp(running))
            shrink = np.exp(-running)
            bound = a**shrink * np.exp(1.0 - shrink)
        return np.where(admissible, bound, np.inf)
    raise ConfigurationError(f"mu must be 'gronwall' or 'log', got {mu!r}")


def linear_gamma_smoothing_integral(gamma0: SpectralField, t: float) -> float:
    """Closed-form smoothing integral when gamma decays freely (v = 0, alpha = 1).

    With gamma(tau) = exp(-|k| tau) gamma0 per mode, the time integral of the
    squared homogeneous H^(1/2) norm is
    (2 pi)^2 sum_k (1 - exp(-2 |k| t)) |gamma0(k)|^2 / 2.
    """
    grid = gamma0.grid
    power = np.abs(gamma0.coeffs) ** 2
    nz = grid.kmag > 0
    terms = (1.0 - np.exp(-2.0 * grid.kmag[nz] * t)) * power[nz] / 2.0
    return float((2.0 * np.pi) ** 2 * np.sum(terms))


def state_difference(s1: SimState, s2: SimState) -> float:
    """Separation metric: ||theta1 - theta2||_(B^-1_(2,inf)) + ||v1 - v2||_(B^0_(2,inf))."""
    bank = build_filter_bank(s1.grid)
    dtheta = s1.theta_hat - s2.theta_hat
    dv = biot_savart(s1.omega_hat - s2.omega_hat)
    theta_part = besov_norm(dtheta, BesovSpec(-1.0, 2.0, math.inf), bank)
    vel_part = besov_norm(dv, BesovSpec(0.0, 2.0, math.inf), bank)
    return theta_part + vel_part
