"""Flat key=value run configuration and initial-data presets."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .dynamics import SimState
from .errors import ConfigurationError
from .fields import (
    gaussian_blob,
    random_divfree_velocity,
    random_scalar_field,
    taylor_green_vorticity,
)
from .littlewood_paley import BesovSpec, besov_norm, build_filter_bank
from .spectral import (
    Grid,
    SpectralField,
    biot_savart,
    curl,
    dealias,
    gradient_lp_norm,
    inverse_transform,
    lp_norm,
    to_physical,
    vector_sobolev_norm,
)

PRESETS = ("zero", "taylor-green", "blob", "tg-blob", "random")


@dataclass
class RunConfig:
    """Validated simulation parameters; defaults match the solver contract."""

    n: int
    t_end: float
    preset: str
    alpha: float = 1.0
    cfl: float = 0.5
    dt: float | None = None
    seed: int = 0
    diag_cadence: int = 10
    output_dir: str = "out"
    omega_lr: float = 3.0
    checkpoint_times: tuple = ()
    amplitude: float = 1.0
    tg_amplitude: float = 1.0
    blob_amplitude: float = 1.0
    blob_width: float = 0.5
    blob_mean_subtract: bool = False
    random_gamma: float = 2.5
    random_amplitude: float = 1.0
    source_text: str = field(default="", repr=False, compare=False)


def _parse_bool(key, raw):
    lowered = raw.lower()
    if lowered in ("true", "1", "yes", "on"):
        return True
    if lowered in ("false", "0", "no", "off"):
        return False
    raise ConfigurationError(f"config key '{key}': expected a boolean, got {raw!r}")


def _parse_float(key, raw):
    try:
        return float(raw)
    except ValueError:
        raise ConfigurationError(f"config key '{key}': expected a number, got {raw!r}") from None


def _parse_int(key, raw):
    try:
        return int(raw)
    except ValueError:
        raise ConfigurationError(f"config key '{key}': expected an integer, got {raw!r}") from None


def _parse_times(key, raw):
    if not raw.strip():
        return ()
    try:
        times = tuple(float(part) for part in raw.split(","))
    except ValueError:
        raise ConfigurationError(
            f"config key '{key}': expected comma-separated times, got {raw!r}"
        ) from None
    if any(t <= 0 for t in times):
        raise ConfigurationError(f"config key '{key}': checkpoint times must be positive")
    return tuple(sorted(set(times)))


_PARSERS = {
    "n": _parse_int,
    "t_end": _parse_float,
    "preset": lambda key, raw: raw,
    "alpha": _parse_float,
    "cfl": _parse_float,
    "dt": _parse_float,
    "seed": _parse_int,
    "diag_cadence": _parse_int,
    "output_dir": lambda key, raw: raw,
    "omega_lr": _parse_float,
    "checkpoint_times": _parse_times,
    "amplitude": _parse_float,
    "tg_amplitude": _parse_float,
    "blob_amplitude": _parse_float,
    "blob_width": _parse_float,
    "blob_mean_subtract": _parse_bool,
    "random_gamma": _parse_float,
    "random_amplitude": _parse_float,
}

_REQUIRED = ("n", "t_end", "preset")


def parse_config(text: str) -> RunConfig:
    """Parse a flat key=value configuration; '#' starts a comment.

    Unknown keys and constraint violations raise ConfigurationError naming
    the offending key.  Missing optional keys take their documented defaults.
    """
    values = {}
    for lineno, raw_line in enumerate(text.splitlines(), start=1):
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            raise ConfigurationError(f"line {lineno}: expected 'key = value', got {raw_line!r}")
        key, raw_value = (part.strip() for part in line.split("=", 1))
        if key not in _PARSERS:
            raise ConfigurationError(f"unknown config key '{key}' on line {lineno}")
        if key in values:
            raise ConfigurationError(f"duplicate config key '{key}' on line {lineno}")
        values[key] = _PARSERS[key](key, raw_value)

    for key in _REQUIRED:
        if key not in values:
            raise ConfigurationError(f"missing required config key '{key}'")

    config = RunConfig(source_text=text, **values)
    _validate(config)
    return config


def _validate(config: RunConfig):
    if config.n % 2 != 0 or config.n < 16:
        raise ConfigurationError(f"config key 'n': must be even and >= 16, got {config.n}")
    if not 0.0 < config.alpha <= 2.0:
        raise ConfigurationError(f"config key 'alpha': must lie in (0, 2], got {config.alpha}")
    if config.t_end < 0:
        raise ConfigurationError(f"config key 't_end': must be >= 0, got {config.t_end}")
    if config.cfl <= 0:
        raise ConfigurationError(f"config key 'cfl': must be positive, got {config.cfl}")
    if config.dt is not None and config.dt <= 0:
        raise ConfigurationError(f"config key 'dt': must be positive, got {config.dt}")
    if config.diag_cadence < 1:
        raise ConfigurationError(
            f"config key 'diag_cadence': must be >= 1, got {config.diag_cadence}"
        )
    if config.preset not in PRESETS:
        raise ConfigurationError(
            f"config key 'preset': unknown preset {config.preset!r}; choose from {PRESETS}"
        )
    if config.blob_width <= 0:
        raise ConfigurationError(
            f"config key 'blob_width': must be positive, got {config.blob_width}"
        )
    if config.omega_lr < 1:
        raise ConfigurationError(f"config key 'omega_lr': must be >= 1, got {config.omega_lr}")
    if any(t > config.t_end for t in config.checkpoint_times):
        raise ConfigurationError(
            "config key 'checkpoint_times': every checkpoint time must be <= t_end"
        )


def config_echo(config: RunConfig) -> list[str]:
    """Canonical one-line-per-key echo of the effective configuration."""
    pairs = [
        ("n", config.n),
        ("t_end", config.t_end),
        ("preset", config.preset),
        ("alpha", config.alpha),
        ("cfl", config.cfl),
        ("dt", "adaptive" if config.dt is None else config.dt),
        ("seed", config.seed),
        ("diag_cadence", config.diag_cadence),
        ("omega_lr", config.omega_lr),
        ("checkpoint_times", ",".join(f"{t:g}" for t in config.checkpoint_times) or "none"),
        ("amplitude", config.amplitude),
        ("tg_amplitude", config.tg_amplitude),
        ("blob_amplitude", config.blob_amplitude),
        ("blob_width", config.blob_width),
        ("blob_mean_subtract", config.blob_mean_subtract),
        ("random_gamma", config.random_gamma),
        ("random_amplitude", config.random_amplitude),
    ]
    return [f"{k} = {v}" for k, v in pairs]


def make_initial_data(config: RunConfig) -> SimState:
    """Deterministic initial state for the configured preset and seed.

    The fields are dealiased so that pseudo-spectral products start exactly
    representable.  The global `amplitude` rescales the whole state, which
    is how linear-regime experiments are set up.
    """
    grid = Grid(config.n)
    zero = SpectralField(grid, np.zeros((grid.n, grid.n), dtype=complex))
    omega, theta = zero, zero

    if config.preset in ("taylor-green", "tg-blob"):
        omega = taylor_green_vorticity(grid, config.tg_amplitude)
    if config.preset in ("blob", "tg-blob"):
        theta = gaussian_blob(
            grid, config.blob_width, config.blob_amplitude, config.blob_mean_subtract
        )
    if config.preset == "random":
        v = random_divfree_velocity(
            grid, config.random_gamma, config.random_amplitude, (config.seed, 0)
        )
        omega = dealias(curl(v))
        theta = dealias(
            random_scalar_field(grid, config.random_gamma, config.random_amplitude, (config.seed, 3))
        )

    omega = dealias(omega) * config.amplitude
    theta = dealias(theta) * config.amplitude
    return SimState(0.0, omega, theta, config.alpha)


def initial_norms(state: SimState, p: float = 4.0) -> dict:
    """Norms of the initial data entering the global-regularity hypotheses:
    theta in L2 and B^0_(inf,1), v in H^1 with grad v in L^p."""
    bank = build_filter_bank(state.grid)
    v = biot_savart(state.omega_hat)
    return {
        "l2_theta": lp_norm(inverse_transform(state.theta_hat), 2),
        "besov_theta_inf1": besov_norm(state.theta_hat, BesovSpec(0.0, math.inf, 1.0), bank),
        "h1_v": vector_sobolev_norm(v, 1.0),
        "grad_v_lp": gradient_lp_norm(v, p),
        "lp_exponent": p,
        "l2_v": lp_norm(to_physical(v), 2),
    }
