"""Initial-data presets and seeded random fields.

Random fields are drawn mode by mode in a fixed ring-by-ring order of the
half wavevector lattice, so a given (key, spectrum) pair produces the same
low-mode coefficients at every resolution: refining the grid only appends
new high modes.  That makes refinement studies compare discretizations of
one underlying function instead of two unrelated samples.
"""

from __future__ import annotations

import functools

import numpy as np

from .spectral import (
    Grid,
    PhysicalField,
    SpectralField,
    VectorField,
    dealias,
    forward_transform,
    leray_project,
)


@functools.lru_cache(maxsize=None)
def _half_lattice(kmax: int):
    """Half of the mode lattice (k1 > 0, or k1 == 0 and k2 > 0), ring ordered.

    Ring ordering by max(|k1|, |k2|) guarantees the array for a smaller kmax
    is a prefix of the array for a larger one.  Returns integer arrays
    (k1, k2) and the Euclidean magnitudes.
    """
    modes = []
    for ring in range(1, kmax + 1):
        ring_modes = [
            (k1, k2)
            for k1 in range(-ring, ring + 1)
            for k2 in range(-ring, ring + 1)
            if max(abs(k1), abs(k2)) == ring and (k1 > 0 or (k1 == 0 and k2 > 0))
        ]
        modes.extend(sorted(ring_modes))
    k = np.array(modes, dtype=int)
    return k[:, 0], k[:, 1], np.hypot(k[:, 0], k[:, 1])


def random_scalar_field(
    grid: Grid, spectrum_gamma: float, amplitude: float, key: tuple[int, ...]
) -> SpectralField:
    """Mean-free random real field with coefficients ~ |k|^(-gamma).

    Modes are filled up to the dealiasing cutoff max(|k1|, |k2|) <= n/3 with
    unit complex Gaussians shaped by the power-law envelope; the conjugate
    half follows by symmetry.  `key` seeds the draw deterministically.
    """
    n = grid.n
    k1, k2, mag = _half_lattice(int(n / 3.0))
    rng = np.random.default_rng(key)
    draws = rng.standard_normal((len(mag), 2))
    c = amplitude * (draws[:, 0] + 1j * draws[:, 1]) / np.sqrt(2.0) * mag**(-spectrum_gamma)
    coeffs = np.zeros((n, n), dtype=complex)
    coeffs[k1 % n, k2 % n] = c
    coeffs[-k1 % n, -k2 % n] = np.conj(c)
    return SpectralField(grid, coeffs)


def random_divfree_velocity(
    grid: Grid, spectrum_gamma: float, amplitude: float, key: tuple[int, ...]
) -> VectorField:
    """Divergence-free random velocity: two shaped noises, Leray projected."""
    u1 = random_scalar_field(grid, spectrum_gamma, amplitude, key + (1,))
    u2 = random_scalar_field(grid, spectrum_gamma, amplitude, key + (2,))
    return leray_project(VectorField(u1, u2))


def taylor_green_vorticity(grid: Grid, amplitude: float = 1.0) -> SpectralField:
    """Cellular vorticity sin(x1) sin(x2)."""
    x1, x2 = grid.nodes()
    return dealias(forward_transform(PhysicalField(grid, amplitude * np.sin(x1) * np.sin(x2))))


def gaussian_blob(
    grid: Grid,
    width: float = 0.5,
    amplitude: float = 1.0,
    mean_subtract: bool = False,
) -> SpectralField:
    """Gaussian bump exp(-|x - pi|^2 / width^2) centered in the box."""
    x1, x2 = grid.nodes()
    r2 = (x1 - np.pi) ** 2 + (x2 - np.pi) ** 2
    samples = amplitude * np.exp(-r2 / width**2)
    if mean_subtract:
        samples = samples - np.mean(samples)
    return dealias(forward_transform(PhysicalField(grid, samples)))
