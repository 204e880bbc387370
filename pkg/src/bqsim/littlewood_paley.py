"""Dyadic frequency decomposition, Besov norms, and paraproduct machinery.

The band filters are built by telescoping a single smooth radial transition
function g with g(r) = 1 for r <= 1 and g(r) = 0 for r >= 2, constructed
from the classical exp(-1/t) bump:

    chi(k)   = g(|k|)                                   low-frequency cutoff
    phi_q(k) = g(|k| / 2^(q+1)) - g(|k| / 2^q)          annulus 2^q < |k| < 2^(q+2)

Because the sum telescopes, chi + sum_q phi_q == 1 at every wavevector once
q reaches qmax = ceil(log2(n/2)) + 1, with no normalization step.  Block
q = -1 denotes chi.  The homogeneous variants drop the zero mode and use
annular bands only; the annulus g(|k|) - g(2|k|) (support 1/2 < |k| < 2)
covers the lowest nonzero torus modes in that case.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import ConfigurationError, InvalidInputError
from .spectral import (
    Grid,
    PhysicalField,
    SpectralField,
    VectorField,
    advect,
    apply_multiplier,
    dealias,
    forward_transform,
    inverse_transform,
    lp_norm,
    riesz,
)


def smooth_transition(r: np.ndarray) -> np.ndarray:
    """C-infinity monotone function: 1 for r <= 1, 0 for r >= 2."""
    r = np.asarray(r, dtype=float)
    out = np.ones_like(r)
    out[r >= 2.0] = 0.0
    mid = (r > 1.0) & (r < 2.0)
    t = r[mid]
    upper = np.exp(-1.0 / (2.0 - t))
    lower = np.exp(-1.0 / (t - 1.0))
    out[mid] = upper / (upper + lower)
    return out


class DyadicFilterBank:
    """Smooth dyadic band multipliers on a grid; block q = -1 is the low cutoff."""

    def __init__(self, grid: Grid):
        self.grid = grid
        self.qmin = -1
        self.qmax = int(math.ceil(math.log2(grid.n / 2))) + 1
        kmag = grid.kmag
        g_prev = smooth_transition(kmag)
        self.chi = g_prev.copy()
        phi = []
        for q in range(0, self.qmax + 1):
            g_next = smooth_transition(kmag / 2.0 ** (q + 1))
            phi.append(g_next - g_prev)
            g_prev = g_next
        self.phi = phi
        # Annulus with support (1/2, 2) covering torus modes 1 <= |k| < 2; it
        # replaces chi when a decomposition must avoid the zero mode.
        self.phi_low_annulus = self.chi - smooth_transition(2.0 * kmag)

    def block_multiplier(self, q: int) -> np.ndarray:
        if q == -1:
            return self.chi
        if 0 <= q <= self.qmax:
            return self.phi[q]
        raise InvalidInputError(
            f"band index q={q} outside [{self.qmin}, {self.qmax}] for n={self.grid.n}"
        )

    def bands(self, homogeneous: bool = False):
        """Yield (q, multiplier) pairs covering the decomposition."""
        if homogeneous:
            yield -1, self.phi_low_annulus
        else:
            yield -1, self.chi
        for q in range(0, self.qmax + 1):
            yield q, self.phi[q]


_BANK_CACHE: dict[int, DyadicFilterBank] = {}


def build_filter_bank(grid: Grid) -> DyadicFilterBank:
    """Return the (cached) filter bank for this grid."""
    bank = _BANK_CACHE.get(grid.n)
    if bank is None:
        bank = DyadicFilterBank(grid)
        _BANK_CACHE[grid.n] = bank
    return bank


def dyadic_block(f: SpectralField, q: int, bank: DyadicFilterBank) -> SpectralField:
    """Frequency-localized piece Delta_q f (q = -1 gives the low block)."""
    return apply_multiplier(f, bank.block_multiplier(q))


def partial_sum(f: SpectralField, q: int, bank: DyadicFilterBank) -> SpectralField:
    """Low-pass sum S_q f = sum of blocks Delta_p with p <= q - 1.

    By telescoping the multiplier equals g(|k| / 2^q) for q >= 0, so
    S_(qmax+1) f recovers f exactly.  For q <= -1 the sum is empty.
    """
    if q <= -1:
        return SpectralField(f.grid, np.zeros_like(f.coeffs))
    return apply_multiplier(f, smooth_transition(f.grid.kmag / 2.0**q))


@dataclass(frozen=True)
class BesovSpec:
    """Index triple (s, p, r) plus the homogeneous/inhomogeneous switch."""

    s: float
    p: float
    r: float
    homogeneous: bool = False

    def __post_init__(self):
        if not (self.p == math.inf or self.p >= 1):
            raise ConfigurationError(f"Besov integrability p must be >= 1, got {self.p}")
        if not (self.r == math.inf or self.r >= 1):
            raise ConfigurationError(f"Besov summation r must be >= 1, got {self.r}")


def _band_lp(f, mult: np.ndarray, p: float) -> float:
    if isinstance(f, VectorField):
        b1 = inverse_transform(apply_multiplier(f.x1, mult))
        b2 = inverse_transform(apply_multiplier(f.x2, mult))
        return lp_norm(VectorField(b1, b2), p)
    return lp_norm(inverse_transform(apply_multiplier(f, mult)), p)


def band_lp_norms(f, p: float, bank: DyadicFilterBank, homogeneous: bool = False):
    """Per-band L^p norms: arrays (q indices, norms of Delta_q f)."""
    qs, norms = [], []
    for q, mult in bank.bands(homogeneous):
        qs.append(q)
        norms.append(_band_lp(f, mult, p))
    return np.array(qs), np.array(norms)


def besov_norm(f, spec: BesovSpec, bank: DyadicFilterBank) -> float:
    """Discrete Besov norm: l^r aggregation of 2^(qs) * ||Delta_q f||_p.

    Accepts a scalar SpectralField or a spectral VectorField (bands of a
    vector use the pointwise Euclidean magnitude).  The homogeneous variant
    never touches the zero mode: all of its band multipliers vanish at k = 0.
    """
    qs, norms = band_lp_norms(f, spec.p, bank, spec.homogeneous)
    terms = 2.0 ** (qs * spec.s) * norms
    if spec.r == math.inf:
        return float(np.max(terms))
    return float(np.sum(terms**spec.r) ** (1.0 / spec.r))


def mixed_time_besov_norm(
    times: np.ndarray,
    band_norms: np.ndarray,
    qs: np.ndarray,
    s: float,
    rho: float,
    r: float,
) -> float:
    """Space-time Besov norm with the time integral taken band-first.

    `band_norms[i, j]` is ||Delta_(qs[j]) u(times[i])||_p.  Each band is
    reduced over time with the L^rho quadrature (trapezoid; rho = inf takes
    the max), weighted by 2^(qs), then aggregated in l^r over bands.
    """
    band_norms = np.asarray(band_norms, dtype=float)
    if rho == math.inf:
        per_band = np.max(band_norms, axis=0)
    else:
        per_band = np.trapezoid(band_norms**rho, np.asarray(times), axis=0) ** (1.0 / rho)
    terms = 2.0 ** (np.asarray(qs) * s) * per_band
    if r == math.inf:
        return float(np.max(terms))
    return float(np.sum(terms**r) ** (1.0 / r))


def bony_decompose(u: SpectralField, w: SpectralField, bank: DyadicFilterBank):
    """Split the product u*w into (T_u w, T_w u, R(u, w)), each dealiased.

    T_u w collects S_(q-1) u * Delta_q w, the remainder pairs blocks at
    distance <= 1.  The three parts sum to the dealiased pseudo-spectral
    product because the block pairing partitions all band pairs.
    """
    if u.grid != w.grid:
        raise InvalidInputError("fields live on different grids")
    grid = u.grid
    qs = list(range(-1, bank.qmax + 1))
    bu = [inverse_transform(dyadic_block(u, q, bank)).samples for q in qs]
    bw = [inverse_transform(dyadic_block(w, q, bank)).samples for q in qs]
    cum_u = np.cumsum(bu, axis=0)
    cum_w = np.cumsum(bw, axis=0)

    t_uw = np.zeros((grid.n, grid.n))
    t_wu = np.zeros((grid.n, grid.n))
    for q in range(1, bank.qmax + 1):
        # index q - 1 in cum_* is the partial sum over blocks -1 .. q-2
        t_uw += cum_u[q - 1] * bw[q + 1]
        t_wu += cum_w[q - 1] * bu[q + 1]

    remainder = np.zeros((grid.n, grid.n))
    for i, _q in enumerate(qs):
        close = bw[i].copy()
        if i - 1 >= 0:
            close += bw[i - 1]
        if i + 1 < len(qs):
            close += bw[i + 1]
        remainder += bu[i] * close

    def _pack(samples):
        return dealias(forward_transform(PhysicalField(grid, samples)))

    return _pack(t_uw), _pack(t_wu), _pack(remainder)


def commutator_riesz(v: VectorField, theta: SpectralField) -> VectorField:
    """Vector commutator of the Riesz transform with multiplication by v.

    Component i is R(v_i * theta) - v_i * R(theta) with dealiased products.
    For divergence-free v its divergence equals the transport commutator
    R(v . grad theta) - v . grad(R theta).
    """
    grid = theta.grid
    th = inverse_transform(theta).samples
    rth = inverse_transform(riesz(theta)).samples
    out = []
    for comp in v.components():
        vi = inverse_transform(comp).samples
        first = riesz(dealias(forward_transform(PhysicalField(grid, vi * th))))
        second = dealias(forward_transform(PhysicalField(grid, vi * rth)))
        out.append(first - second)
    return VectorField(out[0], out[1])


def commutator_block(
    v: VectorField, f: SpectralField, q: int, bank: DyadicFilterBank
) -> SpectralField:
    """Block/transport commutator Delta_q(v . grad f) - v . grad(Delta_q f)."""
    return dyadic_block(advect(v, f), q, bank) - advect(v, dyadic_block(f, q, bank))


def band_kernel(bank: DyadicFilterBank, q: int) -> PhysicalField:
    """Physical-space convolution kernel realizing block q.

    Normalized so that torus convolution with the kernel multiplies
    Fourier-series coefficients by the band multiplier.
    """
    grid = bank.grid
    coeffs = bank.block_multiplier(q).astype(complex) / (2.0 * np.pi) ** 2
    return inverse_transform(SpectralField(grid, coeffs))


def centered_radius(grid: Grid) -> np.ndarray:
    """Distance to the origin with coordinates folded into [-pi, pi)."""
    xc = np.mod(grid.x + np.pi, 2.0 * np.pi) - np.pi
    return np.hypot(xc[:, None], xc[None, :])
