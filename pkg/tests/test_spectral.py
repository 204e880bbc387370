"""Oracle tests for the Fourier core: transforms, multipliers, norms."""

import math

import numpy as np
import pytest

from bqsim import (
    Grid,
    InvalidInputError,
    ConfigurationError,
    PhysicalField,
    SpectralField,
    VectorField,
    advect,
    biot_savart,
    curl,
    dealias,
    divergence,
    forward_transform,
    fractional_dissipation,
    gradient,
    gradient_lp_norm,
    grid_max_velocity,
    integrate,
    inverse_transform,
    leray_project,
    lp_norm,
    max_gradient,
    partial_derivative,
    riesz,
    sobolev_norm,
    to_physical,
    vector_sobolev_norm,
)
from bqsim.fields import random_scalar_field
from bqsim.spectral import hermitian_defect

# ||sin x1||_{L^2([0,2pi)^2)} = sqrt(2 pi^2) = pi sqrt(2)
L2_SIN = 4.442882938158366


def grid64():
    return Grid(64)


def spectral_sin(grid, k, axis=0):
    x1, x2 = grid.nodes()
    x = x1 if axis == 0 else x2
    return forward_transform(PhysicalField(grid, np.sin(k * x)))


class TestGrid:
    def test_rejects_odd_size(self):
        with pytest.raises(ConfigurationError):
            Grid(65)

    def test_rejects_small_size(self):
        with pytest.raises(ConfigurationError):
            Grid(8)

    def test_wavevectors_are_fft_ordered_integers(self):
        g = Grid(16)
        assert g.k1[0, 0] == 0 and g.k1[1, 0] == 1 and g.k1[-1, 0] == -1
        assert g.k1[8, 0] == -8  # Nyquist carries the negative sign
        assert g.k2[0, 1] == 1
        assert g.kmag[0, 0] == 0.0
        assert g.kmag[3, 4] == pytest.approx(5.0)

    def test_nodes_span_the_torus(self):
        g = Grid(32)
        x1, x2 = g.nodes()
        assert x1[0, 0] == 0.0
        assert x1[1, 0] == pytest.approx(2 * np.pi / 32)
        assert x2[0, -1] == pytest.approx(2 * np.pi * 31 / 32)

    def test_dealias_mask_cutoff(self):
        g = Grid(64)
        keep = g.dealias_keep
        assert keep[21, 0] and keep[0, 21]  # 21 <= 64/3
        assert not keep[22, 0] and not keep[0, 22]


class TestTransforms:
    def test_roundtrip_matches_input(self):
        g = grid64()
        rng = np.random.default_rng(7)
        samples = rng.standard_normal((64, 64))
        back = inverse_transform(forward_transform(PhysicalField(g, samples)))
        assert np.max(np.abs(back.samples - samples)) < 1e-12

    def test_forward_rejects_nonfinite(self):
        g = grid64()
        bad = np.zeros((64, 64))
        bad[3, 3] = np.nan
        with pytest.raises(InvalidInputError):
            forward_transform(PhysicalField(g, bad))

    def test_single_mode_coefficients(self):
        g = grid64()
        f = spectral_sin(g, 3)
        # sin(3 x1) = (e^{3i x1} - e^{-3i x1}) / 2i
        assert f.coeffs[3, 0] == pytest.approx(-0.5j, abs=1e-14)
        assert f.coeffs[-3, 0] == pytest.approx(0.5j, abs=1e-14)

    def test_inverse_rejects_broken_symmetry(self):
        g = grid64()
        coeffs = np.zeros((64, 64), dtype=complex)
        coeffs[1, 0] = 1.0  # missing the conjugate partner at -1
        with pytest.raises(InvalidInputError):
            inverse_transform(SpectralField(g, coeffs))

    def test_noise_level_asymmetry_is_tolerated(self):
        g = grid64()
        coeffs = np.zeros((64, 64), dtype=complex)
        coeffs[1, 0] = 1e-17  # below float64 noise of any O(1) ancestor
        samples = inverse_transform(SpectralField(g, coeffs)).samples
        assert np.max(np.abs(samples)) < 1e-12

    def test_hermitian_defect_zero_field(self):
        g = grid64()
        assert hermitian_defect(SpectralField(g, np.zeros((64, 64), dtype=complex))) == 0.0


class TestDerivatives:
    def test_partial_derivative_single_mode(self):
        g = grid64()
        x1, _ = g.nodes()
        df = inverse_transform(partial_derivative(spectral_sin(g, 3), 0))
        assert np.max(np.abs(df.samples - 3 * np.cos(3 * x1))) < 1e-10

    def test_partial_derivative_other_axis_is_zero(self):
        g = grid64()
        df = inverse_transform(partial_derivative(spectral_sin(g, 3), 1))
        assert np.max(np.abs(df.samples)) < 1e-12

    def test_partial_derivative_rejects_bad_axis(self):
        with pytest.raises(ConfigurationError):
            partial_derivative(spectral_sin(grid64(), 1), 2)

    def test_gradient_components(self):
        g = grid64()
        x1, x2 = g.nodes()
        f = forward_transform(PhysicalField(g, np.sin(2 * x1) * np.cos(x2)))
        grad = gradient(f)
        g1 = inverse_transform(grad.x1).samples
        g2 = inverse_transform(grad.x2).samples
        assert np.max(np.abs(g1 - 2 * np.cos(2 * x1) * np.cos(x2))) < 1e-10
        assert np.max(np.abs(g2 + np.sin(2 * x1) * np.sin(x2))) < 1e-10


class TestMultiplierOperators:
    def test_dissipation_alpha_one_single_mode(self):
        g = grid64()
        x1, _ = g.nodes()
        out = inverse_transform(fractional_dissipation(spectral_sin(g, 3), 1.0))
        assert np.max(np.abs(out.samples - 3 * np.sin(3 * x1))) < 1e-10

    def test_dissipation_alpha_two_is_minus_laplacian(self):
        g = grid64()
        x1, x2 = g.nodes()
        f = forward_transform(PhysicalField(g, np.sin(3 * x1) * np.sin(4 * x2)))
        out = inverse_transform(fractional_dissipation(f, 2.0))
        assert np.max(np.abs(out.samples - 25 * np.sin(3 * x1) * np.sin(4 * x2))) < 1e-9

    def test_dissipation_rejects_bad_alpha(self):
        with pytest.raises(ConfigurationError):
            fractional_dissipation(spectral_sin(grid64(), 1), 2.5)

    def test_dissipation_kills_mean(self):
        g = grid64()
        coeffs = np.zeros((64, 64), dtype=complex)
        coeffs[0, 0] = 2.0
        out = fractional_dissipation(SpectralField(g, coeffs), 1.0)
        assert out.coeffs[0, 0] == 0.0

    def test_riesz_turns_sine_into_cosine(self):
        g = grid64()
        x1, _ = g.nodes()
        out = inverse_transform(riesz(spectral_sin(g, 3)))
        assert np.max(np.abs(out.samples - np.cos(3 * x1))) < 1e-10

    def test_riesz_annihilates_transverse_modes(self):
        g = grid64()
        out = inverse_transform(riesz(spectral_sin(g, 5, axis=1)))
        assert np.max(np.abs(out.samples)) < 1e-12


class TestBiotSavart:
    def test_shear_oracle(self):
        g = grid64()
        x1, _ = g.nodes()
        v = to_physical(biot_savart(spectral_sin(g, 1)))
        assert np.max(np.abs(v.x1.samples)) < 1e-12
        assert np.max(np.abs(v.x2.samples + np.cos(x1))) < 1e-12

    def test_velocity_is_divergence_free(self):
        g = grid64()
        w = random_scalar_field(g, 2.0, 1.0, (1, 2))
        div = inverse_transform(divergence(biot_savart(w)))
        assert np.max(np.abs(div.samples)) < 1e-11

    def test_curl_inverts_biot_savart(self):
        g = grid64()
        w = random_scalar_field(g, 2.0, 1.0, (3, 4))
        back = curl(biot_savart(w))
        assert np.max(np.abs(back.coeffs - w.coeffs)) < 1e-12

    def test_rejects_mean_carrying_vorticity(self):
        g = grid64()
        coeffs = np.zeros((64, 64), dtype=complex)
        coeffs[0, 0] = 1.0
        with pytest.raises(InvalidInputError):
            biot_savart(SpectralField(g, coeffs))


class TestLerayAndAdvection:
    def test_leray_removes_gradient_part(self):
        g = grid64()
        f = random_scalar_field(g, 2.0, 1.0, (5, 6))
        grad = gradient(f)
        projected = leray_project(grad)
        assert lp_norm(to_physical(projected), 2) < 1e-11

    def test_leray_idempotent(self):
        g = grid64()
        v = VectorField(
            random_scalar_field(g, 2.0, 1.0, (7, 8)),
            random_scalar_field(g, 2.0, 1.0, (9, 10)),
        )
        once = leray_project(v)
        twice = leray_project(once)
        assert np.max(np.abs(once.x1.coeffs - twice.x1.coeffs)) < 1e-13
        assert np.max(np.abs(once.x2.coeffs - twice.x2.coeffs)) < 1e-13

    def test_advect_by_unit_velocity_is_x1_derivative(self):
        g = grid64()
        ones = np.zeros((64, 64), dtype=complex)
        ones[0, 0] = 1.0
        zero = np.zeros((64, 64), dtype=complex)
        v = VectorField(SpectralField(g, ones), SpectralField(g, zero))
        f = spectral_sin(g, 3)
        adv = advect(v, f)
        expected = dealias(partial_derivative(f, 0))
        assert np.max(np.abs(adv.coeffs - expected.coeffs)) < 1e-13

    def test_dealias_zeroes_high_modes_only(self):
        g = grid64()
        coeffs = np.zeros((64, 64), dtype=complex)
        coeffs[21, 0] = 1.0
        coeffs[43, 0] = 1.0  # k1 = -21
        coeffs[25, 0] = 1.0  # beyond n/3
        out = dealias(SpectralField(g, coeffs))
        assert out.coeffs[21, 0] == 1.0 and out.coeffs[43, 0] == 1.0
        assert out.coeffs[25, 0] == 0.0


class TestNorms:
    def test_l2_of_sine(self):
        g = grid64()
        x1, _ = g.nodes()
        assert lp_norm(PhysicalField(g, np.sin(x1)), 2) == pytest.approx(L2_SIN, rel=1e-13)

    def test_l4_of_sine(self):
        g = grid64()
        x1, _ = g.nodes()
        # int sin^4 x1 over the box = (3/4) pi * 2 pi
        expected = (1.5 * math.pi**2) ** 0.25
        assert lp_norm(PhysicalField(g, np.sin(x1)), 4) == pytest.approx(expected, rel=1e-13)

    def test_linf_of_sine(self):
        g = grid64()
        x1, _ = g.nodes()
        assert lp_norm(PhysicalField(g, np.sin(x1)), math.inf) == pytest.approx(1.0, rel=1e-12)

    def test_lp_rejects_bad_exponent(self):
        g = grid64()
        with pytest.raises(ConfigurationError):
            lp_norm(PhysicalField(g, np.zeros((64, 64))), 0.5)

    def test_vector_lp_uses_pointwise_magnitude(self):
        g = grid64()
        x1, _ = g.nodes()
        v = VectorField(PhysicalField(g, np.sin(x1)), PhysicalField(g, np.cos(x1)))
        # |v| == 1 pointwise
        assert lp_norm(v, 2) == pytest.approx(2 * math.pi, rel=1e-13)
        assert lp_norm(v, math.inf) == pytest.approx(1.0, rel=1e-13)

    def test_parseval(self):
        g = grid64()
        f = random_scalar_field(g, 2.0, 1.0, (11, 12))
        phys = inverse_transform(f)
        assert lp_norm(phys, 2) == pytest.approx(sobolev_norm(f, 0.0), rel=1e-12)

    def test_sobolev_single_mode(self):
        g = grid64()
        f = spectral_sin(g, 3)
        assert sobolev_norm(f, 1.0, homogeneous=True) == pytest.approx(3 * L2_SIN, rel=1e-12)
        assert sobolev_norm(f, 1.0) == pytest.approx(math.sqrt(10) * L2_SIN, rel=1e-12)

    def test_homogeneous_sobolev_ignores_mean(self):
        g = grid64()
        coeffs = np.zeros((64, 64), dtype=complex)
        coeffs[0, 0] = 5.0
        assert sobolev_norm(SpectralField(g, coeffs), 0.5, homogeneous=True) == 0.0

    def test_gradient_l2_matches_h1_seminorm(self):
        g = grid64()
        w = random_scalar_field(g, 2.5, 1.0, (13, 14))
        v = biot_savart(w)
        assert gradient_lp_norm(v, 2) == pytest.approx(
            vector_sobolev_norm(v, 1.0, homogeneous=True), rel=1e-11
        )

    def test_max_gradient_of_shear(self):
        g = grid64()
        v = biot_savart(spectral_sin(g, 1))
        # v = (0, -cos x1), so the only gradient entry is sin x1
        assert max_gradient(v) == pytest.approx(1.0, rel=1e-12)

    def test_grid_max_velocity(self):
        g = grid64()
        v = biot_savart(spectral_sin(g, 1))
        assert grid_max_velocity(v) == pytest.approx(1.0, rel=1e-12)

    def test_integrate_sine_squared(self):
        g = grid64()
        x1, _ = g.nodes()
        val = integrate(PhysicalField(g, np.sin(x1) ** 2))
        assert val == pytest.approx(2 * math.pi**2, rel=1e-13)
