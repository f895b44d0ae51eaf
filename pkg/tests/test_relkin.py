"""Tests for the boost kinematics and field geometry."""

import math

import numpy as np
import pytest

from spinboost.relkin import (
    BoostParams,
    boost_em_field,
    effective_field,
    eta_max,
    eta_profile,
    rapidity_from_beta,
)

COSH_2P5 = 6.132289479663686


class TestRapidity:
    def test_zero(self):
        assert rapidity_from_beta(0.0) == 0.0

    def test_quoted_amplification(self):
        xi = rapidity_from_beta(math.tanh(2.5))
        assert abs(xi - 2.5) < 1e-12
        assert abs(math.cosh(xi) - 6.13229) < 5e-5

    def test_monotone_divergence(self):
        betas = 1.0 - np.logspace(-1, -12, 12)
        xis = [rapidity_from_beta(b) for b in betas]
        assert all(b > a for a, b in zip(xis, xis[1:]))
        assert xis[-1] > 13

    @pytest.mark.parametrize("beta", [-0.1, 1.0, 1.5])
    def test_domain(self, beta):
        with pytest.raises(ValueError):
            rapidity_from_beta(beta)

    def test_cosh_identity(self):
        rng = np.random.default_rng(0)
        for beta in rng.uniform(0, 0.999, 50):
            xi = rapidity_from_beta(beta)
            assert abs(math.cosh(xi) - 1.0 / math.sqrt(1 - beta**2)) < 1e-12


class TestBoostParams:
    def test_beta_in_range(self):
        b = BoostParams(xi=3.0, theta=1.0, phi=2.0)
        assert 0 <= b.beta < 1
        assert b.cosh_xi >= 1

    @pytest.mark.parametrize("kw", [dict(xi=-1.0), dict(xi=1.0, theta=4.0), dict(xi=1.0, phi=7.0)])
    def test_domain(self, kw):
        with pytest.raises(ValueError):
            BoostParams(**kw)


class TestBoostEmField:
    def test_no_boost_is_identity(self):
        e = np.array([0.3, -0.2, 0.9])
        b = np.array([1.0, 2.0, 3.0])
        ep, bp = boost_em_field(e, b, BoostParams(xi=0.0, theta=0.3, phi=0.4))
        np.testing.assert_array_equal(ep, e)
        np.testing.assert_array_equal(bp, b)

    def test_velocity_along_x_with_bz(self):
        xi = 1.3
        boost = BoostParams(xi=xi, theta=math.pi / 2, phi=0.0)
        ep, bp = boost_em_field([0, 0, 0], [0, 0, 2.0], boost)
        ch, beta = math.cosh(xi), math.tanh(xi)
        np.testing.assert_allclose(bp, [0, 0, ch * 2.0], atol=1e-12)
        np.testing.assert_allclose(ep, [0, -ch * beta * 2.0, 0], atol=1e-12)

    def test_parallel_field_invariant_exact(self):
        # the exactly representable axis direction passes through bitwise
        boost = BoostParams(xi=2.0, theta=0.0)
        _, bp = boost_em_field([0, 0, 0], [0, 0, 1.7], boost)
        np.testing.assert_array_equal(bp, [0, 0, 1.7])
        # theta = pi/2 leaves cos(theta) = 6.1e-17, so only eps-level
        # agreement is representable there
        boost = BoostParams(xi=2.0, theta=math.pi / 2, phi=0.0)
        _, bp = boost_em_field([0.0, 0.0, 0.0], [3.25, 0.0, 0.0], boost)
        np.testing.assert_allclose(bp, [3.25, 0.0, 0.0], rtol=0, atol=1e-14)

    def test_parallel_field_invariant_random_directions(self):
        rng = np.random.default_rng(1)
        for _ in range(50):
            boost = BoostParams(
                xi=rng.uniform(0, 3), theta=rng.uniform(0, math.pi), phi=rng.uniform(0, 2 * math.pi)
            )
            c = rng.uniform(0.5, 2.0)
            b = c * boost.velocity_unit
            _, bp = boost_em_field([0, 0, 0], b, boost)
            np.testing.assert_allclose(bp, b, rtol=0, atol=1e-13 * boost.cosh_xi * c)

    def test_reproduces_effective_field_components(self):
        # the boost of B = B ez must land on B * d with d from the geometry
        rng = np.random.default_rng(2)
        for _ in range(100):
            boost = BoostParams(
                xi=rng.uniform(0, 3), theta=rng.uniform(0, math.pi), phi=rng.uniform(0, 2 * math.pi)
            )
            b_mag = rng.uniform(0.1, 2.0)
            _, bp = boost_em_field([0, 0, 0], [0, 0, b_mag], boost)
            d = effective_field(boost).d
            np.testing.assert_allclose(bp, b_mag * d, rtol=0, atol=1e-12 * boost.cosh_xi)

    def test_non_finite_rejected(self):
        with pytest.raises(ValueError):
            boost_em_field([np.inf, 0, 0], [0, 0, 1], BoostParams(xi=1.0))


class TestEffectiveField:
    def test_no_boost(self):
        f = effective_field(BoostParams(xi=0.0, theta=0.7, phi=1.1))
        assert f.kappa == 1.0
        np.testing.assert_array_equal(f.n, [0, 0, 1])
        assert f.eta_mod == 0.0 and f.chi_mod == 0.0 and f.tilt == 0.0

    def test_quoted_amplification_at_optimum(self):
        opt = eta_max(2.5)
        f = effective_field(BoostParams(xi=2.5, theta=opt.theta_opt))
        assert abs(f.kappa**2 - 6.13229) < 5e-5

    def test_transverse_velocity(self):
        xi = 1.8
        f = effective_field(BoostParams(xi=xi, theta=math.pi / 2))
        np.testing.assert_allclose(f.d, [0, 0, math.cosh(xi)], atol=1e-12)
        assert abs(f.kappa - math.cosh(xi)) < 1e-12
        assert f.eta_mod < 1e-28

    def test_kappa_identity_and_bounds(self):
        rng = np.random.default_rng(3)
        for _ in range(1000):
            xi = rng.uniform(0, 4)
            theta = rng.uniform(0, math.pi)
            phi = rng.uniform(0, 2 * math.pi)
            f = effective_field(BoostParams(xi=xi, theta=theta, phi=phi))
            expected = math.cos(theta) ** 2 + math.cosh(xi) ** 2 * math.sin(theta) ** 2
            assert abs(float(np.dot(f.d, f.d)) - expected) < 1e-12 * max(1.0, expected)
            assert f.kappa >= 1.0

    def test_kappa_is_one_only_when_degenerate(self):
        assert effective_field(BoostParams(xi=0.0, theta=1.0)).kappa == 1.0
        assert effective_field(BoostParams(xi=2.0, theta=0.0)).kappa == 1.0
        assert effective_field(BoostParams(xi=2.0, theta=1.0)).kappa > 1.0

    def test_scalars_independent_of_azimuth_bitwise(self):
        rng = np.random.default_rng(4)
        for _ in range(100):
            xi, theta = rng.uniform(0, 3), rng.uniform(0, math.pi)
            base = effective_field(BoostParams(xi=xi, theta=theta, phi=0.0))
            other = effective_field(BoostParams(xi=xi, theta=theta, phi=rng.uniform(0, 2 * math.pi)))
            assert base.eta_mod == other.eta_mod
            assert base.chi_mod == other.chi_mod
            assert base.kappa == other.kappa
            assert base.tilt == other.tilt

    def test_chi_range(self):
        rng = np.random.default_rng(5)
        for _ in range(200):
            f = effective_field(
                BoostParams(xi=rng.uniform(0, 5), theta=rng.uniform(0, math.pi))
            )
            assert 0.0 <= f.chi_mod <= 0.5 + 1e-15
            assert 0.0 <= f.eta_mod <= 1.0


class TestEtaProfile:
    def test_polar_axis_is_zero(self):
        assert eta_profile(1.7, 0.0) == 0.0

    def test_transverse_is_zero(self):
        assert eta_profile(1.7, math.pi / 2) == 0.0

    def test_quarter_angle_value(self):
        # cross-checked against 1 - n_z^2 from the field geometry
        assert abs(eta_profile(2.5, math.pi / 4) - 0.34115) < 1e-4
        assert abs(eta_profile(2.5, math.pi / 4) - 0.3411528670377253) < 1e-12

    def test_matches_field_geometry(self):
        rng = np.random.default_rng(6)
        for _ in range(200):
            xi, theta = rng.uniform(0, 4), rng.uniform(0, math.pi)
            f = effective_field(BoostParams(xi=xi, theta=theta))
            assert abs(eta_profile(xi, theta) - f.eta_mod) < 1e-12

    def test_symmetric_about_transverse(self):
        rng = np.random.default_rng(7)
        for _ in range(50):
            xi, theta = rng.uniform(0, 3), rng.uniform(0, math.pi / 2)
            assert abs(eta_profile(xi, theta) - eta_profile(xi, math.pi - theta)) < 1e-14

    def test_negative_rapidity_rejected(self):
        with pytest.raises(ValueError):
            eta_profile(-0.5, 0.3)


class TestEtaMax:
    def test_quoted_values(self):
        opt = eta_max(2.5)
        assert abs(opt.eta_max - 0.51780) < 2e-4
        assert abs(opt.chi_at_opt - 0.49969) < 1e-4

    def test_degenerate_at_rest(self):
        opt = eta_max(0.0)
        assert opt.eta_max == 0.0
        assert opt.theta_opt == math.pi / 4
        assert opt.chi_at_opt == 0.0

    def test_limit_toward_unity(self):
        assert eta_max(20.0).eta_max > 0.999

    def test_theta_opt_range(self):
        for xi in (0.2, 1.0, 2.5, 6.0):
            assert 0.0 < eta_max(xi).theta_opt <= math.pi / 4

    def test_profile_attains_maximum(self):
        for xi in (0.5, 1.5, 2.5, 4.0):
            opt = eta_max(xi)
            assert abs(eta_profile(xi, opt.theta_opt) - opt.eta_max) < 1e-12

    def test_chi_closed_form_matches_geometry(self):
        for xi in (0.5, 1.0, 2.5, 5.0):
            opt = eta_max(xi)
            f = effective_field(BoostParams(xi=xi, theta=opt.theta_opt))
            assert abs(f.chi_mod - opt.chi_at_opt) < 1e-12

    def test_grid_search_agrees(self):
        # dense-grid argmax of the profile against the closed form
        grid = np.linspace(0.0, math.pi / 2, 100_000)
        step = grid[1] - grid[0]
        for xi in (0.5, 1.0, 2.5, 5.0):
            profile = eta_profile(xi, grid)
            k = int(np.argmax(profile))
            opt = eta_max(xi)
            assert abs(grid[k] - opt.theta_opt) <= step
            assert abs(profile[k] - opt.eta_max) < 1e-9
