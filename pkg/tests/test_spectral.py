import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from abmomentum import model, spectral
from abmomentum.errors import BoundaryLeak, GridMismatch, NonFiniteSample
from abmomentum.model import SlitConfig
from abmomentum.spectral import Grid, WavefunctionP, WavefunctionX
from abmomentum.units import Units

FIG3_T = 2.5


def random_state(grid, seed, width=4.0):
    # smooth random packet well inside the domain: Gaussian times random Fourier series
    rng = np.random.default_rng(seed)
    x = grid.x
    series = sum(complex(*rng.normal(size=2)) * np.exp(1j * k * x / 3) for k in range(-4, 5))
    amps = series * np.exp(-x ** 2 / (2 * width ** 2))
    amps /= math.sqrt(np.sum(np.abs(amps) ** 2) * grid.dx)
    return WavefunctionX(grid, amps)


def second_moment(values, coords, spacing):
    w = values * spacing
    mean = np.sum(w * coords)
    return np.sum(w * (coords - mean) ** 2) / np.sum(w)


class TestGrid:
    def test_default_lattice(self, grid):
        assert grid.n == 4096 and grid.x_min == -32.0 and grid.dx == 1 / 64
        assert grid.span == 64.0
        assert grid.dx * grid.dp * grid.n == pytest.approx(2 * math.pi, rel=1e-15)
        assert grid.p[0] == -grid.n // 2 * grid.dp and grid.p[grid.n // 2] == 0.0

    def test_hbar_scales_momenta(self):
        g = Grid.centered(64, 8.0, hbar=0.5)
        assert g.dx * g.dp * g.n == pytest.approx(2 * math.pi * 0.5)

    @pytest.mark.parametrize("n", [4, 12, 100])
    def test_power_of_two_required(self, n):
        with pytest.raises(ValueError):
            Grid.centered(n, 10.0)

    def test_positive_spacing(self):
        with pytest.raises(ValueError):
            Grid(64, 0.0, -1.0)

    def test_sample_count_checked(self, grid):
        with pytest.raises(GridMismatch):
            WavefunctionX(grid, np.zeros(10))

    def test_amplitudes_immutable(self, grid):
        psi = WavefunctionX(grid, np.zeros(grid.n))
        with pytest.raises(ValueError):
            psi.amps[0] = 1.0


class TestForwardTransform:
    def test_self_dual_gaussian(self, grid):
        psi = WavefunctionX(grid, math.pi ** -0.25 * np.exp(-grid.x ** 2 / 2))
        theta = spectral.x_to_p(psi)
        expected = math.pi ** -0.25 * np.exp(-grid.p ** 2 / 2)
        assert np.max(np.abs(theta.amps - expected)) <= 1e-10

    def test_offset_grid_phase_correction(self):
        # same Gaussian sampled on a grid not centred on the origin
        g = Grid(1024, -13.37, 30.0 / 1024)
        psi = WavefunctionX(g, math.pi ** -0.25 * np.exp(-g.x ** 2 / 2))
        expected = math.pi ** -0.25 * np.exp(-g.p ** 2 / 2)
        assert np.max(np.abs(spectral.x_to_p(psi).amps - expected)) <= 1e-10

    def test_matches_analytic_theta0(self, grid, fig2):
        theta = spectral.x_to_p(model.sample_psi(grid, fig2))
        assert spectral.aligned_l2(theta.amps, model.theta0(grid.p, fig2), grid.dp) <= 1e-8

    @pytest.mark.parametrize("seed", range(4))
    def test_parseval(self, grid, seed):
        psi = random_state(grid, seed)
        assert spectral.x_to_p(psi).norm() == pytest.approx(psi.norm(), rel=1e-12)

    def test_linearity(self, grid):
        rng = np.random.default_rng(3)
        a, b = complex(*rng.normal(size=2)), complex(*rng.normal(size=2))
        p1, p2 = random_state(grid, 1), random_state(grid, 2)
        combined = spectral.x_to_p(WavefunctionX(grid, a * p1.amps + b * p2.amps)).amps
        separate = a * spectral.x_to_p(p1).amps + b * spectral.x_to_p(p2).amps
        assert np.max(np.abs(combined - separate)) <= 1e-12

    def test_non_finite(self, grid):
        amps = np.zeros(grid.n, dtype=complex)
        amps[3] = np.inf
        with pytest.raises(NonFiniteSample):
            spectral.x_to_p(WavefunctionX(grid, amps))
        with pytest.raises(NonFiniteSample):
            spectral.p_to_x(WavefunctionP(grid, amps))

    def test_refinement_converged(self, fig2):
        # doubling n at fixed span leaves the analytic-range samples unchanged
        coarse = Grid.centered(4096, 64.0)
        fine = Grid.centered(8192, 64.0)
        tc = spectral.x_to_p(model.sample_psi(coarse, fig2)).amps
        tf = spectral.x_to_p(model.sample_psi(fine, fig2)).amps
        # the coarse momentum lattice is the central half of the fine one
        assert np.max(np.abs(tf[2048:2048 + 4096] - tc)) <= 1e-10


class TestInverseTransform:
    @pytest.mark.parametrize("seed", range(4))
    def test_round_trip(self, grid, seed):
        psi = random_state(grid, seed)
        back = spectral.p_to_x(spectral.x_to_p(psi))
        assert np.max(np.abs(back.amps - psi.amps)) <= 1e-12
        assert back.norm() == pytest.approx(psi.norm(), rel=1e-12)

    def test_analytic_theta_t_to_psi_t(self, grid, fig2):
        psi = spectral.p_to_x(model.sample_theta(grid, fig2, FIG3_T))
        assert spectral.aligned_l2(psi.amps, model.psi_t(grid.x, FIG3_T, fig2), grid.dx) <= 1e-8

    def test_uncertainty_product(self):
        grid = Grid.centered(4096, 400.0)
        sigma_p = 0.05
        p = grid.p
        theta = WavefunctionP(grid, (2 * math.pi * sigma_p ** 2) ** -0.25
                              * np.exp(-p ** 2 / (4 * sigma_p ** 2)))
        psi = spectral.p_to_x(theta)
        sx = math.sqrt(second_moment(np.abs(psi.amps) ** 2, grid.x, grid.dx))
        sp = math.sqrt(second_moment(np.abs(theta.amps) ** 2, p, grid.dp))
        assert sx * sp == pytest.approx(0.5, abs=1e-6)


class TestFreePropagation:
    def test_zero_time_identity(self, grid, fig2):
        psi = model.sample_psi(grid, fig2)
        assert np.max(np.abs(spectral.free_propagate(psi, 0.0).amps - psi.amps)) <= 1e-13

    @pytest.mark.parametrize("t", [0.5, 2.5, 6.0])
    def test_spreading_law(self, t):
        grid = Grid.centered(8192, 256.0)
        cfg = SlitConfig(1.0, 0.0, 0.0)
        out = spectral.free_propagate(model.sample_psi(grid, cfg), t)
        var = second_moment(np.abs(out.amps) ** 2, grid.x, grid.dx)
        # density exp(-2x^2/x_t^2) has variance x_t^2/4
        x_t2 = cfg.x0 ** 2 + (2 * t / cfg.x0) ** 2
        assert 4 * var == pytest.approx(x_t2, rel=1e-6)

    def test_two_slit_matches_closed_form(self, grid, fig2):
        out = spectral.free_propagate(model.sample_psi(grid, fig2), FIG3_T)
        assert spectral.aligned_l2(out.amps, model.psi_t(grid.x, FIG3_T, fig2), grid.dx) <= 1e-8

    def test_norm_and_momentum_density_preserved(self, grid):
        psi = random_state(grid, 5)
        out = spectral.free_propagate(psi, 1.7)
        assert out.norm() == pytest.approx(psi.norm(), rel=1e-12)
        before = np.abs(spectral.x_to_p(psi).amps) ** 2
        after = np.abs(spectral.x_to_p(out).amps) ** 2
        assert np.max(np.abs(after - before)) <= 1e-12

    def test_composition(self, grid):
        psi = random_state(grid, 6)
        once = spectral.free_propagate(psi, 1.5)
        twice = spectral.free_propagate(spectral.free_propagate(psi, 0.6), 0.9)
        assert np.max(np.abs(once.amps - twice.amps)) <= 1e-11

    @given(st.floats(0.0, 3.0), st.floats(0.0, 3.0))
    def test_composition_property(self, t1, t2):
        grid = Grid.centered(1024, 64.0)
        psi = random_state(grid, 9, width=2.0)
        once = spectral.free_propagate(psi, t1 + t2)
        twice = spectral.free_propagate(spectral.free_propagate(psi, t1), t2)
        assert np.max(np.abs(once.amps - twice.amps)) <= 1e-11

    def test_leak_on_small_domain(self, fig2):
        grid = Grid.centered(512, 8.0)
        with pytest.raises(BoundaryLeak):
            spectral.free_propagate(model.sample_psi(grid, fig2), FIG3_T)

    def test_leak_after_spreading(self):
        # starts inside the safe region, spreads into the guard band
        grid = Grid.centered(1024, 24.0)
        psi = model.sample_psi(grid, SlitConfig(1.0, 0.0, 0.0))
        spectral.check_boundary(psi)
        with pytest.raises(BoundaryLeak, match="propagated"):
            spectral.free_propagate(psi, 8.0)

    def test_units_mass(self, grid, fig2):
        heavy = Units(mass=2.0)
        a = spectral.free_propagate(model.sample_psi(grid, fig2), 2.0)
        b = spectral.free_propagate(model.sample_psi(grid, fig2, units=heavy), 4.0, heavy)
        assert np.max(np.abs(a.amps - b.amps)) <= 1e-12

    def test_negative_time(self, grid, fig2):
        with pytest.raises(ValueError):
            spectral.free_propagate(model.sample_psi(grid, fig2), -1.0)


def test_aligned_l2_ignores_global_phase(grid, fig2):
    amps = model.psi0(grid.x, fig2)
    assert spectral.aligned_l2(amps * np.exp(0.77j), amps, grid.dx) <= 1e-14
    assert spectral.aligned_l2(amps, -amps, grid.dx) <= 1e-14
