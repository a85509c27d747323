import math

import numpy as np
import pytest
from hypothesis import given, strategies as st

from abmomentum import fringes, model
from abmomentum.errors import GridMismatch, NoFringes
from abmomentum.model import MOMENTUM, Density, SlitConfig
from abmomentum.spectral import Grid

FIG3_T = 2.5


def p_density(grid, dphi, d=4.0, x0=1.0):
    return model.density(model.sample_theta(grid, SlitConfig(x0, d, dphi)))


def x_density(grid, dphi, t, d=4.0):
    return model.density(model.sample_psi(grid, SlitConfig(1.0, d, dphi), t))


def dense_maxima(dphi, d=4.0, lo=-1.2, hi=1.2, samples=2_400_001):
    """Fringe maxima of cos^2(dphi/2 - d p) by brute-force argmax on a dense lattice."""
    p = np.linspace(lo, hi, samples)
    f = np.cos(dphi / 2 - d * p) ** 2
    peaks = (f[1:-1] > f[:-2]) & (f[1:-1] >= f[2:])
    return p[1:-1][peaks]


def nearest_to_zero(values):
    return values[np.argmin(np.abs(values))]


@pytest.fixture(scope="module")
def oracle():
    on = dense_maxima(math.pi / 2)
    off = dense_maxima(0.0)
    return nearest_to_zero(on) - nearest_to_zero(off), float(np.mean(np.diff(off)))


class TestExtractShift:
    def test_fig2_shift_and_period(self, grid, oracle):
        shift_oracle, period_oracle = oracle
        assert shift_oracle == pytest.approx(math.pi / 16, abs=2e-6)
        assert period_oracle == pytest.approx(math.pi / 4, abs=2e-6)
        rep = fringes.extract_shift(p_density(grid, math.pi / 2), p_density(grid, 0.0))
        assert rep.shift == pytest.approx(shift_oracle, abs=1e-4)
        assert rep.period == pytest.approx(period_oracle, abs=1e-4)
        assert rep.space == MOMENTUM
        assert abs(rep.shift) <= rep.period / 2

    def test_self_comparison_exact(self, grid):
        dens = p_density(grid, 1.1)
        rep = fringes.extract_shift(dens, dens)
        assert rep.shift == 0.0
        assert rep.residual == 0.0

    def test_position_space_at_t0_has_no_fringes(self, grid):
        with pytest.raises(NoFringes):
            fringes.extract_shift(x_density(grid, math.pi / 2, 0.0), x_density(grid, 0.0, 0.0))

    def test_single_gaussian_has_no_fringes(self, grid):
        dens = p_density(grid, 0.0, d=0.0)
        with pytest.raises(NoFringes):
            fringes.extract_shift(dens, dens)

    def test_position_space_fringes_after_overlap(self, grid):
        rep = fringes.extract_shift(x_density(grid, math.pi / 2, FIG3_T),
                                    x_density(grid, 0.0, FIG3_T))
        # the overlap term oscillates as cos(8 d t x / (x0^4 + 4 t^2) - dphi)
        k = 8 * 4.0 * FIG3_T / (1 + 4 * FIG3_T ** 2)
        assert rep.period == pytest.approx(2 * math.pi / k, rel=1e-3)
        assert rep.shift > 0

    def test_grid_mismatch(self, grid):
        other = Grid.centered(2048, 64.0)
        with pytest.raises(GridMismatch):
            fringes.extract_shift(p_density(grid, 0.0), p_density(other, 0.0))
        dens = p_density(grid, 0.0)
        with pytest.raises(GridMismatch):
            fringes.extract_shift(dens, Density(grid, dens.values, model.POSITION))

    def test_residual_of_pure_translation_small(self, grid):
        ref = p_density(grid, 0.0)
        moved = Density(grid, fringes.fourier_shift(ref.values, grid.dp, 0.05), MOMENTUM)
        assert fringes.extract_shift(moved, ref).residual < 1e-6


class TestTranslationFidelity:
    @pytest.mark.parametrize("k", [-3, -1, 1, 2, 3])
    def test_integer_roll(self, grid, k):
        ref = p_density(grid, 0.4)
        rolled = Density(grid, np.roll(ref.values, k), MOMENTUM)
        rep = fringes.extract_shift(rolled, ref)
        assert rep.shift == pytest.approx(k * grid.dp, abs=1e-9 * grid.dp)

    @given(st.floats(-3.5, 3.5))
    def test_fractional_shift(self, bins):
        grid = Grid.centered()
        shift = bins * grid.dp
        cfg = SlitConfig(1.0, 4.0, 0.3)
        ref = Density(grid, np.abs(model.theta0(grid.p, cfg)) ** 2, MOMENTUM)
        moved = Density(grid, np.abs(model.theta0(grid.p - shift, cfg)) ** 2, MOMENTUM)
        assert fringes.extract_shift(moved, ref).shift == pytest.approx(shift, abs=grid.dp / 20)


class TestProperties:
    @given(st.floats(-3.0, 3.0), st.floats(-3.0, 3.0))
    def test_antisymmetry(self, a, b):
        grid = Grid.centered()
        da, db = p_density(grid, a), p_density(grid, b)
        assert fringes.extract_shift(da, db).shift == pytest.approx(
            -fringes.extract_shift(db, da).shift, abs=grid.dp / 10)

    @given(st.floats(0.0, 2 * math.pi))
    def test_period_independent_of_flux(self, dphi):
        grid = Grid.centered()
        ref = fringes.extract_shift(p_density(grid, 0.0), p_density(grid, 0.0)).period
        rep = fringes.extract_shift(p_density(grid, dphi), p_density(grid, 0.0))
        assert rep.period == pytest.approx(ref, rel=1e-6)

    @given(st.floats(0.0, 2 * math.pi))
    def test_momentum_visibility_full(self, dphi):
        grid = Grid.centered()
        rep = fringes.extract_shift(p_density(grid, dphi), p_density(grid, 0.0))
        assert 0.999 <= rep.visibility <= 1.0

    @given(st.floats(3.0, 8.0), st.floats(-math.pi * 0.95, math.pi * 0.95))
    def test_shift_tracks_phase_for_separated_slits(self, d, dphi):
        # needs several fringes under the envelope: d >= 3 x0
        grid = Grid.centered()
        rep = fringes.extract_shift(p_density(grid, dphi, d=d), p_density(grid, 0.0, d=d))
        assert rep.shift == pytest.approx(dphi / (2 * d), abs=1e-4)
        assert rep.period == pytest.approx(math.pi / d, abs=1e-4)


class TestShiftVsFlux:
    def test_slope(self):
        sweep = fringes.shift_vs_flux(SlitConfig(1.0, 4.0), [-0.2, -0.1, 0.0, 0.1, 0.2])
        assert sweep.slope == pytest.approx(0.125, rel=1e-3)
        assert len(sweep.reports) == 5
        assert sweep.dphis[0] == pytest.approx(-0.4 * math.pi)

    def test_linearity_intercept(self):
        grid = Grid.centered()
        sweep = fringes.shift_vs_flux(SlitConfig(1.0, 4.0), np.linspace(-0.24, 0.24, 13))
        assert sweep.slope == pytest.approx(0.125, rel=1e-3)
        assert abs(sweep.intercept) <= grid.dp / 20

    def test_all_zero(self):
        sweep = fringes.shift_vs_flux(SlitConfig(1.0, 4.0), [0.0, 0.0, 0.0])
        assert sweep.shifts == (0.0, 0.0, 0.0)

    def test_quarter_flux(self):
        sweep = fringes.shift_vs_flux(SlitConfig(1.0, 4.0), [0.25])
        assert sweep.shifts[0] == pytest.approx(math.pi / 16, abs=1e-4)

    def test_range_enforced(self):
        with pytest.raises(ValueError):
            fringes.shift_vs_flux(SlitConfig(1.0, 4.0), [0.5])
