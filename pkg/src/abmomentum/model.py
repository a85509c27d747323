"""Closed-form two-slit wavefunctions with an Aharonov-Bohm phase kick.

Right after the slits each beam carries a constant phase -+dphi/2:

    psi0(x) = N [exp(-(x+d)^2/x0^2) e^{-i dphi/2} + exp(-(x-d)^2/x0^2) e^{+i dphi/2}]

Its momentum representation is a Gaussian envelope times
cos(dphi/2 - d p/hbar); free evolution only multiplies that by the
quadratic phase exp(-i p^2 t / (2 m hbar)). In position space each beam
spreads with the complex width a(t) = x0^2 + 2 i hbar t / m.

The flux phase enters only through ``remainder(dphi, 2 pi)``, so states that
differ by whole flux quanta produce the same numbers.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from . import kernels
from .errors import DegenerateNormalization, NonFiniteSample
from .spectral import Grid, WavefunctionP, WavefunctionX
from .units import DEFAULT_UNITS, Units

EPS_NORM = 1e-12
POSITION = "position"
MOMENTUM = "momentum"


@dataclass(frozen=True)
class SlitConfig:
    """Two Gaussian slits of width ``x0`` centred at ``+-d`` with phase ``dphi``."""

    x0: float
    d: float
    dphi: float = 0.0

    def __post_init__(self):
        if not (math.isfinite(self.x0) and self.x0 > 0):
            raise ValueError(f"x0 must be finite and > 0, got {self.x0!r}")
        if not (math.isfinite(self.d) and self.d >= 0):
            raise ValueError(f"d must be finite and >= 0, got {self.d!r}")
        if not math.isfinite(self.dphi):
            raise ValueError(f"dphi must be finite, got {self.dphi!r}")

    @classmethod
    def from_flux_ratio(cls, x0, d, flux_ratio):
        """Build from the enclosed flux in units of the flux quantum h/e."""
        return cls(x0, d, 2.0 * math.pi * flux_ratio)

    @property
    def phase(self):
        """``dphi`` reduced to [-pi, pi]."""
        return math.remainder(self.dphi, 2.0 * math.pi)

    @property
    def flux_ratio(self):
        return self.dphi / (2.0 * math.pi)


def overlap_factor(cfg: SlitConfig) -> float:
    return 1.0 + math.exp(-2.0 * cfg.d ** 2 / cfg.x0 ** 2) * math.cos(cfg.phase)


def norm_N(cfg: SlitConfig, units: Units = DEFAULT_UNITS) -> float:
    """Position-space normalization constant of the two-slit state."""
    factor = overlap_factor(cfg)
    if factor <= EPS_NORM:
        raise DegenerateNormalization(
            f"slits cancel: 1 + exp(-2d^2/x0^2) cos(dphi) = {factor:.3e}")
    return (math.sqrt(2.0 * math.pi) * cfg.x0 * factor) ** -0.5


def norm_N_momentum(cfg: SlitConfig, units: Units = DEFAULT_UNITS) -> float:
    # Gaussian integral of each beam gives x0 sqrt(pi/(2 pi hbar)) e^{-+ipd/hbar};
    # the two beams combine into 2 cos(dphi/2 - dp/hbar).
    return norm_N(cfg, units) * cfg.x0 * math.sqrt(2.0 / units.hbar)


def psi0(x, cfg: SlitConfig, units: Units = DEFAULT_UNITS):
    return psi_t(x, 0.0, cfg, units)


def theta0(p, cfg: SlitConfig, units: Units = DEFAULT_UNITS):
    p = np.asarray(p, dtype=np.float64)
    envelope = np.exp(-(p * cfg.x0 / units.hbar) ** 2 / 4.0)
    return norm_N_momentum(cfg, units) * envelope * np.cos(
        0.5 * cfg.phase - cfg.d * p / units.hbar)


def theta_t(p, t, cfg: SlitConfig, units: Units = DEFAULT_UNITS):
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    p = np.asarray(p, dtype=np.float64)
    amp = theta0(p, cfg, units)
    if t == 0:
        return amp.astype(np.complex128)
    return amp * np.exp(-1j * p * p * t / (2.0 * units.mass * units.hbar))


def complex_width(t, cfg: SlitConfig, units: Units = DEFAULT_UNITS) -> complex:
    """a(t) = x0^2 + 2 i hbar t / m; each beam is exp(-(x -+ d)^2 / a(t))."""
    return complex(cfg.x0 ** 2, 2.0 * units.hbar * t / units.mass)


def psi_t(x, t, cfg: SlitConfig, units: Units = DEFAULT_UNITS):
    """Freely evolved position amplitude.

    Evaluated as the sum of the two spreading beams rather than the
    equivalent ``exp(-(x^2+d^2)/a) cos(dphi/2 + 2ixd/a)`` product, which
    overflows for well separated slits on wide grids.
    """
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    a = complex_width(t, cfg, units)
    scalar = np.ndim(x) == 0
    xs = np.atleast_1d(np.asarray(x, dtype=np.float64))
    amp = kernels.two_slit_amplitude(xs, 1.0 / a, float(cfg.d), 0.5 * cfg.phase)
    prefactor = norm_N(cfg, units) * np.sqrt(cfg.x0 ** 2 / a)
    out = prefactor * amp
    return out[0] if scalar else out


def sample_psi(grid: Grid, cfg: SlitConfig, t=0.0,
               units: Units = DEFAULT_UNITS) -> WavefunctionX:
    return WavefunctionX(grid, psi_t(grid.x, t, cfg, units))


def sample_theta(grid: Grid, cfg: SlitConfig, t=0.0,
                 units: Units = DEFAULT_UNITS) -> WavefunctionP:
    return WavefunctionP(grid, theta_t(grid.p, t, cfg, units))


@dataclass(frozen=True)
class Density:
    """Sampled probability density in position or momentum space."""

    grid: Grid
    values: np.ndarray = field(repr=False)
    space: str = POSITION

    def __post_init__(self):
        if self.space not in (POSITION, MOMENTUM):
            raise ValueError(f"space must be {POSITION!r} or {MOMENTUM!r}")
        values = np.array(self.values, dtype=np.float64)
        if values.shape != (self.grid.n,):
            raise ValueError(f"expected {self.grid.n} samples, got {values.shape}")
        values.flags.writeable = False
        object.__setattr__(self, "values", values)

    @property
    def coords(self):
        return self.grid.x if self.space == POSITION else self.grid.p

    @property
    def spacing(self):
        return self.grid.dx if self.space == POSITION else self.grid.dp

    def integral(self):
        return float(self.values.sum() * self.spacing)


def density(wavefunction) -> Density:
    """|amplitude|^2 of a sampled wavefunction, tagged with its representation."""
    amps = wavefunction.amps
    if not np.all(np.isfinite(amps)):
        raise NonFiniteSample("cannot form a density from NaN/Inf samples")
    space = MOMENTUM if isinstance(wavefunction, WavefunctionP) else POSITION
    return Density(wavefunction.grid, amps.real ** 2 + amps.imag ** 2, space)
