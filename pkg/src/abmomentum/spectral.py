"""Uniform grids, continuum-normalized Fourier transforms and free propagation.

The transforms approximate

    Theta(p) = (2 pi hbar)^(-1/2) * integral exp(-i p x / hbar) Psi(x) dx
    Psi(x)   = (2 pi hbar)^(-1/2) * integral exp(+i p x / hbar) Theta(p) dp

on a periodic lattice. Offset phases for ``x_min != 0`` and the FFT
normalization are applied here explicitly, so numpy's own FFT conventions
never reach callers. Momentum arrays are stored in ascending-p order.
"""
from dataclasses import dataclass, field
import math

import numpy as np

from .errors import BoundaryLeak, GridMismatch, NonFiniteSample
from .units import DEFAULT_UNITS, Units

DEFAULT_N = 4096
DEFAULT_SPAN = 64.0  # in units of the slit width
GUARD_FRACTION = 0.05
LEAK_THRESHOLD = 1e-8


@dataclass(frozen=True)
class Grid:
    """Periodic position lattice ``x_k = x_min + k*dx`` and its momentum dual.

    The momentum lattice is ``p_j = 2 pi hbar j / (n dx)`` for
    ``j in [-n/2, n/2)``; ``hbar`` lives on the grid so that transforms of
    a sampled wavefunction are self-contained.
    """

    n: int
    x_min: float
    dx: float
    hbar: float = 1.0

    def __post_init__(self):
        if self.n < 8 or self.n & (self.n - 1):
            raise ValueError(f"n must be a power of two >= 8, got {self.n}")
        if not (math.isfinite(self.dx) and self.dx > 0):
            raise ValueError(f"dx must be finite and > 0, got {self.dx}")
        if not math.isfinite(self.x_min):
            raise ValueError("x_min must be finite")
        if not (math.isfinite(self.hbar) and self.hbar > 0):
            raise ValueError("hbar must be finite and > 0")

    @classmethod
    def centered(cls, n=DEFAULT_N, span=DEFAULT_SPAN, hbar=1.0):
        """Grid of ``n`` points covering ``[-span/2, span/2)``."""
        return cls(n=n, x_min=-0.5 * span, dx=span / n, hbar=hbar)

    @classmethod
    def default_for(cls, x0, hbar=1.0):
        return cls.centered(DEFAULT_N, DEFAULT_SPAN * x0, hbar)

    @property
    def span(self):
        return self.n * self.dx

    @property
    def dp(self):
        return 2.0 * math.pi * self.hbar / (self.n * self.dx)

    @property
    def x(self):
        return self.x_min + self.dx * np.arange(self.n)

    @property
    def p(self):
        return self.dp * np.arange(-(self.n // 2), self.n // 2)

    def guard_width(self):
        """Number of samples in each guard band."""
        return max(1, math.ceil(GUARD_FRACTION * self.n))


def _frozen(values):
    arr = np.array(values, dtype=np.complex128)
    arr.flags.writeable = False
    return arr


def _check_finite(amps):
    if not np.all(np.isfinite(amps)):
        raise NonFiniteSample("wavefunction contains NaN or Inf samples")


@dataclass(frozen=True)
class WavefunctionX:
    grid: Grid
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "amps", _frozen(self.amps))
        if self.amps.shape != (self.grid.n,):
            raise GridMismatch(
                f"expected {self.grid.n} samples, got shape {self.amps.shape}")

    @property
    def coords(self):
        return self.grid.x

    @property
    def spacing(self):
        return self.grid.dx

    def norm(self):
        return float(np.sum(np.abs(self.amps) ** 2) * self.grid.dx)


@dataclass(frozen=True)
class WavefunctionP:
    grid: Grid
    amps: np.ndarray = field(repr=False)

    def __post_init__(self):
        object.__setattr__(self, "amps", _frozen(self.amps))
        if self.amps.shape != (self.grid.n,):
            raise GridMismatch(
                f"expected {self.grid.n} samples, got shape {self.amps.shape}")

    @property
    def coords(self):
        return self.grid.p

    @property
    def spacing(self):
        return self.grid.dp

    def norm(self):
        return float(np.sum(np.abs(self.amps) ** 2) * self.grid.dp)


def x_to_p(psi: WavefunctionX) -> WavefunctionP:
    grid = psi.grid
    _check_finite(psi.amps)
    p = grid.p
    spectrum = np.fft.fftshift(np.fft.fft(psi.amps))
    offset = np.exp(-1j * p * grid.x_min / grid.hbar)
    scale = grid.dx / math.sqrt(2.0 * math.pi * grid.hbar)
    return WavefunctionP(grid, scale * offset * spectrum)


def p_to_x(theta: WavefunctionP) -> WavefunctionX:
    grid = theta.grid
    _check_finite(theta.amps)
    p = grid.p
    shifted = np.fft.ifftshift(np.exp(1j * p * grid.x_min / grid.hbar) * theta.amps)
    scale = grid.n * grid.dp / math.sqrt(2.0 * math.pi * grid.hbar)
    return WavefunctionX(grid, scale * np.fft.ifft(shifted))


def guard_band_density(psi: WavefunctionX):
    """Probability in the (left, right) guard bands of the domain."""
    g = psi.grid.guard_width()
    dens = np.abs(psi.amps) ** 2 * psi.grid.dx
    return float(dens[:g].sum()), float(dens[-g:].sum())


def check_boundary(psi: WavefunctionX, threshold=LEAK_THRESHOLD, when="input"):
    left, right = guard_band_density(psi)
    worst = max(left, right)
    if worst >= threshold:
        raise BoundaryLeak(
            f"{when} guard-band density {worst:.3e} exceeds {threshold:.1e}; "
            "enlarge the grid span")


def free_propagate(psi: WavefunctionX, t: float,
                   units: Units = DEFAULT_UNITS) -> WavefunctionX:
    """Exact free evolution under H = p^2/2m by diagonalizing in momentum."""
    if t < 0:
        raise ValueError(f"t must be >= 0, got {t}")
    if not math.isclose(units.hbar, psi.grid.hbar, rel_tol=1e-15):
        raise ValueError("units.hbar differs from the grid's hbar")
    check_boundary(psi, when="input")
    if t == 0:
        return psi
    theta = x_to_p(psi)
    p = psi.grid.p
    kick = np.exp(-1j * p * p * t / (2.0 * units.mass * units.hbar))
    out = p_to_x(WavefunctionP(psi.grid, theta.amps * kick))
    check_boundary(out, when="propagated")
    return out


def aligned_l2(a, b, spacing):
    """L2 distance between two sampled amplitudes after global-phase alignment."""
    a = np.asarray(a)
    b = np.asarray(b)
    overlap = np.vdot(b, a)
    phase = overlap / abs(overlap) if abs(overlap) > 0 else 1.0
    return float(math.sqrt(np.sum(np.abs(a - phase * b) ** 2) * spacing))
