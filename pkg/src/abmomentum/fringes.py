"""Fringe shift, period and visibility of sampled interference densities.

A density is split in Fourier space into a slowly varying part (below half
the fringe frequency) and a fringe band. The shift between two patterns is
the argmax of the band cross-correlation divided by the cross-correlation
of the slow parts, which removes the pull of the common envelope. The
correlation is a trigonometric polynomial, so it is evaluated exactly
between lags before the final three-point parabolic refinement.
"""
from dataclasses import dataclass
import math

import numpy as np
from scipy.signal import hilbert

from . import kernels
from .errors import GridMismatch, NoFringes, NonFiniteSample
from .model import MOMENTUM, Density, SlitConfig, sample_theta, density
from .spectral import Grid
from .units import DEFAULT_UNITS, Units

NOISE_FACTOR = 1e3
ENVELOPE_LEVEL = 0.1
MIN_FRINGE_MAXIMA = 3
UPSAMPLE = 64


@dataclass(frozen=True)
class FringeReport:
    shift: float
    period: float
    visibility: float
    residual: float
    space: str


def _spectrum(values):
    centred = values - values.mean()
    return np.fft.rfft(centred)


def fringe_frequency(values, spacing):
    """Dominant fringe frequency (cycles per unit coordinate) of a density.

    The peak is located on the frequency-weighted spectrum so the envelope
    lobe at zero frequency cannot win, then climbed and refined on the
    plain magnitude with a log-parabolic (Gaussian lobe) fit.
    """
    values = np.asarray(values, dtype=np.float64)
    mag = np.abs(_spectrum(values))
    n_bins = mag.size
    floor = float(np.median(mag[1:]))
    k = 1 + int(np.argmax(mag[1:] * np.arange(1, n_bins)))
    while 1 < k < n_bins - 1:
        if mag[k - 1] > mag[k]:
            k -= 1
        elif mag[k + 1] > mag[k]:
            k += 1
        else:
            break
    if k <= 1 or k >= n_bins - 1:
        raise NoFringes("no spectral peak separated from the envelope lobe")
    if not mag[k] > NOISE_FACTOR * floor:
        raise NoFringes(
            f"spectral peak {mag[k]:.3e} within {NOISE_FACTOR:g}x of the "
            f"noise floor {floor:.3e}")
    offset = 0.0
    lo, mid, hi = mag[k - 1], mag[k], mag[k + 1]
    if lo > 0 and hi > 0:
        la, lb, lc = math.log(lo), math.log(mid), math.log(hi)
        denom = la - 2.0 * lb + lc
        if denom < 0:
            offset = 0.5 * (la - lc) / denom
    return (k + offset) / (values.size * spacing)


def split_bands(values, spacing, frequency):
    """(slow, fringe) parts of ``values`` split at half the fringe frequency."""
    spectrum = np.fft.rfft(values)
    freqs = np.fft.rfftfreq(values.size, spacing)
    keep = freqs < 0.5 * frequency
    slow = np.fft.irfft(np.where(keep, spectrum, 0), n=values.size)
    return slow, values - slow


def envelope_window(values, spacing, period):
    """Samples where a Gaussian fit to the moving maximum exceeds 10% of its peak."""
    half = max(1, int(round(0.5 * period / spacing)))
    upper = kernels.moving_max(np.ascontiguousarray(values, dtype=np.float64), half)
    idx = np.arange(values.size, dtype=np.float64)
    mask = upper > 1e-3 * upper.max()
    fallback = upper > ENVELOPE_LEVEL * upper.max()
    if mask.sum() < 3:
        return fallback
    centre = np.average(idx[mask], weights=upper[mask])
    u = (idx[mask] - centre) * spacing
    c2, c1, c0 = np.polyfit(u, np.log(upper[mask]), 2, w=np.sqrt(upper[mask]))
    if not c2 < 0:
        return fallback
    # log-envelope drop from its vertex; the 10% level is a drop of ln 10
    vertex = -c1 / (2.0 * c2)
    u_all = (idx - centre) * spacing
    drop = c2 * (u_all - vertex) ** 2
    return drop > math.log(ENVELOPE_LEVEL)


def count_maxima(values, window):
    inner = values[1:-1]
    peaks = (inner > values[:-2]) & (inner >= values[2:]) & window[1:-1]
    return int(peaks.sum())


def _correlation_coefficients(a, b):
    # real-signal spectrum of sum_j a[j] b[j - s], weighted for a real
    # trigonometric interpolant (interior rfft bins stand for two terms)
    spectrum = np.fft.rfft(a) * np.conj(np.fft.rfft(b))
    weights = np.full(spectrum.size, 2.0)
    weights[0] = 1.0
    if a.size % 2 == 0:
        weights[-1] = 1.0
    spectrum = spectrum * weights / a.size
    return np.ascontiguousarray(spectrum.real), np.ascontiguousarray(spectrum.imag)


def _normalized_correlation(m_band, r_band, m_slow, r_slow, spacing, lags):
    freqs = np.fft.rfftfreq(m_band.size, spacing)
    num = _correlation_coefficients(m_band, r_band)
    den = _correlation_coefficients(m_slow, r_slow)
    s = np.ascontiguousarray(lags, dtype=np.float64)
    return (kernels.trig_eval(num[0], num[1], freqs, s)
            / kernels.trig_eval(den[0], den[1], freqs, s))


def _parabolic_offset(y_minus, y0, y_plus):
    denom = y_minus - 2.0 * y0 + y_plus
    if denom >= 0:
        return 0.0
    return 0.5 * (y_minus - y_plus) / denom


def estimate_shift(m_band, r_band, m_slow, r_slow, spacing, period):
    """Lag ``s`` maximizing the envelope-normalized correlation, |s| <= period/2."""
    reach = int(math.ceil(0.5 * period / spacing)) + 1
    coarse_lags = spacing * np.arange(-reach, reach + 1)
    coarse = _normalized_correlation(m_band, r_band, m_slow, r_slow, spacing,
                                     coarse_lags)
    centre = coarse_lags[int(np.argmax(coarse))]
    step = spacing / UPSAMPLE
    offsets = step * np.arange(-UPSAMPLE, UPSAMPLE + 1)
    for _ in range(4):
        fine = _normalized_correlation(m_band, r_band, m_slow, r_slow, spacing,
                                       centre + offsets)
        j = int(np.argmax(fine))
        if 0 < j < fine.size - 1:
            break
        centre = centre + offsets[j]
    else:
        j = min(max(j, 1), fine.size - 2)
    shift = centre + offsets[j] + step * _parabolic_offset(fine[j - 1], fine[j], fine[j + 1])
    # report modulo one period, centred on zero
    return shift - period * round(shift / period)


def local_visibility(values, slow, band, window):
    """Mean of (I_max - I_min)/(I_max + I_min) over the window.

    Local extrema are slow +- |analytic fringe amplitude|, so a Gaussian
    envelope does not masquerade as reduced contrast.
    """
    amplitude = np.abs(hilbert(band))
    weights = np.clip(slow[window], 0.0, None)
    ratio = np.clip(amplitude[window] / np.where(slow[window] > 0, slow[window], np.inf),
                    0.0, 1.0)
    if weights.sum() <= 0:
        return 0.0
    return float(np.clip(np.average(ratio, weights=weights), 0.0, 1.0))


def fourier_shift(values, spacing, shift):
    """Band-limited translation: returns f(x - shift) on the same lattice."""
    spectrum = np.fft.rfft(values)
    freqs = np.fft.rfftfreq(values.size, spacing)
    return np.fft.irfft(spectrum * np.exp(-2j * np.pi * freqs * shift), n=values.size)


def extract_shift(measured: Density, reference: Density) -> FringeReport:
    """Fringe shift of ``measured`` relative to ``reference``.

    Positive shift means the measured fringes sit at larger coordinates.
    """
    if measured.grid != reference.grid or measured.space != reference.space:
        raise GridMismatch("densities must share grid and representation")
    m = measured.values
    r = reference.values
    if not (np.all(np.isfinite(m)) and np.all(np.isfinite(r))):
        raise NonFiniteSample("density contains NaN or Inf")
    h = measured.spacing

    frequency = fringe_frequency(m, h)
    fringe_frequency(r, h)
    period = 1.0 / frequency

    window = envelope_window(m, h, period)
    for name, values in (("measured", m), ("reference", r)):
        found = count_maxima(values, window)
        if found < MIN_FRINGE_MAXIMA:
            raise NoFringes(f"{name} density shows {found} maxima inside the "
                            f"envelope, need {MIN_FRINGE_MAXIMA}")

    m_slow, m_band = split_bands(m, h, frequency)
    r_slow, r_band = split_bands(r, h, frequency)
    shift = estimate_shift(m_band, r_band, m_slow, r_slow, h, period)
    visibility = local_visibility(m, m_slow, m_band, window)

    rms_ref = math.sqrt(float(np.mean(r * r)))
    if shift == 0.0:
        moved = r
    else:
        moved = fourier_shift(r, h, shift)
    residual = math.sqrt(float(np.mean((m - moved) ** 2))) / rms_ref if rms_ref > 0 else 0.0
    return FringeReport(float(shift), float(period), visibility, residual,
                        measured.space)


@dataclass(frozen=True)
class FluxSweep:
    flux_ratios: tuple
    dphis: tuple
    reports: tuple
    slope: float
    intercept: float

    @property
    def shifts(self):
        return tuple(r.shift for r in self.reports)


def shift_vs_flux(cfg_base: SlitConfig, flux_ratios, units: Units = DEFAULT_UNITS,
                  grid: Grid | None = None) -> FluxSweep:
    """Momentum-space fringe shift for each flux ratio against zero flux."""
    ratios = tuple(float(f) for f in flux_ratios)
    for f in ratios:
        if not -0.5 < f < 0.5:
            raise ValueError(f"flux ratio {f} outside (-1/2, 1/2)")
    if grid is None:
        grid = Grid.default_for(cfg_base.x0, units.hbar)
    base = SlitConfig(cfg_base.x0, cfg_base.d, 0.0)
    reference = density(sample_theta(grid, base, units=units))
    reports = []
    dphis = []
    for f in ratios:
        cfg = SlitConfig.from_flux_ratio(cfg_base.x0, cfg_base.d, f)
        dphis.append(cfg.dphi)
        reports.append(extract_shift(density(sample_theta(grid, cfg, units=units)),
                                     reference))
    shifts = np.array([r.shift for r in reports])
    if len(ratios) >= 2 and np.ptp(dphis) > 0:
        slope, intercept = np.polyfit(np.array(dphis), shifts, 1)
    else:
        slope, intercept = float("nan"), float(shifts.mean()) if len(shifts) else float("nan")
    return FluxSweep(ratios, tuple(dphis), tuple(reports), float(slope),
                     float(intercept))
