"""Vectorized numpy implementations of the hot kernels.

Every function here has a loop-based twin in ``_numba`` with the same
signature; the two are interchangeable up to floating point rounding.
"""
import numpy as np
from scipy.ndimage import maximum_filter1d

TWO_PI = 2.0 * np.pi


def two_slit_amplitude(x, inv_a, d, half_phase):
    """exp(-(x+d)^2/a - i*phi/2) + exp(-(x-d)^2/a + i*phi/2), with inv_a = 1/a."""
    x = np.asarray(x, dtype=np.float64)
    left = np.exp(-((x + d) ** 2) * inv_a - 1j * half_phase)
    right = np.exp(-((x - d) ** 2) * inv_a + 1j * half_phase)
    return left + right


def moving_max(values, half_width):
    return maximum_filter1d(np.asarray(values, dtype=np.float64),
                            size=2 * half_width + 1, mode="nearest")


def trig_eval(c_re, c_im, freqs, s):
    """Real part of sum_k c_k exp(2 pi i f_k s_j) for every s_j.

    Rows are summed with the same pairwise order for every s_j, so real
    even coefficient sets give results that are bitwise even in s.
    """
    theta = np.multiply.outer(np.asarray(s, dtype=np.float64), TWO_PI * freqs)
    terms = c_re * np.cos(theta) - c_im * np.sin(theta)
    return terms.sum(axis=1)


def _panel_sums(ax, ay, bx, by, cx, cy, radius, flux, nodes, weights, panels):
    # composite Gauss-Legendre over `panels` equal sub-segments
    t = (np.arange(panels)[:, None] + 0.5 * (nodes[None, :] + 1.0)) / panels
    px = ax + (bx - ax) * t - cx
    py = ay + (by - ay) * t - cy
    r2 = px * px + py * py
    r2_eff = np.where(r2 >= radius * radius, r2, radius * radius)
    # A = flux/(2 pi) * (-py, px) / r2_eff; dot with segment direction
    integrand = (flux / TWO_PI) * (-py * (bx - ax) + px * (by - ay)) / r2_eff
    return float((integrand * weights[None, :]).sum() * 0.5 / panels)


def segment_integral(ax, ay, bx, by, cx, cy, radius, flux, nodes, weights,
                     tol, max_level):
    """Line integral of the solenoid vector potential along one segment.

    Returns ``(value, level)``; ``level`` is the refinement depth reached.
    """
    previous = _panel_sums(ax, ay, bx, by, cx, cy, radius, flux, nodes, weights, 1)
    for level in range(1, max_level + 1):
        current = _panel_sums(ax, ay, bx, by, cx, cy, radius, flux, nodes,
                              weights, 2 ** level)
        if abs(current - previous) < tol:
            return current, level
        previous = current
    return previous, max_level


def winding_angle(vx, vy, cx, cy):
    """Total signed angle swept about (cx, cy) by the closed polygon (vx, vy)."""
    ux = np.asarray(vx, dtype=np.float64) - cx
    uy = np.asarray(vy, dtype=np.float64) - cy
    wx = np.roll(ux, -1)
    wy = np.roll(uy, -1)
    return float(np.arctan2(ux * wy - uy * wx, ux * wx + uy * wy).sum())
