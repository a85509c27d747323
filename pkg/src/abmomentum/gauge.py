"""Aharonov-Bohm phase from line integrals of a confined-flux vector potential.

The solenoid field is prescribed in the symmetric gauge: outside the core
``A = flux / (2 pi r) e_theta`` (curl-free), inside ``A = flux r / (2 pi R^2) e_theta``.
"""
from dataclasses import dataclass
import math

import numpy as np

from . import kernels
from .errors import OpenPath, PathIntersectsSolenoid
from .units import DEFAULT_UNITS, Units

GL_ORDER = 8
QUAD_TOL = 1e-10
QUAD_MAX_LEVEL = 12

_NODES, _WEIGHTS = np.polynomial.legendre.leggauss(GL_ORDER)


@dataclass(frozen=True)
class Solenoid:
    center: tuple = (0.0, 0.0)
    radius: float = 1.0
    flux: float = 0.0

    def __post_init__(self):
        cx, cy = (float(c) for c in self.center)
        object.__setattr__(self, "center", (cx, cy))
        if not (math.isfinite(self.radius) and self.radius > 0):
            raise ValueError(f"radius must be finite and > 0, got {self.radius!r}")
        if not (math.isfinite(self.flux) and math.isfinite(cx) and math.isfinite(cy)):
            raise ValueError("flux and center must be finite")

    @classmethod
    def from_flux_ratio(cls, flux_ratio, radius=1.0, center=(0.0, 0.0),
                        units: Units = DEFAULT_UNITS):
        return cls(center, radius, flux_ratio * units.flux_quantum)


@dataclass(frozen=True)
class Polyline:
    vertices: tuple
    closed: bool = True

    def __post_init__(self):
        verts = tuple((float(x), float(y)) for x, y in self.vertices)
        object.__setattr__(self, "vertices", verts)
        if len(verts) < (3 if self.closed else 2):
            raise ValueError("polyline needs >= 2 vertices (>= 3 when closed)")
        for a, b in self.segments():
            if a == b:
                raise ValueError(f"consecutive vertices coincide at {a}")
        if not all(math.isfinite(c) for v in verts for c in v):
            raise ValueError("vertices must be finite")

    def segments(self):
        verts = self.vertices
        pairs = list(zip(verts[:-1], verts[1:]))
        if self.closed:
            pairs.append((verts[-1], verts[0]))
        return pairs

    def reversed(self):
        return Polyline(self.vertices[::-1], self.closed)

    def repeated(self, times):
        """The same loop traversed ``times`` times in succession."""
        return Polyline(self.vertices * times, self.closed)

    @classmethod
    def regular_polygon(cls, sides, radius, center=(0.0, 0.0), turns=1,
                        phase=0.0):
        """Closed polygon winding ``turns`` times (negative = clockwise)."""
        count = sides * abs(turns)
        sign = 1 if turns >= 0 else -1
        angles = phase + sign * 2.0 * math.pi * np.arange(count) / sides
        cx, cy = center
        return cls(tuple(zip(cx + radius * np.cos(angles),
                             cy + radius * np.sin(angles))))


def vector_potential(s: Solenoid, point):
    x = float(point[0]) - s.center[0]
    y = float(point[1]) - s.center[1]
    if not (math.isfinite(x) and math.isfinite(y)):
        raise ValueError("point must be finite")
    r2 = x * x + y * y
    scale = s.flux / (2.0 * math.pi * max(r2, s.radius * s.radius))
    return np.array([-y * scale, x * scale])


def _segment_distance(a, b, c):
    ax, ay = a[0] - c[0], a[1] - c[1]
    dx, dy = b[0] - a[0], b[1] - a[1]
    t = -(ax * dx + ay * dy) / (dx * dx + dy * dy)
    t = min(1.0, max(0.0, t))
    return math.hypot(ax + t * dx, ay + t * dy)


def winding_number(path: Polyline, center=(0.0, 0.0)) -> int:
    """Signed number of turns of a closed path around ``center``.

    Counted from the angles subtended by consecutive vertices, independently
    of any vector potential. Assumes no segment passes through ``center``.
    """
    if not path.closed:
        raise OpenPath("winding number needs a closed path")
    verts = np.asarray(path.vertices)
    total = kernels.winding_angle(verts[:, 0].copy(), verts[:, 1].copy(),
                                  float(center[0]), float(center[1]))
    return int(round(total / (2.0 * math.pi)))


def circulation(s: Solenoid, path: Polyline) -> float:
    """Line integral of A along ``path`` (units of flux)."""
    parts = []
    cx, cy = s.center
    for a, b in path.segments():
        if _segment_distance(a, b, s.center) < s.radius:
            raise PathIntersectsSolenoid(
                f"segment {a} -> {b} enters the solenoid core")
        value, _ = kernels.segment_integral(a[0], a[1], b[0], b[1], cx, cy,
                                            s.radius, s.flux, _NODES, _WEIGHTS,
                                            QUAD_TOL, QUAD_MAX_LEVEL)
        parts.append(value)
    return math.fsum(parts)


def loop_phase(s: Solenoid, path: Polyline, units: Units = DEFAULT_UNITS) -> float:
    """(e/hbar) * closed line integral of A: the Aharonov-Bohm phase."""
    if not path.closed:
        raise OpenPath("the Aharonov-Bohm phase needs a closed path")
    return units.charge / units.hbar * circulation(s, path)


def phase_for_flux(flux_ratio: float, winding: int = 1) -> float:
    return 2.0 * math.pi * flux_ratio * winding


def curl_z(s: Solenoid, point, h=None) -> float:
    """Central-difference (dAy/dx - dAx/dy) at ``point``."""
    h = 1e-4 * s.radius if h is None else h
    x, y = float(point[0]), float(point[1])
    day_dx = (vector_potential(s, (x + h, y))[1] - vector_potential(s, (x - h, y))[1]) / (2 * h)
    dax_dy = (vector_potential(s, (x, y + h))[0] - vector_potential(s, (x, y - h))[0]) / (2 * h)
    return float(day_dx - dax_dy)
