"""Aharonov-Bohm effect in momentum space for a Gaussian two-slit electron state.

Modules: ``model`` (closed-form wavefunctions), ``spectral`` (grids, Fourier
transforms, free propagation), ``gauge`` (vector potential loop phases),
``fringes`` (shift/period/visibility analysis) and ``cli``.
"""
from .errors import (AharonovBohmError, BoundaryLeak, DegenerateNormalization,
                     GridMismatch, NoFringes, NonFiniteSample, OpenPath,
                     PathIntersectsSolenoid)
from .model import Density, SlitConfig
from .spectral import Grid, WavefunctionP, WavefunctionX
from .units import Units

__version__ = "0.1.0"

__all__ = [
    "AharonovBohmError", "BoundaryLeak", "DegenerateNormalization", "Density",
    "Grid", "GridMismatch", "NoFringes", "NonFiniteSample", "OpenPath",
    "PathIntersectsSolenoid", "SlitConfig", "Units", "WavefunctionP",
    "WavefunctionX",
]
