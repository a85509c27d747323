"""Hot numeric kernels with a numba path and a pure-numpy fallback.

The numba versions are used when numba imports cleanly, unless the
environment variable ``ABMOMENTUM_NO_NUMBA`` is set to a non-empty value
other than ``0``. ``BACKEND`` records the choice.
"""
import os

from . import _numpy

_disabled = os.environ.get("ABMOMENTUM_NO_NUMBA", "") not in ("", "0")

if _disabled:
    _impl = _numpy
else:
    try:
        from . import _numba as _impl
    except ImportError:  # numba missing or broken
        _impl = _numpy

BACKEND = "numba" if _impl is not _numpy else "numpy"

two_slit_amplitude = _impl.two_slit_amplitude
moving_max = _impl.moving_max
trig_eval = _impl.trig_eval
segment_integral = _impl.segment_integral
winding_angle = _impl.winding_angle

__all__ = ["BACKEND", "two_slit_amplitude", "moving_max", "trig_eval",
           "segment_integral", "winding_angle"]
