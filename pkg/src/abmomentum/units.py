from dataclasses import dataclass
import math


@dataclass(frozen=True)
class Units:
    """Physical constants entering the free Hamiltonian and the flux phase.

    Defaults are the dimensionless system hbar = m = e = 1; lengths are then
    naturally measured in slit widths.
    """

    hbar: float = 1.0
    mass: float = 1.0
    charge: float = 1.0

    def __post_init__(self):
        for name in ("hbar", "mass", "charge"):
            value = getattr(self, name)
            if not (math.isfinite(value) and value > 0):
                raise ValueError(f"{name} must be finite and > 0, got {value!r}")

    @property
    def flux_quantum(self) -> float:
        """h/e, the flux giving a full 2*pi phase."""
        return 2.0 * math.pi * self.hbar / self.charge


DEFAULT_UNITS = Units()
