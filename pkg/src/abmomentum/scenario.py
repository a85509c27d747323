"""Scenario records for the command line: presets, JSON config, overrides."""
from dataclasses import dataclass, asdict
import json
import math

from .model import SlitConfig
from .spectral import DEFAULT_N, DEFAULT_SPAN, Grid

PHASE_QUANTUM = 2.0 ** -40  # in flux quanta, ~5.7e-12 rad

PRESETS = {
    "fig2": {"x0": 1.0, "d": 4.0, "dphi": math.pi / 2, "t": 0.0},
    "fig3": {"x0": 1.0, "d": 4.0, "dphi": math.pi / 2, "t": 2.5},
}

CONFIG_KEYS = ("x0", "d", "t", "dphi", "flux_ratio", "grid_n", "grid_span",
               "out_x", "out_p", "report")


class ScenarioError(ValueError):
    """Invalid scenario; ``field`` names the offending entry."""

    def __init__(self, field, message):
        super().__init__(f"{field}: {message}")
        self.field = field


def canonical_phase(dphi):
    """Phase reduced to [-pi, pi] on a binary grid of flux ratios.

    Reduction alone leaves last-bit differences between ``dphi`` and
    ``dphi + 2 pi``; snapping the flux ratio to multiples of 2**-40 makes
    both produce byte-identical files while keeping simple fractions such
    as 1/4 (dphi = pi/2) exact.
    """
    ratio = math.remainder(dphi, 2.0 * math.pi) / (2.0 * math.pi)
    return 2.0 * math.pi * (round(ratio / PHASE_QUANTUM) * PHASE_QUANTUM) + 0.0


@dataclass(frozen=True)
class Scenario:
    x0: float = 1.0
    d: float = 4.0
    t: float = 0.0
    dphi: float = math.pi / 2
    grid_n: int = DEFAULT_N
    grid_span: float | None = None
    out_x: str | None = None
    out_p: str | None = None
    report: str | None = None

    @property
    def span(self):
        return DEFAULT_SPAN * self.x0 if self.grid_span is None else self.grid_span

    @property
    def slits(self):
        return SlitConfig(self.x0, self.d, self.dphi)

    @property
    def flux_ratio(self):
        return self.dphi / (2.0 * math.pi)

    def grid(self):
        return Grid.centered(self.grid_n, self.span)

    def check(self, strict_span=True):
        for name in ("x0", "d", "t", "dphi"):
            value = getattr(self, name)
            if not isinstance(value, (int, float)) or isinstance(value, bool) \
                    or not math.isfinite(value):
                raise ScenarioError(name, f"must be a finite number, got {value!r}")
        if self.x0 <= 0:
            raise ScenarioError("x0", "must be > 0")
        if self.d < 0:
            raise ScenarioError("d", "must be >= 0")
        if self.t < 0:
            raise ScenarioError("t", "must be >= 0")
        n = self.grid_n
        if isinstance(n, bool) or not isinstance(n, int) or n < 8 or n & (n - 1):
            raise ScenarioError("grid_n", f"must be a power of two >= 8, got {n!r}")
        span = self.span
        if isinstance(span, bool) or not isinstance(span, (int, float)) \
                or not math.isfinite(span) or span <= 0:
            raise ScenarioError("grid_span", f"must be a finite number > 0, got {span!r}")
        if strict_span and not span > 4.0 * (self.d + self.x0):
            raise ScenarioError(
                "grid_span", f"{span} must exceed 4*(d + x0) = {4.0 * (self.d + self.x0)}")
        for name in ("out_x", "out_p", "report"):
            value = getattr(self, name)
            if value is not None and not isinstance(value, str):
                raise ScenarioError(name, "must be a path string")
        return self

    def to_config(self):
        cfg = asdict(self)
        cfg["grid_span"] = float(self.span)
        return cfg

    def dumps(self):
        return json.dumps(self.to_config(), indent=2) + "\n"


def resolve(layers):
    """Merge mappings left to right into a canonical Scenario.

    Each layer may name the phase as ``dphi`` or ``flux_ratio`` but not
    both; a later layer's phase replaces an earlier one.
    """
    merged = {}
    for layer in layers:
        unknown = set(layer) - set(CONFIG_KEYS)
        if unknown:
            name = sorted(unknown)[0]
            raise ScenarioError(name, "unknown key")
        if "dphi" in layer and "flux_ratio" in layer:
            raise ScenarioError("dphi", "give either dphi or flux_ratio, not both")
        if "flux_ratio" in layer:
            ratio = layer["flux_ratio"]
            if isinstance(ratio, bool) or not isinstance(ratio, (int, float)) \
                    or not math.isfinite(ratio):
                raise ScenarioError("flux_ratio", f"must be a finite number, got {ratio!r}")
            merged["dphi"] = 2.0 * math.pi * ratio
        merged.update({k: v for k, v in layer.items() if k != "flux_ratio"})
    value = merged.setdefault("dphi", Scenario.dphi)
    if isinstance(value, bool) or not isinstance(value, (int, float)) \
            or not math.isfinite(value):
        raise ScenarioError("dphi", f"must be a finite number, got {value!r}")
    merged["dphi"] = canonical_phase(float(value))
    for name in ("x0", "d", "t", "grid_span"):
        if isinstance(merged.get(name), int) and not isinstance(merged[name], bool):
            merged[name] = float(merged[name])
    return Scenario(**merged)


def load_config(path):
    try:
        with open(path, encoding="utf-8") as fh:
            data = json.load(fh)
    except json.JSONDecodeError as exc:
        raise ScenarioError("config", f"invalid JSON in {path}: {exc}") from None
    except OSError as exc:
        raise ScenarioError("config", f"cannot read {path}: {exc.strerror}") from None
    if not isinstance(data, dict):
        raise ScenarioError("config", "top level must be a JSON object")
    return data
