"""Cross-module self-validation run by ``abmomentum validate``."""
from dataclasses import dataclass
import math

import numpy as np

from . import fringes, gauge, model, spectral
from .errors import AharonovBohmError
from .model import SlitConfig
from .units import DEFAULT_UNITS


@dataclass(frozen=True)
class CheckResult:
    name: str
    error: float
    tolerance: float
    detail: str = ""

    @property
    def passed(self):
        return bool(self.error <= self.tolerance)

    def line(self):
        status = "PASS" if self.passed else "FAIL"
        text = f"{status} {self.name}: error={self.error:.3e} tol={self.tolerance:.1e}"
        return f"{text} ({self.detail})" if self.detail else text


def fig3_time(x0, units=DEFAULT_UNITS):
    return 5.0 * units.mass * x0 ** 2 / (2.0 * units.hbar)


def gauge_paths(radius):
    """Named closed paths around a solenoid at the origin, with winding numbers."""
    r = radius
    square = gauge.Polyline(((-5 * r, -5 * r), (5 * r, -5 * r), (5 * r, 5 * r), (-5 * r, 5 * r)))
    beams = gauge.Polyline(((-3 * r, -8 * r), (0.0, -2 * r), (3 * r, -8 * r),
                            (3 * r, 8 * r), (0.0, 2 * r), (-3 * r, 8 * r)))
    return [
        ("square", square, 1),
        ("square_reversed", square.reversed(), -1),
        ("triangle_outside", gauge.Polyline(((3 * r, 0.0), (6 * r, r), (4 * r, 4 * r))), 0),
        ("octagon_twice", gauge.Polyline.regular_polygon(8, 3 * r, turns=2), 2),
        ("hexagon_twice_cw", gauge.Polyline.regular_polygon(6, 2.5 * r, turns=-2, phase=0.3), -2),
        ("beam_pair", beams, 1),
        ("offset_pentagon", gauge.Polyline.regular_polygon(5, 4 * r, center=(1.5 * r, -r)), 1),
    ]


def _run(name, tolerance, fn):
    try:
        error, detail = fn()
    except AharonovBohmError as exc:
        return CheckResult(name, math.inf, tolerance, f"{type(exc).__name__}: {exc}")
    return CheckResult(name, float(error), tolerance, detail)


def run_checks(x0=1.0, d=4.0, dphi=math.pi / 2, t=0.0, grid=None,
               units=DEFAULT_UNITS):
    """Evaluate every named check for one scenario; never raises on physics errors."""
    grid = spectral.Grid.default_for(x0, units.hbar) if grid is None else grid
    cfg = SlitConfig(x0, d, dphi)
    t_prop = t if t > 0 else fig3_time(x0, units)
    results = []

    def psi():
        return model.sample_psi(grid, cfg, units=units)

    def norm_psi():
        return abs(model.density(psi()).integral() - 1.0), ""

    def norm_theta():
        return abs(model.density(model.sample_theta(grid, cfg, units=units)).integral() - 1.0), ""

    def oracle_theta():
        numeric = spectral.x_to_p(psi())
        return spectral.aligned_l2(numeric.amps, model.theta0(grid.p, cfg, units), grid.dp), ""

    def oracle_psi_t():
        numeric = spectral.free_propagate(psi(), t_prop, units)
        analytic = model.psi_t(grid.x, t_prop, cfg, units)
        return spectral.aligned_l2(numeric.amps, analytic, grid.dx), f"t={t_prop:g}"

    def boundary():
        worst = 0.0
        for when in (0.0, t_prop):
            state = model.sample_psi(grid, cfg, when, units)
            worst = max(worst, *spectral.guard_band_density(state))
        return worst, f"guard-band density up to t={t_prop:g}"

    def parseval():
        state = psi()
        nx = state.norm()
        np_ = spectral.x_to_p(state).norm()
        back = spectral.p_to_x(spectral.x_to_p(state)).norm()
        return max(abs(np_ - nx), abs(back - nx)) / nx, ""

    def round_trip():
        state = psi()
        back = spectral.p_to_x(spectral.x_to_p(state))
        return float(np.max(np.abs(back.amps - state.amps))), ""

    def momentum_invariance():
        ref = np.abs(model.theta0(grid.p, cfg, units)) ** 2
        worst = 0.0
        for when in (t_prop, 10.0 * t_prop):
            dens = np.abs(model.theta_t(grid.p, when, cfg, units)) ** 2
            worst = max(worst, float(np.max(np.abs(dens - ref))))
        return worst, ""

    def periodicity():
        shifted = SlitConfig(x0, d, dphi + 2.0 * math.pi)
        worst = 0.0
        for when in (0.0, t_prop):
            a = np.abs(model.psi_t(grid.x, when, cfg, units)) ** 2
            b = np.abs(model.psi_t(grid.x, when, shifted, units)) ** 2
            worst = max(worst, float(np.max(np.abs(a - b))))
        a = np.abs(model.theta0(grid.p, cfg, units)) ** 2
        b = np.abs(model.theta0(grid.p, shifted, units)) ** 2
        return max(worst, float(np.max(np.abs(a - b)))), "dphi vs dphi + 2pi"

    radius = d / 4.0 if d > 0 else x0 / 4.0
    flux_ratio = cfg.flux_ratio if cfg.phase != 0 else 0.25

    def gauge_consistency():
        sol = gauge.Solenoid.from_flux_ratio(flux_ratio, radius, units=units)
        worst = 0.0
        for _, path, winding in gauge_paths(radius):
            if gauge.winding_number(path) != winding:
                return math.inf, f"winding of {path!r} is not {winding}"
            expected = gauge.phase_for_flux(flux_ratio, winding)
            worst = max(worst, abs(gauge.loop_phase(sol, path, units) - expected))
        return worst, f"{len(gauge_paths(radius))} paths, flux ratio {flux_ratio:g}"

    def curl_free():
        sol = gauge.Solenoid.from_flux_ratio(flux_ratio, radius, units=units)
        rng = np.random.default_rng(7)
        angles = rng.uniform(0, 2 * np.pi, 100)
        dist = rng.uniform(1.2 * radius, 10 * radius, 100)
        worst = max(abs(gauge.curl_z(sol, (rr * math.cos(a), rr * math.sin(a))))
                    for a, rr in zip(angles, dist))
        return worst / (abs(sol.flux) / radius ** 2), "100 exterior probes, relative to flux/R^2"

    def fringe_shift():
        measured = model.density(model.sample_theta(grid, cfg, units=units))
        reference = model.density(model.sample_theta(grid, SlitConfig(x0, d, 0.0), units=units))
        report = fringes.extract_shift(measured, reference)
        period = math.pi * units.hbar / d
        expected = units.hbar * cfg.phase / (2.0 * d)
        expected -= period * round(expected / period)
        return abs(report.shift - expected), f"shift={report.shift:.10g} expected={expected:.10g}"

    def fringe_period():
        measured = model.density(model.sample_theta(grid, cfg, units=units))
        reference = model.density(model.sample_theta(grid, SlitConfig(x0, d, 0.0), units=units))
        report = fringes.extract_shift(measured, reference)
        expected = math.pi * units.hbar / d
        return abs(report.period - expected), f"period={report.period:.10g} expected={expected:.10g}"

    results.append(_run("normalization_psi0", 1e-9, norm_psi))
    results.append(_run("normalization_theta0", 1e-9, norm_theta))
    results.append(_run("oracle_theta0", 1e-8, oracle_theta))
    results.append(_run("oracle_psi_t", 1e-8, oracle_psi_t))
    results.append(_run("boundary_leak", spectral.LEAK_THRESHOLD, boundary))
    results.append(_run("parseval", 1e-12, parseval))
    results.append(_run("inverse_round_trip", 1e-12, round_trip))
    results.append(_run("momentum_density_invariance", 1e-12, momentum_invariance))
    results.append(_run("flux_periodicity", 1e-12, periodicity))
    results.append(_run("gauge_consistency", 1e-9, gauge_consistency))
    results.append(_run("gauge_curl_free", 1e-6, curl_free))
    if d > 0:
        results.append(_run("fringe_shift", 1e-4, fringe_shift))
        results.append(_run("fringe_period", 1e-4, fringe_period))
    return results
