"""Command line entry point: ``abmomentum simulate|sweep|validate``.

Exit codes: 0 ok, 1 validation failure, 2 bad configuration,
3 degenerate physics (the slit amplitudes cancel).
"""
import argparse
import math
import sys

import numpy as np

from . import checks, fringes, model
from .errors import DegenerateNormalization, NoFringes
from .kernels import BACKEND
from .scenario import PRESETS, Scenario, ScenarioError, load_config, resolve

EXIT_OK, EXIT_FAILED, EXIT_CONFIG, EXIT_DEGENERATE = 0, 1, 2, 3
DEFAULT_OUT_X = "density_x.csv"
DEFAULT_OUT_P = "density_p.csv"
DEFAULT_SWEEP = tuple(np.round(np.linspace(-0.2, 0.2, 9), 12))


def fmt(value):
    return format(float(value), ".17g")


def header_lines(sc: Scenario, space):
    items = [("space", space), ("x0", fmt(sc.x0)), ("d", fmt(sc.d)),
             ("dphi", fmt(sc.dphi)), ("flux_ratio", fmt(sc.flux_ratio)),
             ("t", fmt(sc.t)), ("grid_n", str(sc.grid_n)),
             ("grid_span", fmt(sc.span)), ("hbar", "1"), ("mass", "1"),
             ("charge", "1")]
    return [f"# {k}={v}" for k, v in items]


def density_csv(sc: Scenario, space):
    grid = sc.grid()
    cfg = sc.slits
    if space == model.POSITION:
        coords, amps, label = grid.x, model.psi_t(grid.x, sc.t, cfg), "x"
    else:
        coords, amps, label = grid.p, model.theta_t(grid.p, sc.t, cfg), "p"
    dens = amps.real ** 2 + amps.imag ** 2
    lines = header_lines(sc, space)
    lines.append(f"{label},re,im,density")
    lines.extend(f"{fmt(c)},{fmt(a.real)},{fmt(a.imag)},{fmt(v)}"
                 for c, a, v in zip(coords, amps, dens))
    return "\n".join(lines) + "\n"


def write_text(path, text):
    with open(path, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _describe(report):
    return (f"shift={fmt(report.shift)} period={fmt(report.period)} "
            f"visibility={fmt(report.visibility)} residual={fmt(report.residual)}")


def simulation_report(sc: Scenario):
    grid = sc.grid()
    ref_cfg = model.SlitConfig(sc.x0, sc.d, 0.0)
    lines = [f"scenario x0={fmt(sc.x0)} d={fmt(sc.d)} dphi={fmt(sc.dphi)} t={fmt(sc.t)}"]
    for space, sampler in ((model.POSITION, model.sample_psi),
                           (model.MOMENTUM, model.sample_theta)):
        measured = model.density(sampler(grid, sc.slits, sc.t))
        reference = model.density(sampler(grid, ref_cfg, sc.t))
        lines.append(f"{space} norm={fmt(measured.integral())}")
        try:
            lines.append(f"{space} fringes vs dphi=0: "
                         + _describe(fringes.extract_shift(measured, reference)))
        except NoFringes as exc:
            lines.append(f"{space} fringes vs dphi=0: none ({exc})")
    return "\n".join(lines) + "\n"


def cmd_simulate(sc: Scenario):
    out_x = sc.out_x or DEFAULT_OUT_X
    out_p = sc.out_p or DEFAULT_OUT_P
    write_text(out_x, density_csv(sc, model.POSITION))
    write_text(out_p, density_csv(sc, model.MOMENTUM))
    report = simulation_report(sc)
    if sc.report:
        write_text(sc.report, report)
    sys.stdout.write(report)
    return EXIT_OK


def sweep_csv(sc: Scenario, ratios):
    result = fringes.shift_vs_flux(model.SlitConfig(sc.x0, sc.d, 0.0), ratios,
                                   grid=sc.grid())
    lines = [f"# {k}={v}" for k, v in (("x0", fmt(sc.x0)), ("d", fmt(sc.d)),
                                        ("grid_n", str(sc.grid_n)),
                                        ("grid_span", fmt(sc.span)))]
    lines.append("flux_ratio,dphi,shift,period,visibility")
    for ratio, dphi, rep in zip(result.flux_ratios, result.dphis, result.reports):
        lines.append(",".join(fmt(v) for v in (ratio, dphi, rep.shift, rep.period,
                                               rep.visibility)))
    lines.append(f"# slope={fmt(result.slope)} theoretical_slope={fmt(1.0 / (2.0 * sc.d))}")
    return "\n".join(lines) + "\n"


def cmd_sweep(sc: Scenario, ratios):
    for r in ratios:
        if not (math.isfinite(r) and -0.5 < r < 0.5):
            raise ScenarioError("ratios", f"{r} outside (-1/2, 1/2)")
    if sc.d <= 0:
        raise ScenarioError("d", "a flux sweep needs separated slits (d > 0)")
    text = sweep_csv(sc, ratios)
    if sc.report:
        write_text(sc.report, text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def cmd_validate(sc: Scenario):
    results = checks.run_checks(sc.x0, sc.d, sc.dphi, sc.t, sc.grid())
    lines = [f"backend={BACKEND}"] + [r.line() for r in results]
    failed = sum(not r.passed for r in results)
    lines.append(f"{len(results) - failed}/{len(results)} checks passed")
    text = "\n".join(lines) + "\n"
    if sc.report:
        write_text(sc.report, text)
    sys.stdout.write(text)
    return EXIT_OK if failed == 0 else EXIT_FAILED


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--config", metavar="PATH", help="flat JSON scenario file")
    common.add_argument("--preset", choices=sorted(PRESETS))
    common.add_argument("--x0", type=float)
    common.add_argument("--d", type=float)
    phase = common.add_mutually_exclusive_group()
    phase.add_argument("--dphi", type=float, help="Aharonov-Bohm phase in radians")
    phase.add_argument("--flux-ratio", type=float, dest="flux_ratio",
                       help="enclosed flux in units of h/e")
    common.add_argument("--t", type=float)
    common.add_argument("--grid-n", type=int, dest="grid_n")
    common.add_argument("--grid-span", type=float, dest="grid_span")
    common.add_argument("--out-x", dest="out_x", metavar="PATH")
    common.add_argument("--out-p", dest="out_p", metavar="PATH")
    common.add_argument("--report", metavar="PATH")
    common.add_argument("--dump-config", dest="dump_config", metavar="PATH",
                        help="also write the resolved scenario as JSON")

    parser = argparse.ArgumentParser(
        prog="abmomentum",
        description="Momentum-space Aharonov-Bohm two-slit simulations.")
    sub = parser.add_subparsers(dest="command", required=True)
    sub.add_parser("simulate", parents=[common],
                   help="write position and momentum density CSVs")
    sweep = sub.add_parser("sweep", parents=[common],
                           help="momentum fringe shift versus flux")
    sweep.add_argument("--ratios", type=float, nargs="+", default=list(DEFAULT_SWEEP),
                       metavar="R", help="flux ratios in (-1/2, 1/2)")
    sub.add_parser("validate", parents=[common], help="run the self-validation suite")
    return parser


def scenario_from_args(args):
    layers = []
    if args.preset:
        layers.append(dict(PRESETS[args.preset]))
    if args.config:
        layers.append(load_config(args.config))
    overrides = {k: getattr(args, k) for k in
                 ("x0", "d", "dphi", "flux_ratio", "t", "grid_n", "grid_span",
                  "out_x", "out_p", "report")
                 if getattr(args, k) is not None}
    layers.append(overrides)
    try:
        sc = resolve(layers)
    except TypeError as exc:
        raise ScenarioError("config", str(exc)) from None
    return sc.check(strict_span=args.command != "validate")


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        sc = scenario_from_args(args)
        if args.dump_config:
            write_text(args.dump_config, sc.dumps())
        if args.command == "simulate":
            return cmd_simulate(sc)
        if args.command == "sweep":
            return cmd_sweep(sc, args.ratios)
        return cmd_validate(sc)
    except ScenarioError as exc:
        print(f"abmomentum: invalid configuration: {exc}", file=sys.stderr)
        return EXIT_CONFIG
    except DegenerateNormalization as exc:
        print(f"abmomentum: degenerate state: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
