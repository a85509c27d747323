"""Time the numba kernels against their numpy twins, then a full pipeline.

    python benchmarks/bench_kernels.py [--repeat 20]

The end-to-end timing runs each backend in a fresh interpreter, since the
backend is fixed at import time by ABMOMENTUM_NO_NUMBA.
"""
import argparse
import os
import subprocess
import sys
import timeit

import numpy as np

from abmomentum.kernels import _numpy

try:
    from abmomentum.kernels import _numba
except ImportError:
    _numba = None

PIPELINE = """
import math
from abmomentum import fringes, model, gauge
from abmomentum.spectral import Grid
grid = Grid.centered()
on, off = model.SlitConfig(1.0, 4.0, math.pi / 2), model.SlitConfig(1.0, 4.0, 0.0)
def run():
    for t in (0.0, 2.5):
        fringes.extract_shift(model.density(model.sample_psi(grid, on, t)) if t else
                              model.density(model.sample_theta(grid, on)),
                              model.density(model.sample_psi(grid, off, t)) if t else
                              model.density(model.sample_theta(grid, off)))
    gauge.loop_phase(gauge.Solenoid.from_flux_ratio(0.25, 1.0),
                     gauge.Polyline.regular_polygon(7, 3.0, turns=2))
run()
"""


def cases():
    rng = np.random.default_rng(0)
    x = np.linspace(-32, 32, 4096)
    inv_a = 1.0 / complex(1.0, 5.0)
    dens = np.abs(rng.normal(size=4096))
    freqs = np.fft.rfftfreq(512, 0.1)
    c = rng.normal(size=freqs.size) + 1j * rng.normal(size=freqs.size)
    s = np.linspace(-0.4, 0.4, 2048)
    nodes, weights = np.polynomial.legendre.leggauss(8)
    poly = 3.0 * np.exp(2j * np.pi * np.arange(4001) / 400)
    return {
        "two_slit_amplitude": lambda m: m.two_slit_amplitude(x, inv_a, 4.0, 0.785),
        "moving_max": lambda m: m.moving_max(dens, 40),
        "trig_eval": lambda m: m.trig_eval(c.real, c.imag, freqs, s),
        "segment_integral": lambda m: m.segment_integral(
            1.2, -0.3, -0.9, 1.5, 0.0, 0.0, 1.0, 1.0, nodes, weights, 1e-10, 12),
        "winding_angle": lambda m: m.winding_angle(poly.real, poly.imag, 0.0, 0.0),
    }


def best_of(fn, repeat):
    fn()  # warm up, includes jit compilation
    timer = timeit.Timer(fn)
    loops, _ = timer.autorange()
    return min(timer.repeat(repeat, loops)) / loops


def pipeline_time(disable_numba, repeat):
    env = dict(os.environ, ABMOMENTUM_NO_NUMBA="1" if disable_numba else "0")
    code = PIPELINE + f"import timeit; print(min(timeit.repeat(run, number=1, repeat={repeat})))"
    out = subprocess.run([sys.executable, "-c", code], env=env, capture_output=True,
                         text=True, check=True)
    return float(out.stdout.strip().splitlines()[-1])


def main(argv=None):
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=20)
    args = ap.parse_args(argv)
    print(f"{'kernel':<20}{'numpy [us]':>14}{'numba [us]':>14}{'speedup':>10}")
    for name, call in cases().items():
        t_np = best_of(lambda: call(_numpy), args.repeat)
        if _numba is None:
            print(f"{name:<20}{t_np * 1e6:>14.1f}{'n/a':>14}{'':>10}")
            continue
        t_nb = best_of(lambda: call(_numba), args.repeat)
        print(f"{name:<20}{t_np * 1e6:>14.1f}{t_nb * 1e6:>14.1f}{t_np / t_nb:>9.1f}x")
    t_np = pipeline_time(True, args.repeat)
    t_nb = pipeline_time(False, args.repeat) if _numba is not None else float("nan")
    print(f"{'pipeline':<20}{t_np * 1e6:>14.1f}{t_nb * 1e6:>14.1f}{t_np / t_nb:>9.1f}x")


if __name__ == "__main__":
    main()
