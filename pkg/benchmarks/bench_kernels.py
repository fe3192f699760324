"""Compare the compiled and numpy series kernels on the default sweep grid.

    python benchmarks/bench_kernels.py [--r-steps 200] [--tau-steps 200] [--repeat 5]
"""
import argparse
import math
import time

import numpy as np

from squidtransfer import _pykernels
from squidtransfer.spectrum import build_spectrum

try:
    from squidtransfer import _ckernels
except ImportError:
    _ckernels = None


def run(fn, spectra, taus):
    for s in spectra:
        fn(s.eta, taus)


def best_of(fn, spectra, taus, repeat):
    times = []
    for _ in range(repeat):
        t0 = time.perf_counter()
        run(fn, spectra, taus)
        times.append(time.perf_counter() - t0)
    return min(times)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--r-steps", type=int, default=200)
    ap.add_argument("--tau-steps", type=int, default=200)
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    spectra = [build_spectrum(r) for r in np.linspace(0, 2, args.r_steps)]
    taus = np.linspace(0, 3 * math.pi, args.tau_steps)
    terms = sum(s.n_max + 1 for s in spectra) * taus.size
    print(f"grid {args.r_steps}x{args.tau_steps}, {terms:,} series terms")

    t_py = best_of(_pykernels.abd_series, spectra, taus, args.repeat)
    print(f"numpy fallback : {t_py * 1e3:9.2f} ms")
    if _ckernels is None:
        print("compiled kernel: not built")
        return
    t_c = best_of(_ckernels.abd_series, spectra, taus, args.repeat)
    print(f"cython kernel  : {t_c * 1e3:9.2f} ms  ({t_py / t_c:.1f}x)")
    worst = max(
        float(np.max(np.abs(x - y)))
        for s in spectra
        for x, y in zip(_ckernels.abd_series(s.eta, taus), _pykernels.abd_series(s.eta, taus))
    )
    print(f"max |cython - numpy| = {worst:.2e}")


if __name__ == "__main__":
    main()
