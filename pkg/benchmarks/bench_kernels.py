"""Compare the compiled and numpy kernel backends on representative sizes.

    python benchmarks/bench_kernels.py [--repeat 5]

Prints best-of-N wall time per call and the max deviation between backends.
"""
import argparse
import timeit

import numpy as np

from gabortf import kernels
from gabortf.chirp import dcft
from gabortf.core import Lattice, dgt, idgt
from gabortf.rng import complex_white_noise

CASES = [
    ("dgt", (256, 8, 32)),
    ("dgt", (2048, 16, 512)),
    ("dgt", (4096, 4, 64)),
    ("idgt", (256, 8, 32)),
    ("idgt", (2048, 16, 512)),
    ("idgt", (4096, 4, 64)),
    ("dcft", 127),
    ("dcft", 509),
    ("noise", 100_000),
]


def make_call(kind, arg):
    rng = np.random.default_rng(0)
    if kind in ("dgt", "idgt"):
        lat = Lattice(*arg)
        g = rng.standard_normal(lat.L) + 1j * rng.standard_normal(lat.L)
        if kind == "dgt":
            s = rng.standard_normal(lat.L) + 1j * rng.standard_normal(lat.L)
            return lambda: dgt(s, g, lat)
        c = rng.standard_normal(lat.shape) + 1j * rng.standard_normal(lat.shape)
        return lambda: idgt(c, g, lat)
    if kind == "dcft":
        s = rng.standard_normal(arg) + 1j * rng.standard_normal(arg)
        return lambda: dcft(s)
    return lambda: complex_white_noise(arg, 1)


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--repeat", type=int, default=5)
    args = ap.parse_args()

    backends = kernels.available_backends()
    names = sorted(backends)
    header = f"{'kernel':<8}{'size':>20}" + "".join(f"{n + ' [ms]':>16}" for n in names) + f"{'speedup':>10}{'max diff':>12}"
    print(header)
    print("-" * len(header))
    for kind, arg in CASES:
        times, outs = {}, {}
        for name in names:
            kernels._impl = backends[name]
            call = make_call(kind, arg)
            outs[name] = call()
            times[name] = min(timeit.repeat(call, number=1, repeat=args.repeat)) * 1e3
        kernels._impl = backends[kernels.BACKEND]
        diff = max(np.max(np.abs(outs[n] - outs["numpy"])) for n in names)
        speedup = times["numpy"] / times["cython"] if "cython" in times else float("nan")
        row = f"{kind:<8}{str(arg):>20}" + "".join(f"{times[n]:>16.3f}" for n in names)
        print(row + f"{speedup:>9.1f}x{diff:>12.1e}")


if __name__ == "__main__":
    main()
