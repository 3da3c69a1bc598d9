"""Command-line interface.

Every verb reads and writes the text formats in :mod:`gabortf.fileio`.
Window specifiers: ``rect:<len>``, ``gauss:<sigma>``, ``file:<path>``, ``delta``.
Exit status is 0 on success, 2 on usage errors and 1 on any other error;
diagnostics go to stderr as a single line.
"""
import argparse
import json
import sys

import numpy as np

from . import fileio
from .chirp import ChirpParams, dcft, estimate_chirp_params, make_chirp
from .core import Lattice, analysis_matrix_rank, dgt, gabor_atom, idgt, uncertainty_product, wexler_raz_residual
from .dual import generalized_dual, min_norm_dual, most_orthogonal_like_dual
from .errors import GaborError
from .rng import LcgNoise, complex_white_noise
from .tvfilter import iterative_tv_filter, snr_growth_experiment, top_quantile_mask
from .waveform import GaussianParams, demodulate, gaussian_pulse, modulate, ofdm_equivalence_deviation, rect_window

VERBS = (
    "gen", "dgt", "idgt", "dual", "wrcheck", "rank", "uncertainty", "filter",
    "snr-experiment", "dcft", "chirp-estimate", "modulate", "demodulate", "ofdm-check",
)


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(f"{self.prog}: {message}")


def _positive_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 1:
        raise argparse.ArgumentTypeError(f"must be positive, got {value}")
    return value


def _nonneg_int(text):
    try:
        value = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected an integer, got {text!r}") from None
    if value < 0:
        raise argparse.ArgumentTypeError(f"must be non-negative, got {value}")
    return value


def _positive_float(text):
    try:
        value = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected a number, got {text!r}") from None
    if not value > 0 or not np.isfinite(value):
        raise argparse.ArgumentTypeError(f"must be positive, got {text}")
    return value


def _window_spec(text):
    kind, _, arg = text.partition(":")
    if kind == "delta" and not arg:
        return ("delta", None)
    if kind == "rect":
        return ("rect", _positive_int(arg))
    if kind == "gauss":
        return ("gauss", _positive_float(arg))
    if kind == "file" and arg:
        return ("file", arg)
    raise argparse.ArgumentTypeError(
        f"bad window {text!r}; use rect:<len>, gauss:<sigma>, file:<path> or delta"
    )


def _rate_list(text):
    try:
        rates = [int(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not rates or any(r < 1 for r in rates):
        raise argparse.ArgumentTypeError("rates must be positive integers")
    return rates


def build_window(spec, lat):
    kind, arg = spec
    if kind == "delta":
        w = np.zeros(lat.L, dtype=np.complex128)
        w[0] = 1.0
        return w
    if kind == "rect":
        return rect_window(lat.L, arg).astype(np.complex128)
    if kind == "gauss":
        return gaussian_pulse(lat, GaussianParams(1.0, arg)).astype(np.complex128)
    w = fileio.read_signal(arg)
    if w.size != lat.L:
        raise GaborError(f"window file {arg} has length {w.size}, lattice expects {lat.L}")
    return w


def _add_lattice(p, with_L=True):
    if with_L:
        p.add_argument("--L", type=_positive_int, required=True, help="signal length")
    p.add_argument("--a", type=_positive_int, required=True, help="time step")
    p.add_argument("--M", type=_positive_int, required=True, help="frequency channels")


def _add_image(p):
    p.add_argument("--image", help="also write |grid| as a plain PGM")
    p.add_argument("--gamma-correction", type=_positive_float, default=1.0)


def make_parser():
    parser = _Parser(prog="gabortf", description="Discrete Gabor and chirp-Fourier tools.")
    sub = parser.add_subparsers(dest="verb", metavar="VERB", parser_class=_Parser)
    sub.required = True

    p = sub.add_parser("gen", help="generate a signal, window, atom, symbol grid or mask")
    p.add_argument("--kind", required=True, choices=["chirp", "window", "noise", "atom", "symbols", "mask"])
    p.add_argument("--L", type=_positive_int)
    p.add_argument("--a", type=_positive_int)
    p.add_argument("--M", type=_positive_int)
    p.add_argument("--N", type=_positive_int)
    p.add_argument("--k0", type=_nonneg_int, default=0)
    p.add_argument("--l0", type=_nonneg_int, default=0)
    p.add_argument("--n", type=_nonneg_int, default=0)
    p.add_argument("--m", type=_nonneg_int, default=0)
    p.add_argument("--window", type=_window_spec)
    p.add_argument("--variance", type=float, default=1.0, help="noise variance (noise, chirp)")
    p.add_argument("--noisy", action="store_true", help="add seeded white noise to the chirp")
    p.add_argument("--ref", help="reference grid for --kind mask")
    p.add_argument("--q", type=_positive_float, default=0.05, help="mask fraction for --kind mask")
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True)

    p = sub.add_parser("dgt", help="discrete Gabor transform of a signal")
    p.add_argument("--in", dest="inp", required=True)
    _add_lattice(p, with_L=False)
    p.add_argument("--window", type=_window_spec, required=True, help="analysis window")
    p.add_argument("--out", required=True)
    _add_image(p)

    p = sub.add_parser("idgt", help="Gabor expansion of a coefficient grid")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--a", type=_positive_int, required=True)
    p.add_argument("--window", type=_window_spec, required=True, help="synthesis window")
    p.add_argument("--out", required=True)

    p = sub.add_parser("dual", help="dual analysis window of a synthesis window")
    _add_lattice(p)
    p.add_argument("--window", type=_window_spec, required=True)
    p.add_argument("--method", choices=["min-norm", "most-orthogonal", "generalized"], default="min-norm")
    p.add_argument("--scale", type=float, default=1.0, help="A = scale * I for --method generalized")
    p.add_argument("--out", required=True)

    p = sub.add_parser("wrcheck", help="Wexler-Raz residual of a window pair")
    _add_lattice(p)
    p.add_argument("--window", type=_window_spec, required=True, help="synthesis window")
    p.add_argument("--dual", type=_window_spec, required=True, help="analysis window")

    p = sub.add_parser("rank", help="rank of the analysis matrix")
    _add_lattice(p)
    p.add_argument("--window", type=_window_spec, required=True)

    p = sub.add_parser("uncertainty", help="time-bandwidth product of a signal")
    p.add_argument("--in", dest="inp", required=True)

    p = sub.add_parser("filter", help="iterative time-variant filtering with a mask")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--mask", required=True, help="mask grid file")
    _add_lattice(p, with_L=False)
    p.add_argument("--window", type=_window_spec, required=True, help="synthesis window")
    p.add_argument("--dual", type=_window_spec, help="analysis window (default: most-orthogonal-like dual)")
    p.add_argument("--tol", type=_positive_float, default=1e-6)
    p.add_argument("--max-iter", type=_positive_int, default=100)
    p.add_argument("--out", required=True)
    p.add_argument("--report", help="write iteration history as JSON")

    p = sub.add_parser("snr-experiment", help="TF-domain SNR gain versus sampling rate")
    p.add_argument("--rates", type=_rate_list, default=[64, 128, 256, 512])
    p.add_argument("--trials", type=_positive_int, default=20)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out", required=True, help="JSON report")

    p = sub.add_parser("dcft", help="discrete chirp-Fourier transform")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--out", required=True)
    _add_image(p)

    p = sub.add_parser("chirp-estimate", help="estimate (k0, l0) of a linear chirp")
    p.add_argument("--in", dest="inp", required=True)

    p = sub.add_parser("modulate", help="Gabor-atom modulation of a symbol grid")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--a", type=_positive_int, required=True)
    p.add_argument("--window", type=_window_spec, required=True, help="transmit pulse")
    p.add_argument("--out", required=True)

    p = sub.add_parser("demodulate", help="recover symbols with a dual window")
    p.add_argument("--in", dest="inp", required=True)
    _add_lattice(p, with_L=False)
    p.add_argument("--window", type=_window_spec, required=True, help="transmit pulse")
    p.add_argument("--dual", type=_window_spec, help="analysis window (default: most-orthogonal-like dual)")
    p.add_argument("--out", required=True)

    p = sub.add_parser("ofdm-check", help="deviation of rectangular Gabor modulation from block OFDM")
    p.add_argument("--in", dest="inp", required=True)
    p.add_argument("--a", type=_positive_int, required=True)
    return parser


def parse_command(argv):
    """Parse and validate ``argv`` (without the program name)."""
    return make_parser().parse_args(argv)


def _grid_lattice(grid, a):
    M, N = grid.shape
    return Lattice(N * a, a, M)


def _qam4(noise, M, N):
    u = noise.uniform(2 * M * N).reshape(2, M, N)
    return (np.where(u[0] < 0.5, -1.0, 1.0) + 1j * np.where(u[1] < 0.5, -1.0, 1.0)) / np.sqrt(2)


def _gen(args):
    kind = args.kind

    def need(*names):
        missing = [f"--{n}" for n in names if getattr(args, n) is None]
        if missing:
            raise UsageError(f"gabortf gen --kind {kind}: missing {' '.join(missing)}")

    if kind == "chirp":
        need("N")
        s = make_chirp(args.N, ChirpParams(args.k0 % args.N, args.l0 % args.N))
        if args.noisy:
            s = s + complex_white_noise(args.N, args.seed, args.variance)
        fileio.write_signal(args.out, s)
    elif kind == "window":
        need("L", "window")
        fileio.write_signal(args.out, build_window(args.window, Lattice(args.L, 1, 1)))
    elif kind == "noise":
        need("L")
        fileio.write_signal(args.out, complex_white_noise(args.L, args.seed, args.variance))
    elif kind == "atom":
        need("L", "a", "M", "window")
        lat = Lattice(args.L, args.a, args.M)
        fileio.write_signal(args.out, gabor_atom(build_window(args.window, lat), lat, args.n, args.m))
    elif kind == "symbols":
        need("M", "N")
        fileio.write_grid(args.out, _qam4(LcgNoise(args.seed), args.M, args.N))
    elif kind == "mask":
        need("ref")
        if args.q > 1:
            raise UsageError("gabortf gen: --q must lie in (0, 1]")
        fileio.write_grid(args.out, top_quantile_mask(fileio.read_grid(args.ref), args.q))


def _print(value):
    print(value)


def run(args):
    verb = args.verb
    if verb == "gen":
        _gen(args)
    elif verb == "dgt":
        s = fileio.read_signal(args.inp)
        lat = Lattice(s.size, args.a, args.M)
        c = dgt(s, build_window(args.window, lat), lat)
        fileio.write_grid(args.out, c)
        if args.image:
            fileio.write_grid_image(args.image, c, args.gamma_correction)
    elif verb == "idgt":
        c = fileio.read_grid(args.inp)
        lat = _grid_lattice(c, args.a)
        fileio.write_signal(args.out, idgt(c, build_window(args.window, lat), lat))
    elif verb == "dual":
        lat = Lattice(args.L, args.a, args.M)
        p = build_window(args.window, lat)
        if args.method == "min-norm":
            g = min_norm_dual(p, lat)
        elif args.method == "most-orthogonal":
            g = most_orthogonal_like_dual(p, lat)
        else:
            g = generalized_dual(p, lat, args.scale * np.eye(lat.L))
        fileio.write_signal(args.out, g)
    elif verb == "wrcheck":
        lat = Lattice(args.L, args.a, args.M)
        _print("%.17g" % wexler_raz_residual(build_window(args.window, lat), build_window(args.dual, lat), lat))
    elif verb == "rank":
        lat = Lattice(args.L, args.a, args.M)
        _print(analysis_matrix_rank(build_window(args.window, lat), lat))
    elif verb == "uncertainty":
        _print("%.17g" % uncertainty_product(fileio.read_signal(args.inp)))
    elif verb == "filter":
        s = fileio.read_signal(args.inp)
        lat = Lattice(s.size, args.a, args.M)
        p = build_window(args.window, lat)
        g = build_window(args.dual, lat) if args.dual else most_orthogonal_like_dual(p, lat)
        mask = fileio.read_grid(args.mask)
        rep = iterative_tv_filter(s, mask, p, g, lat, args.tol, args.max_iter)
        fileio.write_signal(args.out, rep.signal)
        if args.report:
            with open(args.report, "w") as fh:
                json.dump(
                    {"iterations": rep.iterations, "converged": rep.converged, "residuals": rep.residuals},
                    fh,
                    indent=2,
                )
                fh.write("\n")
    elif verb == "snr-experiment":
        rows = snr_growth_experiment(args.rates, args.trials, args.seed)
        with open(args.out, "w") as fh:
            json.dump(
                {"seed": args.seed, "trials": args.trials,
                 "results": [{"rate": r, "mean_gain": g} for r, g in rows]},
                fh,
                indent=2,
            )
            fh.write("\n")
    elif verb == "dcft":
        X = dcft(fileio.read_signal(args.inp))
        fileio.write_grid(args.out, X)
        if args.image:
            fileio.write_grid_image(args.image, X, args.gamma_correction)
    elif verb == "chirp-estimate":
        est = estimate_chirp_params(fileio.read_signal(args.inp))
        _print(f"{est.k0} {est.l0} %.17g %.17g" % (est.amplitude.real, est.amplitude.imag))
    elif verb == "modulate":
        c = fileio.read_grid(args.inp)
        lat = _grid_lattice(c, args.a)
        fileio.write_signal(args.out, modulate(c, build_window(args.window, lat), lat))
    elif verb == "demodulate":
        s = fileio.read_signal(args.inp)
        lat = Lattice(s.size, args.a, args.M)
        p = build_window(args.window, lat)
        g = build_window(args.dual, lat) if args.dual else most_orthogonal_like_dual(p, lat)
        fileio.write_grid(args.out, demodulate(s, g, lat))
    elif verb == "ofdm-check":
        c = fileio.read_grid(args.inp)
        _print("%.17g" % ofdm_equivalence_deviation(c, _grid_lattice(c, args.a)))
    return 0


def main(argv=None):
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        args = parse_command(argv)
        return run(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 2
    except (GaborError, ValueError, IndexError, OSError) as exc:
        print(f"gabortf: error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
