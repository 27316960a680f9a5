"""Command-line interface.

Every subcommand writes CSV: one ``#`` comment line recording the library
version and the full configuration, a header row, then data.  Output depends
only on the arguments, so repeated runs are byte-identical.

Exit codes: 0 success, 2 invalid input, 3 numerical failure.
"""

from __future__ import annotations

import argparse
import io
import logging
import sys
from pathlib import Path

import numpy as np

from . import __version__
from .errors import FractEulerError, LaplacianError, PoleError

log = logging.getLogger("fracteuler")

EXIT_OK = 0
EXIT_INVALID = 2
EXIT_NUMERICAL = 3


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


def fmt(x) -> str:
    """Shortest round-trip representation, so CSV values equal library values exactly."""
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, str):
        return x
    return repr(float(x))


class CsvOut:
    """Collects rows and writes them in one go."""

    def __init__(self, args, header):
        self.buf = io.StringIO()
        self.buf.write(f"# {config_comment(args)}\n")
        self.buf.write(",".join(header) + "\n")

    def row(self, *values):
        self.buf.write(",".join(fmt(v) for v in values) + "\n")

    def text(self) -> str:
        return self.buf.getvalue()


def config_comment(args) -> str:
    items = {k: v for k, v in vars(args).items() if k not in ("func", "out", "verbose")}
    body = " ".join(f"{k}={_cfg_value(items[k])}" for k in sorted(items))
    return f"fracteuler {__version__} {body}"


def _cfg_value(v):
    if isinstance(v, (list, tuple)):
        return "[" + ";".join(_cfg_value(x) for x in v) + "]"
    if isinstance(v, float):
        return repr(v)
    return str(v)


def emit(args, text: str) -> None:
    if args.out in (None, "-"):
        sys.stdout.write(text)
    else:
        Path(args.out).write_text(text)


# ---------------------------------------------------------------------------
# Argument validation helpers


def _positive(name, value):
    if not value > 0:
        raise ValueError(f"--{name} must be positive, got {value}")


def _order(alpha, *, allow_one=True):
    ok = 0.0 < alpha <= 1.0 if allow_one else 0.0 < alpha < 1.0
    if not ok:
        hi = "1]" if allow_one else "1)"
        raise ValueError(f"--alpha must lie in (0, {hi}, got {alpha}")


def _is_number(tok) -> bool:
    try:
        float(tok)
    except ValueError:
        return False
    return True


def _read_vector(spec) -> np.ndarray:
    """Inline comma list such as ``1,0,0`` or a file of numbers."""
    inline = _is_number(spec) or ("," in spec and not Path(spec).exists())
    text = spec if inline else Path(spec).read_text()
    vals = []
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        for tok in line.split(","):
            tok = tok.strip()
            if tok:
                vals.append(float(tok))
    return np.array(vals, dtype=float)


# ---------------------------------------------------------------------------
# Subcommands


def cmd_mlf_eval(args) -> str:
    from .special import MlfParams, mlf, mlf_method, mlf_negative_mixture, mlf_positive_branchcut, mlf_series

    params = MlfParams(args.alpha, args.lam)
    out = CsvOut(args, ["t", "value", "method"])
    for t in args.t:
        if t < 0:
            raise ValueError("--t must be nonnegative")
        z = (1 if args.sign == "+" else -1) * args.lam * t**args.alpha
        if args.method == "auto":
            value, method = mlf(params, args.sign, t), ("exp" if t == 0 else mlf_method(args.alpha, z))
        elif args.method == "series":
            value, method = mlf_series(args.alpha, z), "series"
        else:
            if args.sign == "-":
                value, method = mlf_negative_mixture(params, t), "mixture"
            else:
                value, method = mlf_positive_branchcut(params, t), "branchcut"
        out.row(t, value, method)
    return out.text()


def cmd_mlf_table(args) -> str:
    from .special import MlfParams, mlf, mlf_method

    out = CsvOut(args, ["alpha", "lambda", "sign", "t", "value", "method"])
    for a in args.alpha:
        _order(a)
        for lam in args.lam:
            params = MlfParams(a, lam)
            for sign in args.sign:
                for t in args.t:
                    z = (1 if sign == "+" else -1) * lam * t**a
                    method = "exp" if t == 0 else mlf_method(a, z)
                    out.row(a, lam, sign, t, mlf(params, sign, t), method)
    return out.text()


def cmd_euler_converge(args) -> str:
    from .euler import euler_classic, frac_euler, gl_scheme, weighted_euler
    from .special import MlfParams, mlf

    _positive("t", args.t)
    for n in args.n:
        _positive("n", n)
    schemes = ["classic", "frac", "gl", "weighted"] if args.scheme == "all" else [args.scheme]
    out = CsvOut(args, ["scheme", "alpha", "t", "n", "value", "target", "abs_error"])
    for alpha in args.alpha:
        _order(alpha)
        for scheme in schemes:
            if scheme != "classic" and alpha == 1.0:
                continue
            for n in args.n:
                if scheme == "classic":
                    r = euler_classic(args.t, n)
                    value, target = r.final, r.target
                elif scheme == "frac":
                    r = frac_euler(alpha, args.sign, args.t, n)
                    value, target = r.final, r.target
                elif scheme == "gl":
                    if args.sign != "+":
                        raise ValueError("the Grunwald-Letnikov scheme solves the growth problem; use --sign +")
                    r = gl_scheme(alpha, args.t, n)
                    value, target = r.final, r.target
                else:
                    value = weighted_euler(alpha, 1.0, args.sign, args.t, n)
                    target = mlf(MlfParams(alpha), args.sign, args.t)
                a_out = 1.0 if scheme == "classic" else alpha
                out.row(scheme, a_out, args.t, n, value, target, abs(value - target))
    return out.text()


def cmd_sample(args) -> str:
    from .samplers import RngStream, sample_mlf_waiting, sample_wplus_waiting
    from .special import MlfParams

    _order(args.alpha, allow_one=args.family == "ml")
    _positive("n", args.n)
    params = MlfParams(args.alpha, args.lam)
    rng = RngStream(args.seed, args.stream).generator()
    sampler = sample_mlf_waiting if args.family == "ml" else sample_wplus_waiting
    tau = np.atleast_1d(sampler(params, rng, size=args.n))
    out = CsvOut(args, ["tau"])
    for v in tau:
        out.row(v)
    return out.text()


def cmd_matrix_mlf(args) -> str:
    from .laplacian import mlf_matrix_eig, mlf_matrix_mixture, post_widder_mlf, read_matrix_csv, validate_laplacian

    _order(args.alpha)
    if args.t < 0:
        raise ValueError("--t must be nonnegative")
    L = validate_laplacian(read_matrix_csv(args.input))
    if args.method == "eig":
        M = mlf_matrix_eig(L, args.alpha, args.t)
    elif args.method == "mixture":
        M = mlf_matrix_mixture(L, args.alpha, args.t)
    else:
        M = post_widder_mlf(L, args.alpha, args.t, args.n)
    out = CsvOut(args, ["row"] + [f"c{j}" for j in range(L.dim)])
    for i, row in enumerate(M):
        out.row(i, *row)
    return out.text()


def cmd_master_solve(args) -> str:
    from .laplacian import read_matrix_csv, validate_laplacian
    from .master import solve_fractional_master_mlf, solve_fractional_master_timestep

    _order(args.alpha)
    if args.t0 < 0 or args.t1 < args.t0:
        raise ValueError("need 0 <= --t0 <= --t1")
    if args.steps < 1:
        raise ValueError("--steps must be at least 1")
    L = validate_laplacian(read_matrix_csv(args.input))
    p0 = _read_vector(args.p0)
    if p0.size != L.dim:
        raise ValueError(f"--p0 has {p0.size} entries, the matrix has dimension {L.dim}")
    times = np.linspace(args.t0, args.t1, args.steps + 1)
    if args.method == "mlf":
        ps = solve_fractional_master_mlf(L, args.alpha, p0, times)
    else:
        ps = [
            p0 if t == 0 else solve_fractional_master_timestep(L, args.alpha, p0, t, args.n)
            for t in times
        ]
    out = CsvOut(args, ["t"] + [f"p{j + 1}" for j in range(L.dim)])
    for t, p in zip(times, ps):
        out.row(t, *p)
    return out.text()


def cmd_ssa_schlogl(args) -> str:
    from .samplers import RngStream
    from .ssa import WaitingTime, ensemble_histogram, schlogl_network, simulate_trajectory

    _positive("n", args.n)
    _positive("t", args.t)
    waiting = WaitingTime(args.waiting, 1.0 if args.waiting == "exp" else args.alpha)
    net = schlogl_network()
    hist = ensemble_histogram(net, waiting, [args.t], args.n, args.seed, workers=args.threads)[0]
    out = CsvOut(args, ["state", "count"])
    for x, c in enumerate(hist.counts):
        out.row(x, c)
    if args.trajectory:
        tr = simulate_trajectory(net, waiting, args.t, RngStream(args.seed, 0))
        dump = CsvOut(args, ["time", "state"])
        dump.row(0.0, tr.x0)
        for t, x in zip(tr.times, tr.states):
            dump.row(t, x)
        Path(args.trajectory).write_text(dump.text())
    return out.text()


def cmd_figures(args) -> str:
    from .figures import write_all

    outdir = Path(args.outdir)
    outdir.mkdir(parents=True, exist_ok=True)
    written = write_all(outdir, comment=config_comment(args), n=args.n, seed=args.seed, t_snapshot=args.t)
    return "".join(f"{p}\n" for p in written)


# ---------------------------------------------------------------------------
# Parser


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="fracteuler", description="Fractional Euler limits, Mittag-Leffler functions and CTRW simulation.")
    p.add_argument("-v", "--verbose", action="count", default=0, help="more logging on stderr")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def common(sp):
        sp.add_argument("--out", "-o", default=None, help="output file (default stdout)")

    mlf = sub.add_parser("mlf", help="scalar Mittag-Leffler values")
    mlf_sub = mlf.add_subparsers(dest="action", required=True, parser_class=_Parser)
    ev = mlf_sub.add_parser("eval", help="E_alpha(sign * lambda * t^alpha) at given times")
    ev.add_argument("--alpha", type=float, required=True)
    ev.add_argument("--lambda", dest="lam", type=float, default=1.0)
    ev.add_argument("--sign", choices=["+", "-"], default="-")
    ev.add_argument("--t", type=float, nargs="+", required=True)
    ev.add_argument("--method", choices=["auto", "series", "mixture"], default="auto")
    common(ev)
    ev.set_defaults(func=cmd_mlf_eval)

    tb = mlf_sub.add_parser("table", help="values over a grid of alpha, lambda, sign and t")
    tb.add_argument("--alpha", type=float, nargs="+", default=[0.3, 0.5, 0.7, 0.9])
    tb.add_argument("--lambda", dest="lam", type=float, nargs="+", default=[1.0])
    tb.add_argument("--sign", choices=["+", "-"], nargs="+", default=["-", "+"])
    tb.add_argument("--t", type=float, nargs="+", default=[0.1, 0.5, 1.0, 2.0, 5.0])
    common(tb)
    tb.set_defaults(func=cmd_mlf_table)

    eu = sub.add_parser("euler", help="Euler-limit schemes")
    eu_sub = eu.add_subparsers(dest="action", required=True, parser_class=_Parser)
    cv = eu_sub.add_parser("converge", help="error of each scheme against its continuum limit")
    cv.add_argument("--scheme", choices=["all", "classic", "frac", "gl", "weighted"], default="all")
    cv.add_argument("--alpha", type=float, nargs="+", default=[0.5, 0.7])
    cv.add_argument("--sign", choices=["+", "-"], default="+")
    cv.add_argument("--t", type=float, default=1.0)
    cv.add_argument("--n", type=int, nargs="+", default=[2**k for k in range(8, 15, 2)])
    common(cv)
    cv.set_defaults(func=cmd_euler_converge)

    sm = sub.add_parser("sample", help="seeded waiting-time samples")
    sm.add_argument("family", choices=["ml", "wplus"])
    sm.add_argument("--alpha", type=float, required=True)
    sm.add_argument("--lambda", dest="lam", type=float, default=1.0)
    sm.add_argument("--n", type=int, default=1000)
    sm.add_argument("--seed", type=int, default=0)
    sm.add_argument("--stream", type=int, default=0)
    common(sm)
    sm.set_defaults(func=cmd_sample)

    mx = sub.add_parser("matrix", help="matrix functions of graph Laplacians")
    mx_sub = mx.add_subparsers(dest="action", required=True, parser_class=_Parser)
    mm = mx_sub.add_parser("mlf", help="E_alpha(A t^alpha) for a Laplacian read from CSV")
    mm.add_argument("--alpha", type=float, required=True)
    mm.add_argument("--t", type=float, required=True)
    mm.add_argument("--input", required=True, help="matrix CSV: 'dim,N' header then N rows")
    mm.add_argument("--method", choices=["eig", "mixture", "postwidder"], default="eig")
    mm.add_argument("--n", type=int, default=16, help="Post-Widder order")
    common(mm)
    mm.set_defaults(func=cmd_matrix_mlf)

    ms = sub.add_parser("master", help="fractional master equation")
    ms_sub = ms.add_subparsers(dest="action", required=True, parser_class=_Parser)
    so = ms_sub.add_parser("solve", help="p(t) on an evenly spaced time grid")
    so.add_argument("--alpha", type=float, required=True)
    so.add_argument("--t0", type=float, default=0.0)
    so.add_argument("--t1", type=float, required=True)
    so.add_argument("--steps", type=int, default=10)
    so.add_argument("--input", required=True)
    so.add_argument("--p0", required=True, help="initial distribution: inline comma list or a file")
    so.add_argument("--method", choices=["mlf", "timestep"], default="mlf")
    so.add_argument("--n", type=int, default=4096, help="time steps for --method timestep")
    common(so)
    so.set_defaults(func=cmd_master_solve)

    ss = sub.add_parser("ssa", help="stochastic simulation")
    ss_sub = ss.add_subparsers(dest="action", required=True, parser_class=_Parser)
    sc = ss_sub.add_parser("schlogl", help="histogram of the Schlogl model at time t")
    sc.add_argument("--alpha", type=float, default=0.7)
    sc.add_argument("--waiting", choices=["exp", "mlf", "wplus"], default="exp")
    sc.add_argument("--n", type=int, default=10000)
    sc.add_argument("--t", type=float, default=50.0)
    sc.add_argument("--seed", type=int, default=0)
    sc.add_argument("--threads", type=int, default=None)
    sc.add_argument("--trajectory", default=None, help="also dump stream 0 as (time, state) CSV")
    common(sc)
    sc.set_defaults(func=cmd_ssa_schlogl)

    fg = sub.add_parser("figures", help="CSV data behind figures 1-5")
    fg.add_argument("--outdir", default="figures")
    fg.add_argument("--n", type=int, default=10000, help="trajectories per Schlogl ensemble")
    fg.add_argument("--t", type=float, default=50.0, help="Schlogl snapshot time")
    fg.add_argument("--seed", type=int, default=0)
    common(fg)
    fg.set_defaults(func=cmd_figures)
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(level=level, format="%(levelname)s %(name)s: %(message)s", stream=sys.stderr)
    try:
        text = args.func(args)
    except (LaplacianError, PoleError) as exc:
        print(f"fracteuler: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except FractEulerError as exc:
        print(f"fracteuler: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    except (ValueError, OSError) as exc:
        print(f"fracteuler: invalid input: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"fracteuler: numerical failure: {exc}", file=sys.stderr)
        return EXIT_NUMERICAL
    emit(args, text)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
