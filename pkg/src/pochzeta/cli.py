"""Reproduction front-end: one subcommand per figure plus generic
coefficient/series/critical sweeps, emitting deterministic CSV/JSON.

Exit codes: 0 success, 1 computation error, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from contextlib import contextmanager
from dataclasses import dataclass, field

from mpmath import mp

from . import __version__
from .coefficients import (
    CoefficientKind,
    ExpansionParams,
    compute_b,
    compute_d,
    compute_dhat_binomial,
    compute_dhat_primes,
    compute_dhat_zeros_beta,
    compute_dhathat,
    compute_maslanka_A,
    compute_s_series,
)
from .critical import (
    FIG4_PARAMS,
    prime_contribution,
    psi_infbeta,
    sweep_critical,
)
from .data import LimitKind, bundled_zeros, load_zeros, sieve_primes
from .errors import DomainError
from .expansions import (
    SeriesTarget,
    eval_critical_line_series,
    eval_series_grid,
    write_series_csv,
)
from .hiprec import PrecisionContext, format_real, parse_complex, re_im
from .coefficients import _param_str

EXIT_OK = 0
EXIT_COMPUTE = 1
EXIT_USAGE = 2


class UsageError(ValueError):
    pass


@dataclass
class RunConfig:
    """Validated knobs of one CLI invocation."""

    subcommand: str
    guard: int | None = None
    alpha: object = None
    beta: object = None
    sigma: object = None
    K: int = 40
    K_low: int = 20
    K_high: int = 50
    n_zeros: int = 10
    n_trivial: int = 20
    n_primes: int = 5000
    q_max: int = 50
    x_min: float = 2.5
    x_max: float = 30.0
    points: int = 200
    digits: int = 30
    out: str | None = None
    zeros_file: str | None = None
    fmt: str = "csv"
    approx_paper: bool = False
    asymptotic: bool = False
    infinite: bool = False
    extras: dict = field(default_factory=dict)

    def context(self, k_order: int = 0) -> PrecisionContext:
        if self.guard is not None:
            guard = self.guard
        else:
            guard = max(10, PrecisionContext.binomial_guard(k_order)) if k_order else 10
        return PrecisionContext(self.digits, guard)

    def zeros(self, max_count: int = 100000):
        if self.zeros_file:
            return load_zeros(self.zeros_file, max_count)
        return bundled_zeros(max_count)


def _positive(kind):
    def check(text):
        value = kind(text)
        if value <= 0:
            raise argparse.ArgumentTypeError(f"must be positive, got {text}")
        return value

    return check


def _add_common(p: argparse.ArgumentParser):
    p.add_argument("--digits", type=int, default=30, help="target decimal digits (default 30)")
    p.add_argument("--guard", type=int, default=None,
                   help="override guard digits (default: the binomial-transform policy)")
    p.add_argument("--out", help="output path (default: stdout)")
    p.add_argument("--format", dest="fmt", choices=("csv", "json"), default="csv")
    p.add_argument("--zeros-file", help="text file of ascending zero ordinates")


def _add_params(p: argparse.ArgumentParser, alpha=None, beta=None, sigma=None):
    p.add_argument("--alpha", default=alpha, help="expansion parameter alpha")
    p.add_argument("--beta", default=beta, help='expansion parameter beta ("i" and "a+bi" accepted)')
    p.add_argument("--sigma", default=sigma, help="evaluation line Re(s)")


def _add_grid(p: argparse.ArgumentParser, x_min, x_max, points):
    p.add_argument("--x-min", type=float, default=x_min)
    p.add_argument("--x-max", type=float, default=x_max)
    p.add_argument("--points", type=int, default=points)


def _add_truncations(p: argparse.ArgumentParser, n_zeros=10, n_trivial=20, n_primes=5000, q_max=50):
    p.add_argument("--n-zeros", type=int, default=n_zeros)
    p.add_argument("--n-trivial", type=int, default=n_trivial)
    p.add_argument("--n-primes", type=int, default=n_primes)
    p.add_argument("--q-max", type=int, default=q_max)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="pochzeta",
        description="Pochhammer-expansion representations of zeta-related "
        "functions: figure reproductions and generic sweeps.",
    )
    parser.add_argument("--version", action="version", version=f"pochzeta {__version__}")
    sub = parser.add_subparsers(dest="subcommand", required=True)

    for name in ("fig1", "fig2"):
        p = sub.add_parser(name, help="critical-line series vs (1-2^(1/2-it))zeta(1/2+it)")
        p.add_argument("--t-min", type=float, default=0.0)
        p.add_argument("--t-max", type=float, default=40.0)
        p.add_argument("--points", type=int, default=401)
        p.add_argument("--K", dest="k_low", type=int, default=20, help="truncation for t <= 18")
        p.add_argument("--K-high", dest="k_high", type=int, default=50, help="truncation for t > 18")
        _add_common(p)

    p = sub.add_parser("fig3", help="ln[(1-2^(1-sigma))zeta(sigma)] vs its d_k series")
    p.add_argument("--sigma-min", type=float, default=-1.0)
    p.add_argument("--sigma-max", type=float, default=0.99)
    p.add_argument("--points", type=int, default=200)
    p.add_argument("--K", type=int, default=40)
    _add_params(p, alpha="2", beta="2")
    _add_common(p)

    for name in ("fig4", "fig5", "sweep"):
        p = sub.add_parser(
            name,
            help="critical functions psi1 (zeros) and psi2 (primes) over x = ln k",
        )
        _add_params(p, alpha="4.5", beta="4", sigma="0.5")
        _add_grid(p, 2.5, 30.0, 200)
        _add_truncations(p)
        p.add_argument(
            "--exact-powers",
            action="store_true",
            help="use exact (1-p^(-beta q))^k instead of the paper's e^(-k p^(-beta q))",
        )
        _add_common(p)

    p = sub.add_parser("fig6", help="single-prime contributions to psi2")
    p.add_argument("--primes", default="29,229,541", help="comma-separated primes")
    _add_params(p, alpha="4.5", beta="4", sigma="0.5")
    _add_grid(p, 2.5, 30.0, 200)
    p.add_argument("--q-max", type=int, default=100)
    _add_common(p)

    p = sub.add_parser("fig7", help="psi(k) against the Euler constant for large beta")
    p.add_argument("--x", type=float, default=15.0, help="ln k (default 15)")
    _add_params(p, alpha="1", sigma="0.5")
    p.add_argument("--beta-max", type=float, default=1e6)
    p.add_argument("--n-zeros", type=int, default=0, help="0 = all zeros in the table")
    p.add_argument("--n-trivial", type=int, default=20000)
    p.add_argument("--infinite", action="store_true", help="add the symbolic beta=infinity row")
    _add_common(p)

    p = sub.add_parser("coeffs", help="dump one coefficient family")
    p.add_argument("--kind", required=True, choices=[k.value for k in CoefficientKind])
    p.add_argument("--k-max", type=int, default=50)
    p.add_argument("--route", choices=("binomial", "zeros", "primes"), default="binomial")
    _add_params(p, alpha="2", beta="2")
    _add_truncations(p, n_zeros=50, n_trivial=50)
    p.add_argument("--asymptotic", action="store_true", help="large-k Gamma form for the zeros route")
    _add_common(p)

    p = sub.add_parser("series", help="partial sums of a representation vs its direct target")
    p.add_argument("--target", required=True, choices=[t.value for t in SeriesTarget])
    p.add_argument("--K", type=int, default=40)
    p.add_argument("--s", help='single evaluation point, e.g. "0.5+14.1i"')
    p.add_argument("--sigma-min", type=float, default=0.0)
    p.add_argument("--sigma-max", type=float, default=0.99)
    p.add_argument("--points", type=int, default=100)
    _add_params(p, alpha="2", beta="2")
    _add_truncations(p)
    _add_common(p)

    return parser


# ---------------------------------------------------------------------------
# output plumbing


@contextmanager
def _open_out(path):
    if path:
        with open(path, "w", encoding="ascii", newline="") as fh:
            yield fh
    else:
        yield sys.stdout


def _emit(config: RunConfig, columns, rows):
    """Write the table as CSV or JSON to the configured destination."""
    with _open_out(config.out) as fh:
        if config.fmt == "csv":
            writer = csv.writer(fh, lineterminator="\n")
            writer.writerow(columns)
            writer.writerows(rows)
        else:
            json.dump({"columns": list(columns), "rows": [list(r) for r in rows]}, fh, indent=1)
            fh.write("\n")


def _emit_summary(config: RunConfig, summary: dict):
    text = json.dumps(summary, indent=1, sort_keys=True)
    if config.out:
        with open(config.out + ".summary.json", "w", encoding="ascii") as fh:
            fh.write(text + "\n")
    else:
        print(text, file=sys.stderr)


def _fmt(value, digits):
    return format_real(value, digits)


# ---------------------------------------------------------------------------
# subcommand runners


def _grid(lo, hi, points):
    if points == 1:
        return [mp.mpf(lo)]
    lo = mp.mpf(lo)
    hi = mp.mpf(hi)
    step = (hi - lo) / (points - 1)
    return [lo + step * i for i in range(points)]


def run_fig1_fig2(config: RunConfig) -> int:
    ctx = config.context(k_order=config.K_high)
    t_grid = _grid(config.extras["t_min"], config.extras["t_max"], config.points)
    evals = eval_critical_line_series(config.K_low, config.K_high, t_grid, ctx)
    d = config.digits
    rows = []
    for t, ev in zip(t_grid, evals):
        ps_re, ps_im = re_im(ev.partial_sum)
        dv_re, dv_im = re_im(ev.direct_value)
        rows.append([_fmt(t, d), _fmt(ps_re, d), _fmt(ps_im, d), _fmt(dv_re, d), _fmt(dv_im, d)])
    _emit(config, ["t", "series_re", "series_im", "direct_re", "direct_im"], rows)
    return EXIT_OK


def run_fig3(config: RunConfig) -> int:
    ctx = config.context(k_order=config.K)
    params = ExpansionParams(config.alpha, config.beta)
    grid = _grid(config.extras["sigma_min"], config.extras["sigma_max"], config.points)
    evals = eval_series_grid(SeriesTarget.LOG_ETA, params, config.K, grid, ctx)
    d = config.digits
    rows = []
    for sigma, ev in zip(grid, evals):
        row = [_fmt(sigma, d), _fmt(re_im(ev.partial_sum)[0], d)]
        if ev.direct_value is None:
            row += ["", ""]
        else:
            row += [_fmt(re_im(ev.direct_value)[0], d), _fmt(ev.abs_error, d)]
        rows.append(row)
    _emit(config, ["sigma", "series", "direct", "abs_error"], rows)
    return EXIT_OK


def run_sweep(config: RunConfig) -> int:
    ctx = config.context()
    params = ExpansionParams(config.alpha, config.beta, config.sigma)
    zeros = config.zeros(max_count=max(config.n_zeros, 100))
    primes = sieve_primes(LimitKind.FIRST_N, config.n_primes)
    samples, summary = sweep_critical(
        config.x_min,
        config.x_max,
        config.points,
        params,
        zeros,
        primes,
        ctx,
        n_zeros=config.n_zeros,
        n_trivial=config.n_trivial,
        q_max=config.q_max,
        approx_paper=config.approx_paper,
    )
    d = config.digits
    rows = [
        [_fmt(s.x, d), _fmt(s.k, d), _fmt(s.psi1, d), _fmt(s.psi2, d), _fmt(s.diff, d)]
        for s in samples
    ]
    _emit(config, ["x", "k", "psi1", "psi2", "diff"], rows)
    _emit_summary(
        config,
        {
            "max_diff": _fmt(summary.max_diff, d),
            "max_diff_x": _fmt(summary.max_diff_x, d),
            "sign_changes": summary.sign_changes,
            "oscillations": summary.oscillations,
            "amplitude": _fmt(summary.amplitude, d),
            "params": {"alpha": str(config.alpha), "beta": str(config.beta), "sigma": str(config.sigma)},
            "truncations": summary.truncations,
        },
    )
    return EXIT_OK


def run_fig6(config: RunConfig) -> int:
    ctx = config.context()
    params = ExpansionParams(config.alpha, config.beta, config.sigma)
    try:
        prime_list = [int(p) for p in config.extras["primes"].split(",") if p.strip()]
    except ValueError as exc:
        raise UsageError(f"bad --primes list: {config.extras['primes']!r}") from exc
    if not prime_list:
        raise UsageError("--primes must name at least one prime")
    grid = _grid(config.x_min, config.x_max, config.points)
    curves = [prime_contribution(p, grid, params, config.q_max, ctx) for p in prime_list]
    d = config.digits
    rows = []
    for i, x in enumerate(grid):
        rows.append([_fmt(x, d)] + [_fmt(curve[i][1], d) for curve in curves])
    _emit(config, ["x"] + [f"p_{p}" for p in prime_list], rows)
    return EXIT_OK


def run_fig7(config: RunConfig) -> int:
    ctx = config.context()
    zeros = config.zeros(max_count=config.n_zeros or 100000)
    n_zeros = config.n_zeros or len(zeros)
    if n_zeros < 3600:
        print(
            f"warning: only {n_zeros} zeros available; the residual is "
            "dominated by the zero-sum tail (3600 needed for the 0.001 band)",
            file=sys.stderr,
        )
    with ctx.workdps():
        k = mp.exp(mp.mpf(config.extras["x"]))
        gamma_const = +mp.euler
    betas = []
    b = mp.mpf(1)
    while b <= config.extras["beta_max"]:
        betas.append(b)
        b = b * 10
    d = config.digits
    rows = []
    for beta in betas:
        params = ExpansionParams(config.alpha, beta, config.sigma)
        value = psi_infbeta(k, params, zeros, n_zeros, config.n_trivial, ctx)
        rows.append([_fmt(beta, d), _fmt(value, d), _fmt(value - gamma_const, d)])
    if config.infinite:
        params = ExpansionParams(config.alpha, 1, config.sigma)
        value = psi_infbeta(k, params, zeros, n_zeros, config.n_trivial, ctx, infinite_beta=True)
        rows.append(["inf", _fmt(value, d), _fmt(value - gamma_const, d)])
    _emit(config, ["beta", "psi", "psi_minus_gamma"], rows)
    return EXIT_OK


def run_coeffs(config: RunConfig) -> int:
    kind = CoefficientKind(config.extras["kind"])
    ctx = config.context(k_order=config.K)
    params = ExpansionParams(config.alpha, config.beta, config.sigma)
    k_max = config.K
    route = config.extras["route"]
    d = config.digits

    if kind is CoefficientKind.DHAT and route != "binomial":
        if route == "zeros":
            zeros = config.zeros(max_count=config.n_zeros).head(config.n_zeros)
            values = [
                compute_dhat_zeros_beta(params, k, zeros, config.n_trivial, ctx,
                                        asymptotic=config.asymptotic)
                for k in range(1, k_max + 1)
            ]
            route_name = "zeros_beta"
        else:
            primes = sieve_primes(LimitKind.FIRST_N, config.n_primes)
            values = [
                compute_dhat_primes(params, k, primes, config.q_max, ctx,
                                    approx_paper=config.approx_paper,
                                    asymptotic_first_term=config.asymptotic)
                for k in range(1, k_max + 1)
            ]
            route_name = "primes"
        rows = [
            [k, _fmt(re_im(v)[0], d), _fmt(re_im(v)[1], d), kind.value,
             _param_str(config.alpha), _param_str(config.beta), route_name, d]
            for k, v in enumerate(values, start=1)
        ]
        _emit(config, ["k", "re", "im", "kind", "alpha", "beta", "route", "digits"], rows)
        return EXIT_OK

    if route != "binomial" and kind is not CoefficientKind.DHAT:
        raise UsageError(f"--route {route} only applies to --kind dhat")

    if kind is CoefficientKind.B:
        series = compute_b(params, k_max, ctx)
    elif kind is CoefficientKind.A:
        series = compute_maslanka_A(k_max, ctx)
    elif kind is CoefficientKind.D:
        series = compute_d(params, k_max, ctx)
    elif kind is CoefficientKind.DHAT:
        series = compute_dhat_binomial(params, k_max, ctx)
    elif kind is CoefficientKind.S:
        series = compute_s_series(params, k_max, ctx)
    else:  # DHATHAT
        zeros = config.zeros(max_count=config.n_zeros).head(config.n_zeros)
        values = [
            compute_dhathat(params, k, zeros, config.n_trivial, ctx)
            for k in range(1, k_max + 1)
        ]
        rows = [
            [k, _fmt(re_im(v)[0], d), _fmt(re_im(v)[1], d), kind.value,
             _param_str(config.alpha), _param_str(config.beta), "zeros_beta", d]
            for k, v in enumerate(values, start=1)
        ]
        _emit(config, ["k", "re", "im", "kind", "alpha", "beta", "route", "digits"], rows)
        return EXIT_OK

    buffer = io.StringIO()
    series.write_csv(buffer)
    if config.fmt == "csv":
        with _open_out(config.out) as fh:
            fh.write(buffer.getvalue())
    else:
        reader = csv.reader(io.StringIO(buffer.getvalue()))
        table = list(reader)
        _emit(config, table[0], table[1:])
    return EXIT_OK


def run_series(config: RunConfig) -> int:
    target = SeriesTarget(config.extras["target"])
    ctx = config.context(k_order=config.K)
    params = ExpansionParams(config.alpha, config.beta, config.sigma)
    zeros = None
    if target is SeriesTarget.F_FUNCTION:
        zeros = config.zeros(max_count=config.n_zeros).head(config.n_zeros)
    if config.extras.get("s"):
        with ctx.workdps():
            points = [parse_complex(config.extras["s"], ctx)]
        label = "t"
    else:
        points = _grid(config.extras["sigma_min"], config.extras["sigma_max"], config.points)
        label = "sigma"
    evals = eval_series_grid(
        target, params, config.K, points, ctx, zeros=zeros, n_trivial=config.n_trivial
    )
    with _open_out(config.out) as fh:
        write_series_csv(evals, fh, ctx, abscissa=label)
    return EXIT_OK


# ---------------------------------------------------------------------------


def _config_from_args(args: argparse.Namespace) -> RunConfig:
    config = RunConfig(subcommand=args.subcommand)
    config.digits = getattr(args, "digits", 30)
    if config.digits < 10:
        raise UsageError("--digits must be at least 10")
    config.guard = getattr(args, "guard", None)
    if config.guard is not None and config.guard < 0:
        raise UsageError("--guard must be >= 0")
    config.out = getattr(args, "out", None)
    config.fmt = getattr(args, "fmt", "csv")
    config.zeros_file = getattr(args, "zeros_file", None)

    ctx_parse = PrecisionContext(max(config.digits, 30), 10)
    for name in ("alpha", "beta", "sigma"):
        raw = getattr(args, name, None)
        if raw is not None:
            try:
                setattr(config, name, parse_complex(str(raw), ctx_parse))
            except DomainError as exc:
                raise UsageError(str(exc)) from exc

    for name, attr in (
        ("K", "K"), ("k_max", "K"), ("k_low", "K_low"), ("k_high", "K_high"),
        ("n_zeros", "n_zeros"), ("n_trivial", "n_trivial"),
        ("n_primes", "n_primes"), ("q_max", "q_max"),
        ("x_min", "x_min"), ("x_max", "x_max"), ("points", "points"),
    ):
        if hasattr(args, name):
            setattr(config, attr, getattr(args, name))

    config.approx_paper = not getattr(args, "exact_powers", False)
    config.asymptotic = getattr(args, "asymptotic", False)
    config.infinite = getattr(args, "infinite", False)

    for key in ("t_min", "t_max", "sigma_min", "sigma_max", "primes", "kind",
                "route", "target", "s", "x", "beta_max"):
        if hasattr(args, key):
            config.extras[key] = getattr(args, key)

    # grid/truncation sanity before any computation starts
    if getattr(args, "points", 1) < 1:
        raise UsageError("--points must be >= 1")
    if config.subcommand in ("fig4", "fig5", "sweep") and config.points < 2:
        raise UsageError("sweeps need --points >= 2")
    for name in ("K", "K_low", "K_high"):
        if getattr(config, name) < 0:
            raise UsageError(f"truncation order {name} must be >= 0")
    for name in ("n_zeros", "n_trivial", "n_primes", "q_max"):
        if getattr(config, name) < 0:
            raise UsageError(f"--{name.replace('_', '-')} must be >= 0")
    if hasattr(args, "t_min") and not args.t_min < args.t_max:
        raise UsageError("--t-min must be below --t-max")
    if hasattr(args, "sigma_min") and config.points > 1 and not args.sigma_min < args.sigma_max:
        raise UsageError("--sigma-min must be below --sigma-max")
    if config.subcommand in ("fig4", "fig5", "sweep", "fig6") and not config.x_min < config.x_max:
        raise UsageError("--x-min must be below --x-max")
    return config


_RUNNERS = {
    "fig1": run_fig1_fig2,
    "fig2": run_fig1_fig2,
    "fig3": run_fig3,
    "fig4": run_sweep,
    "fig5": run_sweep,
    "sweep": run_sweep,
    "fig6": run_fig6,
    "fig7": run_fig7,
    "coeffs": run_coeffs,
    "series": run_series,
}


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        config = _config_from_args(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        return _RUNNERS[config.subcommand](config)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, ArithmeticError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_COMPUTE


if __name__ == "__main__":
    sys.exit(main())
