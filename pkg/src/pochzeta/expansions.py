"""Truncated Pochhammer series for every represented target function, paired
with the directly computed target wherever a direct route exists."""

from __future__ import annotations

import csv
import enum
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .coefficients import (
    ExpansionParams,
    RIESZ,
    compute_b,
    compute_d,
    compute_dhat_binomial,
    compute_dhathat,
    compute_maslanka_A,
    compute_s,
)
from .data import ZeroTable
from .errors import DomainError, PoleAtOne
from .hiprec import (
    PrecisionContext,
    _mpnum,
    eval_eta_factor,
    eval_log_zeta_deriv,
    eval_zeta,
    format_real,
    re_im,
    zeta_real_extended,
)
from .pochhammer import pochhammer_prefix, shifted_argument


class SeriesTarget(enum.Enum):
    ETA_FACTOR = "eta_factor"          # (1-2^(1-s)) zeta(s)
    MASLANKA = "maslanka"              # (s-1) zeta(s), alpha=beta=2
    LOG_ETA = "log_eta"                # ln[(1-2^(1-s)) zeta(s)]
    LOG_DERIV = "log_deriv"            # d/ds ln[(s-1) zeta(s)]
    F_FUNCTION = "f_function"          # [zeta'/zeta(s) + 1/(s-1)]/s
    INV_S_MINUS_1 = "inv_s_minus_1"    # 1/(s-1)


@dataclass(frozen=True)
class SeriesEvaluation:
    target: SeriesTarget
    params: ExpansionParams
    K: int
    s: object
    partial_sum: object
    direct_value: object  # None when no direct route exists at this s

    @property
    def abs_error(self):
        if self.direct_value is None:
            return None
        return abs(self.partial_sum - self.direct_value)


def series_coefficients(
    target: SeriesTarget,
    params: ExpansionParams,
    K: int,
    ctx: PrecisionContext,
    zeros: ZeroTable = None,
    n_trivial: int = 20,
) -> list:
    """c_0..c_K for the chosen representation."""
    if target is SeriesTarget.ETA_FACTOR:
        return list(compute_b(params, K, ctx).values)
    if target is SeriesTarget.MASLANKA:
        if params != RIESZ:
            raise DomainError("the Maslanka representation is the alpha=beta=2 case")
        return list(compute_maslanka_A(K, ctx).values)
    if target is SeriesTarget.LOG_ETA:
        return list(compute_d(params, K, ctx).values)
    if target is SeriesTarget.LOG_DERIV:
        return list(compute_dhat_binomial(params, K, ctx).values)
    if target is SeriesTarget.F_FUNCTION:
        if zeros is None or len(zeros) == 0:
            raise DomainError("F_FUNCTION coefficients need a zeros table")
        with ctx.workdps():
            alpha = _mpnum(params.alpha)
            # k = 0: all higher P_k vanish at s = alpha, so c_0 = f(alpha)
            c0 = eval_log_zeta_deriv(alpha, ctx) / alpha
        coeffs = [c0]
        for k in range(1, K + 1):
            coeffs.append(compute_dhathat(params, k, zeros, n_trivial, ctx))
        return coeffs
    if target is SeriesTarget.INV_S_MINUS_1:
        return [compute_s(params, k, ctx) for k in range(K + 1)]
    raise ValueError(f"unknown target {target}")


def direct_target_value(target: SeriesTarget, params: ExpansionParams, s, ctx: PrecisionContext):
    """The target function computed without the expansion, or None when the
    direct oracle is out of scope at this s (complex log routes, s in the
    left half-plane off the real axis, the s = 1 pole)."""
    with ctx.workdps():
        s = _mpnum(s)
        is_real = mp.im(s) == 0
        if is_real:
            s = mp.re(s)

        def eta_direct():
            if mp.re(s) > 0:
                return eval_eta_factor(s, ctx)
            if is_real:
                return (1 - mp.power(2, 1 - s)) * zeta_real_extended(s, ctx)
            return None

        if target is SeriesTarget.ETA_FACTOR:
            return eta_direct()
        if target is SeriesTarget.MASLANKA:
            if s == 1:
                return mp.mpf(1)  # removable: (s-1)zeta(s) -> 1
            if mp.re(s) > 0:
                return +((s - 1) * eval_zeta(s, ctx))
            if is_real:
                return +((s - 1) * zeta_real_extended(s, ctx))
            return None
        if target is SeriesTarget.LOG_ETA:
            if not is_real:
                return None
            try:
                value = eta_direct()
            except PoleAtOne:
                return None
            if value is None:
                return None
            value = mp.re(value)
            if value <= 0:
                return None
            return +mp.log(value)
        if target in (SeriesTarget.LOG_DERIV, SeriesTarget.F_FUNCTION):
            if not is_real or s <= 1:
                return None
            value = eval_log_zeta_deriv(s, ctx)
            if target is SeriesTarget.F_FUNCTION:
                value = value / s
            return +value
        if target is SeriesTarget.INV_S_MINUS_1:
            if s == 1:
                return None
            return +(1 / (s - 1))
        raise ValueError(f"unknown target {target}")


def _partial_sum(coeffs, arg, K: int, ctx: PrecisionContext):
    with ctx.workdps():
        poch = pochhammer_prefix(arg, K, ctx)
        acc = mp.mpf(0)
        for k in range(K + 1):
            acc += coeffs[k] * poch[k]
        return +acc


def eval_series(
    target: SeriesTarget,
    params: ExpansionParams,
    K: int,
    s,
    ctx: PrecisionContext,
    zeros: ZeroTable = None,
    n_trivial: int = 20,
) -> SeriesEvaluation:
    """Partial sum sum_{k<=K} c_k P_k((s-alpha)/beta + 1) next to the direct
    value of the target function at s."""
    coeffs = series_coefficients(target, params, K, ctx, zeros=zeros, n_trivial=n_trivial)
    return _evaluate_at(target, params, coeffs, K, s, ctx)


def _evaluate_at(target, params, coeffs, K, s, ctx) -> SeriesEvaluation:
    with ctx.workdps():
        s = _mpnum(s)
        arg = shifted_argument(s, params, ctx)
        partial = _partial_sum(coeffs, arg, K, ctx)
        direct = direct_target_value(target, params, s, ctx)
    return SeriesEvaluation(target, params, K, s, partial, direct)


def eval_series_grid(
    target: SeriesTarget,
    params: ExpansionParams,
    K: int,
    s_values,
    ctx: PrecisionContext,
    zeros: ZeroTable = None,
    n_trivial: int = 20,
) -> list:
    """eval_series across a grid, computing the coefficients once."""
    coeffs = series_coefficients(target, params, K, ctx, zeros=zeros, n_trivial=n_trivial)
    return [_evaluate_at(target, params, coeffs, K, s, ctx) for s in s_values]


CRITICAL_LINE_PARAMS = ExpansionParams(mp.mpf(1) / 2, mpmath.mpc(0, 1), mp.mpf(1) / 2)
T_SWITCH_DEFAULT = 18
T_MAX_SUPPORTED = 40


def eval_critical_line_series(
    K_low: int,
    K_high: int,
    t_grid,
    ctx: PrecisionContext,
    t_switch=T_SWITCH_DEFAULT,
) -> list:
    """The alpha=1/2, beta=i representation on the critical line:
    sum b_k P_k(t+1) against (1-2^(1/2-it)) zeta(1/2+it), truncating at
    K_low for t <= t_switch and K_high above it."""
    t_grid = [mp.mpf(t) for t in t_grid]
    if any(b <= a for a, b in zip(t_grid, t_grid[1:])):
        raise ValueError("t_grid must be ascending")
    if t_grid and (t_grid[0] < 0 or t_grid[-1] > T_MAX_SUPPORTED):
        raise DomainError(f"t_grid must lie in [0, {T_MAX_SUPPORTED}]")
    K = max(K_low, K_high)
    series = compute_b(CRITICAL_LINE_PARAMS, K, ctx)
    out = []
    with ctx.workdps():
        half = mp.mpf(1) / 2
        for t in t_grid:
            K_used = K_low if t <= t_switch else K_high
            s = mp.mpc(half, t)
            poch = pochhammer_prefix(t + 1, K_used, ctx)
            acc = mp.mpc(0)
            for k in range(K_used + 1):
                acc += series.values[k] * poch[k]
            direct = eval_eta_factor(s, ctx)
            out.append(
                SeriesEvaluation(
                    SeriesTarget.ETA_FACTOR, CRITICAL_LINE_PARAMS, K_used, s, +acc, direct
                )
            )
    return out


def write_series_csv(evaluations, fh, ctx: PrecisionContext, abscissa: str = "t"):
    """Columns: t (or sigma), K, sum_re, sum_im, direct_re, direct_im, abs_error."""
    digits = ctx.target_digits
    writer = csv.writer(fh, lineterminator="\n")
    writer.writerow([abscissa, "K", "sum_re", "sum_im", "direct_re", "direct_im", "abs_error"])
    for ev in evaluations:
        s_re, s_im = re_im(ev.s)
        x = s_im if abscissa == "t" else s_re
        sum_re, sum_im = re_im(ev.partial_sum)
        row = [format_real(x, digits), ev.K,
               format_real(sum_re, digits), format_real(sum_im, digits)]
        if ev.direct_value is None:
            row += ["", "", ""]
        else:
            direct_re, direct_im = re_im(ev.direct_value)
            row += [format_real(direct_re, digits), format_real(direct_im, digits),
                    format_real(ev.abs_error, digits)]
        writer.writerow(row)
