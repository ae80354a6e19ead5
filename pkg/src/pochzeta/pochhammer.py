"""Stable evaluation of the Pochhammer polynomials P_k(s) = prod(1 - s/r).

Direct products up to the crossover order, log-accumulated products beyond
it, and the Gamma-quotient asymptotic magnitude for the huge-k regime.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .errors import DomainError
from .hiprec import PrecisionContext, _mpnum

# Above this order the direct product gives way to summed logarithms.
LOG_FORM_CROSSOVER = 10_000


def _integer_zero_order(s):
    """Smallest r >= 1 with s == r, or None; P_k(s) is exactly 0 for k >= r."""
    if mp.im(s) != 0:
        return None
    x = mp.re(s)
    if x >= 1 and x == mp.floor(x):
        return int(x)
    return None


def eval_pochhammer(s, k: int, ctx: PrecisionContext):
    """P_k(s) = prod_{r=1..k} (1 - s/r); P_0 = 1."""
    if k < 0:
        raise ValueError("polynomial degree k must be >= 0")
    with ctx.workdps():
        s = _mpnum(s)
        zero_at = _integer_zero_order(s)
        if zero_at is not None and k >= zero_at:
            return mp.mpf(0)
        if k <= LOG_FORM_CROSSOVER:
            prod = mp.mpf(1)
            for r in range(1, k + 1):
                prod = prod * (1 - s / r)
            return +prod
        # Sum of factor logs. Each summand is a principal log, but the total
        # argument is never reduced mod 2*pi, so exp restores the product
        # (negative real factors land in the imaginary part as multiples of
        # pi and come back out as the sign).
        acc = mp.mpc(0)
        for r in range(1, k + 1):
            acc += mp.log(1 - s / r)
        value = mp.exp(acc)
        if mp.im(s) == 0:
            return +mp.re(value)
        return +value


def pochhammer_prefix(s, k_max: int, ctx: PrecisionContext) -> list:
    """[P_0(s), ..., P_kmax(s)] via the recurrence P_k = P_{k-1}*(1 - s/k)."""
    if k_max < 0:
        raise ValueError("k_max must be >= 0")
    with ctx.workdps():
        s = _mpnum(s)
        out = [mp.mpf(1)]
        prod = mp.mpf(1)
        for r in range(1, k_max + 1):
            prod = prod * (1 - s / r)
            out.append(+prod)
        return out


def shifted_argument(s, params, ctx: PrecisionContext):
    """(s - alpha)/beta + 1, the argument every expansion feeds to P_k."""
    with ctx.workdps():
        if params.beta == 0:
            raise DomainError("beta must be nonzero")
        arg = (_mpnum(s) - _mpnum(params.alpha)) / _mpnum(params.beta)
        if mp.im(arg) == 0:
            arg = mp.re(arg)
        return +(arg + 1)


def eval_pochhammer_shifted(s, params, k: int, ctx: PrecisionContext):
    """P_k((s - alpha)/beta + 1)."""
    return eval_pochhammer(shifted_argument(s, params, ctx), k, ctx)


def pochhammer_step_identity(s, params, k: int, ctx: PrecisionContext):
    """Both sides of P_k((s-a)/b + 1) = (a-s)/b * (1/k) * P_{k-1}((s-a)/b).

    Returns (lhs, rhs); they agree to working precision.
    """
    if k < 1:
        raise DomainError("the step identity needs k >= 1")
    with ctx.workdps():
        if params.beta == 0:
            raise DomainError("beta must be nonzero")
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        s = _mpnum(s)
        lhs = eval_pochhammer_shifted(s, params, k, ctx)
        rhs = (alpha - s) / beta / k * eval_pochhammer((s - alpha) / beta, k - 1, ctx)
        return +lhs, +rhs


def pochhammer_asymptotic_magnitude(s, k, ctx: PrecisionContext):
    """|P_k(s)| ~ |k^(-s) / Gamma(1-s)| for large k.

    Diagnostic for orders far past the direct regime (up to the 10^13
    scale); not used by any expansion.
    """
    with ctx.workdps():
        s = _mpnum(s)
        k = _mpnum(k)
        return +abs(mp.power(k, -s) / mp.gamma(1 - s))


@dataclass(frozen=True)
class DecayReport:
    """|P_k(s)|*k^Re(s) along k_list: the empirical constant of the decay bound."""

    k_list: tuple
    values: tuple
    max_value: object
    max_at_k: int
    stabilized: bool


def check_decay_bound(s, k_list, ctx: PrecisionContext) -> DecayReport:
    """Track |P_k(s)|*k^Re(s) over ascending k_list.

    `stabilized` reports whether the running maximum has stopped growing:
    the overall max exceeds the max over the first nine deciles by < 5%.
    """
    k_list = list(k_list)
    if not k_list:
        raise ValueError("k_list must be nonempty")
    if k_list != sorted(k_list) or len(set(k_list)) != len(k_list):
        raise ValueError("k_list must be strictly ascending")
    with ctx.workdps():
        s = _mpnum(s)
        re_s = mp.re(s)
        values = []
        prod = mp.mpf(1)
        r = 1
        for k in k_list:
            while r <= k:
                prod = prod * (1 - s / r)
                r += 1
            scaled = abs(prod) * mp.power(k, re_s) if k > 0 else abs(prod)
            values.append(+scaled)
        vmax = max(values)
        max_at = k_list[values.index(vmax)]
        head = values[: max(1, math.ceil(0.9 * len(values)))]
        stabilized = bool(vmax <= max(head) * mp.mpf("1.05"))
        return DecayReport(tuple(k_list), tuple(values), vmax, max_at, stabilized)
