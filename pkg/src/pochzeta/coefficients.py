"""The coefficient families of the expansions: b_k, A_k, d_k, the three
routes to d-hat_k (binomial over zeta values, Beta sums over zeta zeros,
prime sums), d-hat-hat_k, and the closed-form s_k.

Binomial-transform routes use exact integer binomial coefficients with
working-precision terms, summed in ascending j; the guard policy is enforced
up front (PrecisionError), never silently degraded.
"""

from __future__ import annotations

import csv
import enum
import math
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .data import PrimeTable, ZeroTable
from .errors import DomainError
from .hiprec import (
    PrecisionContext,
    _mpnum,
    eval_beta,
    eval_eta_factor,
    eval_gamma,
    eval_log_zeta_deriv,
    eval_zeta,
    format_complex,
    format_real,
    re_im,
)

# Parameters are frozen at this precision when constructed, independent of
# any later working context.
_PARAM_DPS = 120


def _as_param(x):
    value = mp.mpmathify(x) if not isinstance(x, (mpmath.mpf, mpmath.mpc)) else +x
    if isinstance(value, mpmath.mpc) and mp.im(value) == 0:
        value = mp.re(value)
    return value


@dataclass(frozen=True)
class ExpansionParams:
    """The pair (alpha, beta) of the two-parameter family, plus the
    evaluation line sigma = Re(s)."""

    alpha: object
    beta: object
    sigma: object = None

    def __post_init__(self):
        with mp.workdps(_PARAM_DPS):
            alpha = _as_param(self.alpha)
            beta = _as_param(self.beta)
            sigma = mp.mpf(1) / 2 if self.sigma is None else _as_param(self.sigma)
            if beta == 0:
                raise DomainError("beta must be nonzero")
            if not isinstance(sigma, mpmath.mpf):
                raise DomainError("sigma must be real")
        object.__setattr__(self, "alpha", alpha)
        object.__setattr__(self, "beta", beta)
        object.__setattr__(self, "sigma", sigma)

    def is_real(self) -> bool:
        return isinstance(self.alpha, mpmath.mpf) and isinstance(self.beta, mpmath.mpf)

    def label(self) -> str:
        fmt = lambda v: format_real(v, 12) if isinstance(v, mpmath.mpf) else format_complex(v, 12)
        return f"alpha={fmt(self.alpha)} beta={fmt(self.beta)}"


RIESZ = ExpansionParams(2, 2)


def _require_real_family(params: ExpansionParams, what: str):
    if not params.is_real():
        raise DomainError(f"{what} needs real alpha and beta")
    if not params.alpha > 1:
        raise DomainError(f"{what} needs alpha > 1")
    if not params.beta > 0:
        raise DomainError(f"{what} needs beta > 0")


class CoefficientKind(enum.Enum):
    B = "b"
    A = "A"
    D = "d"
    DHAT = "dhat"
    DHATHAT = "dhathat"
    S = "s"


class Route(enum.Enum):
    BINOMIAL = "binomial"
    ZEROS_BETA = "zeros_beta"
    PRIMES = "primes"
    CLOSED_FORM = "closed_form"


@dataclass(frozen=True)
class CoefficientSeries:
    kind: CoefficientKind
    params: ExpansionParams
    values: tuple
    route: Route
    ctx: PrecisionContext

    def __len__(self):
        return len(self.values)

    def __getitem__(self, k):
        return self.values[k]

    def write_csv(self, fh):
        digits = self.ctx.target_digits
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(["k", "re", "im", "kind", "alpha", "beta", "route", "digits"])
        alpha_s = _param_str(self.params.alpha)
        beta_s = _param_str(self.params.beta)
        for k, value in enumerate(self.values):
            value_re, value_im = re_im(value)
            writer.writerow(
                [
                    k,
                    format_real(value_re, digits),
                    format_real(value_im, digits),
                    self.kind.value,
                    alpha_s,
                    beta_s,
                    self.route.value,
                    digits,
                ]
            )


def _param_str(v) -> str:
    if isinstance(v, mpmath.mpf):
        return format_real(v, 17)
    return format_complex(v, 17)


def _binomial_transform(terms, k_max: int) -> list:
    """out[k] = sum_{j<=k} (-1)^j C(k,j) terms[j], ascending j, exact C(k,j)."""
    out = []
    for k in range(k_max + 1):
        acc = mp.mpf(0)
        for j in range(k + 1):
            contribution = terms[j] * math.comb(k, j)
            acc = acc - contribution if j % 2 else acc + contribution
        out.append(+acc)
    return out


def compute_b(params: ExpansionParams, k_max: int, ctx: PrecisionContext) -> CoefficientSeries:
    """b_k = sum_j (-1)^j C(k,j) (1-2^(1-(alpha+beta*j))) zeta(alpha+beta*j)."""
    ctx.require_binomial_guard(k_max)
    with ctx.workdps():
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        args = [alpha + beta * j for j in range(k_max + 1)]
        for arg in args:
            if arg == 1:
                raise DomainError("alpha + beta*j hits the zeta pole s = 1")
            if mp.re(arg) <= 0:
                raise DomainError("need Re(alpha + beta*j) > 0 for every j")
        terms = [eval_eta_factor(arg, ctx) for arg in args]
        values = _binomial_transform(terms, k_max)
    return CoefficientSeries(CoefficientKind.B, params, tuple(values), Route.BINOMIAL, ctx)


def compute_maslanka_A(k_max: int, ctx: PrecisionContext) -> CoefficientSeries:
    """A_k = sum_j (-1)^j C(k,j) (2j+1) zeta(2j+2), the alpha=beta=2 family."""
    ctx.require_binomial_guard(k_max)
    with ctx.workdps():
        terms = [(2 * j + 1) * eval_zeta(2 * j + 2, ctx) for j in range(k_max + 1)]
        values = _binomial_transform(terms, k_max)
    return CoefficientSeries(CoefficientKind.A, RIESZ, tuple(values), Route.BINOMIAL, ctx)


def compute_d(params: ExpansionParams, k_max: int, ctx: PrecisionContext) -> CoefficientSeries:
    """d_k = sum_j (-1)^j C(k,j) ln[(1-2^(1-(alpha+beta*j))) zeta(alpha+beta*j)]."""
    ctx.require_binomial_guard(k_max)
    if not params.is_real():
        raise DomainError("the real-log route needs real alpha, beta")
    with ctx.workdps():
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        terms = []
        for j in range(k_max + 1):
            arg = alpha + beta * j
            if arg <= 0:
                raise DomainError("need alpha + beta*j > 0 for every j")
            eta = eval_eta_factor(arg, ctx) if arg != 1 else mp.log(2)
            eta = mp.re(eta)
            if eta <= 0:
                raise DomainError(f"log argument (1-2^(1-s))zeta(s) <= 0 at s = {arg}")
            terms.append(mp.log(eta))
        values = _binomial_transform(terms, k_max)
    return CoefficientSeries(CoefficientKind.D, params, tuple(values), Route.BINOMIAL, ctx)


def compute_dhat_binomial(params: ExpansionParams, k_max: int, ctx: PrecisionContext) -> CoefficientSeries:
    """dhat_k = sum_j (-1)^j C(k,j) [1/(alpha+beta*j-1) + zeta'/zeta(alpha+beta*j)]."""
    ctx.require_binomial_guard(k_max)
    _require_real_family(params, "compute_dhat_binomial")
    with ctx.workdps():
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        terms = [eval_log_zeta_deriv(alpha + beta * j, ctx) for j in range(k_max + 1)]
        values = _binomial_transform(terms, k_max)
    return CoefficientSeries(CoefficientKind.DHAT, params, tuple(values), Route.BINOMIAL, ctx)


def compute_dhat_zeros_beta(
    params: ExpansionParams,
    k,
    zeros: ZeroTable,
    n_trivial: int,
    ctx: PrecisionContext,
    asymptotic: bool = False,
):
    """dhat_k from the zeros: (1/beta)[sum_rho B((alpha-rho)/beta, k+1)
    + sum_n B((alpha+2n)/beta, k+1)], conjugate pairs both summed.

    `asymptotic` replaces each B(z, k+1) by Gamma(z)*k^(-z), the large-k
    form. Returns a single (formally complex) value; real parameters leave
    only rounding in the imaginary part.
    """
    if len(zeros) == 0:
        raise ValueError("zeros table must be nonempty")
    with ctx.workdps():
        k = _mpnum(k)
        if not k >= 1:
            raise DomainError("k must be >= 1")
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)

        def block(z):
            if asymptotic:
                return eval_gamma(z, ctx) * mp.power(k, -z)
            return eval_beta(z, k + 1, ctx)

        total = mp.mpc(0)
        half = mp.mpf(1) / 2
        for t in zeros:
            rho = mp.mpc(half, t)
            total += block((alpha - rho) / beta)
            total += block((alpha - mp.conj(rho)) / beta)
        for n in range(1, n_trivial + 1):
            total += block((alpha + 2 * n) / beta)
        return +(total / beta)


def compute_dhat_primes(
    params: ExpansionParams,
    k,
    primes: PrimeTable,
    q_max: int,
    ctx: PrecisionContext,
    approx_paper: bool = False,
    asymptotic_first_term: bool = False,
):
    """dhat_k from the primes:
    (1/beta) B((alpha-1)/beta, k+1) - sum_p ln p sum_q p^(-alpha*q) (1-p^(-beta*q))^k.

    approx_paper swaps the power factor for e^(-k*p^(-beta*q));
    asymptotic_first_term swaps the Beta term for Gamma(a)*k^(-a)/beta.
    Terms whose exponent k*p^(-beta*q) exceeds the working-precision cutoff
    are dropped (they sit far below the returned precision).
    """
    _require_real_family(params, "compute_dhat_primes")
    if len(primes) == 0:
        raise ValueError("prime table must be nonempty")
    with ctx.workdps():
        k = mp.mpf(_mpnum(k).real)
        if not k >= 1:
            raise DomainError("k must be >= 1")
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        a = (alpha - 1) / beta
        if asymptotic_first_term:
            first = eval_gamma(a, ctx) * mp.power(k, -a) / beta
        else:
            first = eval_beta(a, k + 1, ctx) / beta
        drop_above = mp.log(10) * (ctx.working_digits + 20) + max(mp.log(k), 0)
        floor = mp.mpf(10) ** (-(ctx.working_digits + 10))
        total = mp.mpf(0)
        for p in primes:
            ln_p = mp.log(p)
            for q in range(1, q_max + 1):
                p_alpha = mp.power(p, -alpha * q)
                if ln_p * p_alpha < floor:
                    break
                p_beta = mp.power(p, -beta * q)
                exponent = k * p_beta
                if exponent > drop_above:
                    continue
                if approx_paper:
                    factor = mp.exp(-exponent)
                else:
                    factor = mp.exp(k * mp.log1p(-p_beta))
                total += ln_p * p_alpha * factor
        return +(first - total)


def dhat_primes_tail_estimate(
    params: ExpansionParams, k, primes: PrimeTable, q_max: int, ctx: PrecisionContext
):
    """Upper estimate for what compute_dhat_primes truncates away.

    Covers primes beyond the table (integral bound on ln t * t^(-alpha),
    damped by the (1-P^(-beta))^k factor) and powers beyond q_max.
    """
    _require_real_family(params, "dhat_primes_tail_estimate")
    with ctx.workdps():
        k = mp.mpf(_mpnum(k).real)
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        big_p = mp.mpf(primes.primes[-1])
        ln_p = mp.log(big_p)
        damp = mp.exp(k * mp.log1p(-mp.power(big_p, -beta)))
        density = mp.power(big_p, 1 - alpha) * (ln_p / (alpha - 1) + 1 / (alpha - 1) ** 2)
        prime_tail = damp / (1 - mp.power(big_p, -alpha)) * (density + ln_p * mp.power(big_p, -alpha))
        q_tail = mp.mpf(0)
        for p in primes.primes[:25]:
            q_tail += mp.log(p) * mp.power(p, -alpha * (q_max + 1)) / (1 - mp.power(p, -alpha))
        q_tail += len(primes) * ln_p * mp.power(29, -alpha * (q_max + 1))
        return +(prime_tail + q_tail)


def compute_dhathat(
    params: ExpansionParams,
    k,
    zeros: ZeroTable,
    n_trivial: int,
    ctx: PrecisionContext,
):
    """dhathat_k = (1/beta)[sum_rho Gamma((alpha-rho)/beta)/rho * k^(-(alpha-rho)/beta)
    - sum_n Gamma((alpha+2n)/beta)/(2n) * k^(-(alpha+2n)/beta)
    + C Gamma(alpha/beta) k^(-alpha/beta)],  C = ln(2*pi) - 1."""
    if len(zeros) == 0:
        raise ValueError("zeros table must be nonempty")
    with ctx.workdps():
        k = _mpnum(k)
        if not k >= 1:
            raise DomainError("k must be >= 1")
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        c_const = mp.log(2 * mp.pi) - 1
        half = mp.mpf(1) / 2
        total = mp.mpc(0)
        for t in zeros:
            for rho in (mp.mpc(half, t), mp.mpc(half, -t)):
                z = (alpha - rho) / beta
                total += eval_gamma(z, ctx) / rho * mp.power(k, -z)
        for n in range(1, n_trivial + 1):
            z = (alpha + 2 * n) / beta
            total -= eval_gamma(z, ctx) / (2 * n) * mp.power(k, -z)
        za = alpha / beta
        total += c_const * eval_gamma(za, ctx) * mp.power(k, -za)
        return +(total / beta)


def compute_s(params: ExpansionParams, k, ctx: PrecisionContext):
    """s_k = (1/beta) B((alpha-1)/beta, k+1), the 1/(s-1) expansion."""
    _require_real_family(params, "compute_s")
    with ctx.workdps():
        k = _mpnum(k)
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        return +(eval_beta((alpha - 1) / beta, k + 1, ctx) / beta)


def compute_s_series(params: ExpansionParams, k_max: int, ctx: PrecisionContext) -> CoefficientSeries:
    values = tuple(compute_s(params, k, ctx) for k in range(k_max + 1))
    return CoefficientSeries(CoefficientKind.S, params, values, Route.CLOSED_FORM, ctx)
