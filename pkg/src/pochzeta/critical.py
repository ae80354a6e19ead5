"""The critical functions: psi1 from the zeta zeros, psi2 from the primes,
grid sweeps with oscillation statistics, per-prime contributions, the
large-beta psi(k), and the Euler-gamma limit diagnostics."""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

from mpmath import mp

from .coefficients import ExpansionParams, _require_real_family
from .data import PrimeTable, ZeroTable
from .errors import DomainError
from .hiprec import PrecisionContext, _mpnum, eval_beta, eval_gamma, eval_log_zeta_deriv

FIG4_PARAMS = ExpansionParams(mp.mpf(9) / 2, 4, mp.mpf(1) / 2)


@dataclass(frozen=True)
class CriticalSample:
    x: object       # x = ln k
    k: object
    psi1: object
    psi2: object

    @property
    def diff(self):
        return self.psi1 - self.psi2


@dataclass(frozen=True)
class SweepSummary:
    max_diff: object
    max_diff_x: object
    sign_changes: int
    oscillations: int
    amplitude: object
    n_points: int
    truncations: dict


@lru_cache(maxsize=32)
def _zero_prefactors(params: ExpansionParams, ordinates: tuple, prec: int):
    """Gamma((alpha - rho)/beta) for rho = 1/2 + i*t and its conjugate,
    per ordinate."""
    with mp.workprec(prec):
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        half = mp.mpf(1) / 2
        out = []
        for t in ordinates:
            rho = mp.mpc(half, t)
            rho_bar = mp.conj(rho)
            out.append(
                (rho, mp.gamma((alpha - rho) / beta),
                 rho_bar, mp.gamma((alpha - rho_bar) / beta))
            )
        return tuple(out)


@lru_cache(maxsize=32)
def _trivial_prefactors(params: ExpansionParams, n_trivial: int, prec: int):
    with mp.workprec(prec):
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        return tuple(mp.gamma((alpha + 2 * n) / beta) for n in range(1, n_trivial + 1))


def psi1_complex(x, params, zeros: ZeroTable, n_zeros: int, n_trivial: int, ctx: PrecisionContext):
    """k^((alpha-sigma)/beta) * dhat_k via the zeros, before dropping the
    (rounding-level) imaginary part."""
    if n_zeros > len(zeros):
        raise ValueError(f"asked for {n_zeros} zeros, table holds {len(zeros)}")
    with ctx.workdps():
        x = mp.mpf(_mpnum(x).real)
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        sigma = _mpnum(params.sigma)
        prec = mp.prec
        total = mp.mpc(0)
        for rho, gam, rho_bar, gam_bar in _zero_prefactors(params, zeros.ordinates[:n_zeros], prec):
            total += gam * mp.exp(x * (rho - sigma) / beta)
            total += gam_bar * mp.exp(x * (rho_bar - sigma) / beta)
        for n, gam in enumerate(_trivial_prefactors(params, n_trivial, prec), start=1):
            total += gam * mp.exp(-x * (2 * n + sigma) / beta)
        return +(total / beta)


def psi1(x, params, zeros: ZeroTable, n_zeros: int, n_trivial: int, ctx: PrecisionContext):
    """The critical function from the zeros (conjugate pairing makes it real)."""
    return psi1_complex(x, params, zeros, n_zeros, n_trivial, ctx).real


@lru_cache(maxsize=8)
def _prime_terms(primes: PrimeTable, params: ExpansionParams, q_max: int, prec: int):
    """x-independent data per (p, q) term, ascending p then q.

    Each entry: (beta*q*ln p as float for the drop test,
                 ln p * p^(-alpha*q), p^(-beta*q), ln(1 - p^(-beta*q))).
    """
    with mp.workprec(prec):
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        floor = mp.mpf(10) ** (-(mp.dps + 10))
        terms = []
        for p in primes:
            ln_p = mp.log(p)
            for q in range(1, q_max + 1):
                coeff = ln_p * mp.power(p, -alpha * q)
                if coeff < floor:
                    break
                p_beta = mp.power(p, -beta * q)
                terms.append(
                    (float(beta * q * ln_p), coeff, p_beta, mp.log1p(-p_beta))
                )
        return tuple(terms)


def _prime_sum(x, terms, working_digits: int, approx_paper: bool):
    """sum over (p,q) of ln p * p^(-alpha q) * (1 - p^(-beta q))^k at k = e^x,
    with the paper's e^(-k p^(-beta q)) when approx_paper."""
    k = mp.exp(x)
    xf = float(x)
    # e^(-k p^(-beta q)) underflows past any contribution at this cutoff
    drop_log = math.log(10) * (working_digits + 20) + max(xf, 0.0)
    log_drop = math.log(drop_log)
    total = mp.mpf(0)
    for neg_log_pbq, coeff, p_beta, ln1p in terms:
        if xf - neg_log_pbq > log_drop:
            continue
        if approx_paper:
            total += coeff * mp.exp(-k * p_beta)
        else:
            total += coeff * mp.exp(k * ln1p)
    return total


def psi2(
    x,
    params,
    primes: PrimeTable,
    q_max: int,
    ctx: PrecisionContext,
    approx_paper: bool = False,
    first_term_beta: bool = False,
):
    """The critical function from the primes:
    (1/beta) Gamma((alpha-1)/beta) k^((1-sigma)/beta)
      - k^((alpha-sigma)/beta) sum_p ln p sum_q p^(-alpha q) (1-p^(-beta q))^k.

    approx_paper uses e^(-k p^(-beta q)) exactly as the numerical-experiment
    formula; first_term_beta replaces the Gamma asymptotic by the exact
    k^((alpha-sigma)/beta) * B((alpha-1)/beta, k+1)/beta.
    """
    _require_real_family(params, "psi2")
    if len(primes) == 0:
        raise ValueError("prime table must be nonempty")
    with ctx.workdps():
        x = mp.mpf(_mpnum(x).real)
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        sigma = _mpnum(params.sigma)
        k = mp.exp(x)
        a = (alpha - 1) / beta
        if first_term_beta:
            first = mp.power(k, (alpha - sigma) / beta) * eval_beta(a, k + 1, ctx) / beta
        else:
            first = eval_gamma(a, ctx) / beta * mp.power(k, (1 - sigma) / beta)
        terms = _prime_terms(primes, params, q_max, mp.prec)
        tail = _prime_sum(x, terms, ctx.working_digits, approx_paper)
        return +(first - mp.power(k, (alpha - sigma) / beta) * tail)


def prime_contribution(
    p: int,
    x_grid,
    params,
    q_max: int,
    ctx: PrecisionContext,
    approx_paper: bool = True,
):
    """The single-prime term of psi2's sum across x_grid: list of (x, value)."""
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise ValueError(f"{p} is not prime")
    _require_real_family(params, "prime_contribution")
    table = PrimeTable((p,))
    with ctx.workdps():
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        sigma = _mpnum(params.sigma)
        terms = _prime_terms(table, params, q_max, mp.prec)
        out = []
        for x in x_grid:
            x = mp.mpf(_mpnum(x).real)
            k = mp.exp(x)
            value = mp.power(k, (alpha - sigma) / beta) * _prime_sum(
                x, terms, ctx.working_digits, approx_paper
            )
            out.append((+x, +value))
        return out


def sweep_critical(
    x_min,
    x_max,
    n_points: int,
    params,
    zeros: ZeroTable,
    primes: PrimeTable,
    ctx: PrecisionContext,
    n_zeros: int = 10,
    n_trivial: int = 20,
    q_max: int = 50,
    approx_paper: bool = True,
):
    """Uniform x-grid of psi1/psi2 samples plus agreement and oscillation
    statistics.

    Defaults reproduce the paper's numerical experiment, including its
    e^(-k p^(-beta q)) prime factor; oscillations counts complete
    oscillations, i.e. floor(sign changes of psi1 / 2). Amplitude is half
    the psi1 peak-to-peak over the upper half of the grid, where the
    decaying trivial-zero terms no longer bias it.
    """
    if n_points < 2:
        raise ValueError("n_points must be >= 2")
    with ctx.workdps():
        x_min = mp.mpf(_mpnum(x_min).real)
        x_max = mp.mpf(_mpnum(x_max).real)
        if not x_min < x_max:
            raise ValueError("x_min must be < x_max")
        step = (x_max - x_min) / (n_points - 1)
        samples = []
        for i in range(n_points):
            x = x_min + step * i
            k = mp.exp(x)
            p1 = psi1(x, params, zeros, n_zeros, n_trivial, ctx)
            p2 = psi2(x, params, primes, q_max, ctx, approx_paper=approx_paper)
            samples.append(CriticalSample(+x, +k, p1, p2))

        diffs = [abs(s.diff) for s in samples]
        max_diff = max(diffs)
        max_at = samples[diffs.index(max_diff)].x
        signs = [s.psi1 for s in samples]
        sign_changes = sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)
        upper = [s.psi1 for s in samples[n_points // 2 :]]
        amplitude = (max(upper) - min(upper)) / 2
        summary = SweepSummary(
            max_diff=+max_diff,
            max_diff_x=+max_at,
            sign_changes=sign_changes,
            oscillations=sign_changes // 2,
            amplitude=+amplitude,
            n_points=n_points,
            truncations={
                "n_zeros": n_zeros,
                "n_trivial": n_trivial,
                "n_primes": len(primes),
                "q_max": q_max,
                "approx_paper": approx_paper,
            },
        )
        return samples, summary


def psi_infbeta(
    k,
    params,
    zeros: ZeroTable,
    n_zeros: int,
    n_trivial: int,
    ctx: PrecisionContext,
    infinite_beta: bool = False,
):
    """|sum_rho k^(-(sigma-rho)/beta)/(rho(alpha-rho))
       - sum_n k^(-(sigma+2n)/beta)/(2n(alpha+2n))
       + (C/alpha) k^(-sigma/beta)|,  C = ln(2*pi) - 1.

    infinite_beta takes the formal beta -> infinity limit (every k-power
    becomes 1); with alpha = 1 the limit value is the Euler constant.
    """
    if n_zeros > len(zeros):
        raise ValueError(f"asked for {n_zeros} zeros, table holds {len(zeros)}")
    with ctx.workdps():
        alpha = _mpnum(params.alpha)
        beta = _mpnum(params.beta)
        sigma = _mpnum(params.sigma)
        if alpha == 0:
            raise DomainError("alpha must be nonzero")
        x = mp.log(_mpnum(k))
        half = mp.mpf(1) / 2
        c_const = mp.log(2 * mp.pi) - 1

        def kpow(exponent):
            if infinite_beta:
                return mp.mpf(1)
            return mp.exp(-x * exponent / beta)

        total = mp.mpc(0)
        for t in zeros.ordinates[:n_zeros]:
            for rho in (mp.mpc(half, t), mp.mpc(half, -t)):
                den = rho * (alpha - rho)
                if den == 0:
                    raise DomainError(f"alpha coincides with the zero {rho}")
                total += kpow(sigma - rho) / den
        for n in range(1, n_trivial + 1):
            den = 2 * n * (alpha + 2 * n)
            if den == 0:
                raise DomainError(f"alpha hits the trivial zero -{2*n}")
            total -= kpow(sigma + 2 * n) / den
        total += c_const / alpha * kpow(sigma)
        return +abs(total)


def gamma_limit_primes(alpha, ctx: PrecisionContext):
    """(1/alpha) d/dalpha ln((alpha-1) zeta(alpha)); tends to the Euler
    constant as alpha drops to 1."""
    with ctx.workdps():
        alpha = _mpnum(alpha)
        if mp.im(alpha) != 0:
            raise DomainError("alpha must be real")
        alpha = mp.re(alpha)
        if alpha <= 1:
            raise DomainError("alpha must be > 1")
        return +(eval_log_zeta_deriv(alpha, ctx) / alpha)
