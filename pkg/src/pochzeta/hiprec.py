"""Working-precision policy and the special functions the rest of the
package consumes.

Values are plain mpmath numbers (mpf/mpc); every operation evaluates inside
the context's working precision and is a pure function of its inputs.
"""

from __future__ import annotations

import math
import re as _re
from dataclasses import dataclass

import mpmath
from mpmath import mp

from .errors import DomainError, PoleAtOne, PoleError, PrecisionError

HReal = mpmath.mpf
HComplex = mpmath.mpc

MIN_TARGET_DIGITS = 10

# Binomial transforms of order k lose ~log10(C(k, k/2)) ~ 0.302*k digits.
BINOMIAL_LOSS_PER_ORDER = 0.302
BINOMIAL_GUARD_FLOOR = 10

# |1 - 2^(1-s)| below this triggers precision-boosted division so the
# removable zeros at s = 1 + 2*pi*i*k/ln2 (and the pole at s = 1) never
# amplify rounding error.
_SMALL_DENOMINATOR = 0.01

_ACCEL_LOG = math.log(3 + 2 * math.sqrt(2))


@dataclass(frozen=True)
class PrecisionContext:
    """Requested accuracy plus the guard digits that absorb cancellation."""

    target_digits: int = 30
    guard_digits: int = 10

    def __post_init__(self):
        if self.target_digits < MIN_TARGET_DIGITS:
            raise ValueError(f"target_digits must be >= {MIN_TARGET_DIGITS}")
        if self.guard_digits < 0:
            raise ValueError("guard_digits must be >= 0")

    @property
    def working_digits(self) -> int:
        return self.target_digits + self.guard_digits

    def workdps(self):
        """Context manager setting mpmath's dps to the working precision."""
        return mp.workdps(self.working_digits)

    def tolerance(self) -> HReal:
        """10^(-target_digits), the absolute/relative acceptance band."""
        with self.workdps():
            return mp.mpf(10) ** (-self.target_digits)

    @staticmethod
    def binomial_guard(k_max: int) -> int:
        return math.ceil(BINOMIAL_LOSS_PER_ORDER * k_max) + BINOMIAL_GUARD_FLOOR

    def require_binomial_guard(self, k_max: int):
        need = self.binomial_guard(k_max)
        if self.guard_digits < need:
            raise PrecisionError(
                f"order-{k_max} binomial transform needs >= {need} guard digits, "
                f"context has {self.guard_digits}"
            )

    @classmethod
    def for_binomial(cls, k_max: int, target_digits: int = 30) -> "PrecisionContext":
        """A context whose guard satisfies the policy for transforms up to k_max."""
        return cls(target_digits, cls.binomial_guard(k_max))

    def with_guard_doubled(self) -> "PrecisionContext":
        return PrecisionContext(self.target_digits, 2 * max(self.guard_digits, 1))


def _mpnum(x):
    """Coerce to mpf/mpc at the current working precision."""
    if isinstance(x, (mpmath.mpf, mpmath.mpc)):
        return +x
    if isinstance(x, complex):
        return mp.mpc(x)
    return mp.mpmathify(x)


def _is_nonpositive_integer(z) -> bool:
    z = mp.mpmathify(z)
    if mp.im(z) != 0:
        return False
    x = mp.re(z)
    return x <= 0 and x == mp.floor(x)


def _alternating_terms(working_digits: int, t_abs) -> int:
    """Acceleration order for the alternating series at |Im s| = t_abs.

    The Chebyshev-accelerated remainder is below
    (3+sqrt8)^(-n) * (1+2t) * e^(pi*t/2); solve that for 10^(-wd).
    """
    need = working_digits * math.log(10) + math.pi * float(t_abs) / 2
    need += math.log(1 + 2 * float(t_abs)) + 10
    return int(math.ceil(need / _ACCEL_LOG)) + 5


def _eta_accelerated(s, working_digits: int):
    """(1-2^(1-s))*zeta(s) = sum (-1)^(n-1) n^(-s), accelerated.

    Assumes Re(s) > 0. Runs at working_digits + 10 so the returned value is
    good to the full working precision.
    """
    with mp.workdps(working_digits + 10):
        n = _alternating_terms(working_digits, abs(mp.im(s)))
        d = (3 + 2 * mp.sqrt(2)) ** n
        d = (d + 1 / d) / 2
        b = mp.mpf(-1)
        c = -d
        acc = mp.mpf(0)
        for k in range(n):
            c = b - c
            acc += c * mp.power(k + 1, -s)
            b = b * (k + n) * (k - n) / ((k + mp.mpf(1) / 2) * (k + 1))
        return acc / d


def eval_eta_factor(s, ctx: PrecisionContext):
    """The alternating series (1-2^(1-s))*zeta(s), convergent for Re(s) > 0."""
    with ctx.workdps():
        s = _mpnum(s)
        if mp.re(s) <= 0:
            raise DomainError("alternating series requires Re(s) > 0")
        return +_eta_accelerated(s, ctx.working_digits)


def eval_zeta(s, ctx: PrecisionContext):
    """zeta(s) on Re(s) > 0, continued through the alternating series.

    Where 1 - 2^(1-s) is small (near s = 1 or the removable zeros at
    1 + 2*pi*i*k/ln2), both numerator and denominator are recomputed with
    the amplification's worth of extra digits before dividing; the division
    is then exact to working precision. (A fixed-precision library zeta is
    NOT a safe fallback here: it divides by the same vanishing factor
    internally.)
    """
    with ctx.workdps():
        s = _mpnum(s)
        if s == 1:
            raise PoleAtOne("zeta has its pole at s = 1")
        if mp.re(s) <= 0:
            raise DomainError("eval_zeta is defined for Re(s) > 0")
        wd = ctx.working_digits
        den = 1 - mp.power(2, 1 - s)
        if abs(den) < _SMALL_DENOMINATOR:
            with mp.workdps(2 * wd + 20):
                ln2 = mp.log(2)
                k_near = mp.nint(mp.im(s) * ln2 / (2 * mp.pi))
                s_star = mp.mpc(1, 2 * mp.pi * k_near / ln2)
                dist = abs(s - s_star) * ln2
                boost = int(mp.ceil(-mp.log10(dist))) + 10 if dist < 1 else 10
                wd = ctx.working_digits + max(boost, 10)
            with mp.workdps(wd + 10):
                den = 1 - mp.power(2, 1 - s)
        return +(_eta_accelerated(s, wd) / den)


def zeta_real_extended(sigma, ctx: PrecisionContext):
    """zeta on the whole real axis except sigma = 1 (reflection below 0).

    Backing helper for direct figure targets at sigma <= 0; the public
    eval_zeta contract stays restricted to Re(s) > 0.
    """
    with ctx.workdps():
        sigma = mp.mpf(_mpnum(sigma).real)
        if sigma == 1:
            raise PoleAtOne("zeta has its pole at s = 1")
        if sigma > 0:
            return eval_zeta(sigma, ctx)
        if sigma == 0:
            return mp.mpf(-1) / 2
        ref = eval_zeta(1 - sigma, ctx)
        return +(mp.power(2, sigma) * mp.pi ** (sigma - 1)
                 * mp.sin(mp.pi * sigma / 2) * mp.gamma(1 - sigma) * ref)


def eval_gamma(z, ctx: PrecisionContext):
    with ctx.workdps():
        z = _mpnum(z)
        if _is_nonpositive_integer(z):
            raise PoleError(f"Gamma pole at z = {z}")
        return +mp.gamma(z)


def eval_beta(x, y, ctx: PrecisionContext):
    """B(x, y) = Gamma(x)*Gamma(y)/Gamma(x+y)."""
    with ctx.workdps():
        x = _mpnum(x)
        y = _mpnum(y)
        for z in (x, y, x + y):
            if _is_nonpositive_integer(z):
                raise PoleError(f"Beta argument hits a Gamma pole at {z}")
        return +mp.beta(x, y)


def eval_log_zeta_deriv(a, ctx: PrecisionContext):
    """d/da ln((a-1)*zeta(a)) = 1/(a-1) + zeta'(a)/zeta(a) for real a > 1."""
    with ctx.workdps():
        a = _mpnum(a)
        if mp.im(a) != 0:
            raise DomainError("eval_log_zeta_deriv takes a real argument")
        a = mp.re(a)
        if a <= 1:
            raise DomainError("eval_log_zeta_deriv requires a > 1")
        return +(1 / (a - 1) + mp.zeta(a, derivative=1) / mp.zeta(a))


# ---------------------------------------------------------------------------
# serialization


def re_im(value):
    """Real and imaginary parts without any precision-dependent rounding."""
    if isinstance(value, mpmath.mpc):
        return value.real, value.imag
    if isinstance(value, complex):
        return mp.mpf(value.real), mp.mpf(value.imag)
    return value, mp.mpf(0)


def format_real(x, digits: int) -> str:
    """Scientific-notation string with `digits` significant digits."""
    with mp.workdps(digits + 5):
        return mp.nstr(mp.mpf(x), digits, min_fixed=0, max_fixed=0)


def format_complex(z, digits: int) -> str:
    z = mp.mpc(z)
    re_s = format_real(z.real, digits)
    im_s = format_real(z.imag, digits)
    sign = "" if im_s.startswith("-") else "+"
    return f"{re_s}{sign}{im_s}i"


def parse_real(text: str, ctx: PrecisionContext):
    with ctx.workdps():
        try:
            return mp.mpf(text.strip())
        except ValueError as exc:
            raise DomainError(f"not a real number: {text!r}") from exc


_COMPLEX_RE = _re.compile(
    r"^(?P<re>[+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?"
    r"(?P<im>[+-]?(?:(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?[ij])?$"
)


def parse_complex(text: str, ctx: PrecisionContext):
    """Parse 'a+bi', 'bi', 'i', or a plain real; returns mpf or mpc."""
    raw = text.strip().replace(" ", "")
    with ctx.workdps():
        m = _COMPLEX_RE.match(raw)
        if not m or (m.group("re") is None and m.group("im") is None):
            raise DomainError(f"not a number: {text!r}")
        re_part = mp.mpf(m.group("re")) if m.group("re") else mp.mpf(0)
        im_txt = m.group("im")
        if im_txt is None:
            return re_part
        im_txt = im_txt[:-1]  # strip the i/j
        if im_txt in ("", "+"):
            im_part = mp.mpf(1)
        elif im_txt == "-":
            im_part = mp.mpf(-1)
        else:
            im_part = mp.mpf(im_txt)
        return mp.mpc(re_part, im_part)
