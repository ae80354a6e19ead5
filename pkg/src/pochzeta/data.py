"""Prime and zeta-zero tables: segmented sieve, zeros-file ingestion, and
local verification of zero ordinates against the alternating series."""

from __future__ import annotations

import enum
from dataclasses import dataclass
from importlib import resources

from mpmath import mp

from .errors import CapacityError, OrderError, ParseError
from .hiprec import PrecisionContext, eval_eta_factor

_SEGMENT = 1_000_000
# Memory budget: a sieve bound beyond this would not fit the desk-scale brief.
MAX_SIEVE_BOUND = 2_000_000_000
MAX_FIRST_N = 50_000_000

BUNDLED_ZEROS_RESOURCE = "zeros100.txt"


class LimitKind(enum.Enum):
    FIRST_N = "first_n"
    UP_TO = "up_to"


@dataclass(frozen=True)
class PrimeTable:
    primes: tuple
    limit_kind: LimitKind | None = None  # None marks an ad-hoc table

    def __len__(self):
        return len(self.primes)

    def __iter__(self):
        return iter(self.primes)


@dataclass(frozen=True)
class ZeroTable:
    """Ascending imaginary parts t_j of the nontrivial zeros rho = 1/2 + i*t_j."""

    ordinates: tuple
    source: str
    digits: int

    def __len__(self):
        return len(self.ordinates)

    def __iter__(self):
        return iter(self.ordinates)

    def head(self, n: int) -> "ZeroTable":
        return ZeroTable(self.ordinates[:n], self.source, self.digits)


def _simple_primes(limit: int) -> list:
    sieve = bytearray(b"\x01") * (limit + 1)
    sieve[:2] = b"\x00\x00"
    for p in range(2, int(limit**0.5) + 1):
        if sieve[p]:
            start = p * p
            sieve[start :: p] = b"\x00" * len(range(start, limit + 1, p))
    return [i for i, flag in enumerate(sieve) if flag]


def _nth_prime_bound(n: int) -> int:
    # p_n < n (ln n + ln ln n) for n >= 6
    if n < 6:
        return 13
    import math

    ln = math.log(n)
    return int(n * (ln + math.log(ln))) + 10


def sieve_primes(limit_kind: LimitKind, bound: int) -> PrimeTable:
    """All primes up to `bound`, or the first `bound` primes, ascending."""
    if limit_kind is LimitKind.UP_TO:
        if bound < 2:
            raise ValueError("UP_TO bound must be >= 2")
        if bound > MAX_SIEVE_BOUND:
            raise CapacityError(f"sieve bound {bound} exceeds budget {MAX_SIEVE_BOUND}")
        target = bound
    else:
        if bound < 1:
            raise ValueError("FIRST_N bound must be >= 1")
        if bound > MAX_FIRST_N:
            raise CapacityError(f"prime count {bound} exceeds budget {MAX_FIRST_N}")
        target = _nth_prime_bound(bound)

    base = _simple_primes(min(target, _SEGMENT))
    primes = list(base)
    lo = _SEGMENT + 1
    while primes and lo <= target:
        hi = min(lo + _SEGMENT - 1, target)
        seg = bytearray(b"\x01") * (hi - lo + 1)
        for p in base:
            if p * p > hi:
                break
            start = max(p * p, ((lo + p - 1) // p) * p)
            seg[start - lo :: p] = b"\x00" * len(range(start, hi + 1, p))
        primes.extend(i + lo for i, flag in enumerate(seg) if flag)
        lo = hi + 1

    if limit_kind is LimitKind.FIRST_N:
        while len(primes) < bound:  # bound estimate was short; extend
            hi = target + _SEGMENT
            more = sieve_primes(LimitKind.UP_TO, hi)
            primes = list(more.primes)
            target = hi
        primes = primes[:bound]
    return PrimeTable(tuple(primes), limit_kind)


def first_n_primes(n: int) -> PrimeTable:
    return sieve_primes(LimitKind.FIRST_N, n)


def _parse_zero_lines(lines, max_count: int, source: str) -> ZeroTable:
    ordinates = []
    digits = None
    previous = None
    seen_any = False
    with mp.workdps(40):
        for lineno, raw in enumerate(lines, start=1):
            text = raw.strip()
            if not text or text.startswith("#"):
                continue
            seen_any = True
            if len(ordinates) >= max_count:
                break
            try:
                value = mp.mpf(text)
            except ValueError as exc:
                raise ParseError(f"bad ordinate {text!r}", line=lineno) from exc
            if value <= 0:
                raise ParseError(f"ordinate must be positive, got {text}", line=lineno)
            if previous is not None and value <= previous:
                raise OrderError(f"line {lineno}: ordinates must be strictly ascending")
            previous = value
            ordinates.append(value)
            mantissa = text.replace("-", "").replace(".", "").lstrip("0")
            printed = len(mantissa.split("e")[0].split("E")[0])
            digits = printed if digits is None else min(digits, printed)
    if not seen_any and max_count > 0:
        raise ParseError("no ordinates found", line=0)
    return ZeroTable(tuple(ordinates), source, digits or 0)


def load_zeros(path, max_count: int) -> ZeroTable:
    """Read ascending zero ordinates from a text file ('#' lines ignored)."""
    if max_count < 0:
        raise ValueError("max_count must be >= 0")
    with open(path, "r", encoding="ascii") as fh:
        return _parse_zero_lines(fh, max_count, source=str(path))


def bundled_zeros(max_count: int = 100) -> ZeroTable:
    """The table shipped with the package: first 100 ordinates."""
    text = (
        resources.files(__package__)
        .joinpath(BUNDLED_ZEROS_RESOURCE)
        .read_text(encoding="ascii")
    )
    return _parse_zero_lines(text.splitlines(), max_count, source="bundled")


@dataclass(frozen=True)
class ZeroScan:
    """Result of minimizing |eta(1/2 + i t)| near a candidate ordinate."""

    t_candidate: object
    t_best: object
    min_abs: object
    window: object


def verify_zero(t, ctx: PrecisionContext, window=0.01) -> ZeroScan:
    """Golden-section scan of |eta(1/2+it')| over [t-window, t+window].

    A genuine simple zero pulls the minimum to ~10^-6 or below; a
    non-zero leaves it at O(0.1).
    """
    with ctx.workdps():
        t = mp.mpf(t)
        if t <= 0:
            raise ValueError("ordinate must be positive")
        w = mp.mpf(window)
        lo, hi = t - w, t + w

        def magnitude(tt):
            return abs(eval_eta_factor(mp.mpc(mp.mpf(1) / 2, tt), ctx))

        invphi = (mp.sqrt(5) - 1) / 2
        a, b = lo, hi
        c = b - invphi * (b - a)
        d = a + invphi * (b - a)
        fc, fd = magnitude(c), magnitude(d)
        for _ in range(40):
            if fc < fd:
                b, d, fd = d, c, fc
                c = b - invphi * (b - a)
                fc = magnitude(c)
            else:
                a, c, fc = c, d, fd
                d = a + invphi * (b - a)
                fd = magnitude(d)
        t_best = (a + b) / 2
        return ZeroScan(+t, +t_best, +magnitude(t_best), +w)
