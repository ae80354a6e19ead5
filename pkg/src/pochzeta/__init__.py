"""High-precision Pochhammer-polynomial representations of zeta-related
functions, their coefficient families, and the critical functions built from
zeta zeros and from primes."""

from .coefficients import (
    CoefficientKind,
    CoefficientSeries,
    ExpansionParams,
    RIESZ,
    Route,
    compute_b,
    compute_d,
    compute_dhat_binomial,
    compute_dhat_primes,
    compute_dhat_zeros_beta,
    compute_dhathat,
    compute_maslanka_A,
    compute_s,
    compute_s_series,
    dhat_primes_tail_estimate,
)
from .critical import (
    FIG4_PARAMS,
    CriticalSample,
    SweepSummary,
    gamma_limit_primes,
    prime_contribution,
    psi1,
    psi2,
    psi_infbeta,
    sweep_critical,
)
from .data import (
    LimitKind,
    PrimeTable,
    ZeroTable,
    bundled_zeros,
    first_n_primes,
    load_zeros,
    sieve_primes,
    verify_zero,
)
from .errors import (
    CapacityError,
    DomainError,
    OrderError,
    ParseError,
    PoleAtOne,
    PoleError,
    PrecisionError,
)
from .expansions import (
    SeriesEvaluation,
    SeriesTarget,
    eval_critical_line_series,
    eval_series,
    eval_series_grid,
    write_series_csv,
)
from .hiprec import (
    HComplex,
    HReal,
    PrecisionContext,
    eval_beta,
    eval_eta_factor,
    eval_gamma,
    eval_log_zeta_deriv,
    eval_zeta,
    format_complex,
    format_real,
    parse_complex,
    parse_real,
)
from .pochhammer import (
    check_decay_bound,
    eval_pochhammer,
    eval_pochhammer_shifted,
    pochhammer_prefix,
    pochhammer_step_identity,
)

__version__ = "0.1.0"
