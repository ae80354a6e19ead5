import random

import pytest
from mpmath import mp

from pochzeta import (
    DomainError,
    PoleAtOne,
    PoleError,
    PrecisionContext,
    PrecisionError,
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
from pochzeta.hiprec import zeta_real_extended


def tol(ctx):
    return mp.mpf(10) ** (-ctx.target_digits)


class TestPrecisionContext:
    def test_working_digits(self):
        ctx = PrecisionContext(30, 12)
        assert ctx.working_digits == 42

    def test_minimum_target(self):
        with pytest.raises(ValueError):
            PrecisionContext(9, 10)
        with pytest.raises(ValueError):
            PrecisionContext(30, -1)

    def test_guard_policy(self):
        # ceil(0.302*k) + 10
        assert PrecisionContext.binomial_guard(50) == 26
        assert PrecisionContext.binomial_guard(1000) == 312

    def test_guard_enforced(self):
        ctx = PrecisionContext(30, 5)
        with pytest.raises(PrecisionError):
            ctx.require_binomial_guard(60)
        PrecisionContext.for_binomial(60).require_binomial_guard(60)


class TestZeta:
    def test_euler_closed_forms(self, ctx30):
        with mp.workdps(80):
            want2 = mp.pi**2 / 6
            want4 = mp.pi**4 / 90
            assert abs(eval_zeta(2, ctx30) - want2) < tol(ctx30)
            assert abs(eval_zeta(4, ctx30) - want4) < tol(ctx30)

    def test_first_zero_magnitude(self, ctx30):
        s = mp.mpc("0.5", "14.134725")
        assert abs(eval_zeta(s, ctx30)) < mp.mpf("1e-4")

    def test_pole_and_domain(self, ctx30):
        with pytest.raises(PoleAtOne):
            eval_zeta(1, ctx30)
        for s in (0, -1, mp.mpc(-0.5, 3)):
            with pytest.raises(DomainError):
                eval_zeta(s, ctx30)

    def test_removable_denominator(self, ctx30):
        # 1 - 2^(1-s) vanishes at s = 1 + 2*pi*i/ln 2. A fixed-precision
        # library zeta loses ~41 digits there; the boosted division must not.
        # Independent reference: library altzeta over the denominator, both
        # at enough digits to swallow the amplification.
        with mp.workdps(40):
            s = mp.mpc(1, 2 * mp.pi / mp.log(2))
        ours = eval_zeta(s, ctx30)
        with mp.workdps(200):
            reference = mp.altzeta(s) / (1 - mp.power(2, 1 - s))
            assert abs(ours - reference) < tol(ctx30) * max(1, abs(reference))

    def test_near_pole_amplification(self, ctx30):
        # just right of the pole the quotient route must stay fully accurate
        s = 1 + mp.mpf(10) ** -8
        ours = eval_zeta(s, ctx30)
        with mp.workdps(120):
            reference = mp.zeta(mp.mpf(s))
            assert abs(ours - reference) < tol(ctx30) * abs(reference)

    def test_matches_library_zeta_on_strip(self, ctx20):
        # independent cross-route: accelerated eta / (1-2^(1-s)) vs mp.zeta
        points = [mp.mpc(a, b) for a in ("0.25", "0.5", "1.5", "3.0") for b in (0, 5, 21.3)]
        with mp.workdps(50):
            for s in points:
                if s == 1:
                    continue
                ours = eval_zeta(s, ctx20)
                reference = mp.zeta(s)
                assert abs(ours - reference) < tol(ctx20) * max(1, abs(reference))

    def test_real_extension(self, ctx30):
        with mp.workdps(80):
            assert abs(zeta_real_extended(0, ctx30) + mp.mpf(1) / 2) < tol(ctx30)
            assert abs(zeta_real_extended(-1, ctx30) + mp.mpf(1) / 12) < tol(ctx30)
            ref = mp.zeta(mp.mpf("-0.5"))
            assert abs(zeta_real_extended(mp.mpf("-0.5"), ctx30) - ref) < tol(ctx30)


class TestEtaFactor:
    def test_alternating_harmonic(self, ctx30):
        with mp.workdps(80):
            assert abs(eval_eta_factor(1, ctx30) - mp.log(2)) < tol(ctx30)

    def test_pi_squared_over_12(self, ctx30):
        with mp.workdps(80):
            assert abs(eval_eta_factor(2, ctx30) - mp.pi**2 / 12) < tol(ctx30)

    def test_third_zero_magnitude(self, ctx30):
        s = mp.mpc("0.5", "25.010858")
        assert abs(eval_eta_factor(s, ctx30)) < mp.mpf("1e-3")

    def test_domain(self, ctx30):
        with pytest.raises(DomainError):
            eval_eta_factor(mp.mpc(0, 3), ctx30)

    def test_equals_prefactor_times_zeta(self, ctx20):
        # library invariant on a Re(s)-in-(0,4] grid
        rng = random.Random(7)
        with mp.workdps(50):
            for _ in range(25):
                s = mp.mpc(rng.uniform(0.05, 4.0), rng.uniform(-25.0, 25.0))
                den = 1 - mp.power(2, 1 - s)
                if abs(den) < mp.mpf("0.02"):
                    continue
                lhs = eval_eta_factor(s, ctx20)
                rhs = den * eval_zeta(s, ctx20)
                assert abs(lhs - rhs) < tol(ctx20) * max(1, abs(lhs))


class TestGamma:
    def test_closed_forms(self, ctx30):
        with mp.workdps(80):
            assert abs(eval_gamma(1, ctx30) - 1) < tol(ctx30)
            assert abs(eval_gamma(mp.mpf("0.5"), ctx30) - mp.sqrt(mp.pi)) < tol(ctx30)

    def test_conjugate_symmetry(self, ctx30):
        # Gamma(z)*Gamma(conj z) is |Gamma(z)|^2: real and positive
        z = mp.mpc(1, -mp.mpf("14.134725") / 4)
        with mp.workdps(80):
            product = eval_gamma(z, ctx30) * eval_gamma(mp.conj(z), ctx30)
            square = abs(eval_gamma(z, ctx30)) ** 2
        assert product.real > 0
        assert abs(product.imag) < tol(ctx30)
        assert abs(product.real - square) < tol(ctx30) * square

    def test_recurrence_property(self, ctx20):
        rng = random.Random(42)
        with mp.workdps(60):
            for _ in range(100):
                z = mp.mpc(rng.uniform(0.1, 5.0), rng.uniform(-20.0, 20.0))
                lhs = eval_gamma(z + 1, ctx20)
                rhs = z * eval_gamma(z, ctx20)
                assert abs(lhs - rhs) < tol(ctx20) * abs(lhs)

    def test_poles(self, ctx30):
        for z in (0, -1, -2, -17):
            with pytest.raises(PoleError):
                eval_gamma(z, ctx30)


class TestBeta:
    def test_reciprocal_integers(self, ctx30):
        with mp.workdps(80):
            for k in (1, 10, 100):
                assert abs(eval_beta(1, k + 1, ctx30) - mp.mpf(1) / (k + 1)) < tol(ctx30)

    def test_half_half_is_pi(self, ctx30):
        with mp.workdps(80):
            got = eval_beta(mp.mpf("0.5"), mp.mpf("0.5"), ctx30)
            assert abs(got - mp.pi) < tol(ctx30)

    def test_gamma_quotient(self, ctx30):
        # cross-check against the direct quotient at doubled precision
        doubled = PrecisionContext(ctx30.target_digits, 2 * ctx30.working_digits)
        x = mp.mpf(7) / 8
        with doubled.workdps():
            want = mp.gamma(x) * mp.gamma(101) / mp.gamma(101 + x)
        got = eval_beta(x, 101, ctx30)
        assert abs(got - want) < tol(ctx30) * abs(want)

    def test_symmetry(self, ctx20):
        rng = random.Random(3)
        with mp.workdps(50):
            for _ in range(20):
                x = mp.mpc(rng.uniform(0.1, 4.0), rng.uniform(-3.0, 3.0))
                y = mp.mpc(rng.uniform(0.1, 4.0), rng.uniform(-3.0, 3.0))
                bxy = eval_beta(x, y, ctx20)
                byx = eval_beta(y, x, ctx20)
                assert abs(bxy - byx) < tol(ctx20) * max(1, abs(bxy))

    def test_pole_detection(self, ctx30):
        with pytest.raises(PoleError):
            eval_beta(0, 2, ctx30)
        with pytest.raises(PoleError):
            eval_beta(2, -3, ctx30)


class TestLogZetaDeriv:
    def test_at_two_against_finite_difference(self, ctx30):
        # independent oracle: central difference of ln((a-1)zeta(a))
        with mp.workdps(90):
            h = mp.mpf(10) ** -30
            f = lambda a: mp.log((a - 1) * mp.zeta(a))
            want = (f(2 + h) - f(2 - h)) / (2 * h)
        got = eval_log_zeta_deriv(2, ctx30)
        assert abs(got - want) < tol(ctx30) * abs(want)

    def test_at_ten_prime_sum_oracle(self, ctx20):
        # convergent prime sum is an honest oracle at a = 10
        with mp.workdps(40):
            zz = mp.mpf(0)
            for p in (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47,
                      53, 59, 61, 67, 71, 73, 79, 83, 89, 97):
                for q in range(1, 15):
                    zz -= mp.log(p) * mp.power(p, -10 * q)
            want = mp.mpf(1) / 9 + zz
            got = eval_log_zeta_deriv(10, ctx20)
            assert abs(got - want) < mp.mpf("1e-15")
            assert abs(got - mp.mpf(1) / 9) < mp.mpf("1e-2")  # zeta'/zeta tiny here

    def test_trend_to_euler_gamma(self, ctx20):
        with mp.workdps(40):
            gaps = []
            for a in ("1.5", "1.1", "1.01"):
                gaps.append(abs(eval_log_zeta_deriv(mp.mpf(a), ctx20) - mp.euler))
            assert gaps[0] > gaps[1] > gaps[2]
            assert gaps[2] < mp.mpf("0.01")

    def test_domain(self, ctx30):
        for a in (1, mp.mpf("0.5"), -2):
            with pytest.raises(DomainError):
                eval_log_zeta_deriv(a, ctx30)
        with pytest.raises(DomainError):
            eval_log_zeta_deriv(mp.mpc(2, 1), ctx30)


class TestPrecisionStability:
    def test_doubling_working_digits_is_invisible(self):
        base = PrecisionContext(25, 10)
        fine = PrecisionContext(25, 35)
        points = [mp.mpf(2), mp.mpc("0.5", "14.1"), mp.mpf("0.25")]
        with mp.workdps(80):
            for s in points:
                a = eval_eta_factor(s, base)
                b = eval_eta_factor(s, fine)
                assert abs(a - b) <= tol(base) * max(1, abs(a))
            a = eval_log_zeta_deriv(mp.mpf("4.5"), base)
            b = eval_log_zeta_deriv(mp.mpf("4.5"), fine)
            assert abs(a - b) <= tol(base) * max(1, abs(a))


class TestSerialization:
    def test_roundtrip_real(self, ctx30):
        rng = random.Random(11)
        with mp.workdps(50):
            for _ in range(50):
                x = mp.mpf(rng.uniform(-1, 1)) * mp.power(10, rng.randint(-25, 25))
                text = format_real(x, ctx30.target_digits)
                back = parse_real(text, ctx30)
                assert abs(back - x) <= abs(x) * mp.mpf(10) ** (1 - ctx30.target_digits)

    def test_roundtrip_complex(self, ctx30):
        with mp.workdps(50):
            z = mp.mpc("1.25", "-3.5e-7")
            text = format_complex(z, ctx30.target_digits)
            back = parse_complex(text, ctx30)
            assert abs(back - z) <= abs(z) * mp.mpf(10) ** (1 - ctx30.target_digits)

    def test_parse_complex_forms(self, ctx30):
        assert parse_complex("i", ctx30) == mp.mpc(0, 1)
        assert parse_complex("-i", ctx30) == mp.mpc(0, -1)
        assert parse_complex("2", ctx30) == 2
        assert parse_complex("4.5", ctx30) == mp.mpf("4.5")
        assert parse_complex("1+2i", ctx30) == mp.mpc(1, 2)
        assert parse_complex("-0.5-1i", ctx30) == mp.mpc(-0.5, -1)
        with ctx30.workdps():
            want = mp.mpc(mp.mpf("0.5"), mp.mpf("1e-3"))
        assert parse_complex("0.5+1e-3i", ctx30) == want
        with pytest.raises(DomainError):
            parse_complex("spam", ctx30)
        with pytest.raises(DomainError):
            parse_real("2+3i", ctx30)
