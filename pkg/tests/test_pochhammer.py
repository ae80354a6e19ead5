import random

import pytest
from mpmath import mp

from pochzeta import (
    DomainError,
    ExpansionParams,
    check_decay_bound,
    eval_pochhammer,
    eval_pochhammer_shifted,
    pochhammer_prefix,
    pochhammer_step_identity,
)
from pochzeta.pochhammer import pochhammer_asymptotic_magnitude, shifted_argument


def tol(ctx):
    return mp.mpf(10) ** (-ctx.target_digits)


class TestBasics:
    def test_degree_zero_is_one(self, ctx30):
        for s in (0, 5, mp.mpc(2, 3), mp.mpf("-7.25")):
            assert eval_pochhammer(s, 0, ctx30) == 1

    def test_integer_zeros_exact(self, ctx30):
        assert eval_pochhammer(3, 5, ctx30) == 0
        assert eval_pochhammer(1, 1, ctx30) == 0
        assert eval_pochhammer(17, 40, ctx30) == 0
        # below the zero threshold the value is nonzero
        assert eval_pochhammer(6, 5, ctx30) != 0

    def test_rational_product(self, ctx30):
        # P_4(1/2) = (1/2)(3/4)(5/6)(7/8) = 105/384
        got = eval_pochhammer(mp.mpf(1) / 2, 4, ctx30)
        assert abs(got - mp.mpf(105) / 384) < tol(ctx30)

    def test_negative_degree_rejected(self, ctx30):
        with pytest.raises(ValueError):
            eval_pochhammer(2, -1, ctx30)

    def test_recurrence(self, ctx20):
        rng = random.Random(5)
        with mp.workdps(40):
            for _ in range(10):
                s = mp.mpc(rng.uniform(-3, 3), rng.uniform(-10, 10))
                prev = eval_pochhammer(s, 0, ctx20)
                for k in range(1, 60):
                    cur = eval_pochhammer(s, k, ctx20)
                    step = prev * (1 - s / k)
                    assert abs(cur - step) <= tol(ctx20) * max(1, abs(cur))
                    prev = cur

    def test_prefix_matches_single_evaluations(self, ctx30):
        s = mp.mpc("0.5", "2.5")
        prefix = pochhammer_prefix(s, 30, ctx30)
        for k in (0, 1, 7, 30):
            assert prefix[k] == eval_pochhammer(s, k, ctx30)


class TestShifted:
    def test_at_alpha_vanishes(self, ctx30):
        params = ExpansionParams(mp.mpf("4.5"), 4)
        for k in (1, 2, 10):
            assert eval_pochhammer_shifted(mp.mpf("4.5"), params, k, ctx30) == 0

    def test_critical_line_argument_is_t_plus_one(self, ctx30):
        # (s - 1/2)/i + 1 = t + 1 on s = 1/2 + it
        params = ExpansionParams(mp.mpf(1) / 2, mp.mpc(0, 1))
        t = mp.mpf("7.25")
        arg = shifted_argument(mp.mpc(0.5, t), params, ctx30)
        assert arg == t + 1
        lhs = eval_pochhammer_shifted(mp.mpc(0.5, t), params, 9, ctx30)
        rhs = eval_pochhammer(t + 1, 9, ctx30)
        assert abs(lhs - rhs) < tol(ctx30)

    def test_zero_argument_gives_one(self, ctx30):
        params = ExpansionParams(2, 2)
        for k in (0, 1, 5, 33):
            assert eval_pochhammer_shifted(0, params, k, ctx30) == 1

    def test_beta_zero_rejected(self, ctx30):
        with pytest.raises(DomainError):
            ExpansionParams(2, 0)


class TestStepIdentity:
    def test_k_one_both_sides(self, ctx30):
        params = ExpansionParams(3, 2)
        s = mp.mpc("0.5", 4)
        lhs, rhs = pochhammer_step_identity(s, params, 1, ctx30)
        with ctx30.workdps():
            want = (3 - s) / 2
            assert abs(lhs - want) < tol(ctx30)
            assert abs(rhs - want) < tol(ctx30)

    def test_agreement_at_k_ten(self, ctx30):
        params = ExpansionParams(mp.mpf("4.5"), 4)
        lhs, rhs = pochhammer_step_identity(mp.mpf("0.5"), params, 10, ctx30)
        assert abs(lhs - rhs) <= tol(ctx30) * max(1, abs(lhs))

    def test_at_alpha_both_zero(self, ctx30):
        params = ExpansionParams(2, 3)
        for k in (2, 6):
            lhs, rhs = pochhammer_step_identity(2, params, k, ctx30)
            assert lhs == 0
            assert rhs == 0

    def test_k_zero_rejected(self, ctx30):
        with pytest.raises(DomainError):
            pochhammer_step_identity(1, ExpansionParams(2, 2), 0, ctx30)


class TestLogForm:
    def test_crossover_agreement(self, ctx20):
        # log-accumulated product against the direct recurrence, above the
        # crossover where the log form actually engages
        from pochzeta import pochhammer

        for s in (mp.mpf("0.5"), mp.mpc("0.5", 3), mp.mpc("2.5", "0.1"), mp.mpf("-1.5")):
            for k in (12_000, 25_000):
                via_log = eval_pochhammer(s, k, ctx20)
                direct = pochhammer_prefix(s, k, ctx20)[k]
                assert abs(via_log - direct) <= tol(ctx20) * max(abs(direct), mp.mpf("1e-25"))

    def test_asymptotic_magnitude(self, ctx20):
        # Gamma-quotient magnitude approaches |P_k| like 1/k
        for s in (mp.mpf("0.5"), mp.mpc(1, 2)):
            k = 100_000
            direct = abs(pochhammer_prefix(s, k, ctx20)[k])
            est = pochhammer_asymptotic_magnitude(s, k, ctx20)
            assert abs(est - direct) < direct * mp.mpf("0.01")


class TestDecayBound:
    def test_trivial_at_integer(self, ctx30):
        report = check_decay_bound(1, [1, 2, 4, 8], ctx30)
        assert report.max_value == 0
        assert report.stabilized

    def test_half(self, ctx20):
        k_list = [2**j for j in range(1, 21)]
        report = check_decay_bound(mp.mpf("0.5"), k_list, ctx20)
        # |P_k(1/2)| * k^(1/2) must stay bounded; record the constant
        assert report.max_value < 1
        assert report.stabilized
        assert len(report.values) == len(k_list)

    def test_complex_point(self, ctx20):
        k_list = [2**j for j in range(1, 21)]
        report = check_decay_bound(mp.mpc(1, 2), k_list, ctx20)
        assert report.stabilized
        assert report.max_value < 10

    def test_validation(self, ctx30):
        with pytest.raises(ValueError):
            check_decay_bound(1, [], ctx30)
        with pytest.raises(ValueError):
            check_decay_bound(1, [4, 2], ctx30)
