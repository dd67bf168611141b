import random
from fractions import Fraction as F
from math import gcd

import pytest

from cfdyn.boundary import DomainError, make_surd
from cfdyn.cf import (
    RcfExpansion,
    farey_natext_step,
    farey_slowdown_check,
    farey_step,
    gauss_natext_step,
    gauss_step,
    rcf_eval,
    rcf_expand,
)

SQRT2 = make_surd(0, 1, 1, 2)
SQRT2_M1 = make_surd(-1, 1, 1, 2)


class TestGaussStep:
    def test_spec_examples(self):
        assert gauss_step(F(0)) == (None, 0)
        assert gauss_step(F(2, 5)) == (2, F(1, 2))
        digit, image = gauss_step(SQRT2_M1)
        assert digit == 2 and image == SQRT2_M1  # fixed point

    def test_domain(self):
        with pytest.raises(DomainError):
            gauss_step(F(1))
        with pytest.raises(DomainError):
            gauss_step(F(-1, 2))


class TestGaussNatext:
    def test_spec_examples(self):
        assert gauss_natext_step(F(2, 5), F(1, 2)) == (F(1, 2), F(2, 5))
        assert gauss_natext_step(F(1, 2), F(0)) == (0, F(1, 2))
        # recomputed with the brute oracle: k = floor(1/(sqrt2-1)) = 2
        assert gauss_natext_step(SQRT2_M1, F(0)) == (SQRT2_M1, F(1, 2))

    def test_shift_on_digits(self):
        rng = random.Random(0)
        for _ in range(2000):
            digits = [rng.randint(1, 6) for _ in range(rng.randint(2, 8))]
            if digits[-1] == 1:
                digits[-1] = 2
            x = rcf_eval(RcfExpansion(0, tuple(digits)))
            y = rcf_eval(RcfExpansion(0, tuple(digits[1:]))) if digits[1:] \
                else F(0)
            assert gauss_step(x) == (digits[0], y)

    def test_natext_shift_on_digit_pairs(self):
        rng = random.Random(1)
        for _ in range(1000):
            fore = [rng.randint(1, 5) for _ in range(4)]
            back = [rng.randint(1, 5) for _ in range(3)]
            fore[-1] = max(fore[-1], 2)
            back[-1] = max(back[-1], 2)
            x = rcf_eval(RcfExpansion(0, tuple(fore)))
            y = rcf_eval(RcfExpansion(0, tuple(back)))
            x2, y2 = gauss_natext_step(x, y)
            assert x2 == rcf_eval(RcfExpansion(0, tuple(fore[1:])))
            assert y2 == rcf_eval(RcfExpansion(0, tuple([fore[0]] + back)))


class TestFarey:
    def test_spec_examples(self):
        assert farey_step(F(2, 7)) == F(2, 5)
        assert farey_step(F(2, 3)) == F(1, 2)
        assert farey_step(F(0)) == 0
        # closure choices
        assert farey_step(F(1, 2)) == 1
        assert farey_step(F(1)) == 0

    def test_natext_examples(self):
        assert farey_natext_step(F(1, 3), F(1, 2)) == (F(1, 2), F(1, 3))
        assert farey_natext_step(F(1, 2), F(0)) == (1, 1)
        y = F(3, 7)
        assert farey_natext_step(F(0), y) == (0, y / (1 + y))


class TestExpandEval:
    def test_spec_examples(self):
        assert str(rcf_expand(F(7, 3))) == "[2;3]"
        assert str(rcf_expand(F(355, 113))) == "[3;7,16]"
        e = rcf_expand(SQRT2)
        assert e.leading == 1 and e.period == (2,)
        assert rcf_eval(RcfExpansion(2, (3,))) == F(7, 3)
        assert rcf_eval(RcfExpansion(0, ())) == 0
        assert rcf_eval(RcfExpansion(0, (2, 2))) == F(2, 5)

    def test_round_trip_small_denominators(self):
        for q in range(2, 80):
            for p in range(1, q):
                if gcd(p, q) == 1:
                    x = F(p, q)
                    e = rcf_expand(x)
                    assert e.exact_tail is None and not e.truncated
                    assert rcf_eval(e) == x
                    assert e.digits == () or e.digits[-1] >= 2

    def test_truncation_keeps_exact_tail(self):
        x = F(355, 113)
        e = rcf_expand(x, max_digits=1)
        assert e.truncated and e.exact_tail is not None
        assert rcf_eval(e) == x

    def test_periodic_surds(self):
        assert rcf_expand(make_surd(0, 1, 1, 3)).period == (1, 2)
        assert rcf_expand(make_surd(1, 1, 2, 5)).period == (1,)
        e = rcf_expand(make_surd(0, 1, 1, 7))
        assert e.period == (1, 1, 1, 4)

    def test_periodic_tail_reconstructs(self):
        e = rcf_expand(make_surd(0, 1, 1, 13))
        assert rcf_eval(e) == make_surd(0, 1, 1, 13)


class TestSlowdown:
    def test_spec_examples(self):
        assert farey_slowdown_check(F(2, 7)) == (3, True)
        assert farey_slowdown_check(F(2, 5)) == (2, True)
        assert farey_slowdown_check(F(1, 2)) == (2, True)

    def test_sampled(self):
        rng = random.Random(2)
        for _ in range(10_000):
            q = rng.randint(2, 60)
            p = rng.randint(1, q - 1)
            k, agrees = farey_slowdown_check(F(p, q))
            assert agrees and k == q // p
