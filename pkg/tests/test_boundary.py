import random
from fractions import Fraction as F

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cfdyn.boundary import (
    INFINITY,
    DomainError,
    Surd,
    bp_compare,
    bp_floor,
    bp_sign,
    bp_to_float,
    make_surd,
    parse_boundary_point,
    rational_arith,
    render_boundary_point,
)
from cfdyn import moebius as mb

mpmath.mp.dps = 80


def surd_mp(s):
    return (mpmath.mpf(s.p) + mpmath.mpf(s.q) * mpmath.sqrt(s.d)) / s.r


class TestRationalArith:
    def test_spec_examples(self):
        assert rational_arith(F(2, 5), F(1, 10), "+") == F(1, 2)
        assert rational_arith(F(7, 3), F(0), "*") == 0
        assert rational_arith(F(1, 3), F(1, 3), "/") == 1

    def test_division_by_zero(self):
        with pytest.raises(ZeroDivisionError):
            rational_arith(F(1), F(0), "/")

    def test_field_axioms_sampled(self):
        rng = random.Random(0)
        for _ in range(10_000):
            a, b, c = (F(rng.randint(-50, 50), rng.randint(1, 50))
                       for _ in range(3))
            assert (a + b) + c == a + (b + c)
            assert a * (b + c) == a * b + a * c
            assert a + b == b + a and a * b == b * a


class TestSurd:
    def test_floor_examples(self):
        assert bp_floor(make_surd(0, 1, 1, 2)) == 1
        assert bp_floor(make_surd(1, 1, 2, 2)) == 1
        assert bp_floor(make_surd(0, -1, 1, 2)) == -2

    def test_normalisation(self):
        # sqrt(8)/2 normalises to sqrt(2)
        assert make_surd(0, 1, 2, 8) == make_surd(0, 1, 1, 2)
        # perfect-square d demotes to a rational
        assert make_surd(1, 2, 3, 9) == F(7, 3)
        # zero sqrt coefficient demotes as well
        assert make_surd(3, 0, 6, 5) == F(1, 2)

    def test_sign_matches_float(self):
        rng = random.Random(1)
        for _ in range(500):
            s = make_surd(rng.randint(-20, 20), rng.randint(1, 9),
                          rng.randint(1, 9), rng.choice((2, 3, 5, 7)))
            if isinstance(s, Surd):
                assert s.sign() == mpmath.sign(surd_mp(s))

    def test_floor_bracket_property(self):
        rng = random.Random(2)
        for _ in range(500):
            q = rng.choice((-3, -2, -1, 1, 2, 3))
            s = make_surd(rng.randint(-30, 30), q, rng.randint(1, 9),
                          rng.choice((2, 3, 5, 6, 7, 10)))
            n = bp_floor(s)
            assert n <= s < n + 1

    def test_floor_idempotent_and_monotone(self):
        rng = random.Random(3)
        for k in range(-20, 20):
            assert bp_floor(F(k)) == k
        chain = sorted(
            (make_surd(rng.randint(-9, 9), rng.choice((-2, -1, 1, 2)),
                       rng.randint(1, 5), 2) for _ in range(40)),
            key=bp_to_float)
        floors = [bp_floor(s) for s in chain]
        assert floors == sorted(floors)

    def test_arithmetic_matches_mpmath(self):
        rng = random.Random(4)
        for _ in range(300):
            s = make_surd(rng.randint(-9, 9), rng.choice((-2, -1, 1, 2)),
                          rng.randint(1, 5), rng.choice((2, 3, 5)))
            t = F(rng.randint(-9, 9), rng.randint(1, 9))
            for value, expected in (
                (s + t, surd_mp(s) + mpmath.mpf(t.numerator) / t.denominator),
                (s * t, surd_mp(s) * mpmath.mpf(t.numerator) / t.denominator),
                (1 / s, 1 / surd_mp(s)),
            ):
                got = surd_mp(value) if isinstance(value, Surd) else \
                    mpmath.mpf(value.numerator) / value.denominator
                assert mpmath.almosteq(got, expected, rel_eps=mpmath.mpf(10) ** -60)

    def test_mixed_d_arithmetic_rejected(self):
        with pytest.raises(DomainError):
            make_surd(0, 1, 1, 2) + make_surd(0, 1, 1, 3)


class TestCompare:
    def test_spec_examples(self):
        assert bp_compare(F(2, 3), F(3, 5)) > 0
        assert bp_compare(make_surd(0, 1, 1, 2), F(3, 2)) < 0
        assert bp_compare(F(1, 7), F(1, 7)) == 0

    def test_infinity_convention(self):
        assert bp_compare(INFINITY, F(10**9)) > 0
        assert bp_compare(make_surd(0, 1, 1, 2), INFINITY) < 0
        assert bp_compare(INFINITY, INFINITY) == 0

    def test_total_order_sampled(self):
        rng = random.Random(5)
        points = [F(rng.randint(-40, 40), rng.randint(1, 20)) for _ in range(30)]
        points += [make_surd(rng.randint(-9, 9), rng.choice((-1, 1)),
                             rng.randint(1, 5), rng.choice((2, 3, 5, 7)))
                   for _ in range(30)]
        ordered = sorted(points, key=bp_to_float)
        for a, b in zip(ordered, ordered[1:]):
            assert bp_compare(a, b) <= 0

    def test_mixed_d_comparison(self):
        assert bp_compare(make_surd(0, 1, 1, 2), make_surd(0, 1, 1, 3)) < 0
        # square parts of d are pulled out, so these are structurally equal
        assert bp_compare(make_surd(0, 1, 10**5, 2 * 10**10),
                          make_surd(0, 1, 1, 2)) == 0
        # near-equal mixed-d values still separate exactly:
        # sqrt(3)*(396/485) is within 4e-6 of sqrt(2)
        a = make_surd(0, 1, 1, 2)
        b = make_surd(0, 396, 485, 3)
        assert bp_compare(a, b) == \
            (1 if 2 * 485**2 > 3 * 396**2 else -1)


class TestParseRender:
    @given(st.integers(-10**6, 10**6), st.integers(1, 10**6))
    @settings(max_examples=200, deadline=None)
    def test_rational_roundtrip(self, p, q):
        x = F(p, q)
        assert parse_boundary_point(render_boundary_point(x)) == x

    @given(st.integers(-50, 50), st.integers(-20, 20).filter(lambda q: q != 0),
           st.integers(1, 20), st.sampled_from((2, 3, 5, 6, 7, 11)))
    @settings(max_examples=200, deadline=None)
    def test_surd_roundtrip(self, p, q, r, d):
        x = make_surd(p, q, r, d)
        assert parse_boundary_point(render_boundary_point(x)) == x

    def test_notations(self):
        assert parse_boundary_point("sqrt(2)") == make_surd(0, 1, 1, 2)
        assert parse_boundary_point("-sqrt(2)") == make_surd(0, -1, 1, 2)
        assert parse_boundary_point("(1+sqrt(5))/2") == make_surd(1, 1, 2, 5)
        assert parse_boundary_point("0.375") == F(3, 8)
        assert parse_boundary_point("inf") == INFINITY
        assert parse_boundary_point("-7/3") == F(-7, 3)

    def test_parse_errors(self):
        for bad in ("sqrt(-2)", "1//2", "nonsense", "2 sqrt(3)"):
            with pytest.raises(DomainError):
                parse_boundary_point(bad)


class TestMoebiusOnSurds:
    def test_closure_same_d(self):
        rng = random.Random(6)
        gens = [mb.SHIFT_RIGHT, mb.SHIFT_LEFT, mb.FLIP, mb.SHIFT_ONE]
        for _ in range(300):
            g = mb.identity()
            for _ in range(rng.randint(1, 6)):
                g = mb.compose(g, rng.choice(gens))
            s = make_surd(rng.randint(-9, 9), rng.choice((-2, -1, 1, 2)),
                          rng.randint(1, 5), rng.choice((2, 3, 5)))
            image = mb.apply(g, s)
            assert isinstance(image, Surd) and image.d == s.d

    def test_high_precision_agreement(self):
        # apply(g, s) at 60 digits equals float(g)(float(s)) within 1e-40
        rng = random.Random(7)
        gens = [mb.SHIFT_RIGHT, mb.SHIFT_LEFT, mb.FLIP, mb.SHIFT_ONE]
        for _ in range(200):
            g = mb.identity()
            for _ in range(rng.randint(1, 8)):
                g = mb.compose(g, rng.choice(gens))
            s = make_surd(rng.randint(-9, 9), rng.choice((-2, -1, 1, 2)),
                          rng.randint(1, 5), rng.choice((2, 3, 5, 7)))
            num = g.a * surd_mp(s) + g.b
            den = g.c * surd_mp(s) + g.d
            if mpmath.fabs(den) < mpmath.mpf(10) ** -20:
                continue
            expected = num / den
            got = surd_mp(mb.apply(g, s))
            assert mpmath.fabs(got - expected) <= \
                mpmath.fabs(expected) * mpmath.mpf(10) ** -40
