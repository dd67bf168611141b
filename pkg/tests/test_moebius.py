import random
from fractions import Fraction as F

import pytest

from cfdyn.boundary import INFINITY, DomainError, make_surd
from cfdyn import moebius as mb


def random_word(rng, length=None):
    g = mb.identity()
    for _ in range(length or rng.randint(1, 8)):
        g = mb.compose(g, rng.choice((mb.SHIFT_ONE, mb.FLIP,
                                      mb.SHIFT_RIGHT, mb.SHIFT_LEFT)))
    return g


class TestBasics:
    def test_determinant_enforced(self):
        with pytest.raises(DomainError):
            mb.Moebius(2, 0, 0, 1)
        with pytest.raises(DomainError):
            mb.Moebius(1, 1, 1, 0)  # det -1

    def test_psl_normalisation(self):
        assert mb.Moebius(-1, 0, 0, -1) == mb.identity()
        assert mb.Moebius(0, 1, -1, 0) == mb.Moebius(0, -1, 1, 0)

    def test_compose_inverse_identity(self):
        rng = random.Random(0)
        for _ in range(200):
            g = random_word(rng)
            assert mb.compose(g, mb.inverse(g)) == mb.identity()
            assert mb.compose(mb.inverse(g), g) == mb.identity()


class TestApply:
    def test_spec_examples(self):
        assert mb.apply(mb.SHIFT_RIGHT, F(1, 3)) == F(7, 3)
        assert mb.apply(mb.FLIP, INFINITY) == 0
        assert mb.apply(mb.FLIP, make_surd(0, 1, 1, 2)) == make_surd(0, -1, 2, 2)

    def test_pole_and_infinity(self):
        g = mb.Moebius(1, 0, 2, 1)  # pole at -1/2
        assert mb.apply(g, F(-1, 2)) == INFINITY
        assert mb.apply(g, INFINITY) == F(1, 2)
        assert mb.apply(mb.SHIFT_ONE, INFINITY) == INFINITY

    def test_composition_action(self):
        rng = random.Random(1)
        for _ in range(10_000):
            g, h = random_word(rng, 4), random_word(rng, 4)
            x = F(rng.randint(-30, 30), rng.randint(1, 15))
            lhs = mb.apply(mb.compose(g, h), x)
            rhs = mb.apply(g, mb.apply(h, x))
            assert lhs == rhs


class TestDerivative:
    def test_spec_examples(self):
        assert mb.derivative_at(mb.identity(), F(17, 5)) == 1
        assert mb.derivative_at(mb.FLIP, F(2)) == F(1, 4)
        assert mb.derivative_at(mb.Moebius(1, 0, 2, 1), F(1)) == F(1, 9)

    def test_pole_error(self):
        with pytest.raises(DomainError):
            mb.derivative_at(mb.FLIP, F(0))


class TestMembership:
    def test_identity(self):
        assert mb.group_membership(mb.identity()) == \
            frozenset({mb.PSL2Z, mb.THETA, mb.GAMMA2})

    def test_shift_by_two(self):
        # z+2 is congruent to the identity mod 2, hence in Gamma(2) as well;
        # the narrower set {PSL2Z, Theta} floated elsewhere is not closed
        # under the definition M = I mod 2
        assert mb.group_membership(mb.SHIFT_RIGHT) == \
            frozenset({mb.PSL2Z, mb.THETA, mb.GAMMA2})

    def test_shift_by_one(self):
        assert mb.group_membership(mb.SHIFT_ONE) == frozenset({mb.PSL2Z})

    def test_flip(self):
        flags = mb.group_membership(mb.FLIP)
        assert mb.THETA in flags and mb.GAMMA2 not in flags

    def test_gamma2_subset_theta(self):
        rng = random.Random(2)
        for _ in range(2000):
            flags = mb.group_membership(random_word(rng))
            if mb.GAMMA2 in flags:
                assert mb.THETA in flags

    def test_theta_closed_under_composition_and_inverse(self):
        rng = random.Random(3)
        theta_words = []
        while len(theta_words) < 60:
            g = random_word(rng)
            if mb.THETA in mb.group_membership(g):
                theta_words.append(g)
        for _ in range(500):
            g, h = rng.choice(theta_words), rng.choice(theta_words)
            assert mb.THETA in mb.group_membership(mb.compose(g, h))
            assert mb.THETA in mb.group_membership(mb.inverse(g))

    def test_cell_generators_in_theta(self):
        for g in (mb.SHIFT_RIGHT, mb.SHIFT_LEFT, mb.FLIP):
            assert mb.THETA in mb.group_membership(g)
