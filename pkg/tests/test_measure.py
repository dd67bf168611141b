import math
import random
from fractions import Fraction as F

import pytest

from cfdyn.boundary import DomainError
from cfdyn.measure import (
    EVEN_FAREY_EXT,
    EVEN_GAUSS_EXT,
    FAREY_EXT,
    GAUSS_EXT,
    LEHNER_EXT,
    MAPS,
    Branch,
    CutLineError,
    MapSpec,
    UnsupportedMapError,
    birkhoff_average,
    density_eval,
    gauss_total_mass,
    indicator,
    marginal_check,
    pushforward_residual,
)
from cfdyn import verify


class TestDensity:
    def test_spec_examples(self):
        assert density_eval(GAUSS_EXT, F(0), F(0)) == 1
        assert density_eval(EVEN_FAREY_EXT, F(1, 2), F(1, 2)) == 4
        assert density_eval(FAREY_EXT, F(1, 2), F(1, 2)) == F(16, 9)
        with pytest.raises(DomainError):
            density_eval(FAREY_EXT, F(1, 2), F(1))

    def test_positive_on_rectangles(self):
        rng = random.Random(0)
        for density_id, (ylo, yhi) in verify._Y_RANGES.items():
            for _ in range(200):
                x_lo = F(1) if density_id == LEHNER_EXT else F(0)
                x_hi = F(2) if density_id == LEHNER_EXT else F(1)
                x = verify.rand_fraction(rng, x_lo, x_hi)
                y = verify.rand_fraction(rng, ylo, yhi)
                assert density_eval(density_id, x, y) > 0


class TestResidual:
    def test_spec_examples(self):
        assert pushforward_residual(EVEN_FAREY_EXT, F(1, 4), F(1, 2)) == 0
        assert pushforward_residual(GAUSS_EXT, F(2, 5), F(1, 2)) == 0
        wrong = lambda u, v: 1 / (1 + u * v)
        assert pushforward_residual(GAUSS_EXT, F(2, 5), F(1, 2),
                                    density=wrong) != 0

    def test_cut_line_rejected(self):
        with pytest.raises(CutLineError):
            pushforward_residual(FAREY_EXT, F(1, 2), F(1, 3))
        with pytest.raises(CutLineError):
            pushforward_residual(EVEN_FAREY_EXT, F(1, 3), F(1, 5))

    def test_all_maps_all_branches(self):
        rng = random.Random(1)
        for map_id, spec in MAPS.items():
            ylo, yhi = verify._Y_RANGES[spec.density_id]
            for br in spec.branches[:spec.branch_count_hint]:
                for _ in range(150):
                    x = verify.rand_fraction(rng, br.lo, br.hi)
                    y = verify.rand_fraction(rng, ylo, yhi)
                    assert pushforward_residual(map_id, x, y) == 0

    def test_mutated_branch_detected(self):
        # flip one constant in the even Farey middle branch
        bad = MapSpec(EVEN_FAREY_EXT, (
            MAPS[EVEN_FAREY_EXT].branches[0],
            Branch("middle", F(1, 3), F(1, 2), (-2, 1, 1, 0), (0, 1, 1, 3)),
            MAPS[EVEN_FAREY_EXT].branches[2],
        ), 3)
        rng = random.Random(2)
        nonzero = 0
        for _ in range(100):
            x = verify.rand_fraction(rng, F(1, 3), F(1, 2))
            y = verify.rand_fraction(rng, F(0), F(1))
            if pushforward_residual(EVEN_FAREY_EXT, x, y, spec=bad) != 0:
                nonzero += 1
        assert nonzero == 100


class TestMarginals:
    def test_spec_examples(self):
        assert marginal_check(EVEN_FAREY_EXT, F(1, 2)) == (4, 4)
        assert marginal_check(GAUSS_EXT, F(0)) == (1, 1)
        assert marginal_check(EVEN_GAUSS_EXT, F(1, 2)) == (F(8, 3), F(8, 3))

    def test_sampled_equalities(self):
        rng = random.Random(3)
        for density_id in (GAUSS_EXT, FAREY_EXT, EVEN_GAUSS_EXT,
                           EVEN_FAREY_EXT):
            for _ in range(1000):
                x = verify.rand_fraction(rng, 0, 1)
                computed, closed = marginal_check(density_id, x)
                assert computed == closed


class TestMassAndBirkhoff:
    def test_total_mass(self):
        assert abs(gauss_total_mass() - math.log(2)) < 1e-12

    def test_birkhoff_smoke(self):
        value = birkhoff_average(GAUSS_EXT, indicator(0.0, 0.5),
                                 iterations=200_000)
        assert abs(value - math.log(1.5) / math.log(2)) < 0.02

    def test_constant_observable(self):
        assert birkhoff_average(GAUSS_EXT, lambda x, y: 1.0,
                                iterations=1000) == 1.0

    def test_infinite_measure_rejected(self):
        for map_id in (EVEN_GAUSS_EXT, FAREY_EXT, EVEN_FAREY_EXT, LEHNER_EXT):
            with pytest.raises(UnsupportedMapError):
                birkhoff_average(map_id, indicator(0.0, 0.5), iterations=10)


class TestSuite:
    def test_measure_suite(self):
        report = verify.run_measure(samples=600, seed=5,
                                    birkhoff_iterations=100_000)
        assert report.passed
        inv = [c for c in report.checks if c.name.startswith("invariance")]
        assert len(inv) == 5
        for check in inv:
            assert check.extra["max_abs_residual"] == "0"
            assert all(v >= 100 for v in check.extra["branch_coverage"].values())
