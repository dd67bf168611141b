"""Invariant densities and exact pointwise pushforward verification.

Each natural extension acts coordinatewise by Moebius maps, and all five
are bijective off their cut lines, so invariance of a density f reduces
to the exact pointwise identity f(T(p)) |J_x| |J_y| = f(p).  That check,
the symbolic marginals, and the total-mass and Birkhoff estimates for the
finite-measure system live here.

The density for the Lehner extension is 1/(x+y)^2 on [1,2) x [-1,inf),
obtained by pushing the Farey density through the bottom conjugacy
(x+1, 1/(1-y)-2); it is the geodesic measure in the S_L coordinates.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional

from .boundary import DomainError

GAUSS_EXT = "gauss-ext"
EVEN_GAUSS_EXT = "even-gauss-ext"
FAREY_EXT = "farey-ext"
EVEN_FAREY_EXT = "even-farey-ext"
LEHNER_EXT = "lehner-ext"

DENSITY_IDS = (GAUSS_EXT, EVEN_GAUSS_EXT, FAREY_EXT, EVEN_FAREY_EXT,
               LEHNER_EXT)


class CutLineError(DomainError):
    """The point sits on a branch boundary of the map."""


class UnsupportedMapError(DomainError):
    """The requested map has no finite invariant measure."""


def _in_range(v, lo, hi, lo_closed, hi_closed) -> bool:
    if lo is not None:
        if v < lo or (v == lo and not lo_closed):
            return False
    if hi is not None:
        if v > hi or (v == hi and not hi_closed):
            return False
    return True


@dataclass(frozen=True)
class DensitySpec:
    denominator: Callable  # (x, y) -> Fraction, density is 1/den^2
    x_range: tuple
    y_range: tuple


_DENSITIES = {
    GAUSS_EXT: DensitySpec(lambda x, y: 1 + x * y,
                           (Fraction(0), Fraction(1), True, False),
                           (Fraction(0), Fraction(1), True, False)),
    EVEN_GAUSS_EXT: DensitySpec(lambda x, y: 1 + x * y,
                                (Fraction(0), Fraction(1), True, True),
                                (Fraction(-1), Fraction(1), True, True)),
    FAREY_EXT: DensitySpec(lambda x, y: x + y - x * y,
                           (Fraction(0), Fraction(1), True, False),
                           (Fraction(0), Fraction(1), True, False)),
    EVEN_FAREY_EXT: DensitySpec(lambda x, y: x + y - 2 * x * y,
                                (Fraction(0), Fraction(1), True, True),
                                (Fraction(0), Fraction(1), True, True)),
    LEHNER_EXT: DensitySpec(lambda x, y: x + y,
                            (Fraction(1), Fraction(2), True, False),
                            (Fraction(-1), None, True, False)),
}


def density_eval(density_id: str, x: Fraction, y: Fraction) -> Fraction:
    """Exact value of the invariant density at a rational point."""
    spec = _DENSITIES[density_id]
    if not (_in_range(x, *spec.x_range) and _in_range(y, *spec.y_range)):
        raise DomainError(f"({x},{y}) outside the rectangle of {density_id}")
    den = spec.denominator(x, y)
    if den == 0:
        raise DomainError("density pole")
    return 1 / (den * den)


class Branch(NamedTuple):
    name: str
    lo: Fraction                # open interval (lo, hi) in x, cuts excluded
    hi: Optional[Fraction]
    x_coef: tuple               # (a, b, c, d) for x' = (a x + b)/(c x + d)
    y_coef: tuple


@dataclass(frozen=True)
class MapSpec:
    density_id: str
    branches: tuple
    branch_count_hint: int      # branches listed explicitly for coverage


def _gauss_branches(kmax: int = 64):
    out = []
    for k in range(1, kmax + 1):
        out.append(Branch(f"k={k}", Fraction(1, k + 1), Fraction(1, k),
                          (-k, 1, 1, 0), (0, 1, 1, k)))
    return tuple(out)


def _even_gauss_branches(kmax: int = 64):
    out = []
    for k in range(1, kmax + 1):
        out.append(Branch(f"k={k}+", Fraction(1, 2 * k + 1), Fraction(1, 2 * k),
                          (-2 * k, 1, 1, 0), (0, 1, 1, 2 * k)))
        out.append(Branch(f"k={k}-", Fraction(1, 2 * k), Fraction(1, 2 * k - 1),
                          (2 * k, -1, 1, 0), (0, -1, 1, 2 * k)))
    return tuple(out)


MAPS = {
    GAUSS_EXT: MapSpec(GAUSS_EXT, _gauss_branches(), 8),
    EVEN_GAUSS_EXT: MapSpec(EVEN_GAUSS_EXT, _even_gauss_branches(), 8),
    FAREY_EXT: MapSpec(FAREY_EXT, (
        Branch("left", Fraction(0), Fraction(1, 2), (1, 0, -1, 1), (1, 0, 1, 1)),
        Branch("right", Fraction(1, 2), Fraction(1), (-1, 1, 1, 0), (0, 1, 1, 1)),
    ), 2),
    EVEN_FAREY_EXT: MapSpec(EVEN_FAREY_EXT, (
        Branch("left", Fraction(0), Fraction(1, 3), (1, 0, -2, 1), (1, 0, 2, 1)),
        Branch("middle", Fraction(1, 3), Fraction(1, 2), (-2, 1, 1, 0), (0, 1, 1, 2)),
        Branch("right", Fraction(1, 2), Fraction(1), (2, -1, 1, 0), (0, 1, -1, 2)),
    ), 3),
    LEHNER_EXT: MapSpec(LEHNER_EXT, (
        Branch("left", Fraction(1), Fraction(3, 2), (0, -1, 1, -2), (0, -1, 1, 2)),
        Branch("right", Fraction(3, 2), Fraction(2), (0, 1, 1, -1), (0, 1, 1, 1)),
    ), 2),
}


def _moebius_value(coef, t: Fraction) -> Fraction:
    a, b, c, d = coef
    return (a * t + b) / (c * t + d)


def _moebius_abs_derivative(coef, t: Fraction) -> Fraction:
    a, b, c, d = coef
    det = a * d - b * c
    return abs(Fraction(det, 1)) / ((c * t + d) ** 2)


def find_branch(map_id: str, x: Fraction, spec: Optional[MapSpec] = None) -> Branch:
    spec = spec or MAPS[map_id]
    for br in spec.branches:
        if br.lo < x and (br.hi is None or x < br.hi):
            return br
    raise CutLineError(f"{x} is on a cut line (or outside) of {map_id}")


def pushforward_residual(map_id: str, x: Fraction, y: Fraction,
                         spec: Optional[MapSpec] = None,
                         density: Optional[Callable] = None) -> Fraction:
    """density(T(p)) |J_x| |J_y| - density(p), exactly; zero iff invariant
    at p.  ``spec`` and ``density`` exist for negative-control overrides."""
    spec = spec or MAPS[map_id]
    br = find_branch(map_id, x, spec)
    x2 = _moebius_value(br.x_coef, x)
    y2 = _moebius_value(br.y_coef, y)
    jx = _moebius_abs_derivative(br.x_coef, x)
    jy = _moebius_abs_derivative(br.y_coef, y)
    f = density or (lambda u, v: density_eval(spec.density_id, u, v))
    return f(x2, y2) * jx * jy - f(x, y)


_MARGINALS = {
    GAUSS_EXT: lambda x: 1 / (1 + x),
    FAREY_EXT: lambda x: 1 / x,
    EVEN_GAUSS_EXT: lambda x: 2 / (1 - x * x),
    EVEN_FAREY_EXT: lambda x: 1 / (x * (1 - x)),
}


def _integrate_reciprocal_square(a: Fraction, b: Fraction,
                                 lo: Fraction, hi: Fraction) -> Fraction:
    """Exact integral of dy/(a + b y)^2 over [lo, hi]."""
    if b == 0:
        return (hi - lo) / (a * a)
    return (1 / (a + b * lo) - 1 / (a + b * hi)) / b


def marginal_check(density_id: str, x: Fraction):
    """Return (symbolic y-integral, closed form) of the density at x."""
    if density_id == GAUSS_EXT:
        computed = _integrate_reciprocal_square(Fraction(1), x,
                                                Fraction(0), Fraction(1))
    elif density_id == FAREY_EXT:
        computed = _integrate_reciprocal_square(x, 1 - x,
                                                Fraction(0), Fraction(1))
    elif density_id == EVEN_GAUSS_EXT:
        computed = _integrate_reciprocal_square(Fraction(1), x,
                                                Fraction(-1), Fraction(1))
    elif density_id == EVEN_FAREY_EXT:
        computed = _integrate_reciprocal_square(x, 1 - 2 * x,
                                                Fraction(0), Fraction(1))
    else:
        raise DomainError(f"no marginal closed form for {density_id}")
    return computed, _MARGINALS[density_id](x)


def gauss_total_mass(panels: int = 2000) -> float:
    """Total mass of the Gauss-extension measure by composite Simpson on
    the exact marginal 1/(1+x); converges to log 2 far below 1e-12."""
    h = Fraction(1, panels)
    total = Fraction(0)
    for i in range(panels):
        a = i * h
        mid = a + h / 2
        b = a + h
        fa, fm, fb = (marginal_check(GAUSS_EXT, t)[0] for t in (a, mid, b))
        total += h / 6 * (fa + 4 * fm + fb)
    return float(total)


def indicator(x_lo: float, x_hi: float) -> Callable:
    return lambda x, y: 1.0 if x_lo <= x < x_hi else 0.0


def birkhoff_average(map_id: str, observable: Callable,
                     seed_point=(0.41421356237309515, 0.5),
                     iterations: int = 1_000_000) -> float:
    """Floating-point time average along a Gauss-extension orbit.

    Only the Gauss extension carries a finite invariant measure; the other
    extensions are sigma-finite infinite and are rejected.
    """
    if map_id != GAUSS_EXT:
        raise UnsupportedMapError(
            f"{map_id} has an infinite invariant measure; time averages "
            "require the finite-measure system")
    x, y = float(seed_point[0]), float(seed_point[1])
    total = 0.0
    for _ in range(iterations):
        total += observable(x, y)
        if x <= 1e-15:
            x, y = 0.0, y
            continue
        t = 1.0 / x
        k = math.floor(t)
        x, y = t - k, 1.0 / (k + y)
    return total / iterations
