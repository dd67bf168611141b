"""Cross-section dynamics on geodesic endpoint pairs.

The maps rho, sigma, rho_e, sigma_e, and the Lehner-square map act on
pairs (forward endpoint, backward endpoint) lying in one of five domains.
Each is realised by an integer Moebius transformation applied to both
endpoints, so orbits of exact points stay exact.

sigma's branch conditions are the corrected (swapped) version of the
printed display: translate on eps*x in (2, inf), invert on (1, 2].  The
printed assignment does not preserve the domain T; the corrected one does
and matches the digit action, which the test-suite verifies mechanically.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, NamedTuple, Optional

from .boundary import (
    BoundaryPoint,
    DomainError,
    bp_abs,
    bp_floor,
    bp_sign,
    is_integer_point,
)
from .cf import farey_natext_step, gauss_natext_step
from .ecf import even_farey_natext_step, even_gauss_natext_step, even_gauss_step

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)

S = "S"
T = "T"
S_E = "S_e"
T_E = "T_e"
S_L = "S_L"


class CuspError(DomainError):
    """The orbit runs into a cusp (a rational fixed boundary point)."""


def _validate(domain: str, fwd: BoundaryPoint, bwd: BoundaryPoint) -> None:
    eps = bp_sign(fwd)
    if eps == 0:
        raise DomainError("forward endpoint must be nonzero")
    m = bp_abs(fwd)
    if domain == S:
        ok = m > 1 and 0 < -eps * bwd < 1
    elif domain == T:
        ok = m > 1 and -eps * bwd > 0
    elif domain == S_E:
        ok = m > 1 and -1 < bwd < 1
    elif domain == T_E:
        ok = m > 1 and eps * bwd < 1
    elif domain == S_L:
        # closure at |fwd| = 2 admits branch-boundary images
        ok = 1 <= m <= 2 and eps * bwd <= 1 and fwd != bwd
    else:
        raise DomainError(f"unknown domain {domain!r}")
    if not ok:
        raise DomainError(f"({fwd}, {bwd}) is not in {domain}")


@dataclass(frozen=True)
class EndpointPair:
    """Endpoints (gamma_inf, gamma_-inf) of an oriented geodesic."""

    fwd: BoundaryPoint
    bwd: BoundaryPoint
    domain: str

    def __post_init__(self):
        _validate(self.domain, self.fwd, self.bwd)

    @property
    def eps(self) -> int:
        return bp_sign(self.fwd)

    def coords(self):
        return self.fwd, self.bwd

    def __str__(self):
        return f"({self.fwd}, {self.bwd})[{self.domain}]"


class SignedSquarePoint(NamedTuple):
    """Point of a unit square (or rectangle) with an orientation tag."""

    x: BoundaryPoint
    y: BoundaryPoint
    eps: int


# -- section maps --------------------------------------------------------

def rho_step(p: EndpointPair) -> EndpointPair:
    """Series' first-return map on S: (x,y) -> (1/(eps*n0-x), 1/(eps*n0-y)).

    eps*floor(x) is read as eps*floor(|x|), which is what the digit action
    of the theorem requires on the eps = -1 side.
    """
    if p.domain != S:
        raise DomainError("rho_step acts on S")
    eps = p.eps
    m = bp_abs(p.fwd)
    if is_integer_point(m):
        raise CuspError(f"geodesic into the cusp at {p.fwd}")
    n0 = bp_floor(m)
    return EndpointPair(1 / (eps * n0 - p.fwd), 1 / (eps * n0 - p.bwd), S)


def sigma_step(p: EndpointPair) -> EndpointPair:
    """Farey slowdown of rho on T (corrected branches, see module doc)."""
    if p.domain != T:
        raise DomainError("sigma_step acts on T")
    eps = p.eps
    m = bp_abs(p.fwd)
    if m > 2:
        return EndpointPair(p.fwd - eps, p.bwd - eps, T)
    if m == 2:
        raise CuspError("image reaches the cusp at |x| = 1")
    return EndpointPair(1 / (eps - p.fwd), 1 / (eps - p.bwd), T)


def rho_e_step(p: EndpointPair) -> EndpointPair:
    """Even first-return map on S_e with |x| in [2k-1, 2k+1)."""
    if p.domain != S_E:
        raise DomainError("rho_e_step acts on S_e")
    eps = p.eps
    m = bp_abs(p.fwd)
    if is_integer_point(m):
        raise CuspError(f"geodesic into the cusp at {p.fwd}")
    k = (bp_floor(m) + 1) // 2
    return EndpointPair(1 / (2 * k * eps - p.fwd), 1 / (2 * k * eps - p.bwd), S_E)


def sigma_e_step(p: EndpointPair) -> EndpointPair:
    """Even Farey slowdown on T_e: translate by 2 eps, or invert about 2 eps."""
    if p.domain != T_E:
        raise DomainError("sigma_e_step acts on T_e")
    eps = p.eps
    m = bp_abs(p.fwd)
    if m > 3:
        return EndpointPair(p.fwd - 2 * eps, p.bwd - 2 * eps, T_E)
    if m == 2 or m == 3:
        raise CuspError("image reaches a cusp")
    return EndpointPair(1 / (2 * eps - p.fwd), 1 / (2 * eps - p.bwd), T_E)


def sigma_L_step(p: EndpointPair) -> EndpointPair:
    """Lehner-square map on S_L."""
    if p.domain != S_L:
        raise DomainError("sigma_L_step acts on S_L")
    eps = p.eps
    m = bp_abs(p.fwd)
    if m < Fraction(3, 2):
        return EndpointPair(1 / (2 * eps - p.fwd), 1 / (2 * eps - p.bwd), S_L)
    if eps * p.bwd == 1:
        raise CuspError("backward endpoint at the cusp of the inversion branch")
    return EndpointPair(1 / (eps - p.fwd), 1 / (eps - p.bwd), S_L)


# -- Lehner maps and their duals -----------------------------------------

def lehner_step(x: BoundaryPoint) -> BoundaryPoint:
    """Slow continued-fraction map on [1,2], conjugate to Farey by x+1."""
    if not (1 <= x <= 2):
        raise DomainError(f"lehner_step needs x in [1,2], got {x}")
    if x < Fraction(3, 2):
        return -1 / (x - 2)
    return 1 / (x - 1)


def lehner_natext_step(x: BoundaryPoint, y: BoundaryPoint):
    """Natural extension of the Lehner map on [1,2] x [-1, inf)."""
    if not (1 <= x <= 2) or y < -1:
        raise DomainError("lehner_natext_step needs [1,2] x [-1,inf)")
    if x < Fraction(3, 2):
        return -1 / (x - 2), -1 / (2 + y)
    if y == -1:
        raise DomainError("pole of the second branch at y = -1")
    return 1 / (x - 1), 1 / (1 + y)


def lehner_dual_step(x: BoundaryPoint) -> BoundaryPoint:
    """Dual slow map on (1/2, 1], conjugate to the Lehner map by 1/x."""
    if not (HALF < x <= 1):
        raise DomainError(f"lehner_dual_step needs x in (1/2,1], got {x}")
    if x <= Fraction(2, 3):
        return 1 / x - 1
    return 2 - 1 / x


def lehner_dual_digit_step(x: BoundaryPoint):
    """Digit form of the dual slow map: (1,+1) on (1/2,2/3], (2,-1) above."""
    if not (HALF < x <= 1):
        raise DomainError(f"lehner_dual_digit_step needs x in (1/2,1], got {x}")
    if x <= Fraction(2, 3):
        return (1, 1), 1 / x - 1
    return (2, -1), 2 - 1 / x


def lehner_dual_natext_step(x: BoundaryPoint, y: BoundaryPoint):
    """Natural extension of the dual map on (1/2,1] x [-1, inf).

    The second coordinates are paired so that the square under 1/x against
    the Lehner extension commutes: branch (1/2,2/3] carries 1/(1+y) and
    branch (2/3,1] carries -1/(2+y).  The printed diagram lists them the
    other way around, which fails the commuting check.
    """
    if not (HALF < x <= 1) or y < -1:
        raise DomainError("lehner_dual_natext_step needs (1/2,1] x [-1,inf)")
    if x <= Fraction(2, 3):
        if y == -1:
            raise DomainError("pole at y = -1")
        return 1 / x - 1, 1 / (1 + y)
    return 2 - 1 / x, -1 / (2 + y)


# -- sign-tracking square maps --------------------------------------------

def tilde_gauss_step(q: SignedSquarePoint) -> SignedSquarePoint:
    """Gauss natural extension with the orientation tag; flips every step."""
    x, y = gauss_natext_step(q.x, q.y)
    if q.x == 0:
        return SignedSquarePoint(x, y, q.eps)
    return SignedSquarePoint(x, y, -q.eps)


def tilde_farey_step(q: SignedSquarePoint) -> SignedSquarePoint:
    """Farey natural extension with tag; flips on the inversion branch."""
    x, y = farey_natext_step(q.x, q.y)
    return SignedSquarePoint(x, y, -q.eps if q.x >= HALF else q.eps)


def tilde_even_gauss_step(q: SignedSquarePoint) -> SignedSquarePoint:
    """Even Gauss extension with tag update -eps1(x)*eps; x = 0 is fixed."""
    if q.x == 0:
        return q
    digit, _ = even_gauss_step(q.x)
    x, y = even_gauss_natext_step(q.x, q.y)
    return SignedSquarePoint(x, y, -digit.eps * q.eps)


def tilde_even_farey_step(q: SignedSquarePoint) -> SignedSquarePoint:
    """Even Farey extension with tag; flips exactly on x in [1/3, 1/2)."""
    x, y = even_farey_natext_step(q.x, q.y)
    flip = THIRD <= q.x < HALF
    return SignedSquarePoint(x, y, -q.eps if flip else q.eps)


# -- coordinate changes ----------------------------------------------------

def j_map(fwd: BoundaryPoint, bwd: BoundaryPoint) -> SignedSquarePoint:
    """J: S -> [0,1)^2 x {+-1}, (x,y) -> (eps/x, -eps*y, eps)."""
    eps = bp_sign(fwd)
    return SignedSquarePoint(eps / fwd, -eps * bwd, eps)


def j_inv(q: SignedSquarePoint):
    return q.eps / q.x, -q.eps * q.y


def farey_projection(fwd: BoundaryPoint, bwd: BoundaryPoint) -> SignedSquarePoint:
    """T -> [0,1)^2 x {+-1}, (x,y) -> (eps/x, 1/(1-eps*y), eps)."""
    eps = bp_sign(fwd)
    return SignedSquarePoint(eps / fwd, 1 / (1 - eps * bwd), eps)


def farey_projection_inv(q: SignedSquarePoint):
    # the printed vertical label (eps/x, eps(-1/y+1)) is this substitution
    return q.eps / q.x, q.eps * (1 - 1 / q.y)


def j_e_map(fwd: BoundaryPoint, bwd: BoundaryPoint) -> SignedSquarePoint:
    """J_e: S_e -> [0,1] x [-1,1] x {+-1}, sign(x)*(1/x, -y, 1)."""
    eps = bp_sign(fwd)
    return SignedSquarePoint(eps / fwd, -eps * bwd, eps)


j_e_inv = j_inv


def k_e_map(fwd: BoundaryPoint, bwd: BoundaryPoint) -> SignedSquarePoint:
    """K_e: T_e -> [0,1]^2 x {+-1}, (x,y) -> (eps/x, 1/(2-eps*y), eps)."""
    eps = bp_sign(fwd)
    return SignedSquarePoint(eps / fwd, 1 / (2 - eps * bwd), eps)


def k_e_inv(q: SignedSquarePoint):
    return q.eps / q.x, q.eps * (2 - 1 / q.y)


def box_top_map(fwd, bwd):
    """T -> S_L diagonal of the box: (1/x + eps, 1/y + eps)."""
    eps = bp_sign(fwd)
    return 1 / fwd + eps, 1 / bwd + eps


def box_top_inv(u, v):
    eps = bp_sign(u)
    return 1 / (u - eps), 1 / (v - eps)


def box_front_map(fwd, bwd):
    """S_L -> [1,2) x [-1,inf): (eps*x, -eps*y); forgets the sign."""
    eps = bp_sign(fwd)
    return eps * fwd, -eps * bwd


def box_front_inv(u, v, eps=1):
    return eps * u, -eps * v


def box_bottom_map(x, y):
    """[0,1)^2 -> [1,2) x [-1,inf): (x+1, 1/(1-y) - 2)."""
    return x + 1, 1 / (1 - y) - 2


def box_bottom_inv(u, v):
    return u - 1, 1 - 1 / (v + 2)


def box_lower_map(x, y):
    """[1,2) x [-1,inf) -> (1/2,1] x [-1,inf): (1/x, y)."""
    return 1 / x, y


def box_lower_inv(u, v):
    return 1 / u, v


@dataclass(frozen=True)
class Conjugacy:
    name: str
    forward: Callable
    inverse: Callable
    domain: str
    codomain: str


def conjugacy_table():
    """The nine named coordinate changes of the construction."""
    return [
        Conjugacy("J", j_map, j_inv, "S", "unit-square*sign"),
        Conjugacy("farey-projection", farey_projection, farey_projection_inv,
                  "T", "unit-square*sign"),
        Conjugacy("J_e", j_e_map, j_e_inv, "S_e", "square[-1,1]*sign"),
        Conjugacy("K_e", k_e_map, k_e_inv, "T_e", "unit-square*sign"),
        Conjugacy("box-top", box_top_map, box_top_inv, "T", "S_L"),
        Conjugacy("box-front", box_front_map, box_front_inv, "S_L",
                  "[1,2)x[-1,inf)"),
        Conjugacy("box-bottom", box_bottom_map, box_bottom_inv, "unit-square",
                  "[1,2)x[-1,inf)"),
        Conjugacy("box-lower", box_lower_map, box_lower_inv,
                  "[1,2)x[-1,inf)", "(1/2,1]x[-1,inf)"),
        Conjugacy("box-back-vertical", farey_projection, farey_projection_inv,
                  "T", "unit-square"),
    ]


# -- mechanical verification of commuting squares --------------------------

def _fmt(value):
    if isinstance(value, (tuple, SignedSquarePoint)):
        return tuple(_fmt(v) for v in value)
    if isinstance(value, EndpointPair):
        return (_fmt(value.fwd), _fmt(value.bwd))
    return str(value)


_SECTION_SQUARES = {
    # name: (section step, coordinate change, square step, domain)
    "j-rho": (rho_step, j_map, tilde_gauss_step, S),
    "farey-sigma": (sigma_step, farey_projection, tilde_farey_step, T),
    "je-rhoe": (rho_e_step, j_e_map, tilde_even_gauss_step, S_E),
    "ke-sigmae": (sigma_e_step, k_e_map, tilde_even_farey_step, T_E),
}


def _pair_map(fn):
    return lambda p: fn(*p)


_BOX_FACES = {
    # name: (left path, right path); each path maps the face input point
    "box-back": (
        lambda p: farey_projection(*sigma_step(p).coords()),
        lambda p: tilde_farey_step(farey_projection(*p.coords())),
    ),
    "box-top": (
        lambda p: box_top_map(*sigma_step(p).coords()),
        lambda p: sigma_L_step(_as_pair(box_top_map(*p.coords()), S_L)).coords(),
    ),
    "box-front": (
        lambda p: box_front_map(*sigma_L_step(p).coords()),
        lambda p: lehner_natext_step(*box_front_map(*p.coords())),
    ),
    "box-bottom": (
        lambda xy: box_bottom_map(*farey_natext_step(*xy)),
        lambda xy: lehner_natext_step(*box_bottom_map(*xy)),
    ),
    "box-left": (
        lambda p: box_bottom_map(*_drop_sign(farey_projection(*p.coords()))),
        lambda p: box_front_map(*box_top_map(*p.coords())),
    ),
    "box-right": (
        lambda p: box_bottom_map(
            *_drop_sign(farey_projection(*sigma_step(p).coords()))),
        lambda p: box_front_map(*box_top_map(*sigma_step(p).coords())),
    ),
    "box-lower": (
        lambda xy: box_lower_map(*lehner_natext_step(*xy)),
        lambda xy: lehner_dual_natext_step(*box_lower_map(*xy)),
    ),
}


def _drop_sign(q: SignedSquarePoint):
    return q.x, q.y


def _as_pair(coords, domain):
    return EndpointPair(coords[0], coords[1], domain)


def verify_conjugacy(name: str, point, steps: int = 1):
    """Walk both ways around the named commuting square, exactly.

    ``point`` is an EndpointPair for section squares and box faces over
    sections, or an (x, y) tuple for the purely planar faces.  Returns one
    report dict per step with both values and an equality flag.
    """
    reports = []
    if name in _SECTION_SQUARES:
        step, change, square, domain = _SECTION_SQUARES[name]
        p = point if isinstance(point, EndpointPair) else \
            EndpointPair(point[0], point[1], domain)
        for _ in range(steps):
            lhs = change(*step(p).coords())
            rhs = square(change(*p.coords()))
            reports.append({
                "id": name, "point": _fmt(p), "lhs": _fmt(lhs),
                "rhs": _fmt(rhs), "equal": lhs == rhs,
            })
            p = step(p)
        return reports
    if name in _BOX_FACES:
        left, right = _BOX_FACES[name]
        if name in ("box-bottom", "box-lower"):
            p = tuple(point)
            advance = farey_natext_step if name == "box-bottom" else \
                lehner_natext_step
        elif name == "box-front":
            p = point if isinstance(point, EndpointPair) else \
                EndpointPair(point[0], point[1], S_L)
            advance = sigma_L_step
        else:
            p = point if isinstance(point, EndpointPair) else \
                EndpointPair(point[0], point[1], T)
            advance = sigma_step
        for _ in range(steps):
            lhs, rhs = left(p), right(p)
            lv = tuple(lhs) if not isinstance(lhs, tuple) else lhs
            rv = tuple(rhs) if not isinstance(rhs, tuple) else rhs
            reports.append({
                "id": name, "point": _fmt(p), "lhs": _fmt(lv),
                "rhs": _fmt(rv), "equal": lv == rv,
            })
            p = advance(*p) if isinstance(p, tuple) else advance(p)
        return reports
    raise DomainError(f"unknown conjugacy id {name!r}")
