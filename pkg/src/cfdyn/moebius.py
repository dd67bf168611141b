"""Integer Moebius transformations of the boundary circle.

A ``Moebius`` value is a determinant-one integer matrix [[a,b],[c,d]] up
to sign, stored with the canonical PSL representative (c > 0, or c = 0
and d > 0).  Action on boundary points is projective: infinity maps to
a/c and the pole -d/c maps to infinity.
"""
from __future__ import annotations

from fractions import Fraction

from .boundary import (
    INFINITY,
    BoundaryPoint,
    DomainError,
    Surd,
    _Infinity,
    make_surd,
)


class Moebius:
    __slots__ = ("a", "b", "c", "d")

    def __init__(self, a: int, b: int, c: int, d: int):
        if a * d - b * c != 1:
            raise DomainError("matrix must have determinant 1")
        if c < 0 or (c == 0 and d < 0):
            a, b, c, d = -a, -b, -c, -d
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "c", c)
        object.__setattr__(self, "d", d)

    def __setattr__(self, *args):
        raise AttributeError("Moebius instances are immutable")

    def __eq__(self, other):
        return isinstance(other, Moebius) and \
            (self.a, self.b, self.c, self.d) == (other.a, other.b, other.c, other.d)

    def __hash__(self):
        return hash((self.a, self.b, self.c, self.d))

    def __repr__(self):
        return f"[[{self.a},{self.b}],[{self.c},{self.d}]]"

    def __call__(self, x: BoundaryPoint) -> BoundaryPoint:
        return apply(self, x)


def identity() -> Moebius:
    return Moebius(1, 0, 0, 1)


def compose(m: Moebius, n: Moebius) -> Moebius:
    """Matrix product m*n, i.e. apply n first."""
    return Moebius(
        m.a * n.a + m.b * n.c,
        m.a * n.b + m.b * n.d,
        m.c * n.a + m.d * n.c,
        m.c * n.b + m.d * n.d,
    )


def inverse(m: Moebius) -> Moebius:
    return Moebius(m.d, -m.b, -m.c, m.a)


def apply(m: Moebius, x: BoundaryPoint) -> BoundaryPoint:
    """Projective action (a*x+b)/(c*x+d) on a boundary point."""
    if isinstance(x, _Infinity):
        if m.c == 0:
            return INFINITY
        return Fraction(m.a, m.c)
    if isinstance(x, Surd):
        # numerator (N + a*q*sqrt(d))/r over denominator (D + c*q*sqrt(d))/r,
        # rationalised; the sqrt coefficient of the result is q*r*det = q*r
        p, q, r, d = x.p, x.q, x.r, x.d
        big_n = m.a * p + m.b * r
        big_d = m.c * p + m.d * r
        new_p = big_n * big_d - m.a * m.c * q * q * d
        new_q = q * r
        new_r = big_d * big_d - m.c * m.c * q * q * d
        return make_surd(new_p, new_q, new_r, d)
    den = m.c * x + m.d
    if den == 0:
        return INFINITY
    return (m.a * x + m.b) / den


def derivative_at(m: Moebius, x: Fraction) -> Fraction:
    """Exact derivative 1/(c*x+d)^2 of the action at a rational point."""
    den = m.c * x + m.d
    if den == 0:
        raise DomainError("derivative at the pole of the transformation")
    return 1 / (den * den)


PSL2Z = "PSL2Z"
THETA = "Theta"
GAMMA2 = "Gamma2"


def group_membership(m: Moebius) -> frozenset:
    """Membership flags among PSL(2,Z), the theta group, and Gamma(2).

    Theta is the parity pattern a=d, b=c, a!=b (mod 2), equivalently
    M = I or [[0,1],[1,0]] mod 2.  Gamma(2) is M = I mod 2; it is always
    a subset of Theta.
    """
    flags = {PSL2Z}
    pa, pb, pc, pd = m.a % 2, m.b % 2, m.c % 2, m.d % 2
    if pa == pd and pb == pc and pa != pb:
        flags.add(THETA)
        if pb == 0:
            flags.add(GAMMA2)
    return frozenset(flags)


# Cell-adjacency generators for the even tessellation walk.
SHIFT_RIGHT = Moebius(1, 2, 0, 1)    # z -> z + 2
SHIFT_LEFT = Moebius(1, -2, 0, 1)    # z -> z - 2
FLIP = Moebius(0, -1, 1, 0)          # z -> -1/z
SHIFT_ONE = Moebius(1, 1, 0, 1)      # z -> z + 1
