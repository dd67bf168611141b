"""Regular continued fractions: Gauss and Farey maps and their extensions.

The Farey map is treated on the closed interval [0,1] with F(1/2) = 1 and
F(1) = 0; the closure makes the slowdown identity F^k = G hold at branch
boundaries.  Rational expansions terminate with last digit >= 2, which is
the canonical choice between the two expansions of a rational.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .boundary import (
    BoundaryPoint,
    DomainError,
    Surd,
    bp_floor,
)

ZERO = Fraction(0)
ONE = Fraction(1)

STATE_CAP = 10_000  # period-detection cap for quadratic irrationals


def gauss_step(x: BoundaryPoint):
    """One Gauss-map step on [0,1): returns (digit or None, image)."""
    if not (0 <= x < 1):
        raise DomainError(f"gauss_step needs x in [0,1), got {x}")
    if x == 0:
        return None, ZERO
    t = 1 / x
    k = bp_floor(t)
    return k, t - k


def gauss_natext_step(x: BoundaryPoint, y: BoundaryPoint):
    """Natural extension of the Gauss map on [0,1)^2 (x nonzero)."""
    if not (0 <= x < 1 and 0 <= y < 1):
        raise DomainError("gauss_natext_step needs (x,y) in [0,1)^2")
    if x == 0:
        return ZERO, y
    k, image = gauss_step(x)
    return image, 1 / (k + y)


def farey_step(x: BoundaryPoint) -> BoundaryPoint:
    """Farey map on [0,1]: x/(1-x) below 1/2, (1-x)/x from 1/2 up."""
    if not (0 <= x <= 1):
        raise DomainError(f"farey_step needs x in [0,1], got {x}")
    if x < Fraction(1, 2):
        return x / (1 - x)
    return (1 - x) / x


def farey_natext_step(x: BoundaryPoint, y: BoundaryPoint):
    """Natural extension of the Farey map; output may touch the boundary."""
    if not (0 <= x <= 1 and 0 <= y <= 1):
        raise DomainError("farey_natext_step needs (x,y) in [0,1]^2")
    if x < Fraction(1, 2):
        return x / (1 - x), y / (1 + y)
    return (1 - x) / x, 1 / (1 + y)


@dataclass(frozen=True)
class RcfExpansion:
    """Regular continued fraction [leading; digits...] with optional tail.

    ``exact_tail`` is the remainder after the last emitted digit, so that
    evaluating digits with the tail reproduces the source value exactly.
    A ``None`` tail means the expansion terminated (tail zero).  For
    quadratic irrationals ``period`` holds the repeating digit block and
    ``exact_tail`` the state at the start of the cycle.
    """

    leading: int
    digits: tuple
    exact_tail: Optional[BoundaryPoint] = None
    period: Optional[tuple] = None
    truncated: bool = False

    def __str__(self) -> str:
        body = ",".join(str(n) for n in self.digits)
        out = f"[{self.leading};{body}]"
        if self.period:
            out += " (period " + ",".join(str(n) for n in self.period) + ")"
        if self.truncated:
            out += " (truncated)"
        return out


def rcf_expand(x: BoundaryPoint, max_digits: int = 64) -> RcfExpansion:
    """Expand x >= 0; terminates for rationals, finds periods for surds."""
    if x < 0:
        raise DomainError("rcf_expand needs x >= 0")
    leading = bp_floor(x)
    f = x - leading
    digits: list = []
    seen: dict = {}
    while True:
        if f == 0:
            return RcfExpansion(leading, tuple(digits))
        if isinstance(f, Surd):
            if f in seen:
                start = seen[f]
                return RcfExpansion(
                    leading, tuple(digits[:start]), exact_tail=f,
                    period=tuple(digits[start:]),
                )
            if len(seen) >= STATE_CAP:
                return RcfExpansion(leading, tuple(digits), exact_tail=f,
                                    truncated=True)
            seen[f] = len(digits)
        if len(digits) >= max_digits:
            return RcfExpansion(leading, tuple(digits), exact_tail=f,
                                truncated=True)
        k, f = gauss_step(f)
        digits.append(k)


def rcf_eval(e: RcfExpansion) -> BoundaryPoint:
    """Evaluate a finite expansion exactly (inverse of rcf_expand)."""
    if e.period and e.exact_tail is None:
        raise DomainError("cannot evaluate a periodic expansion without its tail")
    v: BoundaryPoint = e.exact_tail if e.exact_tail is not None else ZERO
    for n in reversed(e.digits):
        v = 1 / (n + v)
    return e.leading + v


def farey_slowdown_check(x: Fraction):
    """Verify F^k(x) = G(x) with k = floor(1/x) on a rational in (0,1)."""
    if not (0 < x < 1):
        raise DomainError("farey_slowdown_check needs x in (0,1)")
    k = bp_floor(1 / x)
    z = x
    for _ in range(k):
        z = farey_step(z)
    _, image = gauss_step(x)
    return k, z == image
