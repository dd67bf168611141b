"""Even continued fractions: digits (a, eps), the even Gauss map, the
even Farey (Romik) map, their natural extensions, and the extended even
expansion used for backward endpoints.

Branch boundaries follow the half-open intervals (1/(2k+1), 1/(2k)] for
digit (2k,+1) and (1/(2k), 1/(2k-1)] for (2k,-1); consequently 1/5 gets
the digit (6,-1) and x = 1 has the fixed expansion (2,-1) repeating.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Optional, Union

from .boundary import (
    BoundaryPoint,
    DomainError,
    Surd,
    bp_floor,
    bp_sign,
)
from .cf import STATE_CAP, ZERO

HALF = Fraction(1, 2)
THIRD = Fraction(1, 3)


class EcfDigit(NamedTuple):
    a: int    # even, >= 2
    eps: int  # +1 or -1


def even_gauss_step(x: BoundaryPoint):
    """One even-Gauss step on [0,1]: returns (EcfDigit or None, image)."""
    if not (0 <= x <= 1):
        raise DomainError(f"even_gauss_step needs x in [0,1], got {x}")
    if x == 0:
        return None, ZERO
    t = 1 / x
    m = bp_floor(t)
    if t == m:
        # boundary points 1/(2k) and 1/(2k-1) of the branch intervals
        if m % 2 == 0:
            return EcfDigit(m, 1), ZERO
        return EcfDigit(m + 1, -1), Fraction(1)
    if m % 2 == 0:
        return EcfDigit(m, 1), t - m
    return EcfDigit(m + 1, -1), (m + 1) - t


def even_gauss_natext_step(x: BoundaryPoint, y: BoundaryPoint):
    """Natural extension of the even Gauss map on [0,1] x [-1,1]."""
    if not (0 <= x <= 1 and -1 <= y <= 1):
        raise DomainError("even_gauss_natext_step needs [0,1] x [-1,1]")
    if x == 0:
        return ZERO, y
    digit, image = even_gauss_step(x)
    return image, digit.eps / (digit.a + y)


def even_farey_step(x: BoundaryPoint) -> BoundaryPoint:
    """Romik's three-branch map on [0,1]."""
    if not (0 <= x <= 1):
        raise DomainError(f"even_farey_step needs x in [0,1], got {x}")
    if x < THIRD:
        return x / (1 - 2 * x)
    if x < HALF:
        return (1 - 2 * x) / x
    return (2 * x - 1) / x


def even_farey_natext_step(x: BoundaryPoint, y: BoundaryPoint):
    """Natural extension of the even Farey map on [0,1]^2."""
    if not (0 <= x <= 1 and 0 <= y <= 1):
        raise DomainError("even_farey_natext_step needs (x,y) in [0,1]^2")
    if x < THIRD:
        return x / (1 - 2 * x), y / (1 + 2 * y)
    if x < HALF:
        return (1 - 2 * x) / x, 1 / (2 + y)
    return (2 * x - 1) / x, 1 / (2 - y)


@dataclass(frozen=True)
class EcfExpansion:
    """Even continued fraction of a real number.

    ``sign`` is the sign of the source value (0 for zero) and is carried
    separately from the digit data.  ``leading`` is the integer-part digit
    (a0, eps0) present when |x| > 1.  ``exact_tail`` is the remainder in
    [0,1] after the last emitted digit (None means the expansion
    terminated at zero); ``period`` is the repeating block for quadratic
    irrationals and for rationals that fall into the fixed point at 1.
    """

    sign: int
    leading: Optional[EcfDigit]
    digits: tuple
    exact_tail: Optional[BoundaryPoint] = None
    period: Optional[tuple] = None
    truncated: bool = False

    def __str__(self) -> str:
        def one(d: EcfDigit) -> str:
            return f"({d.a},{'+1' if d.eps > 0 else '-1'})"

        head = "" if self.leading is None else one(self.leading) + ";"
        out = ("-" if self.sign < 0 else "") + "[[" + head + \
            "".join(one(d) for d in self.digits) + "]]"
        if self.period:
            out += " (period " + "".join(one(d) for d in self.period) + ")"
        if self.truncated:
            out += " (truncated)"
        return out


def ecf_expand(x: BoundaryPoint, max_digits: int = 64) -> EcfExpansion:
    """Even expansion of any real boundary point.

    For |x| > 1 the leading digit is (2k,+1) on [2k, 2k+1) and (2k,-1) on
    [2k-1, 2k); the remainder in [0,1] is then expanded by the even Gauss
    map.  Rationals stop at 0 or cycle at 1; surds report their period.
    """
    sign = bp_sign(x)
    if sign == 0:
        return EcfExpansion(0, None, ())
    w = x if sign > 0 else -x
    leading = None
    if w > 1:
        n = bp_floor(w)
        if w == n:
            if n % 2 == 0:
                return EcfExpansion(sign, EcfDigit(n, 1), ())
            leading, w = EcfDigit(n + 1, -1), Fraction(1)
        elif n % 2 == 0:
            leading, w = EcfDigit(n, 1), w - n
        else:
            leading, w = EcfDigit(n + 1, -1), (n + 1) - w
    digits: list = []
    seen: dict = {}
    while True:
        if w == 0:
            return EcfExpansion(sign, leading, tuple(digits))
        if w in seen:
            start = seen[w]
            return EcfExpansion(sign, leading, tuple(digits[:start]),
                                exact_tail=w, period=tuple(digits[start:]))
        if len(seen) >= STATE_CAP or len(digits) >= max_digits:
            return EcfExpansion(sign, leading, tuple(digits),
                                exact_tail=w, truncated=True)
        seen[w] = len(digits)
        digit, w = even_gauss_step(w)
        digits.append(digit)


def ecf_eval(e: EcfExpansion) -> BoundaryPoint:
    """Exact evaluation of a finite even expansion."""
    if e.period and e.exact_tail is None:
        raise DomainError("cannot evaluate a periodic expansion without its tail")
    v: BoundaryPoint = e.exact_tail if e.exact_tail is not None else ZERO
    for a, eps in reversed(e.digits):
        v = 1 / (a + eps * v)
    if e.leading is not None:
        v = e.leading.a + e.leading.eps * v
    if e.sign == 0:
        return ZERO
    return v if e.sign > 0 else -v


class ExtDigit(NamedTuple):
    eps: int  # sign in front of the layer
    b: int    # even, >= 2


@dataclass(frozen=True)
class ExtEcfExpansion:
    """Extended even continued fraction eps0/(b0 + eps1/(b1 + ...)).

    This is the reindexing of the even expansion: the sign of y becomes
    eps0 and each digit sign shifts one slot earlier.  A truncated
    expansion carries ``pending = (eps, tail)``, the dangling sign and
    exact remainder of the innermost layer.
    """

    digits: tuple
    pending: Optional[tuple] = None
    period: Optional[tuple] = None
    truncated: bool = False

    def __str__(self) -> str:
        def one(d: ExtDigit) -> str:
            return f"({'+1' if d.eps > 0 else '-1'}/{d.b})"

        out = "<<" + "".join(one(d) for d in self.digits) + ">>"
        if self.period:
            out += " (period " + "".join(one(d) for d in self.period) + ")"
        if self.truncated:
            out += " (truncated)"
        return out


def ext_ecf_expand(y: BoundaryPoint, max_digits: int = 64) -> ExtEcfExpansion:
    """Extended even expansion of y in [-1,1]; y = 0 gives the empty word."""
    if not (-1 <= y <= 1):
        raise DomainError("ext_ecf_expand needs |y| <= 1")
    sign = bp_sign(y)
    if sign == 0:
        return ExtEcfExpansion(())
    inner = ecf_expand(y if sign > 0 else -y, max_digits=max_digits)
    # sign stream s_0 = sign(y), s_i = eps of even digit i; pair i is (s_i, a_{i+1})
    signs = [sign] + [d.eps for d in inner.digits]
    arrs = [d.a for d in inner.digits]
    pairs = tuple(ExtDigit(signs[i], arrs[i]) for i in range(len(arrs)))
    if inner.period:
        # one more preperiod pair bridges into the cycle, then the cycle
        # is the period digits' own (sign, next-a) pairs rotated
        per_signs = [d.eps for d in inner.period]
        per_arrs = [d.a for d in inner.period]
        bridge = ExtDigit(signs[-1], per_arrs[0])
        m = len(inner.period)
        cycle = tuple(
            ExtDigit(per_signs[i], per_arrs[(i + 1) % m]) for i in range(m)
        )
        return ExtEcfExpansion(pairs + (bridge,), period=cycle)
    if inner.exact_tail is not None:
        return ExtEcfExpansion(pairs, pending=(inner.digits[-1].eps if inner.digits
                                               else sign, inner.exact_tail),
                               truncated=inner.truncated)
    return ExtEcfExpansion(pairs)


def ext_ecf_eval(e: ExtEcfExpansion) -> BoundaryPoint:
    """Exact evaluation of a finite extended expansion."""
    if e.period:
        raise DomainError("cannot evaluate a periodic extended expansion")
    if e.pending is not None:
        eps, tail = e.pending
        v: BoundaryPoint = eps * tail
    else:
        v = ZERO
    for eps, b in reversed(e.digits):
        v = eps / (b + v)
    return v


def even_slowdown_check(x: Fraction):
    """Verify F_e^k(x) = T_e(x) with x in [1/(2k+1), 1/(2k-1))."""
    if not (0 < x < 1):
        raise DomainError("even_slowdown_check needs x in (0,1)")
    t = 1 / x
    m = bp_floor(t)
    k = m // 2 if t == m else (m + 1) // 2
    z = x
    for _ in range(k):
        z = even_farey_step(z)
    _, image = even_gauss_step(x)
    return k, z == image
