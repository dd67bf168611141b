"""Exact arithmetic on the boundary of the upper half plane.

Boundary points come in three flavours: rationals (plain
``fractions.Fraction``), real quadratic surds (``Surd``), and the single
point at infinity (``INFINITY``).  Every comparison, sign, and floor is
decided with integer arithmetic only, so identities checked elsewhere in
the package are exact rather than approximate.

Surds are kept in the normal form (p + q*sqrt(d))/r with d squarefree,
d > 1, r > 0 and gcd(p, q, r) = 1.  Equality is structural in that form,
which makes orbit states hashable for period detection.
"""
from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Optional, Union


class DomainError(ValueError):
    """Input lies outside the domain of the requested operation."""


class _Infinity:
    """The point at infinity on the boundary circle (1/0)."""

    __slots__ = ()

    def __repr__(self) -> str:
        return "inf"

    def __eq__(self, other) -> bool:
        return isinstance(other, _Infinity)

    def __ne__(self, other) -> bool:
        return not isinstance(other, _Infinity)

    def __hash__(self) -> int:
        return hash("cfdyn-boundary-infinity")


INFINITY = _Infinity()

BoundaryPoint = Union[Fraction, "Surd", _Infinity]

_COMPARE_BIT_CAP = 1 << 14


def _square_part(d: int) -> tuple[int, int]:
    """Return (s, d0) with d = s*s*d0 and d0 squarefree."""
    s, d0, i = 1, d, 2
    while i * i <= d0:
        while d0 % (i * i) == 0:
            d0 //= i * i
            s *= i
        i += 1
    return s, d0


def _as_fraction(x) -> Optional[Fraction]:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    return None


def make_surd(p: int, q: int, r: int, d: int) -> BoundaryPoint:
    """Build (p + q*sqrt(d))/r in normal form; demotes to Fraction when possible."""
    if r == 0:
        raise ZeroDivisionError("surd with zero denominator")
    if d <= 0:
        raise DomainError("sqrt argument must be positive")
    s, d0 = _square_part(d)
    q, d = q * s, d0
    if d == 1:
        return Fraction(p + q, r)
    if q == 0:
        return Fraction(p, r)
    if r < 0:
        p, q, r = -p, -q, -r
    g = math.gcd(math.gcd(abs(p), abs(q)), r)
    if g > 1:
        p, q, r = p // g, q // g, r // g
    surd = object.__new__(Surd)
    object.__setattr__(surd, "p", p)
    object.__setattr__(surd, "q", q)
    object.__setattr__(surd, "r", r)
    object.__setattr__(surd, "d", d)
    return surd


class Surd:
    """Real quadratic surd (p + q*sqrt(d))/r in normal form.

    Instances are immutable; construct through :func:`make_surd`.
    Arithmetic with rationals and with surds over the same d stays in the
    field Q(sqrt(d)).  Mixed-d arithmetic is out of scope, but mixed-d
    comparison is supported through interval refinement (two normalised
    surds with different d are never equal, so refinement terminates).
    """

    __slots__ = ("p", "q", "r", "d")

    def __init__(self, *args, **kwargs):
        raise TypeError("use make_surd() to construct surds")

    def __setattr__(self, *args):
        raise AttributeError("Surd instances are immutable")

    # -- basic queries -------------------------------------------------

    def sign(self) -> int:
        p, q = self.p, self.q
        if q > 0:
            if p >= 0:
                return 1
            return 1 if q * q * self.d > p * p else -1
        if p <= 0:
            return -1
        return 1 if p * p > q * q * self.d else -1

    def floor(self) -> int:
        # initial guess from floor(q*sqrt(d)), then exact correction
        t = self.q * self.q * self.d
        root = math.isqrt(t)
        fq = root if self.q > 0 else -root - 1
        n = (self.p + fq) // self.r
        while self.__lt__(n):
            n -= 1
        while not self.__lt__(n + 1):
            n += 1
        return n

    def conjugate(self) -> "Surd":
        return make_surd(self.p, -self.q, self.r, self.d)

    def approx(self, bits: int = 53) -> tuple[Fraction, Fraction]:
        """Enclosing rational interval of width at most 2^(1-bits)-ish."""
        scale = 1 << bits
        t = self.q * self.q * self.d * scale * scale
        root = math.isqrt(t)
        if self.q > 0:
            lo_s, hi_s = root, root + 1
        else:
            lo_s, hi_s = -root - 1, -root
        lo = Fraction(self.p * scale + lo_s, self.r * scale)
        hi = Fraction(self.p * scale + hi_s, self.r * scale)
        return lo, hi

    # -- arithmetic in Q(sqrt(d)) --------------------------------------

    def __neg__(self):
        return make_surd(-self.p, -self.q, self.r, self.d)

    def _add_frac(self, o: Fraction):
        on, od = o.numerator, o.denominator
        return make_surd(self.p * od + on * self.r, self.q * od, self.r * od, self.d)

    def __add__(self, other):
        o = _as_fraction(other)
        if o is not None:
            return self._add_frac(o)
        if isinstance(other, Surd):
            if other.d != self.d:
                raise DomainError("mixed-d surd arithmetic is unsupported")
            return make_surd(
                self.p * other.r + other.p * self.r,
                self.q * other.r + other.q * self.r,
                self.r * other.r,
                self.d,
            )
        return NotImplemented

    __radd__ = __add__

    def __sub__(self, other):
        o = _as_fraction(other)
        if o is not None:
            return self._add_frac(-o)
        if isinstance(other, Surd):
            return self.__add__(-other)
        return NotImplemented

    def __rsub__(self, other):
        return (-self).__add__(other)

    def __mul__(self, other):
        o = _as_fraction(other)
        if o is not None:
            return make_surd(self.p * o.numerator, self.q * o.numerator,
                             self.r * o.denominator, self.d)
        if isinstance(other, Surd):
            if other.d != self.d:
                raise DomainError("mixed-d surd arithmetic is unsupported")
            return make_surd(
                self.p * other.p + self.q * other.q * self.d,
                self.p * other.q + self.q * other.p,
                self.r * other.r,
                self.d,
            )
        return NotImplemented

    __rmul__ = __mul__

    def _reciprocal(self):
        norm = self.p * self.p - self.q * self.q * self.d  # nonzero: surd is irrational
        return make_surd(self.r * self.p, -self.r * self.q, norm, self.d)

    def __truediv__(self, other):
        o = _as_fraction(other)
        if o is not None:
            if o == 0:
                raise ZeroDivisionError("division by zero")
            return self.__mul__(Fraction(o.denominator, o.numerator))
        if isinstance(other, Surd):
            return self.__mul__(other._reciprocal())
        return NotImplemented

    def __rtruediv__(self, other):
        o = _as_fraction(other)
        if o is not None:
            return self._reciprocal().__mul__(o)
        return NotImplemented

    def __pow__(self, n: int):
        if n == 2:
            return self.__mul__(self)
        raise DomainError("only squaring is supported")

    # -- comparisons ---------------------------------------------------

    def _cmp(self, other) -> int:
        o = _as_fraction(other)
        if o is not None:
            return self._add_frac(-o).sign()
        if isinstance(other, Surd):
            if other.d == self.d:
                diff = self.__sub__(other)
                if isinstance(diff, Fraction):
                    return (diff > 0) - (diff < 0)
                return diff.sign()
            bits = 64
            while bits <= _COMPARE_BIT_CAP:
                lo1, hi1 = self.approx(bits)
                lo2, hi2 = other.approx(bits)
                if hi1 < lo2:
                    return -1
                if hi2 < lo1:
                    return 1
                bits *= 2
            raise DomainError("mixed-d comparison did not separate")
        raise TypeError(f"cannot compare Surd with {type(other).__name__}")

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __eq__(self, other):
        if isinstance(other, Surd):
            return (self.p, self.q, self.r, self.d) == (other.p, other.q, other.r, other.d)
        return False  # normal-form surds are irrational

    def __ne__(self, other):
        return not self.__eq__(other)

    def __hash__(self):
        return hash(("cfdyn-surd", self.p, self.q, self.r, self.d))

    def __repr__(self):
        return render_boundary_point(self)


# -- generic boundary-point helpers -------------------------------------

def bp_sign(x: BoundaryPoint) -> int:
    if isinstance(x, _Infinity):
        raise DomainError("sign of infinity is undefined")
    if isinstance(x, Surd):
        return x.sign()
    return (x > 0) - (x < 0)


def bp_floor(x: BoundaryPoint) -> int:
    """Largest integer n with n <= x < n + 1."""
    if isinstance(x, _Infinity):
        raise DomainError("floor of infinity is undefined")
    if isinstance(x, Surd):
        return x.floor()
    return x.numerator // x.denominator


def bp_abs(x: BoundaryPoint):
    return -x if bp_sign(x) < 0 else x


def bp_compare(a: BoundaryPoint, b: BoundaryPoint) -> int:
    """Exact three-way comparison; INFINITY compares above all finite points.

    The infinity convention is documentation-level only: crossing and
    interval tests elsewhere never rely on a signed infinity.
    """
    a_inf, b_inf = isinstance(a, _Infinity), isinstance(b, _Infinity)
    if a_inf and b_inf:
        return 0
    if a_inf:
        return 1
    if b_inf:
        return -1
    if isinstance(a, Surd):
        return a._cmp(b)
    if isinstance(b, Surd):
        return -b._cmp(a)
    return (a > b) - (a < b)


def is_integer_point(x: BoundaryPoint) -> bool:
    return isinstance(x, Fraction) and x.denominator == 1


def bp_to_float(x: BoundaryPoint, bits: int = 53) -> float:
    """Round-to-nearest float export; never used in exact identity checks."""
    if isinstance(x, _Infinity):
        return math.inf
    if isinstance(x, Surd):
        lo, hi = x.approx(max(bits, 53))
        return float((lo + hi) / 2)
    return float(x)


def rational_arith(a: Fraction, b: Fraction, op: str) -> Fraction:
    """Exact field arithmetic on rationals; op is one of '+', '-', '*', '/'."""
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        if b == 0:
            raise ZeroDivisionError("division by zero")
        return a / b
    raise DomainError(f"unknown operation {op!r}")


# -- parsing and rendering ----------------------------------------------

_SURD_RE = re.compile(
    r"^\(?\s*(?P<p>[+-]?\d+)?\s*(?P<op>[+-])?\s*(?:(?P<q>\d+)\s*\*\s*)?"
    r"sqrt\(\s*(?P<d>\d+)\s*\)\s*\)?\s*(?:/\s*(?P<r>[+-]?\d+))?$"
)


def render_boundary_point(x: BoundaryPoint) -> str:
    if isinstance(x, _Infinity):
        return "inf"
    if isinstance(x, Surd):
        return f"({x.p}+{x.q}*sqrt({x.d}))/{x.r}" if x.q >= 0 else \
            f"({x.p}{x.q}*sqrt({x.d}))/{x.r}"
    if x.denominator == 1:
        return str(x.numerator)
    return f"{x.numerator}/{x.denominator}"


def parse_boundary_point(text: str) -> BoundaryPoint:
    """Parse 'p/q', decimals, 'sqrt(d)' combinations, or 'inf'.

    Decimals are read as exact dyadic/decimal rationals.  The surd form
    accepts anything shaped like '(p+q*sqrt(d))/r' with optional parts.
    """
    s = text.strip()
    if s in ("inf", "+inf", "oo"):
        return INFINITY
    if "sqrt" in s:
        m = _SURD_RE.match(s)
        if not m:
            raise DomainError(f"cannot parse boundary point {text!r}")
        p = int(m.group("p")) if m.group("p") else 0
        q = int(m.group("q")) if m.group("q") else 1
        if m.group("op") == "-":
            q = -q
        elif m.group("op") is None and m.group("p") is not None:
            raise DomainError(f"cannot parse boundary point {text!r}")
        if m.group("p") is None and m.group("op") == "-":
            pass  # "-sqrt(d)" style
        r = int(m.group("r")) if m.group("r") else 1
        return make_surd(p, q, r, int(m.group("d")))
    try:
        return Fraction(s)
    except (ValueError, ZeroDivisionError) as exc:
        raise DomainError(f"cannot parse boundary point {text!r}") from exc
