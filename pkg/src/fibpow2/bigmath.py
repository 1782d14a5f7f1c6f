"""Arbitrary-precision integers, rationals and certified real balls.

Integers are plain Python ints, rationals are ``fractions.Fraction``; both
are exact.  ``RealBall`` stores a dyadic midpoint and a non-negative error
radius so that the exact value of every computed quantity provably lies in
``[mid - rad, mid + rad]``.  All strict inequality decisions made anywhere
in this package go through balls; nothing is ever decided by an
uncertified floating-point comparison.
"""

from __future__ import annotations

import enum
from fractions import Fraction
from typing import Callable, TypeVar, Union

from mpmath import libmp

__all__ = [
    "DEFAULT_PREC",
    "MAX_PREC",
    "RealBall",
    "CompareResult",
    "PrecisionExhausted",
    "UnknownComparison",
    "real_log",
    "real_sqrt",
    "nearest_int_distance",
    "certify_compare",
    "certified_floor",
    "with_escalation",
    "ln2",
]

DEFAULT_PREC = 512
MAX_PREC = 8192

# Radius bookkeeping precision.  Radii only need an order of magnitude,
# but every radius operation rounds away from zero so the bound stays valid.
_RAD_PREC = 32
_UP = libmp.round_up
_NEAREST = libmp.round_nearest

_ZERO = libmp.fzero
_ONE = libmp.fone

Rationalish = Union[int, Fraction]
T = TypeVar("T")


class PrecisionExhausted(ArithmeticError):
    """Raised when doubling the working precision up to MAX_PREC did not
    resolve a comparison or quotient certification."""


class UnknownComparison(ArithmeticError):
    """A ball straddles the comparison point at the current precision."""


class CompareResult(enum.Enum):
    PROVEN_GREATER = "greater"
    PROVEN_LESS = "less"
    UNKNOWN = "unknown"


def _mag_exp(t) -> int:
    # position of the leading bit:  |t| < 2 ** _mag_exp(t)
    return t[2] + t[3]


def _ulp(t, prec: int):
    """Upper bound for the round-to-nearest error of a result rounded at
    ``prec`` bits.  One full unit in the last place, which over-covers the
    true half-ulp bound."""
    if not t[1]:
        return _ZERO
    return (0, 1, _mag_exp(t) - prec, 1)


def _rad_sum(*terms):
    acc = _ZERO
    for t in terms:
        if t[1] or t == _ZERO:
            acc = libmp.mpf_add(acc, t, _RAD_PREC, _UP)
    return acc


def _to_fraction(t) -> Fraction:
    sign, man, exp, _ = t
    if not man:
        if t == _ZERO:
            return Fraction(0)
        raise ValueError("non-finite value")
    man = int(man)
    if sign:
        man = -man
    if exp >= 0:
        return Fraction(man << exp)
    return Fraction(man, 1 << -exp)


def _from_fraction_exact_or_rounded(x: Fraction, prec: int):
    """Return (mpf, rad) for a rational; exact when the denominator is a
    power of two."""
    q = x.denominator
    if q & (q - 1) == 0:
        return libmp.from_man_exp(x.numerator, -(q.bit_length() - 1)), _ZERO
    m = libmp.from_rational(x.numerator, q, prec, _NEAREST)
    return m, _ulp(m, prec)


class RealBall:
    """A real number known to lie in [mid - rad, mid + rad].

    Instances are immutable.  Arithmetic returns new balls whose intervals
    contain every possible value of the exact operation applied to points
    of the operand intervals, plus the rounding error of the midpoint.
    """

    __slots__ = ("mid", "rad", "prec")

    def __init__(self, mid, rad, prec: int):
        self.mid = mid
        self.rad = rad
        self.prec = prec

    # -- constructors ------------------------------------------------

    @classmethod
    def from_int(cls, n: int, prec: int = DEFAULT_PREC) -> "RealBall":
        return cls(libmp.from_int(n), _ZERO, prec)

    @classmethod
    def from_fraction(cls, x: Rationalish, prec: int = DEFAULT_PREC) -> "RealBall":
        x = Fraction(x)
        mid, rad = _from_fraction_exact_or_rounded(x, prec)
        return cls(mid, rad, prec)

    @classmethod
    def from_interval(
        cls, lo: Rationalish, hi: Rationalish, prec: int = DEFAULT_PREC
    ) -> "RealBall":
        lo, hi = Fraction(lo), Fraction(hi)
        if hi < lo:
            raise ValueError("empty interval")
        mid, mrad = _from_fraction_exact_or_rounded((lo + hi) / 2, prec)
        half, hrad = _from_fraction_exact_or_rounded((hi - lo) / 2, _RAD_PREC)
        rad = _rad_sum(mrad, half, hrad, _ulp(half, _RAD_PREC - 2))
        return cls(mid, rad, prec)

    @classmethod
    def _coerce(cls, x: "RealBall | Rationalish", prec: int) -> "RealBall":
        if isinstance(x, RealBall):
            return x
        return cls.from_fraction(x, prec)

    # -- interval views ----------------------------------------------

    def lower(self) -> Fraction:
        return _to_fraction(self.mid) - _to_fraction(self.rad)

    def upper(self) -> Fraction:
        return _to_fraction(self.mid) + _to_fraction(self.rad)

    def mid_fraction(self) -> Fraction:
        return _to_fraction(self.mid)

    def rad_fraction(self) -> Fraction:
        return _to_fraction(self.rad)

    def contains(self, x: Rationalish) -> bool:
        return self.lower() <= Fraction(x) <= self.upper()

    def is_exact(self) -> bool:
        return self.rad == _ZERO

    def is_positive(self) -> bool:
        return certify_compare(self, 0) is CompareResult.PROVEN_GREATER

    def is_negative(self) -> bool:
        return certify_compare(self, 0) is CompareResult.PROVEN_LESS

    # -- arithmetic ---------------------------------------------------

    def __add__(self, other: "RealBall | Rationalish") -> "RealBall":
        other = RealBall._coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        m = libmp.mpf_add(self.mid, other.mid, prec, _NEAREST)
        r = _rad_sum(self.rad, other.rad, _ulp(m, prec))
        return RealBall(m, r, prec)

    __radd__ = __add__

    def __neg__(self) -> "RealBall":
        return RealBall(libmp.mpf_neg(self.mid), self.rad, self.prec)

    def __sub__(self, other: "RealBall | Rationalish") -> "RealBall":
        return self + (-RealBall._coerce(other, self.prec))

    def __rsub__(self, other: "RealBall | Rationalish") -> "RealBall":
        return (-self) + other

    def __mul__(self, other: "RealBall | Rationalish") -> "RealBall":
        other = RealBall._coerce(other, self.prec)
        prec = max(self.prec, other.prec)
        m = libmp.mpf_mul(self.mid, other.mid, prec, _NEAREST)
        # |x*y - xm*ym| <= |xm|*yr + |ym|*xr + xr*yr
        cross1 = libmp.mpf_mul(libmp.mpf_abs(self.mid), other.rad, _RAD_PREC, _UP)
        cross2 = libmp.mpf_mul(libmp.mpf_abs(other.mid), self.rad, _RAD_PREC, _UP)
        cross3 = libmp.mpf_mul(self.rad, other.rad, _RAD_PREC, _UP)
        r = _rad_sum(cross1, cross2, cross3, _ulp(m, prec))
        return RealBall(m, r, prec)

    __rmul__ = __mul__

    def reciprocal(self) -> "RealBall":
        if not self._separated_from_zero():
            raise ZeroDivisionError("ball interval contains zero")
        prec = self.prec
        m = libmp.mpf_div(_ONE, self.mid, prec, _NEAREST)
        # |1/y - 1/ym| <= yr / (|ym| * (|ym| - yr))
        absm = libmp.mpf_abs(self.mid)
        den_lo = libmp.mpf_sub(absm, self.rad, _RAD_PREC, libmp.round_down)
        den = libmp.mpf_mul(absm, den_lo, _RAD_PREC, libmp.round_down)
        r = libmp.mpf_div(self.rad, den, _RAD_PREC, _UP)
        return RealBall(m, _rad_sum(r, _ulp(m, prec)), prec)

    def __truediv__(self, other: "RealBall | Rationalish") -> "RealBall":
        if isinstance(other, int):
            m = libmp.mpf_div(self.mid, libmp.from_int(other), self.prec, _NEAREST)
            r = libmp.mpf_div(self.rad, libmp.from_int(abs(other)), _RAD_PREC, _UP)
            return RealBall(m, _rad_sum(r, _ulp(m, self.prec)), self.prec)
        other = RealBall._coerce(other, self.prec)
        return self * other.reciprocal()

    def __rtruediv__(self, other: "RealBall | Rationalish") -> "RealBall":
        return RealBall._coerce(other, self.prec) * self.reciprocal()

    def __abs__(self) -> "RealBall":
        return RealBall(libmp.mpf_abs(self.mid), self.rad, self.prec)

    def mul_2exp(self, k: int) -> "RealBall":
        """Exact scaling by 2**k."""
        return RealBall(libmp.mpf_shift(self.mid, k), libmp.mpf_shift(self.rad, k), self.prec)

    def _separated_from_zero(self) -> bool:
        if not self.mid[1]:
            return False
        return libmp.mpf_gt(libmp.mpf_abs(self.mid), self.rad)

    # -- formatting ---------------------------------------------------

    def __repr__(self) -> str:
        dps = libmp.prec_to_dps(self.prec)
        mid = libmp.to_str(self.mid, dps)
        rad = libmp.to_str(self.rad, 3)
        return f"RealBall({mid}, rad={rad}, prec={self.prec})"

    def decimal_str(self, dps: int = 30) -> str:
        return libmp.to_str(self.mid, dps)

    def __float__(self) -> float:
        return libmp.to_float(self.mid)


# -- elementary certified functions -----------------------------------


def real_sqrt(x: "RealBall | Rationalish", prec: int = DEFAULT_PREC) -> RealBall:
    """Ball containing sqrt(x); requires the whole interval to be >= 0."""
    x = RealBall._coerce(x, prec)
    lo = x.lower()
    if lo < 0:
        raise ValueError("square root of an interval reaching below zero")
    wp = prec + 32
    m = libmp.mpf_sqrt(x.mid, wp, _NEAREST)
    if x.rad == _ZERO:
        r = _ulp(m, wp - 8)
    else:
        # |sqrt(t) - sqrt(xm)| <= xr / (2 sqrt(xm - xr))
        lo_m, _ = _from_fraction_exact_or_rounded(lo, _RAD_PREC)
        root_lo = libmp.mpf_sqrt(lo_m, _RAD_PREC, libmp.round_down)
        if not root_lo[1]:
            raise ValueError("square-root radius bound needs a positive lower endpoint")
        r = libmp.mpf_div(x.rad, libmp.mpf_shift(root_lo, 1), _RAD_PREC, _UP)
        r = _rad_sum(r, _ulp(m, wp - 8))
    return RealBall(m, r, prec)


def real_log(x: "RealBall | Rationalish", prec: int = DEFAULT_PREC) -> RealBall:
    """Ball containing ln(x); the whole input interval must be positive.

    The midpoint logarithm is evaluated 32 guard bits above ``prec``; its
    rounding error is covered by an 8-ulp margin on top of the propagated
    interval term  rad / (mid - rad).
    """
    x = RealBall._coerce(x, prec)
    lo = x.lower()
    if lo <= 0:
        raise ValueError("logarithm of a non-positive interval")
    wp = prec + 32
    m = libmp.mpf_log(x.mid, wp, _NEAREST)
    if x.rad == _ZERO:
        r = _ulp(m, wp - 8) if m[1] else _ZERO
    else:
        lo_m, _ = _from_fraction_exact_or_rounded(lo, _RAD_PREC)
        r = libmp.mpf_div(x.rad, lo_m, _RAD_PREC, _UP)
        r = _rad_sum(r, _ulp(m, wp - 8))
    return RealBall(m, r, prec)


def nearest_int_distance(x: RealBall) -> RealBall:
    """Ball for the distance from x to the nearest integer.

    The distance function is 1-Lipschitz, so the result inherits the input
    radius unchanged; the midpoint distance is computed exactly on the
    dyadic midpoint.  Requires rad < 1/4.
    """
    if x.rad_fraction() >= Fraction(1, 4):
        raise ValueError("radius too large to localise the nearest integer")
    m = x.mid_fraction()
    n = _nearest_int(m)
    d = abs(m - n)
    mid, _ = _from_fraction_exact_or_rounded(d, x.prec)
    return RealBall(mid, x.rad, x.prec)


def _nearest_int(x: Fraction) -> int:
    fl = x.numerator // x.denominator
    return fl if x - fl <= Fraction(1, 2) else fl + 1


def certify_compare(x: RealBall, y: Rationalish) -> CompareResult:
    """Three-way certified comparison of a ball against an exact rational."""
    y = Fraction(y)
    if x.lower() > y:
        return CompareResult.PROVEN_GREATER
    if x.upper() < y:
        return CompareResult.PROVEN_LESS
    return CompareResult.UNKNOWN


def certify_less_ball(x: RealBall, y: RealBall) -> CompareResult:
    """Certified comparison of two balls (x vs y)."""
    if x.upper() < y.lower():
        return CompareResult.PROVEN_LESS
    if x.lower() > y.upper():
        return CompareResult.PROVEN_GREATER
    return CompareResult.UNKNOWN


def certified_floor(x: RealBall) -> int:
    """floor(x) when both interval endpoints agree on it."""
    lo = x.lower()
    hi = x.upper()
    f_lo = lo.numerator // lo.denominator
    f_hi = hi.numerator // hi.denominator
    if f_lo != f_hi:
        raise UnknownComparison("interval straddles an integer")
    return f_lo


def with_escalation(
    fn: Callable[[int], T],
    start: int = DEFAULT_PREC,
    cap: int = MAX_PREC,
) -> T:
    """Run ``fn(prec)``, doubling the precision on UnknownComparison.

    This is the package-wide escalation policy: start at 512 bits, double
    until 8192, then raise PrecisionExhausted so no computation can loop
    forever on a genuinely degenerate comparison.
    """
    prec = start
    while True:
        try:
            return fn(prec)
        except UnknownComparison as exc:
            if prec >= cap:
                raise PrecisionExhausted(
                    f"still unresolved at {prec} bits: {exc}"
                ) from exc
            prec = min(2 * prec, cap)


def ln2(prec: int = DEFAULT_PREC) -> RealBall:
    return _ln2_cached(prec)


_LN2_CACHE: dict[int, RealBall] = {}


def _ln2_cached(prec: int) -> RealBall:
    ball = _LN2_CACHE.get(prec)
    if ball is None:
        ball = real_log(2, prec)
        _LN2_CACHE[prec] = ball
    return ball
