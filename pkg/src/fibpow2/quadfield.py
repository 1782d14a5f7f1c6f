"""Exact arithmetic in Q(sqrt 5).

Elements are a + b*sqrt(5) with rational a, b.  The golden ratio
alpha = (1+sqrt5)/2 and its conjugate beta = (1-sqrt5)/2 live here, along
with the Fibonacci/Lucas tables and the exact detection of multiplicative
relations x = sign * 2^e * alpha^s that make certain reduction instances
degenerate.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .bigmath import DEFAULT_PREC, RealBall, real_log, real_sqrt

__all__ = [
    "QuadRat",
    "Relation",
    "ALPHA",
    "BETA",
    "SQRT5",
    "qr_pow",
    "qr_conjugate",
    "fibonacci",
    "lucas",
    "alpha_pow",
    "decompose_two_alpha",
    "embed",
    "height_quadrat",
    "sqrt5_ball",
    "log_alpha",
    "log_sqrt5",
]


@dataclass(frozen=True)
class QuadRat:
    """a + b*sqrt(5), components always stored reduced (Fraction does this)."""

    a: Fraction
    b: Fraction

    def __post_init__(self):
        if not isinstance(self.a, Fraction):
            object.__setattr__(self, "a", Fraction(self.a))
        if not isinstance(self.b, Fraction):
            object.__setattr__(self, "b", Fraction(self.b))

    # -- ring operations ---------------------------------------------

    def __add__(self, other: "QuadRat | int | Fraction") -> "QuadRat":
        other = _coerce(other)
        return QuadRat(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self) -> "QuadRat":
        return QuadRat(-self.a, -self.b)

    def __sub__(self, other: "QuadRat | int | Fraction") -> "QuadRat":
        return self + (-_coerce(other))

    def __rsub__(self, other) -> "QuadRat":
        return (-self) + other

    def __mul__(self, other: "QuadRat | int | Fraction") -> "QuadRat":
        other = _coerce(other)
        return QuadRat(
            self.a * other.a + 5 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def inverse(self) -> "QuadRat":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("inverse of zero in Q(sqrt5)")
        return QuadRat(self.a / n, -self.b / n)

    def __truediv__(self, other: "QuadRat | int | Fraction") -> "QuadRat":
        return self * _coerce(other).inverse()

    def __rtruediv__(self, other) -> "QuadRat":
        return _coerce(other) * self.inverse()

    def __pow__(self, k: int) -> "QuadRat":
        if k < 0:
            return self.inverse() ** (-k)
        result = QuadRat(Fraction(1), Fraction(0))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    # -- field structure ----------------------------------------------

    def conjugate(self) -> "QuadRat":
        return QuadRat(self.a, -self.b)

    def norm(self) -> Fraction:
        return self.a * self.a - 5 * self.b * self.b

    def is_rational(self) -> bool:
        return self.b == 0

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def sign(self) -> int:
        """Exact sign of the real embedding with sqrt(5) > 0."""
        if self.b == 0:
            return _sgn(self.a)
        if self.a == 0:
            return _sgn(self.b)
        sa, sb = _sgn(self.a), _sgn(self.b)
        if sa == sb:
            return sa
        # opposite signs: compare a^2 against 5 b^2
        return sa * _sgn(self.a * self.a - 5 * self.b * self.b)

    def compare(self, other: "QuadRat | int | Fraction") -> int:
        return (self - _coerce(other)).sign()

    def __repr__(self) -> str:
        return f"QuadRat({self.a} + {self.b}*sqrt5)"


def _coerce(x) -> QuadRat:
    if isinstance(x, QuadRat):
        return x
    return QuadRat(Fraction(x), Fraction(0))


def _sgn(x: Fraction) -> int:
    return (x > 0) - (x < 0)


ALPHA = QuadRat(Fraction(1, 2), Fraction(1, 2))
BETA = QuadRat(Fraction(1, 2), Fraction(-1, 2))
SQRT5 = QuadRat(Fraction(0), Fraction(1))
ONE = QuadRat(Fraction(1), Fraction(0))


def qr_pow(x: QuadRat, k: int) -> QuadRat:
    """Exact k-th power; negative k inverts first."""
    return x ** k


def qr_conjugate(x: QuadRat) -> QuadRat:
    return x.conjugate()


_FIB = [0, 1]
_LUC = [2, 1]


def fibonacci(k: int) -> int:
    """F(k) by the integer recurrence, memoised."""
    if k < 0:
        raise ValueError("negative Fibonacci index")
    while len(_FIB) <= k:
        _FIB.append(_FIB[-1] + _FIB[-2])
    return _FIB[k]


def lucas(k: int) -> int:
    if k < 0:
        raise ValueError("negative Lucas index")
    while len(_LUC) <= k:
        _LUC.append(_LUC[-1] + _LUC[-2])
    return _LUC[k]


def alpha_pow(r: int) -> QuadRat:
    """alpha^r as (L_r + F_r*sqrt5)/2, valid for any integer r.

    Negative exponents use alpha^-r = (-1)^r * (L_r - F_r*sqrt5)/2.
    """
    if r >= 0:
        return QuadRat(Fraction(lucas(r), 2), Fraction(fibonacci(r), 2))
    r = -r
    x = QuadRat(Fraction(lucas(r), 2), Fraction(-fibonacci(r), 2))
    return x if r % 2 == 0 else -x


@dataclass(frozen=True)
class Relation:
    """Exact multiplicative relation x = sign * 2^e * alpha^s."""

    sign: int
    e: int
    s: int

    def value(self) -> QuadRat:
        v = alpha_pow(self.s) * Fraction(2) ** self.e
        return v if self.sign > 0 else -v


def decompose_two_alpha(
    x: QuadRat, e_cap: int = 64, s_cap: int = 400
) -> Relation | None:
    """Write x as sign * 2^e * alpha^s exactly, if integers e, s exist.

    The norm of such an x is (-1)^s * 4^e, which pins e; the alpha
    exponent is then stripped off by exact division (alpha^-1 = alpha - 1)
    until the quotient becomes rational.  Caps keep the search finite for
    non-decomposable inputs.
    """
    if x.is_zero():
        raise ZeroDivisionError("cannot decompose zero")
    n = x.norm()
    num, den = abs(n.numerator), n.denominator
    e2 = _pow4_exponent(num)
    d2 = _pow4_exponent(den)
    if e2 is None or d2 is None:
        return None
    e = e2 - d2
    if abs(e) > e_cap:
        return None
    y = x * Fraction(1, 2 ** e) if e >= 0 else x * (2 ** (-e))
    # |norm(y)| == 1 now; strip alpha factors monotonically
    s = 0
    direction = 0
    while not y.is_rational():
        t = y if y.sign() > 0 else -y
        step = 1 if t.compare(1) > 0 else -1
        if direction == 0:
            direction = step
        elif step != direction:
            return None
        if abs(s) >= s_cap:
            return None
        y = y * (alpha_pow(-1) if step > 0 else ALPHA)
        s += step
    if y.a == 1:
        sign = 1
    elif y.a == -1:
        sign = -1
    else:
        return None
    if _sgn(n) != (-1) ** (s % 2):
        return None
    return Relation(sign, e, s)


def _pow4_exponent(n: int) -> int | None:
    """e with n == 4^e, else None."""
    if n <= 0:
        return None
    if n == 1:
        return 0
    bits = n.bit_length() - 1
    if n != 1 << bits or bits % 2:
        return None
    return bits // 2


_SQRT5_CACHE: dict[int, RealBall] = {}


def sqrt5_ball(prec: int = DEFAULT_PREC) -> RealBall:
    ball = _SQRT5_CACHE.get(prec)
    if ball is None:
        ball = real_sqrt(5, prec)
        _SQRT5_CACHE[prec] = ball
    return ball


def embed(x: QuadRat, prec: int = DEFAULT_PREC) -> RealBall:
    """Real embedding of x with sqrt(5) > 0, as a ball."""
    s5 = sqrt5_ball(prec)
    return RealBall.from_fraction(x.a, prec) + s5 * RealBall.from_fraction(x.b, prec)


_LOG_CACHE: dict[tuple[str, int], RealBall] = {}


def log_alpha(prec: int = DEFAULT_PREC) -> RealBall:
    key = ("alpha", prec)
    ball = _LOG_CACHE.get(key)
    if ball is None:
        ball = real_log(embed(ALPHA, prec), prec)
        _LOG_CACHE[key] = ball
    return ball


def log_sqrt5(prec: int = DEFAULT_PREC) -> RealBall:
    key = ("sqrt5", prec)
    ball = _LOG_CACHE.get(key)
    if ball is None:
        ball = real_log(5, prec) / 2
        _LOG_CACHE[key] = ball
    return ball


def height_quadrat(x: QuadRat, prec: int = DEFAULT_PREC) -> RealBall:
    """Absolute logarithmic Weil height of x, from its minimal polynomial.

    Rational p/q gives log max(|p|, q).  A genuinely quadratic x with
    integral primitive polynomial a0*X^2 + a1*X + a2 gives
    (log|a0| + log+|x| + log+|x'|) / 2 with x' the conjugate.
    """
    if x.is_zero():
        raise ZeroDivisionError("height of zero is undefined")
    if x.is_rational():
        p, q = x.a.numerator, x.a.denominator
        return real_log(max(abs(p), q), prec)
    tr = 2 * x.a
    nm = x.norm()
    d = _lcm(tr.denominator, nm.denominator)
    a0, a1, a2 = d, -tr.numerator * (d // tr.denominator), nm.numerator * (d // nm.denominator)
    g = _gcd3(abs(a0), abs(a1), abs(a2))
    a0 //= g
    root1 = embed(x, prec)
    root2 = embed(x.conjugate(), prec)
    total = real_log(a0, prec) + _log_plus(abs(root1), prec) + _log_plus(abs(root2), prec)
    return total / 2


def _log_plus(x: RealBall, prec: int) -> RealBall:
    """Ball for log(max(x, 1)) given x >= 0."""
    lo, hi = x.lower(), x.upper()
    if lo >= 1:
        return real_log(x, prec)
    if hi <= 1:
        return RealBall.from_int(0, prec)
    # interval straddles 1: enclosure [0, log hi]
    top = real_log(RealBall.from_fraction(hi, prec), prec)
    return RealBall.from_interval(0, top.upper(), prec)


def _lcm(a: int, b: int) -> int:
    from math import gcd

    return a // gcd(a, b) * b


def _gcd3(a: int, b: int, c: int) -> int:
    from math import gcd

    return gcd(gcd(a, b), c)
