"""Certified continued fractions of real balls.

A partial quotient is only emitted when every real in the current ball
interval shares it, so the expansion of a computed irrational is immune to
precision artefacts: if the interval straddles an integer boundary the
precision is doubled and the whole expansion is redone.  The expansion of
gamma = log(alpha)/log(2), which every reduction instance shares, is
cached at module level and can be persisted to disk.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Callable

from .bigmath import (
    DEFAULT_PREC,
    MAX_PREC,
    PrecisionExhausted,
    RealBall,
    certify_compare,
    CompareResult,
    ln2,
)
from .quadfield import ALPHA, embed, real_log

__all__ = [
    "CFExpansion",
    "ExpansionExhausted",
    "cf_expand",
    "first_denominator_exceeding",
    "max_partial_quotient",
    "legendre_gap",
    "gamma_ball",
    "gamma_cf",
    "save_expansion",
    "load_expansion",
]

BallProducer = Callable[[int], RealBall]


class ExpansionExhausted(ValueError):
    """A query needed more convergents than the expansion holds."""


@dataclass(frozen=True)
class CFExpansion:
    """Partial quotients s_j and convergents p_j/q_j of a real number.

    ``exact`` marks a terminating expansion (rational input).  Every
    emitted quotient was certified at ``prec`` bits: the ball for the tail
    lay strictly between consecutive integers when it was accepted.
    """

    quotients: tuple[int, ...]
    numerators: tuple[int, ...]
    denominators: tuple[int, ...]
    prec: int
    exact: bool = False

    def __len__(self) -> int:
        return len(self.quotients)

    def convergent(self, j: int) -> Fraction:
        return Fraction(self.numerators[j], self.denominators[j])


def _common_prefix_digits(lo: Fraction, hi: Fraction, n_terms: int) -> tuple[list[int], bool]:
    """CF digits shared by every real in [lo, hi]; flag marks exact
    termination (only possible when lo == hi)."""
    digits: list[int] = []
    while len(digits) < n_terms:
        a = lo.numerator // lo.denominator
        if a != hi.numerator // hi.denominator:
            return digits, False
        digits.append(a)
        fl, fh = lo - a, hi - a
        if fl == 0 and fh == 0:
            return digits, True
        if fl == 0 or fh == 0:
            # interval touches an integer: cannot certify the next digit
            return digits, False
        lo, hi = 1 / fh, 1 / fl
    return digits, False


def _convergents(digits: list[int]) -> tuple[list[int], list[int]]:
    ps: list[int] = []
    qs: list[int] = []
    p_prev, q_prev = 1, 0
    p_cur, q_cur = digits[0], 1
    ps.append(p_cur)
    qs.append(q_cur)
    for s in digits[1:]:
        p_prev, p_cur = p_cur, s * p_cur + p_prev
        q_prev, q_cur = q_cur, s * q_cur + q_prev
        ps.append(p_cur)
        qs.append(q_cur)
    return ps, qs


def cf_expand(
    x: "BallProducer | RealBall | Fraction | int",
    n_terms: int,
    start_prec: int = DEFAULT_PREC,
) -> CFExpansion:
    """First ``n_terms`` certified partial quotients of x.

    ``x`` may be a rational (exact expansion, may terminate early), a ball
    (certification limited by its radius), or a callable prec -> ball that
    lets the expansion escalate precision on its own.
    """
    if isinstance(x, (int, Fraction)):
        v = Fraction(x)
        digits, _ = _common_prefix_digits(v, v, n_terms)
        exact = len(digits) < n_terms or _is_full_expansion(v, digits)
        ps, qs = _convergents(digits)
        return CFExpansion(tuple(digits), tuple(ps), tuple(qs), 0, exact)

    if isinstance(x, RealBall):
        producer: BallProducer = lambda prec: x
        cap = start_prec = x.prec
    else:
        producer = x
        cap = MAX_PREC

    prec = start_prec
    while True:
        ball = producer(prec)
        digits, exact = _common_prefix_digits(ball.lower(), ball.upper(), n_terms)
        if len(digits) >= n_terms or exact:
            ps, qs = _convergents(digits)
            return CFExpansion(tuple(digits), tuple(ps), tuple(qs), prec, exact)
        if prec >= cap:
            raise PrecisionExhausted(
                f"only {len(digits)} of {n_terms} quotients certified at {prec} bits"
            )
        prec = min(2 * prec, cap)


def _is_full_expansion(v: Fraction, digits: list[int]) -> bool:
    if not digits:
        return False
    value = Fraction(digits[-1])
    for s in reversed(digits[:-1]):
        value = s + 1 / value
    return value == v


def first_denominator_exceeding(cf: CFExpansion, bound: int) -> tuple[int, int]:
    """Minimal j with q_j > bound."""
    for j, q in enumerate(cf.denominators):
        if q > bound:
            return j, q
    raise ExpansionExhausted(
        f"no denominator exceeds {bound} within {len(cf)} terms"
    )


def max_partial_quotient(cf: CFExpansion, j_max: int) -> int:
    """max of s_(j+1) over 0 <= j <= j_max."""
    if len(cf) < j_max + 2:
        raise ExpansionExhausted("expansion too short for requested range")
    return max(cf.quotients[1 : j_max + 2])


def legendre_gap(cf: CFExpansion, j: int, x: RealBall) -> RealBall:
    """Ball for |x - p_j/q_j|, certified to exceed 1/((s_(j+1)+2) q_j^2).

    The lower bound is the classical two-sided convergent estimate; it is
    checked here so callers can rely on it.  For a terminating expansion
    whose final convergent is the value itself the gap is exactly zero and
    the check is skipped.
    """
    p, q = cf.numerators[j], cf.denominators[j]
    gap = abs(x - Fraction(p, q))
    if cf.exact and j == len(cf) - 1:
        return gap
    if j + 1 >= len(cf):
        raise ExpansionExhausted("need quotient s_(j+1) for the lower bound")
    s_next = cf.quotients[j + 1]
    floor_bound = Fraction(1, (s_next + 2) * q * q)
    if certify_compare(gap, floor_bound) is not CompareResult.PROVEN_GREATER:
        raise ArithmeticError(
            f"convergent gap at j={j} not certified above 1/((s+2) q^2)"
        )
    return gap


# -- the shared expansion of gamma = log(alpha)/log(2) ------------------


def gamma_ball(prec: int = DEFAULT_PREC) -> RealBall:
    return real_log(embed(ALPHA, prec), prec) / ln2(prec)


_GAMMA_CACHE: CFExpansion | None = None


def gamma_cf(min_terms: int = 140, cache_dir: "str | Path | None" = None) -> CFExpansion:
    """Shared certified expansion of gamma, grown on demand.

    The default 140 terms cover every convergent the pipeline can touch;
    requests beyond the cache trigger a re-expansion.
    """
    global _GAMMA_CACHE
    expansion = None
    if _GAMMA_CACHE is not None and len(_GAMMA_CACHE) >= min_terms:
        expansion = _GAMMA_CACHE
    if expansion is None and cache_dir is not None:
        path = Path(cache_dir) / "gamma_cf.json"
        if path.exists():
            cached = load_expansion(path)
            if len(cached) >= min_terms:
                expansion = cached
    if expansion is None:
        expansion = cf_expand(gamma_ball, max(min_terms, 140), start_prec=1024)
    _GAMMA_CACHE = expansion
    if cache_dir is not None:
        path = Path(cache_dir) / "gamma_cf.json"
        if not path.exists():
            Path(cache_dir).mkdir(parents=True, exist_ok=True)
            save_expansion(expansion, path)
    return expansion


def save_expansion(cf: CFExpansion, path: "str | Path") -> None:
    payload = {
        "prec": cf.prec,
        "exact": cf.exact,
        "quotients": [str(s) for s in cf.quotients],
        "numerators": [str(p) for p in cf.numerators],
        "denominators": [str(q) for q in cf.denominators],
    }
    Path(path).write_text(json.dumps(payload))


def load_expansion(path: "str | Path") -> CFExpansion:
    payload = json.loads(Path(path).read_text())
    return CFExpansion(
        tuple(int(s) for s in payload["quotients"]),
        tuple(int(p) for p in payload["numerators"]),
        tuple(int(q) for q in payload["denominators"]),
        int(payload["prec"]),
        bool(payload["exact"]),
    )
