"""Brute-force solver for both equations over the default search box.

The box mirrors the preliminary search ranges: first indices below 360,
power-of-two exponents at most 250.  Instead of looping over all five
indices, each (n1, n2) pair fixes the left side of equation 1 and the sum
is decomposed into three powers of two in O(1) big-integer checks; for
equation 2 each (t1, t2) pair fixes the right side and the sum is
decomposed into three Fibonacci numbers the same way.  Solutions count
tuples in N^5, so the two unit Fibonacci values F(1) = F(2) = 1 give
index-1 twins of every solution that uses index 2.
"""

from __future__ import annotations

import csv
import io
import json
from bisect import bisect_right
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence, Union

from .quadfield import fibonacci

__all__ = [
    "SolutionEq1",
    "SolutionEq2",
    "SolutionSet",
    "decompose_three_powers",
    "decompose_three_fibs",
    "enumerate_eq1",
    "enumerate_eq2",
    "verify_solution",
    "index_one_twins",
]


@dataclass(frozen=True, order=True)
class SolutionEq1:
    """F(n1) + F(n2) = 2^a1 + 2^a2 + 2^a3 with n1 >= n2, a1 >= a2 >= a3."""

    n1: int
    n2: int
    a1: int
    a2: int
    a3: int

    @property
    def value(self) -> int:
        return fibonacci(self.n1) + fibonacci(self.n2)

    def indices(self) -> tuple[int, ...]:
        return (self.n1, self.n2)

    def exponents(self) -> tuple[int, ...]:
        return (self.a1, self.a2, self.a3)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.n1, self.n2, self.a1, self.a2, self.a3)


@dataclass(frozen=True, order=True)
class SolutionEq2:
    """F(m1) + F(m2) + F(m3) = 2^t1 + 2^t2 with sorted index groups."""

    m1: int
    m2: int
    m3: int
    t1: int
    t2: int

    @property
    def value(self) -> int:
        return (1 << self.t1) + (1 << self.t2)

    def indices(self) -> tuple[int, ...]:
        return (self.m1, self.m2, self.m3)

    def exponents(self) -> tuple[int, ...]:
        return (self.t1, self.t2)

    def as_tuple(self) -> tuple[int, int, int, int, int]:
        return (self.m1, self.m2, self.m3, self.t1, self.t2)


Solution = Union[SolutionEq1, SolutionEq2]


@dataclass(frozen=True)
class SolutionSet:
    """Deduplicated, lexicographically sorted solutions of one equation."""

    equation: int
    solutions: tuple[Solution, ...]
    n_max: int
    a_max: int

    @property
    def count_total(self) -> int:
        return len(self.solutions)

    @property
    def count_canonical(self) -> int:
        return len(self.canonical())

    def canonical(self) -> tuple[Solution, ...]:
        """Solutions free of Fibonacci index 1 (index 2 is the
        representative of the value 1)."""
        return tuple(s for s in self.solutions if 1 not in s.indices())

    def tuples(self) -> set[tuple[int, int, int, int, int]]:
        return {s.as_tuple() for s in self.solutions}

    # -- serialisation -------------------------------------------------

    def to_json(self) -> str:
        keys = _field_names(self.equation)
        return json.dumps(
            {
                "equation": self.equation,
                "n_max": self.n_max,
                "a_max": self.a_max,
                "count_total": self.count_total,
                "count_canonical": self.count_canonical,
                "solutions": [
                    dict(zip(keys, s.as_tuple())) | {"value": str(s.value)}
                    for s in self.solutions
                ],
            },
            indent=1,
        )

    @classmethod
    def from_json(cls, text: str) -> "SolutionSet":
        data = json.loads(text)
        eq = data["equation"]
        keys = _field_names(eq)
        ctor = SolutionEq1 if eq == 1 else SolutionEq2
        sols = tuple(
            sorted(ctor(*(rec[k] for k in keys)) for rec in data["solutions"])
        )
        return cls(eq, sols, data["n_max"], data["a_max"])

    def to_csv(self) -> str:
        keys = _field_names(self.equation)
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(list(keys) + ["value"])
        for s in self.solutions:
            writer.writerow(list(s.as_tuple()) + [s.value])
        return buf.getvalue()


def _field_names(equation: int) -> tuple[str, ...]:
    return ("n1", "n2", "a1", "a2", "a3") if equation == 1 else ("m1", "m2", "m3", "t1", "t2")


def decompose_three_powers(s: int, a_max: int) -> list[tuple[int, int, int]]:
    """All (a1 >= a2 >= a3) with 2^a1 + 2^a2 + 2^a3 = s and a1 <= a_max.

    The top exponent is pinned to at most two candidates by
    2^a1 <= s <= 3 * 2^a1, the middle one likewise, and the remainder must
    be an exact power of two.
    """
    out: list[tuple[int, int, int]] = []
    if s < 3:
        return out
    for a1 in range(min(s.bit_length() - 1, a_max), -1, -1):
        if 3 << a1 < s:
            break
        s1 = s - (1 << a1)
        if s1 < 2:
            continue
        for a2 in range(min(s1.bit_length() - 1, a1), -1, -1):
            if 2 << a2 < s1:
                break
            s2 = s1 - (1 << a2)
            if s2 <= 0:
                continue
            a3 = s2.bit_length() - 1
            if 1 << a3 == s2 and a3 <= a2:
                out.append((a1, a2, a3))
    return sorted(out, reverse=True)


@lru_cache(maxsize=8)
def _fib_tables(m_max: int) -> tuple[list[int], dict[int, int]]:
    fib = [fibonacci(i) for i in range(m_max + 1)]
    # canonical index of each Fibonacci value (1 maps to 2)
    value_index = {v: i for i, v in enumerate(fib) if i != 1}
    return fib, value_index


def decompose_three_fibs(s: int, m_max: int) -> list[tuple[int, int, int]]:
    """All canonical (m1 >= m2 >= m3) with F(m1)+F(m2)+F(m3) = s, m1 <= m_max.

    Canonical means index 1 never appears; the value 1 is always written
    as F(2).  The top index is pinned by F(m1) <= s <= 3 F(m1), the middle
    by the same argument, and the remainder is a table lookup.
    """
    fib, value_index = _fib_tables(m_max)
    out: list[tuple[int, int, int]] = []
    for m1 in range(min(bisect_right(fib, s) - 1, m_max), -1, -1):
        if m1 == 1:
            continue
        if 3 * fib[m1] < s:
            break
        s1 = s - fib[m1]
        for m2 in range(min(bisect_right(fib, s1) - 1, m1), -1, -1):
            if m2 == 1:
                continue
            if 2 * fib[m2] < s1:
                break
            s2 = s1 - fib[m2]
            m3 = value_index.get(s2)
            if m3 is not None and m3 <= m2:
                out.append((m1, m2, m3))
    return sorted(out, reverse=True)


def index_one_twins(indices: Sequence[int]) -> set[tuple[int, ...]]:
    """All distinct sorted variants of a Fibonacci index group obtained by
    replacing a non-empty subset of the entries equal to 2 with 1."""
    twos = [i for i, v in enumerate(indices) if v == 2]
    out: set[tuple[int, ...]] = set()
    for mask in range(1, 1 << len(twos)):
        variant = list(indices)
        for bit, pos in enumerate(twos):
            if mask >> bit & 1:
                variant[pos] = 1
        out.add(tuple(sorted(variant, reverse=True)))
    return out


def _eq1_range(args: tuple[int, int, int]) -> list[tuple[int, int, int, int, int]]:
    lo, hi, a_max = args
    found = []
    for n1 in range(lo, hi):
        f1 = fibonacci(n1)
        for n2 in range(n1 + 1):
            s = f1 + fibonacci(n2)
            for a in decompose_three_powers(s, a_max):
                found.append((n1, n2) + a)
    return found


def _eq2_range(args: tuple[int, int, int]) -> list[tuple[int, int, int, int, int]]:
    lo, hi, m_top = args
    found = []
    for t1 in range(lo, hi):
        for t2 in range(t1 + 1):
            s = (1 << t1) + (1 << t2)
            for m in decompose_three_fibs(s, m_top):
                found.append(m + (t1, t2))
                for twin in index_one_twins(m):
                    found.append(twin + (t1, t2))
    return found


def _map_chunks(fn, outer_limit: int, extra: int, workers: int) -> list:
    jobs = [(lo, min(lo + 30, outer_limit), extra) for lo in range(0, outer_limit, 30)]
    if workers <= 1:
        chunks = [fn(job) for job in jobs]
    else:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            chunks = list(pool.map(fn, jobs))
    return [t for chunk in chunks for t in chunk]


def enumerate_eq1(n_max: int = 360, a_max: int = 250, workers: int = 1) -> SolutionSet:
    """Every solution of equation 1 with n1 < n_max and a1 <= a_max.

    Index-1 tuples appear naturally because the n2 loop includes 1.
    """
    found = _map_chunks(_eq1_range, n_max, a_max, workers)
    sols = tuple(SolutionEq1(*t) for t in sorted(set(found)))
    return SolutionSet(1, sols, n_max, a_max)


def enumerate_eq2(m_max: int = 360, t_max: int = 250, workers: int = 1) -> SolutionSet:
    """Every solution of equation 2 with m1 < m_max and t1 <= t_max.

    The Fibonacci side is decomposed canonically and index-1 twins are
    expanded afterwards, which is equivalent to looping over index 1.
    """
    found = _map_chunks(_eq2_range, t_max + 1, m_max - 1, workers)
    sols = tuple(SolutionEq2(*t) for t in sorted(set(found)))
    return SolutionSet(2, sols, m_max, t_max)


def verify_solution(sol: Solution) -> bool:
    """Exact integer recheck of the defining equation and the orderings."""
    if isinstance(sol, SolutionEq1):
        ordered = sol.n1 >= sol.n2 >= 0 and sol.a1 >= sol.a2 >= sol.a3 >= 0
        lhs = fibonacci(sol.n1) + fibonacci(sol.n2)
        rhs = (1 << sol.a1) + (1 << sol.a2) + (1 << sol.a3)
    else:
        ordered = sol.m1 >= sol.m2 >= sol.m3 >= 0 and sol.t1 >= sol.t2 >= 0
        lhs = fibonacci(sol.m1) + fibonacci(sol.m2) + fibonacci(sol.m3)
        rhs = (1 << sol.t1) + (1 << sol.t2)
    return ordered and lhs == rhs
