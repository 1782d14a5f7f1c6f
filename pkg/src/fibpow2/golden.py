"""Loader for the packaged reference data.

The JSON files under ``data/`` hold the known-good outputs every command
is checked against: the two solution lists, the bound-chain table values,
the reduction-step bounds with their exceptional cases, and the shared
continued-fraction landmarks.  ``FIBPOW2_GOLDEN_DIR`` overrides the data
directory, which the test suite uses to prove that tampered reference
files are detected.
"""

from __future__ import annotations

import json
import os
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path

__all__ = [
    "golden_dir_override",
    "load_reference",
    "load_solutions",
    "solution_tuples",
    "decimal_to_fraction",
]


def golden_dir_override() -> Path | None:
    env = os.environ.get("FIBPOW2_GOLDEN_DIR")
    return Path(env) if env else None


def _read(name: str) -> dict:
    override = golden_dir_override()
    if override is not None:
        return json.loads((override / name).read_text())
    return json.loads(resources.files("fibpow2.data").joinpath(name).read_text())


@lru_cache(maxsize=None)
def load_reference() -> dict:
    return _read("reference.json")


@lru_cache(maxsize=None)
def load_solutions(equation: int) -> dict:
    if equation not in (1, 2):
        raise ValueError("equation must be 1 or 2")
    return _read(f"solutions_eq{equation}.json")


def solution_tuples(equation: int) -> set[tuple[int, int, int, int, int]]:
    data = load_solutions(equation)
    keys = ("n1", "n2", "a1", "a2", "a3") if equation == 1 else ("m1", "m2", "m3", "t1", "t2")
    return {tuple(rec[k] for k in keys) for rec in data["solutions"]}


def decimal_to_fraction(s: str) -> Fraction:
    """Exact value of a decimal-scientific literal like '2.61e13'."""
    return Fraction(s)
