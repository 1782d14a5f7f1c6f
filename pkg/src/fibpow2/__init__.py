"""fibpow2: complete certified solution of two Fibonacci / power-of-two
Diophantine equations.

The package enumerates every solution of

    F(n1) + F(n2)         = 2^a1 + 2^a2 + 2^a3        (equation 1)
    F(m1) + F(m2) + F(m3) = 2^t1 + 2^t2               (equation 2)

inside the search box n1 < 360, a1 < 251, verifies the linear-forms-in-
logarithms bound chains that cap any solution at ~4e62, and runs the
seven-step Baker-Davenport reduction pipeline that pulls that cap below
360, closing the proof that the enumerated lists are complete.
"""

__version__ = "0.1.0"

from .bigmath import (
    CompareResult,
    PrecisionExhausted,
    RealBall,
    UnknownComparison,
    certify_compare,
    nearest_int_distance,
    real_log,
    real_sqrt,
    with_escalation,
)
from .quadfield import (
    ALPHA,
    BETA,
    SQRT5,
    QuadRat,
    Relation,
    decompose_two_alpha,
    embed,
    fibonacci,
    height_quadrat,
    lucas,
    qr_conjugate,
    qr_pow,
)

__all__ = [
    "CompareResult",
    "PrecisionExhausted",
    "RealBall",
    "UnknownComparison",
    "certify_compare",
    "nearest_int_distance",
    "real_log",
    "real_sqrt",
    "with_escalation",
    "ALPHA",
    "BETA",
    "SQRT5",
    "QuadRat",
    "Relation",
    "decompose_two_alpha",
    "embed",
    "fibonacci",
    "height_quadrat",
    "lucas",
    "qr_conjugate",
    "qr_pow",
    "__version__",
]
