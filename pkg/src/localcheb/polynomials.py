"""Chebyshev polynomial families and interval arithmetic.

Four families are supported, labelled T, U, V, W (first to fourth kind).
Every family satisfies the same three-term recurrence

    p_{n+1}(t) = 2 t p_n(t) - p_{n-1}(t),

and they differ only in the degree-1 seed: t, 2t, 2t - 1, 2t + 1.  The
recurrence is the primary evaluator; a closed trigonometric form is provided
as an independent cross-check.  Everything in this module is pure and
thread-safe.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum

__all__ = [
    "ChebKind",
    "Interval",
    "affine_inverse",
    "affine_map",
    "clamp_reference",
    "eval_cheb",
    "eval_cheb_trig",
    "gamma",
    "gamma_tilde",
]

# Arguments this far outside [-1, 1] (or [0, pi]) are treated as round-off
# and clamped; anything further out is a domain error.
REFERENCE_BAND = 1e-12


class ChebKind(Enum):
    """The four Chebyshev polynomial families."""

    FIRST = "T"
    SECOND = "U"
    THIRD = "V"
    FOURTH = "W"


# degree-1 recurrence seed, as (scale, offset) in p_1(t) = scale * t + offset
_SEED = {
    ChebKind.FIRST: (1.0, 0.0),
    ChebKind.SECOND: (2.0, 0.0),
    ChebKind.THIRD: (2.0, -1.0),
    ChebKind.FOURTH: (2.0, 1.0),
}


@dataclass(frozen=True)
class Interval:
    """Closed bounded interval [a, b] with a < b."""

    a: float
    b: float

    def __post_init__(self) -> None:
        if not (math.isfinite(self.a) and math.isfinite(self.b)):
            raise ValueError(f"interval endpoints must be finite, got [{self.a}, {self.b}]")
        if not self.a < self.b:
            raise ValueError(f"interval requires a < b, got [{self.a}, {self.b}]")

    @property
    def h(self) -> float:
        """Interval length b - a."""
        return self.b - self.a

    @property
    def midpoint(self) -> float:
        return 0.5 * (self.a + self.b)


def clamp_reference(t: float) -> float:
    """Snap t to [-1, 1], allowing round-off spill of at most REFERENCE_BAND."""
    if abs(t) > 1.0 + REFERENCE_BAND:
        raise ValueError(f"reference coordinate {t!r} lies outside [-1, 1]")
    return min(1.0, max(-1.0, t))


def affine_map(interval: Interval, t: float) -> float:
    """Map the reference coordinate t in [-1, 1] onto [a, b]."""
    t = clamp_reference(t)
    return 0.5 * interval.h * t + interval.midpoint


def affine_inverse(interval: Interval, x: float) -> float:
    """Map x in [a, b] back to the reference coordinate in [-1, 1]."""
    band = REFERENCE_BAND * max(1.0, abs(interval.a), abs(interval.b))
    if x < interval.a - band or x > interval.b + band:
        raise ValueError(f"{x!r} lies outside [{interval.a}, {interval.b}]")
    x = min(interval.b, max(interval.a, x))
    t = (2.0 * x - interval.a - interval.b) / interval.h
    return min(1.0, max(-1.0, t))


def gamma(n: int) -> int:
    """Interior normalizer: 1 for index 0, else 2."""
    if n < 0:
        raise ValueError("index must be nonnegative")
    return 1 if n == 0 else 2


def gamma_tilde(j: int, n: int) -> int:
    """Endpoint normalizer for an n-point closed node set: 2 at j in {0, n-1}, else 1."""
    if n < 1 or not 0 <= j <= n - 1:
        raise ValueError(f"index {j} outside 0..{n - 1}")
    return 2 if j in (0, n - 1) else 1


def eval_cheb(kind: ChebKind, degree: int, t: float) -> float:
    """Evaluate the degree-n polynomial of the given family at t in [-1, 1].

    Runs the shared three-term recurrence upward from the family seed;
    cost is O(degree).
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    t = clamp_reference(t)
    if degree == 0:
        return 1.0
    scale, offset = _SEED[kind]
    prev = 1.0
    cur = scale * t + offset
    for _ in range(degree - 1):
        prev, cur = cur, 2.0 * t * cur - prev
    return cur


def eval_cheb_trig(kind: ChebKind, degree: int, theta: float) -> float:
    """Evaluate via the closed trigonometric form at t = cos(theta), theta in [0, pi].

    Serves as an independent cross-check of eval_cheb.  The quotient forms of
    U, V, W are 0/0 at one endpoint; the analytic limits are hard-coded there:
    U_n(1) = n + 1, U_n(-1) = (-1)^n (n + 1), V_n(-1) = (-1)^n (2n + 1),
    W_n(1) = 2n + 1.
    """
    if degree < 0:
        raise ValueError("degree must be nonnegative")
    if theta < -REFERENCE_BAND or theta > math.pi + REFERENCE_BAND:
        raise ValueError(f"angle {theta!r} lies outside [0, pi]")
    theta = min(math.pi, max(0.0, theta))
    n = degree
    if kind is ChebKind.FIRST:
        return math.cos(n * theta)
    if kind is ChebKind.SECOND:
        if theta == 0.0:
            return float(n + 1)
        if theta == math.pi:
            return float((-1) ** n * (n + 1))
        return math.sin((n + 1) * theta) / math.sin(theta)
    if kind is ChebKind.THIRD:
        if theta == math.pi:
            return float((-1) ** n * (2 * n + 1))
        return math.cos((n + 0.5) * theta) / math.cos(0.5 * theta)
    if theta == 0.0:
        return float(2 * n + 1)
    return math.sin((n + 0.5) * theta) / math.sin(0.5 * theta)
