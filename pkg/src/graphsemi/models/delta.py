"""P1 with one extra idempotent delta placed at the limit of e^n e^-m.

Multiplication: ``mu delta = delta mu = delta`` for nonzero mu in P1,
``0 delta = delta 0 = 0`` and ``delta delta = delta``.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Union

from ..algebra import ZERO, Element, PathPair, inv, mul
from ..graph import rose
from ..metric import d0

__all__ = [
    "DELTA",
    "P1",
    "Delta",
    "DeltaElement",
    "delta_dist",
    "delta_dist_literal",
    "delta_inv",
    "delta_mul",
    "power_pair",
]

P1 = rose(1, names=("e",))


class Delta:
    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "delta"

    __str__ = __repr__

    def __reduce__(self):
        return (Delta, ())


DELTA = Delta()

DeltaElement = Union[Element, Delta]


def power_pair(n: int, m: int) -> PathPair:
    """``e^n e^-m`` in P1."""
    e = P1.path("e")
    return PathPair(e.power(n), e.power(m))


def delta_mul(a: DeltaElement, b: DeltaElement) -> DeltaElement:
    if a is DELTA or b is DELTA:
        return ZERO if a is ZERO or b is ZERO else DELTA
    return mul(a, b)


def delta_inv(a: DeltaElement) -> DeltaElement:
    return DELTA if a is DELTA else inv(a)


def _p1_level(a: PathPair) -> int:
    return min(len(a.x), len(a.y))


def delta_dist(a: DeltaElement, b: DeltaElement) -> Fraction:
    """Metric on ``P1 | {delta}``.

    0 is isolated at distance 1.  Off 0 the space is a copy of the non-zero
    part of the P1 metric with delta standing in for 0, so delta is at
    distance ``1/(min(n, m) + 1)`` from ``e^n e^-m`` and two distinct P1
    points are at ``d0(a) + d0(b)``.
    """
    if a == b:
        return Fraction(0)
    if a is ZERO or b is ZERO:
        return Fraction(1)
    if a is DELTA:
        return d0(b)
    if b is DELTA:
        return d0(a)
    return d0(a) + d0(b)


def delta_dist_literal(a: DeltaElement, b: DeltaElement) -> Fraction:
    """Distance 1 between distinct points of P1 and the level formula at delta.

    This is not a metric: ``d(e^2 e^-2, e^3 e^-3) = 1`` exceeds the route
    through delta, ``1/3 + 1/4``.  Kept for comparison only.
    """
    if a == b:
        return Fraction(0)
    if a is DELTA and b is not ZERO:
        return Fraction(1, _p1_level(b) + 1)
    if b is DELTA and a is not ZERO:
        return Fraction(1, _p1_level(a) + 1)
    return Fraction(1)
