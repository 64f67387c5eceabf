"""Three spaces that compactify a polycyclic monoid around its zero."""

from .delta import DELTA, delta_dist, delta_mul
from .density import PeriodicSeq, SeqPair, density_dist, density_mul
from .xmodel import X, X_ZERO, XElement, x_dist, x_mul, x_normalize

__all__ = [
    "DELTA",
    "X",
    "X_ZERO",
    "PeriodicSeq",
    "SeqPair",
    "XElement",
    "delta_dist",
    "delta_mul",
    "density_dist",
    "density_mul",
    "x_dist",
    "x_mul",
    "x_normalize",
]
