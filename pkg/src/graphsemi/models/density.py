"""P2 together with pairs of e-heavy / f-heavy eventually periodic sequences.

A pair ``(p, q)`` stands for the infinite word ``p1 p2 ... q2^-1 q1^-1``.
P2 elements ``x y^-1`` are padded with the symbol 1 (``p = x 1 1 ...``,
``q = y 1 1 ...``) and 0 is the all-0 pair; the distance is the reciprocal
of the first index where either side disagrees.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Union

from ..algebra import ZERO, Element, PathPair, mul
from ..graph import Path, rose

__all__ = [
    "P2",
    "DensityElement",
    "PeriodicSeq",
    "SeqPair",
    "density_dist",
    "density_isolation_radius",
    "density_mul",
    "density_of",
    "density_valid",
    "distinct_pairs",
    "parse_density",
    "random_pair",
    "truncate_density",
]

P2 = rose(2)


def _primitive_root(w: str) -> str:
    n = len(w)
    for d in range(1, n + 1):
        if n % d == 0 and w[:d] * (n // d) == w:
            return w[:d]
    return w


@dataclass(frozen=True, init=False)
class PeriodicSeq:
    """``preperiod period period ...``, stored in canonical (shortest) form."""

    preperiod: str
    period: str

    def __init__(self, preperiod: str, period: str):
        if not period:
            raise ValueError("period must be nonempty")
        period = _primitive_root(period)
        while preperiod and preperiod[-1] == period[-1]:
            preperiod = preperiod[:-1]
            period = period[-1] + period[:-1]
        object.__setattr__(self, "preperiod", preperiod)
        object.__setattr__(self, "period", period)

    def __getitem__(self, i: int) -> str:
        """Symbol at 1-based position i."""
        if i < 1:
            raise IndexError("positions start at 1")
        k = len(self.preperiod)
        if i <= k:
            return self.preperiod[i - 1]
        return self.period[(i - 1 - k) % len(self.period)]

    def head(self, n: int) -> str:
        return "".join(self[i] for i in range(1, n + 1))

    def drop(self, k: int) -> "PeriodicSeq":
        if k <= len(self.preperiod):
            return PeriodicSeq(self.preperiod[k:], self.period)
        shift = (k - len(self.preperiod)) % len(self.period)
        return PeriodicSeq("", self.period[shift:] + self.period[:shift])

    def push(self, word: str) -> "PeriodicSeq":
        return PeriodicSeq(word + self.preperiod, self.period)

    def __str__(self):
        return f"{self.preperiod};{self.period}"


def first_difference(a: PeriodicSeq, b: PeriodicSeq) -> int | None:
    """Smallest 1-based index where a and b differ, None if they are equal.

    Past ``max(preperiods) + lcm(periods)`` both sequences repeat together,
    so agreement up to that point is equality.
    """
    bound = max(len(a.preperiod), len(b.preperiod)) + math.lcm(len(a.period), len(b.period))
    for i in range(1, bound + 1):
        if a[i] != b[i]:
            return i
    return None


def density_of(s: PeriodicSeq) -> Fraction:
    return Fraction(s.period.count("e"), len(s.period))


@dataclass(frozen=True)
class SeqPair:
    p: PeriodicSeq
    q: PeriodicSeq

    def __str__(self):
        return f"per({self.p} | {self.q})"


DensityElement = Union[Element, SeqPair]


def density_valid(a: DensityElement) -> bool:
    if isinstance(a, SeqPair):
        return density_of(a.p) > Fraction(1, 2) and density_of(a.q) < Fraction(1, 2)
    return True


def _word(path: Path) -> str:
    return "".join(path.edges)


def _path(word: str) -> Path:
    return P2.path(*word) if word else P2.vertex("v")


def density_mul(a: DensityElement, b: DensityElement) -> DensityElement:
    """Product; ``x y^-1`` acts on a sequence pair by pushing and popping symbols."""
    for c in (a, b):
        if not density_valid(c):
            raise ValueError(f"{c} is not a valid element")
    if a is ZERO or b is ZERO:
        return ZERO
    if isinstance(a, SeqPair) and isinstance(b, SeqPair):
        return ZERO
    if isinstance(b, SeqPair):
        x, y = _word(a.x), _word(a.y)
        if b.p.head(len(y)) != y:
            return ZERO
        return SeqPair(b.p.drop(len(y)).push(x), b.q)
    if isinstance(a, SeqPair):
        x, y = _word(b.x), _word(b.y)
        if a.q.head(len(x)) != x:
            return ZERO
        return SeqPair(a.p, a.q.drop(len(x)).push(y))
    return mul(a, b)


def _sides(a: DensityElement) -> tuple[PeriodicSeq, PeriodicSeq]:
    if a is ZERO:
        return PeriodicSeq("", "0"), PeriodicSeq("", "0")
    if isinstance(a, SeqPair):
        return a.p, a.q
    return PeriodicSeq(_word(a.x), "1"), PeriodicSeq(_word(a.y), "1")


def density_dist(a: DensityElement, b: DensityElement) -> Fraction:
    ap, aq = _sides(a)
    bp, bq = _sides(b)
    hits = [i for i in (first_difference(ap, bp), first_difference(aq, bq)) if i is not None]
    if not hits:
        return Fraction(0)
    return Fraction(1, min(hits))


def truncate_density(a: SeqPair, n: int) -> PathPair:
    """``p1 ... pn qn^-1 ... q1^-1`` as an element of P2."""
    if not density_valid(a):
        raise ValueError(f"{a} is not a valid element")
    return PathPair(_path(a.p.head(n)), _path(a.q.head(n)))


def density_isolation_radius(a: Element) -> Fraction:
    """A radius r with ``B(a, r) = {a}`` for a in P2.

    Anything within ``1/(max(|x|, |y|) + 1)`` of ``x y^-1`` matches it
    through the first padding symbol on both sides and hence equals it.
    """
    if isinstance(a, SeqPair):
        raise ValueError("sequence pairs are not isolated")
    if a is ZERO:
        return Fraction(1)
    return Fraction(1, max(len(a.x), len(a.y)) + 1)


_PER = re.compile(r"per\(([ef]*);([ef]+)\|([ef]*);([ef]+)\)\Z")


def parse_density(text: str) -> SeqPair:
    """Parse ``per(pre;period | pre;period)``."""
    mt = _PER.match("".join(text.split()))
    if mt is None:
        raise ValueError(f"cannot parse sequence pair {text!r}")
    a, b, c, d = mt.groups()
    return SeqPair(PeriodicSeq(a, b), PeriodicSeq(c, d))


def random_pair(rng: random.Random, max_pre: int = 4, max_period: int = 4) -> SeqPair:
    """A valid pair with preperiods and periods of bounded length."""

    def side(heavy: str) -> PeriodicSeq:
        while True:
            pre = "".join(rng.choice("ef") for _ in range(rng.randint(0, max_pre)))
            per = "".join(rng.choice("ef") for _ in range(rng.randint(1, max_period)))
            s = PeriodicSeq(pre, per)
            dens = density_of(s)
            if (dens > Fraction(1, 2)) if heavy == "e" else (dens < Fraction(1, 2)):
                return s

    return SeqPair(side("e"), side("f"))


def distinct_pairs(count: int, seed: int = 0, max_pre: int = 4, max_period: int = 4) -> list[SeqPair]:
    """``count`` distinct valid pairs drawn with a seeded generator."""
    rng = random.Random(seed)
    seen: dict[SeqPair, None] = {}
    while len(seen) < count:
        seen.setdefault(random_pair(rng, max_pre, max_period))
    return list(seen)
