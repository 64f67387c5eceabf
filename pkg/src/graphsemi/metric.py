"""The non-discrete metric on G(E) and its finite audits.

Every value is a :class:`fractions.Fraction`.  ``d0(a)`` is the distance
from ``a`` to 0; two distinct points are at distance ``d0(a) + d0(b)``, so
each nonzero point is isolated while 0 is a limit of long idempotents.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

import numpy as np

from .algebra import ZERO, Element, PathPair, Truncation, mul
from .graph import find_path_of_length

__all__ = [
    "Ball",
    "ContinuityReport",
    "MetricReport",
    "NonDiscretenessReport",
    "audit_continuity",
    "audit_metric",
    "ball_members",
    "continuity_witness",
    "d0",
    "dist",
    "isolation_failures",
    "matrix_axiom_violations",
    "metric_axiom_violations",
    "nondiscreteness_check",
]

EVIDENCE_NOTE = "evidence restricted to a finite truncation, not a proof"


def _level(a: Element) -> int:
    return min(len(a.x.edges), len(a.y.edges))


def d0(a: Element) -> Fraction:
    if a is ZERO:
        return Fraction(0)
    return Fraction(1, _level(a) + 1)


def dist(a: Element, b: Element) -> Fraction:
    if a == b:
        return Fraction(0)
    return d0(a) + d0(b)


@dataclass(frozen=True)
class Ball:
    """Open ball ``{y : d(center, y) < radius}``."""

    center: Element
    radius: Fraction

    def __post_init__(self):
        if self.radius <= 0:
            raise ValueError("ball radius must be positive")

    def __contains__(self, a: Element) -> bool:
        return dist(self.center, a) < self.radius


def ball_members(ball: Ball, tr: Truncation | Sequence[Element]) -> list[Element]:
    elems = tr.elements if isinstance(tr, Truncation) else tr
    return [a for a in elems if a in ball]


class _LevelIndex:
    """Truncation members grouped by ``min(|x|, |y|)`` for fast ball queries.

    ``B(c, r)`` is ``{c}`` plus every other point whose d0 is below
    ``r - d0(c)``, i.e. whose level is at least ``ceil(1/(r - d0(c))) - 1``
    (strictly above when that reciprocal is an integer).
    """

    def __init__(self, elements: Sequence[Element]):
        self.zero = ZERO in elements
        top = max((_level(a) for a in elements if a is not ZERO), default=-1)
        self.by_level: list[list[Element]] = [[] for _ in range(top + 1)]
        for a in elements:
            if a is not ZERO:
                self.by_level[_level(a)].append(a)

    def ball(self, center: Element, radius: Fraction) -> list[Element]:
        slack = radius - d0(center)
        out: list[Element] = []
        if slack <= 0:
            return [center]
        if self.zero:
            out.append(ZERO)
        # d0(a) = 1/(k+1) < slack  <=>  k + 1 > 1/slack
        lo = math.floor(1 / slack)
        for level in self.by_level[max(lo, 0):]:
            out.extend(level)
        if center not in out:
            out.append(center)
        return out


@dataclass
class MetricReport:
    points: int
    violations: list = field(default_factory=list)
    isolation_failures: list = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations and not self.isolation_failures


def metric_axiom_violations(points: Sequence, distance: Callable, limit: int = 10) -> list[tuple]:
    """Check the metric axioms on every pair and triple of ``points``.

    The distance matrix is scaled to integers by the lcm of denominators so
    the triangle inequality over all triples is an exact integer comparison.
    """
    if not points:
        return []
    rows = [[Fraction(distance(a, b)) for b in points] for a in points]
    den = 1
    for row in rows:
        for v in row:
            den = math.lcm(den, v.denominator)
    mat = np.array([[int(v * den) for v in row] for row in rows], dtype=np.int64)
    return matrix_axiom_violations(mat, points, limit)


def matrix_axiom_violations(mat: np.ndarray, points: Sequence, limit: int = 10) -> list[tuple]:
    """Metric axioms for an integer (scaled) distance matrix over ``points``."""
    n = len(points)
    bad: list[tuple] = []
    for i, j in np.argwhere(mat < 0)[:limit]:
        bad.append(("nonnegativity", points[i], points[j]))
    for i in np.flatnonzero(np.diagonal(mat) != 0)[:limit]:
        bad.append(("identity", points[i]))
    off = mat == 0
    np.fill_diagonal(off, False)
    for i, j in np.argwhere(off)[:limit]:
        bad.append(("indiscernibles", points[i], points[j]))
    for i, j in np.argwhere(mat != mat.T)[:limit]:
        bad.append(("symmetry", points[i], points[j]))
    for k in range(n):
        if len(bad) >= limit:
            break
        # d(i, j) <= d(i, k) + d(k, j) for all i, j at once
        viol = mat > mat[:, k : k + 1] + mat[k : k + 1, :]
        for i, j in np.argwhere(viol)[: limit - len(bad)]:
            bad.append(("triangle", points[i], points[k], points[j]))
    return bad[:limit]


def isolation_failures(tr: Truncation) -> list[tuple[Element, list[Element]]]:
    """Nonzero points whose ball of radius d0 holds anything but themselves."""
    index = _LevelIndex(tr.elements)
    out = []
    for a in tr.elements:
        if a is ZERO:
            continue
        members = index.ball(a, d0(a))
        if members != [a]:
            out.append((a, members))
    return out


def audit_metric(tr: Truncation) -> MetricReport:
    report = MetricReport(len(tr.elements))
    report.violations = metric_axiom_violations(list(tr.elements), dist)
    report.isolation_failures = isolation_failures(tr)
    return report


@dataclass
class NonDiscretenessReport:
    graph: str
    n_max: int
    witnesses: list[tuple[int, PathPair, Fraction]]


def nondiscreteness_check(graph, n_max: int) -> NonDiscretenessReport:
    """For each ``1 <= n <= n_max`` exhibit ``y y^-1`` with ``|y| = n``.

    Its distance to 0 is ``1/(n+1) < 1/n``.  Raises ValueError when the
    graph has no path of the required length.
    """
    witnesses = []
    for n in range(1, n_max + 1):
        y = find_path_of_length(graph, n)
        if y is None:
            raise ValueError(f"{graph!r} has no path of length {n}; 0 is isolated")
        w = PathPair(y, y)
        r = d0(w)
        if not (0 < r < Fraction(1, n)):
            raise AssertionError(f"witness {w} has d0 = {r}")
        witnesses.append((n, w, r))
    return NonDiscretenessReport(repr(graph), n_max, witnesses)


def continuity_witness(mu: Element, nu: Element, n: int) -> int:
    """An m with ``B(mu, 1/m) B(nu, 1/m)`` inside ``B(mu nu, 1/n)``.

    Two nonzero operands get singleton balls.  For ``0 * pq^-1`` a point
    ``rho`` near 0 has level at least ``|p| + n``, so ``rho pq^-1`` is 0 or
    keeps level at least n; the mirror case uses ``|q|``.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if mu is ZERO and nu is ZERO:
        return n
    if mu is ZERO:
        return len(nu.x.edges) + n
    if nu is ZERO:
        return len(mu.y.edges) + n
    return max(_level(mu), _level(nu)) + 1


@dataclass
class ContinuityReport:
    graph: str
    max_len: int
    n_max: int
    checked: int
    violations: list = field(default_factory=list)
    evidence_bound: str = ""
    note: str = EVIDENCE_NOTE

    @property
    def ok(self) -> bool:
        return not self.violations


def audit_continuity(
    tr: Truncation,
    n_max: int,
    witness: Callable[[Element, Element, int], int] = continuity_witness,
    pairs: Sequence[tuple[Element, Element]] | None = None,
    limit: int = 20,
) -> ContinuityReport:
    """Check every ball product against the target ball inside ``tr``.

    ``pairs`` restricts the centres (default: all of ``tr`` squared); ball
    members always range over the whole truncation.
    """
    index = _LevelIndex(tr.elements)
    report = ContinuityReport(repr(tr.graph), tr.max_len, n_max, 0)
    report.evidence_bound = f"ball members with path lengths <= {tr.max_len}"
    if pairs is None:
        pairs = [(a, b) for a in tr.elements for b in tr.elements]
    ball_cache: dict = {}

    def ball(c, r):
        key = (c, r)
        if key not in ball_cache:
            ball_cache[key] = index.ball(c, r)
        return ball_cache[key]

    for mu, nu in pairs:
        target = mul(mu, nu)
        for n in range(1, n_max + 1):
            m = witness(mu, nu, n)
            r = Fraction(1, m)
            bound = Fraction(1, n)
            left, right = ball(mu, r), ball(nu, r)
            report.checked += len(left) * len(right)
            for a in left:
                for b in right:
                    if dist(target, mul(a, b)) >= bound:
                        if len(report.violations) < limit:
                            report.violations.append((mu, nu, n, m, a, b))
                        break
    return report
