"""A non-discrete T1 semigroup topology on G(E) for the ray graph.

The subbasic open sets are ``U(pq^-1, n) = {pq^-1} | {p x x^-1 q^-1 : |x| > n}``.
On the ray a nonzero element ``x y^-1`` is pinned down by ``s(x)``, ``s(y)``
and the index of the common range, which makes intersections decidable.
"""

from __future__ import annotations

from dataclasses import dataclass, field

from .algebra import ZERO, Element, PathPair, enumerate_elements, mul
from .graph import GraphError, Path, RayGraph, concat, strip_prefix

__all__ = [
    "SubbasicSet",
    "T1Audit",
    "T1Witness",
    "audit_t1",
    "audit_t1_witness",
    "subbasic_members",
    "t1_continuity_witness",
    "t1_intersection_witnesses",
    "t1_member",
    "t1_separation",
]


@dataclass(frozen=True)
class SubbasicSet:
    p: Path
    q: Path
    n: int

    def __post_init__(self):
        if self.p.end != self.q.end:
            raise GraphError(f"r({self.p}) != r({self.q})")
        if self.n < 0:
            raise ValueError("n must be nonnegative")

    @classmethod
    def at(cls, a: PathPair, n: int) -> "SubbasicSet":
        return cls(a.x, a.y, n)

    @property
    def center(self) -> PathPair:
        return PathPair(self.p, self.q)

    def __contains__(self, a: Element) -> bool:
        return t1_member(self, a)

    def __str__(self):
        return f"U({self.center}, {self.n})"


def t1_member(U: SubbasicSet, a: Element) -> bool:
    if a is ZERO:
        return False
    if a.x == U.p and a.y == U.q:
        return True
    w = strip_prefix(U.p, a.x)
    if w is None or len(w) <= U.n:
        return False
    return strip_prefix(U.q, a.y) == w


def subbasic_members(U: SubbasicSet, extra: int) -> list[PathPair]:
    """The centre plus the members with ``n < |x| <= n + extra`` (ray only)."""
    g = U.p.graph
    if not isinstance(g, RayGraph):
        raise GraphError("subbasic member listing needs the ray graph")
    start = g.index(U.p.end)
    out = [U.center]
    for length in range(U.n + 1, U.n + extra + 1):
        x = g.segment(start, length)
        out.append(PathPair(concat(U.p, x), concat(U.q, x)))
    return out


def _require_ray(a: Element) -> RayGraph:
    if a is ZERO:
        raise ValueError("nonzero element required")
    if not isinstance(a.graph, RayGraph):
        raise GraphError("the subbasic topology is defined on the ray graph")
    return a.graph


def t1_separation(a: Element, b: Element) -> SubbasicSet:
    """A subbasic set containing a but not b.

    With ``b = t z^-1`` any member ``p x x^-1 q^-1`` other than a has
    ``|x| <= max(|t|, |z|)`` if it equals b, so that bound excludes b.
    """
    _require_ray(a)
    _require_ray(b)
    if a == b:
        raise ValueError("cannot separate a point from itself")
    U = SubbasicSet(a.x, a.y, max(len(b.x), len(b.y)))
    if not t1_member(U, a) or t1_member(U, b):
        raise AssertionError(f"{U} does not separate {a} from {b}")
    return U


def _shape(g: RayGraph, U: SubbasicSet) -> tuple[int, int]:
    return g.index(U.p.base), g.index(U.q.base)


def t1_intersection_witnesses(Us: list[SubbasicSet], k: int) -> list[PathPair] | None:
    """k distinct members of the intersection, or None if it is empty.

    Members of ``U(pq^-1, n)`` other than the centre share the centre's
    source pair and have range index above ``index(r(p)) + n``.  So the
    intersection is empty exactly when two sets disagree on the source
    pair; otherwise every range index past all the bounds gives a member.
    """
    if not Us:
        raise ValueError("need at least one subbasic set")
    if k < 0:
        raise ValueError("k must be nonnegative")
    g = Us[0].p.graph
    if not isinstance(g, RayGraph):
        raise GraphError("intersection witnesses need the ray graph")
    shapes = {_shape(g, U) for U in Us}
    if len(shapes) > 1:
        return None
    a, b = shapes.pop()
    floor = max(g.index(U.p.end) + U.n for U in Us)
    out = []
    for j in range(1, k + 1):
        c = floor + j
        w = PathPair(g.segment(a, c - a), g.segment(b, c - b))
        if not all(t1_member(U, w) for U in Us):
            raise AssertionError(f"{w} is not in every set")
        out.append(w)
    return out


@dataclass(frozen=True)
class T1Witness:
    """Neighbourhoods V of mu and W of nu with ``VW`` inside ``target``.

    ``target`` is None when ``mu nu = 0``; then every product is 0.
    """

    V: SubbasicSet
    W: SubbasicSet
    target: SubbasicSet | None

    @property
    def zero(self) -> bool:
        return self.target is None


def _overlap(mu: PathPair, nu: PathPair) -> Path | None:
    """The x with ``t = qx`` or ``q = tx`` (mu = pq^-1, nu = tz^-1)."""
    x = strip_prefix(mu.y, nu.x)
    if x is None:
        x = strip_prefix(nu.x, mu.y)
    return x


def t1_continuity_witness(mu: Element, nu: Element, n: int, literal: bool = False) -> T1Witness:
    """Neighbourhoods for joint continuity of multiplication at (mu, nu).

    Write ``mu = pq^-1``, ``nu = tz^-1`` and let x be the overlap with
    ``t = qx`` or ``q = tx``.  A neighbour ``p w w^-1 q^-1`` of mu multiplies
    nu into the target only if ``|w| - |x| > n``, so both neighbourhoods use
    ``n + |x|``.  ``literal=True`` uses n itself, which fails once x is
    nonempty; it is kept to show why the margin is needed.
    """
    _require_ray(mu)
    _require_ray(nu)
    if n < 0:
        raise ValueError("n must be nonnegative")
    prod = mul(mu, nu)
    if prod is ZERO:
        return T1Witness(SubbasicSet.at(mu, 0), SubbasicSet.at(nu, 0), None)
    x = _overlap(mu, nu)
    big = n if literal else n + len(x)
    return T1Witness(SubbasicSet.at(mu, big), SubbasicSet.at(nu, big), SubbasicSet.at(prod, n))


def audit_t1_witness(w: T1Witness, margin: int) -> list[tuple[PathPair, PathPair, Element]]:
    """Products of listed neighbours that leave the target."""
    bad = []
    left = subbasic_members(w.V, margin)
    right = subbasic_members(w.W, margin)
    for a in left:
        for b in right:
            c = mul(a, b)
            ok = c is ZERO if w.zero else t1_member(w.target, c)
            if not ok:
                bad.append((a, b, c))
    return bad


@dataclass
class T1Audit:
    max_len: int
    n_max: int
    margin: int
    separations: int = 0
    continuity_checks: int = 0
    violations: list = field(default_factory=list)
    evidence_bound: str = ""

    @property
    def ok(self) -> bool:
        return not self.violations


def audit_t1(graph: RayGraph, max_len: int, n_max: int, margin: int = 4, limit: int = 20) -> T1Audit:
    """Separation for every nonzero pair and continuity for every pair and n <= n_max."""
    if not isinstance(graph, RayGraph):
        raise GraphError("the T1 audit needs the ray graph")
    tr = enumerate_elements(graph, max_len)
    elems = tr.nonzero()
    report = T1Audit(max_len, n_max, margin)
    report.evidence_bound = f"elements with paths <= {max_len}, neighbours up to {margin} beyond each bound"

    def flag(item):
        if len(report.violations) < limit:
            report.violations.append(item)

    for a in elems:
        for b in elems:
            if a != b:
                report.separations += 1
                try:
                    t1_separation(a, b)
                except AssertionError:
                    flag(("separation", a, b))
            for n in range(n_max + 1):
                report.continuity_checks += 1
                bad = audit_t1_witness(t1_continuity_witness(a, b, n), margin)
                if bad:
                    flag(("continuity", a, b, n, bad[0]))
    return report
