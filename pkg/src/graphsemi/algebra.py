"""The graph inverse semigroup G(E) in normal form.

Every nonzero element is stored as a pair ``[x|y]`` of paths with
``r(x) = r(y)``, meaning ``x y^-1``.  The normal form is unique, so ``==`` is
semigroup equality; the only rewriting happens inside :func:`mul`, which
cancels ``y^-1 t`` by prefix matching (``e^-1 f = delta(e, f) r(e)``).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from typing import Iterable, Union

import numpy as np

from .graph import CapacityError, Path, concat, enumerate_paths, strip_prefix, strip_suffix

__all__ = [
    "ZERO",
    "AlgebraError",
    "Element",
    "IdempotentClass",
    "LawReport",
    "MixedGraphError",
    "PathPair",
    "Truncation",
    "Zero",
    "audit_laws",
    "brute_solve",
    "defining_relations",
    "element_key",
    "enumerate_elements",
    "ghost",
    "ideal_witness",
    "idempotent_law_violations",
    "idempotent_product_class",
    "inv",
    "is_idempotent",
    "mul",
    "path_element",
    "product",
    "solve_left",
    "solve_right",
    "vertex",
]


class AlgebraError(ValueError):
    pass


class MixedGraphError(AlgebraError):
    pass


class Zero:
    """The zero of G(E); use the singleton :data:`ZERO`."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "0"

    __str__ = __repr__

    def __reduce__(self):
        return (Zero, ())


ZERO = Zero()


class PathPair:
    """The nonzero element ``x y^-1``."""

    __slots__ = ("x", "y", "_hash")

    def __init__(self, x: Path, y: Path):
        if x.end != y.end:
            raise AlgebraError(f"r({x}) != r({y})")
        self.x = x
        self.y = y
        self._hash = hash((x._hash, y._hash))

    @property
    def graph(self):
        return self.x.graph

    def __eq__(self, other):
        if not isinstance(other, PathPair):
            return NotImplemented
        return self.x == other.x and self.y == other.y

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"[{self.x}|{self.y}]"

    __str__ = __repr__

    def is_vertex(self) -> bool:
        return not self.x.edges and not self.y.edges


Element = Union[Zero, PathPair]


def element_key(a: Element) -> tuple:
    if a is ZERO:
        return (0,)
    return (1, a.x.sort_key(), a.y.sort_key())


def vertex(graph, v: str) -> PathPair:
    p = graph.vertex(v)
    return PathPair(p, p)


def path_element(p: Path) -> PathPair:
    """``p`` as the element ``p r(p)^-1``."""
    return PathPair(p, Path(p.graph, p.end))


def ghost(p: Path) -> PathPair:
    """``p^-1``."""
    return PathPair(Path(p.graph, p.end), p)


def _same_graph(a: PathPair, b: PathPair) -> None:
    ga, gb = a.x.graph, b.x.graph
    if ga is not gb and ga != gb:
        raise MixedGraphError("operands belong to different graphs")


def mul(a: Element, b: Element) -> Element:
    """Product in G(E).

    For ``a = p q^-1`` and ``b = t z^-1``: if ``t = q w`` the product is
    ``(p w) z^-1``; if ``q = t w`` it is ``p (z w)^-1``; otherwise 0.
    """
    if a is ZERO or b is ZERO:
        return ZERO
    _same_graph(a, b)
    q = a.y
    t = b.x
    nq = len(q.edges)
    nt = len(t.edges)
    if q.base != t.base:
        return ZERO
    if nq <= nt:
        if t.edges[:nq] != q.edges:
            return ZERO
        if nq == nt:
            return PathPair(a.x, b.y)
        p = a.x
        return PathPair(Path(p.graph, p.base, p.edges + t.edges[nq:], t.end), b.y)
    if q.edges[:nt] != t.edges:
        return ZERO
    z = b.y
    return PathPair(a.x, Path(z.graph, z.base, z.edges + q.edges[nt:], q.end))


def product(*factors: Element) -> Element:
    """Left-to-right product of one or more elements."""
    it = iter(factors)
    acc = next(it)
    for f in it:
        acc = mul(acc, f)
    return acc


def inv(a: Element) -> Element:
    if a is ZERO:
        return ZERO
    return PathPair(a.y, a.x)


def is_idempotent(a: Element) -> bool:
    return a is ZERO or a.x == a.y


class IdempotentClass(enum.Enum):
    ZERO = "zero"
    EQUALS_LEFT = "equals-left"
    EQUALS_RIGHT = "equals-right"


def idempotent_product_class(a: Element, b: Element) -> IdempotentClass:
    """Which of ``0, a, b`` the product of two idempotents equals."""
    if not (is_idempotent(a) and is_idempotent(b)):
        raise AlgebraError("both arguments must be idempotent")
    ab = mul(a, b)
    if ab is ZERO:
        return IdempotentClass.ZERO
    if ab == a:
        return IdempotentClass.EQUALS_LEFT
    if ab == b:
        return IdempotentClass.EQUALS_RIGHT
    raise AlgebraError(f"{a} * {b} = {ab} is none of 0, left, right")


def _suffix(p: Path, k: int) -> Path:
    n = len(p.edges)
    if k == 0:
        return Path(p.graph, p.end)
    if k == n:
        return p
    return Path(p.graph, p.graph.source(p.edges[n - k]), p.edges[n - k:], p.end)


def solve_right(mu: Element, nu: Element) -> set[PathPair]:
    """All rho with ``mu rho = nu`` (a finite set for nonzero mu, nu).

    With ``mu = p q^-1`` and ``nu = t u^-1`` a solution ``x y^-1`` either
    has ``x = q z`` (forcing ``t = p z``, ``y = u``) or ``q = x z`` (forcing
    ``t = p`` and ``u = y z``).  Both shapes are enumerated and every
    candidate is confirmed with :func:`mul`.
    """
    if mu is ZERO or nu is ZERO:
        raise AlgebraError("solve_right needs nonzero operands")
    _same_graph(mu, nu)
    p, q = mu.x, mu.y
    t, u = nu.x, nu.y
    candidates = set()
    z = strip_prefix(p, t)
    if z is not None:
        candidates.add(PathPair(concat(q, z), u))
    if t == p:
        for k in range(min(len(q), len(u)) + 1):
            z = _suffix(q, k)
            x = strip_suffix(z, q)
            y = strip_suffix(z, u)
            if y is not None:
                candidates.add(PathPair(x, y))
    return {rho for rho in candidates if mul(mu, rho) == nu}


def solve_left(mu: Element, nu: Element) -> set[PathPair]:
    """All rho with ``rho mu = nu``, via ``mu^-1 rho^-1 = nu^-1``."""
    if mu is ZERO or nu is ZERO:
        raise AlgebraError("solve_left needs nonzero operands")
    return {inv(r) for r in solve_right(inv(mu), inv(nu))}


def brute_solve(mu: Element, nu: Element, tr: "Truncation", side: str = "right") -> set[Element]:
    """Exhaustive solutions within a truncation (oracle for the solvers)."""
    if side == "right":
        return {rho for rho in tr.elements if mul(mu, rho) == nu}
    if side == "left":
        return {rho for rho in tr.elements if mul(rho, mu) == nu}
    raise ValueError(f"side must be 'left' or 'right', not {side!r}")


def ideal_witness(x: Path, y: Path) -> tuple[PathPair, PathPair]:
    """Evaluate ``x^-1 (x y^-1) y`` and ``x v y^-1`` for ``v = r(x) = r(y)``.

    The first is the vertex v and the second is ``x y^-1`` again, which
    shows that ``x y^-1`` and v generate the same two-sided ideal.
    """
    if x.end != y.end:
        raise AlgebraError(f"r({x}) != r({y})")
    xy = PathPair(x, y)
    v = Path(x.graph, x.end)
    vv = PathPair(v, v)
    w1 = product(ghost(x), xy, path_element(y))
    w2 = product(path_element(x), vv, ghost(y))
    if w1 != vv or w2 != xy:
        raise AlgebraError(f"ideal identities fail for {x}, {y}: got {w1}, {w2}")
    return w1, w2


@dataclass(frozen=True)
class Truncation:
    """Zero plus every ``x y^-1`` with ``|x|, |y| <= max_len``."""

    graph: object
    max_len: int
    elements: tuple

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def nonzero(self) -> list[PathPair]:
        return [a for a in self.elements if a is not ZERO]


DEFAULT_BUDGET = 10**6


def enumerate_elements(graph, max_len: int, limit: int = DEFAULT_BUDGET) -> Truncation:
    paths = enumerate_paths(graph, max_len, limit=limit)
    by_range: dict[str, list[Path]] = {}
    for p in paths:
        by_range.setdefault(p.end, []).append(p)
    total = 1 + sum(len(ps) ** 2 for ps in by_range.values())
    if total > limit:
        raise CapacityError(f"truncation would hold {total} elements (budget {limit})")
    elements = [ZERO]
    for x in paths:
        for y in by_range[x.end]:
            elements.append(PathPair(x, y))
    return Truncation(graph, max_len, tuple(elements))


def defining_relations(graph) -> Iterable[tuple[str, Element, Element]]:
    """Yield ``(name, lhs, rhs)`` for relations V, E1, E2, CK1 of a finite graph."""
    vs = {v: vertex(graph, v) for v in graph.vertices}
    for v in graph.vertices:
        for w in graph.vertices:
            yield "V", mul(vs[v], vs[w]), vs[v] if v == w else ZERO
    for name in graph.edges:
        e = path_element(graph.path(name))
        e_inv = inv(e)
        s, r = vs[graph.source(name)], vs[graph.range(name)]
        yield "E1", mul(s, e), e
        yield "E1", mul(e, r), e
        yield "E2", mul(r, e_inv), e_inv
        yield "E2", mul(e_inv, s), e_inv
        for other in graph.edges:
            f = path_element(graph.path(other))
            yield "CK1", mul(e_inv, f), r if name == other else ZERO


@dataclass
class LawReport:
    size: int
    triples: int
    associativity_failures: int
    inverse_law_failures: int
    inverse_uniqueness_failures: int
    first_failure: tuple | None = None

    @property
    def ok(self) -> bool:
        return not (self.associativity_failures or self.inverse_law_failures or self.inverse_uniqueness_failures)


class _Interner:
    def __init__(self, seed: Iterable[Element]):
        self.items: list[Element] = []
        self.index: dict[Element, int] = {}
        for a in seed:
            self(a)

    def __call__(self, a: Element) -> int:
        i = self.index.get(a)
        if i is None:
            i = self.index[a] = len(self.items)
            self.items.append(a)
        return i


def audit_laws(tr: Truncation) -> LawReport:
    """Exhaustive associativity, inverse-law and inverse-uniqueness checks.

    Products of truncation members are interned, so ``(ab)c`` and ``a(bc)``
    for all triples are compared as integer arrays.
    """
    elems = list(tr.elements)
    n = len(elems)
    ids = _Interner(elems)
    table = np.empty((n, n), dtype=np.int32)
    for i, a in enumerate(elems):
        for j, b in enumerate(elems):
            table[i, j] = ids(mul(a, b))
    image = np.unique(table)
    pos = np.full(len(ids.items), -1, dtype=np.int32)
    pos[image] = np.arange(len(image), dtype=np.int32)
    left = np.empty((len(image), n), dtype=np.int32)  # (k c)
    right = np.empty((n, len(image)), dtype=np.int32)  # (a k)
    for r, k in enumerate(image):
        kk = ids.items[k]
        for c, el in enumerate(elems):
            left[r, c] = ids(mul(kk, el))
            right[c, r] = ids(mul(el, kk))
    pt = pos[table]
    ar = np.arange(n)
    assoc = left[pt[:, :, None], ar[None, None, :]] != right[ar[:, None, None], pt[None, :, :]]
    n_assoc = int(assoc.sum())
    first = None
    if n_assoc:
        i, j, k = (int(v) for v in np.argwhere(assoc)[0])
        first = ("associativity", elems[i], elems[j], elems[k])
    del assoc

    inverse_fail = 0
    for a in elems:
        b = inv(a)
        if mul(mul(a, b), a) != a or mul(mul(b, a), b) != b:
            inverse_fail += 1
            first = first or ("inverse", a)

    aba = left[pt, ar[:, None]]
    both = (aba == ar[:, None]) & (aba.T == ar[None, :])
    uniq_fail = 0
    for i, a in enumerate(elems):
        sols = np.flatnonzero(both[i])
        if len(sols) != 1 or elems[sols[0]] != inv(a):
            uniq_fail += 1
            first = first or ("uniqueness", a)
    return LawReport(n, n**3, n_assoc, inverse_fail, uniq_fail, first)


def idempotent_law_violations(tr: Truncation) -> list[tuple[Element, Element]]:
    """Pairs of idempotents whose product is not one of ``0, a, b``."""
    idem = [a for a in tr.elements if is_idempotent(a)]
    bad = []
    for a in idem:
        for b in idem:
            if mul(a, b) not in (ZERO, a, b):
                bad.append((a, b))
    return bad
