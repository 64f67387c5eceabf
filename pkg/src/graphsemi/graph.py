"""Directed graphs and the combinatorics of their paths.

A graph is ``E = (E0, E1, s, r)``.  Two kinds exist: finite graphs, built
from an explicit vertex/edge list, and the infinite ray
``v1 -e1-> v2 -e2-> v3 ...`` whose vertices and edges are generated on
demand from their index.

Paths carry their base vertex explicitly, so the length-0 paths ``@v`` and
``@w`` are different values.  Every ordering produced here is
length-lexicographic, comparing ids with a natural sort (``e2 < e10``).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Iterator, Sequence

__all__ = [
    "CapacityError",
    "Graph",
    "GraphError",
    "GraphSyntaxError",
    "Path",
    "Pumping",
    "RayGraph",
    "build_graph",
    "concat",
    "enumerate_paths",
    "find_path_of_length",
    "id_key",
    "is_cycle",
    "line",
    "load_graph",
    "make_path",
    "pump",
    "ray",
    "rose",
    "strip_prefix",
    "strip_suffix",
]

DEFAULT_LIMIT = 10**6

_ID = re.compile(r"[A-Za-z][A-Za-z0-9_]*\Z")
_CHUNK = re.compile(r"\d+|\D+")


class GraphError(ValueError):
    """Semantic problem with a graph description or a path."""


class GraphSyntaxError(GraphError):
    def __init__(self, lineno: int, message: str):
        super().__init__(f"line {lineno}: {message}")
        self.lineno = lineno


class CapacityError(RuntimeError):
    """An enumeration would exceed its configured size bound."""


def id_key(name: str) -> tuple:
    """Natural sort key: digit runs compare numerically."""
    return tuple((0, int(c), "") if c.isdigit() else (1, 0, c) for c in _CHUNK.findall(name))


class Graph:
    """A finite directed graph."""

    kind = "finite"
    is_finite = True

    def __init__(self, vertices: Iterable[str], edges: Iterable[tuple[str, str, str]], name: str = "graph"):
        self.name = name
        verts = list(vertices)
        seen = set()
        for v in verts:
            if v in seen:
                raise GraphError(f"duplicate vertex id {v!r}")
            seen.add(v)
        self.vertices: tuple[str, ...] = tuple(sorted(verts, key=id_key))
        self._vset = frozenset(verts)
        self._ends: dict[str, tuple[str, str]] = {}
        for eid, src, rng in edges:
            if eid in self._ends:
                raise GraphError(f"duplicate edge id {eid!r}")
            if eid in self._vset:
                raise GraphError(f"id {eid!r} names both a vertex and an edge")
            for v in (src, rng):
                if v not in self._vset:
                    raise GraphError(f"edge {eid!r} references unknown vertex {v!r}")
            self._ends[eid] = (src, rng)
        self.edges: tuple[str, ...] = tuple(sorted(self._ends, key=id_key))
        out: dict[str, list[str]] = {v: [] for v in self.vertices}
        for eid in self.edges:
            out[self._ends[eid][0]].append(eid)
        self._out = {v: tuple(es) for v, es in out.items()}
        self._ident = (self.vertices, tuple((e, *self._ends[e]) for e in self.edges))
        self._hash = hash(self._ident)

    def source(self, edge: str) -> str:
        return self._ends[edge][0]

    def range(self, edge: str) -> str:
        return self._ends[edge][1]

    def has_vertex(self, v: str) -> bool:
        return v in self._vset

    def has_edge(self, e: str) -> bool:
        return e in self._ends

    def out_edges(self, v: str) -> tuple[str, ...]:
        return self._out[v]

    def __eq__(self, other):
        if not isinstance(other, Graph):
            return NotImplemented
        return self._ident == other._ident

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Graph({self.name!r}, {len(self.vertices)} vertices, {len(self.edges)} edges)"

    def vertex(self, v: str) -> "Path":
        if not self.has_vertex(v):
            raise GraphError(f"unknown vertex {v!r}")
        return Path(self, v)

    def path(self, *edges: str) -> "Path":
        return make_path(self, edges)

    def describe(self) -> str:
        """Render in the graph file grammar (round-trips through build_graph)."""
        lines = [f"v {v}" for v in self.vertices]
        lines += [f"e {e} {self.source(e)} {self.range(e)}" for e in self.edges]
        return "\n".join(lines) + "\n"


class RayGraph:
    """The infinite line ``v1 -e1-> v2 -e2-> ...``; vertices and edges are lazy."""

    kind = "ray"
    is_finite = False
    name = "ray"

    _V = re.compile(r"v([1-9]\d*)\Z")
    _E = re.compile(r"e([1-9]\d*)\Z")

    def index(self, ident: str) -> int:
        m = self._V.match(ident) or self._E.match(ident)
        if m is None:
            raise GraphError(f"{ident!r} is not a ray vertex or edge")
        return int(m.group(1))

    def source(self, edge: str) -> str:
        return f"v{self._edge_index(edge)}"

    def range(self, edge: str) -> str:
        return f"v{self._edge_index(edge) + 1}"

    def _edge_index(self, edge: str) -> int:
        m = self._E.match(edge)
        if m is None:
            raise GraphError(f"unknown edge {edge!r}")
        return int(m.group(1))

    def has_vertex(self, v: str) -> bool:
        return self._V.match(v) is not None

    def has_edge(self, e: str) -> bool:
        return self._E.match(e) is not None

    def out_edges(self, v: str) -> tuple[str, ...]:
        return (f"e{self.index(v)}",)

    def __eq__(self, other):
        return isinstance(other, RayGraph)

    def __hash__(self):
        return hash("ray")

    def __repr__(self):
        return "RayGraph()"

    def vertex(self, v: str) -> "Path":
        if not self.has_vertex(v):
            raise GraphError(f"unknown vertex {v!r}")
        return Path(self, v)

    def path(self, *edges: str) -> "Path":
        return make_path(self, edges)

    def segment(self, start: int, length: int) -> "Path":
        """The unique path of the given length leaving ``v<start>``."""
        edges = tuple(f"e{i}" for i in range(start, start + length))
        return Path(self, f"v{start}", edges, f"v{start + length}")


class Path:
    """A path ``e1...en`` in a graph, or the length-0 path ``@v``.

    Equality and hashing use only ``(base, edges)``; the graph reference is
    carried for range lookups and is checked separately where it matters.
    """

    __slots__ = ("graph", "base", "edges", "end", "_hash")

    def __init__(self, graph, base: str, edges: tuple[str, ...] = (), end: str | None = None):
        self.graph = graph
        self.base = base
        self.edges = edges
        if end is None:
            end = graph.range(edges[-1]) if edges else base
        self.end = end
        self._hash = hash((base, edges))

    @property
    def source(self) -> str:
        return self.base

    @property
    def range(self) -> str:
        return self.end

    def __len__(self):
        return len(self.edges)

    def __eq__(self, other):
        if not isinstance(other, Path):
            return NotImplemented
        return self.edges == other.edges and self.base == other.base

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Path({self})"

    def __str__(self):
        return ".".join(self.edges) if self.edges else f"@{self.base}"

    def sort_key(self) -> tuple:
        return (len(self.edges), tuple(id_key(e) for e in self.edges), id_key(self.base))

    def prefix(self, n: int) -> "Path":
        if n == len(self.edges):
            return self
        if n == 0:
            return Path(self.graph, self.base)
        return Path(self.graph, self.base, self.edges[:n])

    def power(self, n: int) -> "Path":
        """``p^n`` for a closed path; ``p^0`` is the base vertex."""
        if n and self.end != self.base:
            raise GraphError(f"{self} is not a closed path")
        return Path(self.graph, self.base, self.edges * n, self.base if n else None)


def make_path(graph, edges: Sequence[str], base: str | None = None) -> Path:
    """Validated path constructor; ``base`` is required for length 0."""
    edges = tuple(edges)
    if not edges:
        if base is None:
            raise GraphError("a length-0 path needs its vertex")
        return graph.vertex(base)
    for e in edges:
        if not graph.has_edge(e):
            raise GraphError(f"unknown edge {e!r}")
    for a, b in zip(edges, edges[1:]):
        if graph.range(a) != graph.source(b):
            raise GraphError(f"edges {a!r} and {b!r} are not consecutive")
    start = graph.source(edges[0])
    if base is not None and base != start:
        raise GraphError(f"path {'.'.join(edges)} does not start at {base!r}")
    return Path(graph, start, edges)


def concat(x: Path, y: Path) -> Path | None:
    """``xy``, or None when ``r(x) != s(y)``."""
    if x.end != y.base:
        return None
    if not y.edges:
        return x
    if not x.edges:
        return y
    return Path(x.graph, x.base, x.edges + y.edges, y.end)


def strip_prefix(q: Path, t: Path) -> Path | None:
    """The ``z`` with ``t = qz``, or None when q is not a prefix of t."""
    k = len(q.edges)
    if k > len(t.edges) or t.base != q.base or t.edges[:k] != q.edges:
        return None
    if k == len(t.edges):
        return Path(t.graph, t.end)
    return Path(t.graph, q.end, t.edges[k:], t.end)


def strip_suffix(z: Path, t: Path) -> Path | None:
    """The ``w`` with ``t = wz``, or None when z is not a suffix of t."""
    k = len(z.edges)
    n = len(t.edges)
    if k > n or t.end != z.end:
        return None
    if k == 0:
        return t
    if t.edges[n - k:] != z.edges:
        return None
    return Path(t.graph, t.base, t.edges[: n - k], z.base)


def is_cycle(p: Path) -> bool:
    """Nonempty closed path whose edges have pairwise distinct sources."""
    if not p.edges or p.end != p.base:
        return False
    g = p.graph
    sources = [g.source(e) for e in p.edges]
    return len(set(sources)) == len(sources)


def _iter_levels(graph, max_len: int) -> Iterator[list[Path]]:
    if graph.is_finite:
        level = [Path(graph, v) for v in graph.vertices]
    else:
        level = [Path(graph, f"v{i}") for i in range(1, max_len + 2)]
    yield level
    for length in range(1, max_len + 1):
        nxt = []
        for p in level:
            for e in graph.out_edges(p.end):
                if not graph.is_finite and graph.index(e) > max_len:
                    continue
                nxt.append(Path(graph, p.base, p.edges + (e,)))
        level = nxt
        yield level


def enumerate_paths(graph, max_len: int, limit: int = DEFAULT_LIMIT) -> list[Path]:
    """All paths of length <= max_len in length-lexicographic order.

    On the ray, ``max_len`` also bounds indices: the result is exactly the
    path set of the finite segment ``v1 ... v(max_len+1)``.
    """
    if max_len < 0:
        raise ValueError("max_len must be nonnegative")
    out: list[Path] = []
    for level in _iter_levels(graph, max_len):
        out.extend(level)
        if len(out) > limit:
            raise CapacityError(f"more than {limit} paths of length <= {max_len}")
    out.sort(key=Path.sort_key)
    return out


def find_path_of_length(graph, n: int) -> Path | None:
    """The length-lexicographically first path of length exactly n, if any."""
    if not graph.is_finite:
        return graph.segment(1, n)
    memo: dict[tuple[str, int], bool] = {}

    def extends(v: str, k: int) -> bool:
        if k == 0:
            return True
        key = (v, k)
        if key not in memo:
            memo[key] = any(extends(graph.range(e), k - 1) for e in graph.out_edges(v))
        return memo[key]

    starts = [v for v in graph.vertices if extends(v, n)]
    if not starts:
        return None
    # the lexicographically least edge word, then the least base vertex
    best = None
    for v in starts:
        edges = []
        cur = v
        for k in range(n, 0, -1):
            e = next(e for e in graph.out_edges(cur) if extends(graph.range(e), k - 1))
            edges.append(e)
            cur = graph.range(e)
        cand = Path(graph, v, tuple(edges))
        if best is None or cand.sort_key() < best.sort_key():
            best = cand
    return best


@dataclass(frozen=True)
class Pumping:
    """``mu = t p t^-1`` with ``x_n = t p u_n`` for every index in ``hits``."""

    mu: object
    hits: frozenset
    prefix: Path
    cycle: Path


def pump(graph, xs: Sequence[Path]) -> Pumping | None:
    """Find a prefix t and a cycle p with ``x_n = t p u_n`` for some inputs.

    Candidates are ordered by (|t|, t, |p|, p); the first one matching at
    least one input wins and every matching index is reported.  Left
    multiplication by ``mu = t p t^-1`` then lengthens each hit path by |p|.
    """
    if not graph.is_finite:
        raise GraphError("pump requires a finite graph")
    from .algebra import PathPair

    candidates = {}
    for x in xs:
        for i in range(len(x) + 1):
            t = x.prefix(i)
            for j in range(i + 1, len(x) + 1):
                p = Path(graph, t.end, x.edges[i:j])
                if is_cycle(p):
                    candidates[(t, p)] = None
    if not candidates:
        return None
    t, p = min(candidates, key=lambda tp: (tp[0].sort_key(), tp[1].sort_key()))
    tp = concat(t, p)
    hits = frozenset(n for n, x in enumerate(xs) if strip_prefix(tp, x) is not None)
    return Pumping(PathPair(tp, t), hits, t, p)


def rose(n: int, names: Sequence[str] | None = None) -> Graph:
    """One vertex ``v`` with n loops.

    Default loop names follow the usual conventions: ``x`` for the bicyclic
    case, ``e, f`` for two petals, ``e1 ... en`` otherwise.
    """
    if n < 1:
        raise ValueError("a rose needs at least one petal")
    if names is None:
        names = ("x",) if n == 1 else ("e", "f") if n == 2 else tuple(f"e{i}" for i in range(1, n + 1))
    if len(names) != n:
        raise ValueError("need one name per petal")
    return Graph(["v"], [(e, "v", "v") for e in names], name=f"rose:{n}")


def line(d: int) -> Graph:
    """Vertices v1..vd with edges ``ei: vi -> v(i+1)``."""
    if d < 1:
        raise ValueError("a line needs at least one vertex")
    return Graph(
        [f"v{i}" for i in range(1, d + 1)],
        [(f"e{i}", f"v{i}", f"v{i + 1}") for i in range(1, d)],
        name=f"line:{d}",
    )


_RAY = RayGraph()


def ray() -> RayGraph:
    return _RAY


def build_graph(text: str, name: str = "graph") -> Graph:
    """Parse the line-oriented graph format.

    ``v <id>`` declares a vertex, ``e <id> <source> <range>`` an edge;
    ``#`` starts a comment.  Vertices may be declared after the edges that
    use them.
    """
    vertices: list[str] = []
    edges: list[tuple[str, str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        body = raw.split("#", 1)[0].strip()
        if not body:
            continue
        parts = body.split()
        kind, args = parts[0], parts[1:]
        if (kind, len(args)) not in (("v", 1), ("e", 3)):
            raise GraphSyntaxError(lineno, f"expected 'v <id>' or 'e <id> <source> <range>', got {body!r}")
        for a in args:
            if not _ID.match(a):
                raise GraphSyntaxError(lineno, f"invalid id {a!r}")
        if kind == "v":
            vertices.append(args[0])
        else:
            edges.append(tuple(args))
    return Graph(vertices, edges, name=name)


def load_graph(path) -> Graph:
    with open(path, encoding="utf-8") as fh:
        return build_graph(fh.read(), name=f"file:{path}")
