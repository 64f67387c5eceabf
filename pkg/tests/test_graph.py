import pytest

from graphsemi.algebra import PathPair, mul, path_element
from graphsemi.graph import (
    CapacityError,
    GraphError,
    GraphSyntaxError,
    build_graph,
    concat,
    enumerate_paths,
    find_path_of_length,
    is_cycle,
    line,
    load_graph,
    make_path,
    pump,
    ray,
    rose,
    strip_prefix,
    strip_suffix,
)


def names(paths):
    return [str(p) for p in paths]


def test_builtin_shapes():
    r1 = rose(1)
    assert r1.vertices == ("v",) and r1.edges == ("x",)
    assert rose(2).edges == ("e", "f")
    assert rose(3).edges == ("e1", "e2", "e3")
    l1 = line(1)
    assert l1.vertices == ("v1",) and l1.edges == ()
    l4 = line(4)
    assert [(l4.source(e), l4.range(e)) for e in l4.edges] == [("v1", "v2"), ("v2", "v3"), ("v3", "v4")]
    with pytest.raises(ValueError):
        rose(0)
    with pytest.raises(ValueError):
        line(0)


def test_ray_is_lazy():
    g = ray()
    assert not g.is_finite
    assert g.has_vertex("v100000") and g.has_edge("e7")
    assert g.source("e7") == "v7" and g.range("e7") == "v8"
    assert g.out_edges("v3") == ("e3",)
    assert str(g.segment(2, 3)) == "e2.e3.e4"
    assert not g.has_vertex("v0")


def test_build_graph_one_loop():
    g = build_graph("v v1\ne x v1 v1\n")
    assert g.vertices == ("v1",) and g.edges == ("x",)


def test_build_graph_isolated_vertices_and_comments():
    g = build_graph("# two points\nv a\nv b  # trailing\n")
    assert g.vertices == ("a", "b") and g.edges == ()


def test_build_graph_errors():
    with pytest.raises(GraphError, match="w"):
        build_graph("v v1\ne x v1 w\n")
    with pytest.raises(GraphSyntaxError) as exc:
        build_graph("v v1\nedge x v1 v1\n")
    assert exc.value.lineno == 2
    with pytest.raises(GraphError):
        build_graph("v a\nv a\n")
    with pytest.raises(GraphSyntaxError):
        build_graph("v 9bad\n")


def test_load_graph(tmp_path):
    f = tmp_path / "g.txt"
    f.write_text("v a\nv b\ne k a b\ne l b b\n", encoding="utf-8")
    g = load_graph(f)
    assert g.out_edges("b") == ("l",)


def test_concat():
    g = line(3)
    e1, e2 = g.path("e1"), g.path("e2")
    assert str(concat(e1, e2)) == "e1.e2"
    assert concat(e2, e1) is None
    assert concat(e1, g.vertex("v2")) == e1
    assert concat(g.vertex("v1"), e1) == e1


def test_strip_prefix_and_suffix():
    g = line(3)
    t = g.path("e1", "e2")
    assert str(strip_prefix(g.path("e1"), t)) == "e2"
    assert strip_prefix(t, t) == g.vertex("v3")
    assert strip_prefix(g.path("e2"), t) is None
    assert str(strip_suffix(g.path("e2"), t)) == "e1"
    assert strip_suffix(g.path("e1"), t) is None


def test_enumerate_paths_examples():
    assert names(enumerate_paths(rose(2), 2)) == ["@v", "e", "f", "e.e", "e.f", "f.e", "f.f"]
    assert names(enumerate_paths(line(2), 3)) == ["@v1", "@v2", "e1"]
    assert names(enumerate_paths(line(4), 0)) == ["@v1", "@v2", "@v3", "@v4"]
    with pytest.raises(CapacityError):
        enumerate_paths(rose(2), 20, limit=1000)


@pytest.mark.parametrize("g", [rose(2), line(4)], ids=["rose2", "line4"])
def test_path_properties(g):
    paths = enumerate_paths(g, 3)
    assert len(set(paths)) == len(paths)
    pset = set(paths)
    for p in paths:
        for k in range(len(p) + 1):
            assert p.prefix(k) in pset
    for x in paths:
        for y in paths:
            xy = concat(x, y)
            if xy is None:
                continue
            assert strip_prefix(x, xy) == y
            assert strip_suffix(y, xy) == x
            for z in paths:
                yz = concat(y, z)
                if yz is not None:
                    assert concat(xy, z) == concat(x, yz)


def test_find_path_of_length():
    assert len(find_path_of_length(rose(2), 5)) == 5
    assert find_path_of_length(line(3), 3) is None
    assert str(find_path_of_length(ray(), 2)) == "e1.e2"


def test_is_cycle():
    g = build_graph("v a\nv b\ne k a b\ne l b a\ne m b b\n")
    assert is_cycle(g.path("k", "l"))
    assert is_cycle(g.path("m"))
    assert not is_cycle(g.path("k"))
    assert not is_cycle(g.vertex("a"))
    assert not is_cycle(g.path("k", "m", "l"))


def _brute_pump(graph, xs, bound=3):
    """First (t, p) in (|t|, t, |p|, p) order with a hit among xs."""
    paths = enumerate_paths(graph, bound)
    for t in paths:
        for p in paths:
            if p.base != t.end or not is_cycle(p):
                continue
            tp = concat(t, p)
            hits = frozenset(n for n, x in enumerate(xs) if strip_prefix(tp, x) is not None)
            if hits:
                return t, p, hits
    return None


WORDS = [
    (rose(1), ["x", "x.x", "x.x.x"]),
    (rose(2), ["f.e.e", "f.e.f"]),
    (rose(2), ["e.f", "f.f.e", "f"]),
    (build_graph("v a\nv b\ne k a b\ne l b b\n"), ["k", "k.l", "k.l.l"]),
]


@pytest.mark.parametrize("graph, words", WORDS)
def test_pump_matches_brute_force(graph, words):
    xs = [make_path(graph, w.split(".")) for w in words]
    got = pump(graph, xs)
    want = _brute_pump(graph, xs)
    assert (got.prefix, got.cycle, got.hits) == want
    for n in got.hits:
        longer = mul(got.mu, path_element(xs[n]))
        assert isinstance(longer, PathPair) and longer.y == longer.y.graph.vertex(longer.y.end)
        assert len(longer.x) > len(xs[n])


def test_pump_examples():
    g = rose(1)
    r = pump(g, [g.path("x"), g.path("x", "x"), g.path("x", "x", "x")])
    assert str(r.mu) == "[x|@v]" and r.hits == {0, 1, 2}
    g2 = rose(2)
    r = pump(g2, [g2.path(*"fee"), g2.path(*"fef")])
    assert str(r.mu) == "[f|@v]" and r.hits == {0, 1}
    g3 = line(3)
    assert pump(g3, [g3.path("e1"), g3.path("e1", "e2")]) is None
    with pytest.raises(GraphError):
        pump(ray(), [])
