import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from graphsemi.algebra import (
    ZERO,
    AlgebraError,
    IdempotentClass,
    MixedGraphError,
    PathPair,
    audit_laws,
    brute_solve,
    defining_relations,
    enumerate_elements,
    ideal_witness,
    idempotent_law_violations,
    idempotent_product_class,
    inv,
    is_idempotent,
    mul,
    solve_left,
    solve_right,
)
from graphsemi.graph import line, rose
from graphsemi.syntax import parse_element

R1, R2, L3, L4 = rose(1), rose(2), line(3), line(4)


def el(text, g=R2):
    return parse_element(text, g)


def test_cancellation_examples():
    assert mul(inv(el("e")), el("f")) is ZERO
    assert mul(inv(el("e")), el("e")) == el("@v")
    assert mul(el("[e|f]"), el("[f|e]")) == el("[e|e]")


def test_mul_both_overlap_shapes():
    # t = q w
    assert mul(el("[e|f]"), el("[f.e|e]")) == el("[e.e|e]")
    # q = t w
    assert mul(el("[e|f.e]"), el("[f|e]")) == el("[e|e.e]")
    assert mul(ZERO, el("e")) is ZERO and mul(el("e"), ZERO) is ZERO


def test_mixed_graphs_rejected():
    with pytest.raises(MixedGraphError):
        mul(el("e"), parse_element("x", R1))


def test_inverse_examples():
    assert inv(el("@v")) == el("@v")
    assert inv(el("[e|f]")) == el("[f|e]")
    assert inv(ZERO) is ZERO
    for a in enumerate_elements(R2, 2):
        assert inv(inv(a)) == a
        assert mul(mul(a, inv(a)), a) == a


def test_truncation_sizes():
    assert len(enumerate_elements(R2, 1)) == 10
    assert len(enumerate_elements(R2, 3)) == 226
    tr = enumerate_elements(L3, 0)
    assert tr.elements[0] is ZERO and len(tr) == 4
    assert all(a.is_vertex for a in tr.nonzero())
    tr = enumerate_elements(R2, 3)
    assert len(set(tr.elements)) == len(tr)


def test_idempotents():
    assert is_idempotent(el("[e|e]")) and is_idempotent(ZERO)
    assert not is_idempotent(el("[e|f]"))
    assert idempotent_product_class(el("[e|e]"), el("[f|f]")) is IdempotentClass.ZERO
    assert idempotent_product_class(el("[e|e]"), el("[e.e|e.e]")) is IdempotentClass.EQUALS_RIGHT
    assert idempotent_product_class(el("[e.e|e.e]"), el("[e|e]")) is IdempotentClass.EQUALS_LEFT
    with pytest.raises(AlgebraError):
        idempotent_product_class(el("e"), el("[e|e]"))


def test_idempotent_law_exhaustive():
    tr = enumerate_elements(R2, 3)
    assert idempotent_law_violations(tr) == []
    idem = [a for a in tr.elements if mul(a, a) == a]
    assert all(a is ZERO or a.x == a.y for a in idem)


def test_solve_examples():
    assert solve_right(el("x", R1), el("x.x", R1)) == {el("x", R1)}
    assert solve_right(el("[e|f]"), el("[e|e]")) == {el("[f|e]")}
    nu = parse_element("[e2|@v3]", L3)
    assert solve_right(parse_element("@v2", L3), nu) == {nu}
    assert solve_right(parse_element("@v1", L3), nu) == set()
    with pytest.raises(AlgebraError):
        solve_right(ZERO, el("e"))


def test_brute_solve_trivial():
    from graphsemi.algebra import Truncation

    empty = Truncation(R2, 0, ())
    assert brute_solve(el("e"), el("e"), empty) == set()
    tr = enumerate_elements(R1, 3)
    assert brute_solve(el("[x|x]", R1), el("x", R1), tr) == solve_right(el("[x|x]", R1), el("x", R1))


@pytest.mark.parametrize("g", [R2, L3], ids=["rose2", "line3"])
def test_solvers_match_oracle(g):
    small = enumerate_elements(g, 2).nonzero()
    oracle = enumerate_elements(g, 4)
    for mu in small:
        for nu in small:
            assert solve_right(mu, nu) == brute_solve(mu, nu, oracle, "right")
            assert solve_left(mu, nu) == brute_solve(mu, nu, oracle, "left")


def test_ideal_witness():
    v = R2.vertex("v")
    w1, w2 = ideal_witness(R2.path("e"), R2.path("f"))
    assert w1 == PathPair(v, v) and w2 == el("[e|f]")
    ideal_witness(v, v)
    w1, _ = ideal_witness(L3.path("e1", "e2"), L3.vertex("v3"))
    assert w1 == parse_element("@v3", L3)
    with pytest.raises(AlgebraError):
        ideal_witness(L3.path("e1"), L3.vertex("v3"))


@pytest.mark.parametrize("g", [rose(3), L4, R1], ids=["rose3", "line4", "rose1"])
def test_defining_relations(g):
    rels = list(defining_relations(g))
    assert rels
    assert [(n, l, r) for n, l, r in rels if l != r] == []


@pytest.mark.parametrize("g, k", [(R2, 2), (L4, 4), (R1, 4)], ids=["rose2", "line4", "rose1"])
def test_laws_exhaustive(g, k):
    rep = audit_laws(enumerate_elements(g, k))
    assert rep.ok, rep.first_failure


ELEMS_5 = st.sampled_from(enumerate_elements(R2, 5).elements)


@settings(max_examples=3000, deadline=None)
@given(ELEMS_5, ELEMS_5, ELEMS_5)
def test_associativity_randomized_max_len_5(a, b, c):
    assert mul(mul(a, b), c) == mul(a, mul(b, c))


@settings(max_examples=1000, deadline=None)
@given(ELEMS_5)
def test_inverse_laws_max_len_5(a):
    b = inv(a)
    assert mul(mul(a, b), a) == a and mul(mul(b, a), b) == b
