import random
from fractions import Fraction

import pytest

from graphsemi.algebra import ZERO, enumerate_elements, inv, mul
from graphsemi.metric import metric_axiom_violations
from graphsemi.models import delta as dm
from graphsemi.models import density as dn
from graphsemi.models import xmodel as xm
from graphsemi.models.literals import eval_model, split_product
from graphsemi.syntax import parse_element

# delta model


def test_delta_products():
    one = dm.power_pair(0, 0)
    assert dm.delta_mul(dm.DELTA, dm.DELTA) is dm.DELTA
    assert dm.delta_mul(one, dm.DELTA) is dm.DELTA
    assert dm.delta_mul(dm.power_pair(3, 1), dm.DELTA) is dm.DELTA
    assert dm.delta_mul(ZERO, dm.DELTA) is ZERO
    assert dm.delta_inv(dm.DELTA) is dm.DELTA
    assert dm.delta_mul(dm.power_pair(2, 1), dm.power_pair(1, 2)) == dm.power_pair(2, 2)


def test_delta_distance_formula():
    for n in range(11):
        for m in range(11):
            assert dm.delta_dist(dm.DELTA, dm.power_pair(n, m)) == Fraction(1, min(n, m) + 1)
    assert dm.delta_dist(ZERO, dm.DELTA) == 1


def test_delta_metric_axioms():
    pts = [dm.DELTA, ZERO] + [dm.power_pair(n, m) for n in range(6) for m in range(6)]
    assert metric_axiom_violations(pts, dm.delta_dist) == []


def test_delta_literal_distance_is_not_a_metric():
    pts = [dm.power_pair(1, 1), dm.DELTA, dm.power_pair(2, 2)]
    bad = metric_axiom_violations(pts, dm.delta_dist_literal)
    assert bad and bad[0][0] == "triangle"


def test_delta_associativity():
    pts = [dm.DELTA, ZERO] + [dm.power_pair(n, m) for n in range(3) for m in range(3)]
    for a in pts:
        for b in pts:
            for c in pts:
                assert dm.delta_mul(dm.delta_mul(a, b), c) == dm.delta_mul(a, dm.delta_mul(b, c))


# X model


def w(s):
    return list(s)


def test_x_normal_forms():
    assert xm.x_normalize(w("XX")) == xm.X_ZERO
    assert xm.x_normalize(w("eX")) == xm.X
    assert xm.x_normalize(w("EX")) == xm.X
    assert xm.x_normalize(w("FX")) == xm.X_ZERO
    assert str(xm.x_normalize(["f", "e", "e", "f^-1"])) == "f.e^2.f^-1.1~"
    assert xm.x_normalize(w("Ee")) == xm.X_ONE
    assert xm.x_mul(xm.X, xm.p2_element("f", "")) == xm.X
    assert xm.x_mul(xm.X, xm.p2_element("e", "")) == xm.X_ZERO


def test_x_no_critical_pairs():
    assert xm.critical_pairs() == []


def test_x_rewriting_is_strategy_independent():
    rng = random.Random(5)
    for _ in range(3000):
        word = [rng.choice("efEFX") for _ in range(rng.randint(0, 12))]
        first = xm.x_normalize(word)
        assert xm.x_normalize(word, rng=rng) == first
        # the normal-form product agrees with rewriting the concatenation
        k = rng.randint(0, len(word))
        a, b = xm.x_normalize(word[:k]), xm.x_normalize(word[k:])
        assert xm.x_mul(a, b) == first


def test_x_word_round_trip():
    for a in xm.x_universe(depth=3, exps=(0, 1, 2))[:500]:
        assert xm.x_normalize(xm.x_word(a)) == a


def test_parse_x():
    assert xm.parse_x("X") == xm.X
    assert xm.parse_x("0") == xm.X_ZERO
    a = xm.parse_x("ef.e^2.f^-3.fe~")
    assert (a.u, a.m, a.n, a.v) == ("ef", 2, 3, "fe")
    assert xm.parse_x(str(a)) == a
    with pytest.raises(ValueError):
        xm.parse_x("fe.X.1~")


def test_xi_and_distance():
    assert xm.xi(xm.parse_x("efef.X.fefe~")) == 3
    assert xm.xi(xm.X) == 0
    assert xm.xi(xm.X_ZERO) == xm.INF
    for k in range(11):
        for u, v in (("", ""), ("f", "e"), ("efef", "fe")):
            assert xm.x_dist(xm.XElement(u, k, k, v), xm.XElement(u, xm.INF, xm.INF, v)) == Fraction(1, 1 + k)


def test_xi_submultiplicative_on_sample():
    pts = xm.x_universe(depth=4, exps=(0, 1, 3))
    rng = random.Random(2)
    for _ in range(20000):
        s, t = rng.choice(pts), rng.choice(pts)
        assert xm.xi(xm.x_mul(s, t)) >= min(xm.xi(s), xm.xi(t))


def test_x_metric_axioms():
    from graphsemi.audits import x_metric_sample
    from graphsemi.metric import matrix_axiom_violations

    pts = x_metric_sample(2, 3)
    mat, den = xm.x_dist_matrix(pts)
    assert matrix_axiom_violations(mat, pts) == []
    rng = random.Random(0)
    for _ in range(200):
        i, j = rng.randrange(len(pts)), rng.randrange(len(pts))
        assert Fraction(int(mat[i, j]), den) == xm.x_dist(pts[i], pts[j])


def test_x_isolation():
    for a in xm.x_universe(depth=3, exps=(0, 1, 2, 5)):
        if a.in_p2 and not a.is_zero:
            r = xm.isolation_radius(a)
            assert r > 0
    sigma, tau = xm.parse_x("f.e^0.f^-0.e~"), xm.parse_x("ff.e^0.f^-0.e~")
    assert xm.x_dist(sigma, tau) == Fraction(1, 2)
    # the bound 1/(1 + min(m, n)) would be 1 here and hold tau
    assert xm.x_dist(sigma, tau) >= xm.isolation_radius(sigma)


def test_x_continuity_all_cases():
    from graphsemi.audits import x_representatives

    reps = x_representatives()
    rep = xm.audit_x_continuity([(s, t) for s in reps for t in reps], 4)
    assert rep.ok, rep.violations[:2]
    assert set(rep.cases) == {"1", "2", "2'", "3", "4", "4'", "5"}


def test_case_2_needs_length_margin():
    n = 2
    tau = xm.make_x("ef" * 6 + "e" + "f" * 12, 0, 0, "e")
    literal_m = max(int(xm.xi(tau)) + 2 * n + 1, xm._pin(tau))
    assert literal_m == 6
    mu = xm.make_x("ef" * 7, 12, 12, "ef" * 6 + "e")
    assert xm.x_dist(mu, xm.X_ZERO) < Fraction(1, literal_m)
    assert xm.x_dist(xm.x_mul(mu, tau), xm.X_ZERO) >= Fraction(1, n)
    m = xm.x_continuity_witness(xm.X_ZERO, tau, n)
    assert xm.x_dist(mu, xm.X_ZERO) >= Fraction(1, m)


def test_case_4_needs_exponent_margin():
    n = 2
    sigma = xm.parse_x("1.e^0.f^-0.eeeee~")
    literal_m = max(n, len(sigma.v) + int(sigma.n)) + 1
    nu = xm.make_x("", 6, 6, "")
    assert xm.x_dist(nu, xm.X) < Fraction(1, literal_m)
    assert xm.x_dist(xm.x_mul(sigma, nu), xm.x_mul(sigma, xm.X)) >= Fraction(1, n)
    m = xm.x_continuity_witness(sigma, xm.X, n)
    assert xm.x_dist(nu, xm.X) >= Fraction(1, m)
    # mirror
    tau = xm.parse_x("fffff.e^0.f^-0.1~")
    assert xm.x_dist(xm.x_mul(nu, tau), xm.x_mul(xm.X, tau)) >= Fraction(1, n)
    assert xm.x_dist(nu, xm.X) >= Fraction(1, xm.x_continuity_witness(xm.X, tau, n))


# density model


def test_periodic_seq_canonical():
    a = dn.PeriodicSeq("ef", "efef")
    b = dn.PeriodicSeq("", "ef")
    assert a == b and str(a) == ";ef"
    assert dn.first_difference(a, dn.PeriodicSeq("e", "fe")) is None
    assert dn.first_difference(b, dn.PeriodicSeq("", "ee")) == 2
    assert dn.density_of(dn.PeriodicSeq("fff", "eef")) == Fraction(2, 3)


def test_density_truncation_example():
    s = dn.parse_density("per(;eef | ;ffe)")
    t = dn.truncate_density(s, 3)
    assert str(t) == "[e.e.f|f.f.e]"
    assert dn.density_dist(s, t) == Fraction(1, 4)
    assert str(dn.truncate_density(s, 0)) == "[@v|@v]"
    assert dn.density_dist(s, dn.truncate_density(s, 0)) == 1


def test_density_truncation_formula():
    for s in dn.distinct_pairs(20, seed=4):
        assert dn.density_valid(s)
        for n in range(11):
            assert dn.density_dist(s, dn.truncate_density(s, n)) == Fraction(1, n + 1)


def test_density_invalid_rejected():
    bad = dn.parse_density("per(;ef | ;ff)")
    assert not dn.density_valid(bad)
    with pytest.raises(ValueError):
        dn.truncate_density(bad, 2)


def test_density_metric_axioms():
    p2 = [a for a in enumerate_elements(dn.P2, 2).elements if a is not ZERO]
    pts = dn.distinct_pairs(30, seed=1) + p2 + [ZERO]
    assert metric_axiom_violations(pts, dn.density_dist) == []


def test_density_actions():
    s = dn.parse_density("per(;e | ;f)")
    e = parse_element("e", dn.P2)
    f = parse_element("f", dn.P2)
    assert str(dn.density_mul(e, s)) == "per(;e | ;f)"
    assert str(dn.density_mul(f, s)) == "per(f;e | ;f)"
    assert dn.density_mul(inv(f), s) is ZERO
    assert str(dn.density_mul(inv(e), s)) == "per(;e | ;f)"
    assert dn.density_mul(s, s) is ZERO
    assert str(dn.density_mul(s, inv(e))) == "per(;e | e;f)"


def test_density_associativity():
    rng = random.Random(3)
    p2 = [a for a in enumerate_elements(dn.P2, 2).elements if a is not ZERO]
    pts = dn.distinct_pairs(8, seed=2) + p2 + [inv(a) for a in p2] + [ZERO]
    for _ in range(3000):
        a, b, c = (rng.choice(pts) for _ in range(3))
        assert dn.density_mul(dn.density_mul(a, b), c) == dn.density_mul(a, dn.density_mul(b, c))


def test_density_isolation():
    e = parse_element("e", dn.P2)
    ee = parse_element("e.e", dn.P2)
    assert dn.density_dist(e, ee) == Fraction(1, 2)
    assert dn.density_isolation_radius(e) == Fraction(1, 2)
    pts = [a for a in enumerate_elements(dn.P2, 3).elements] + dn.distinct_pairs(20)
    for a in enumerate_elements(dn.P2, 2).nonzero():
        r = dn.density_isolation_radius(a)
        assert r > 0 and all(dn.density_dist(a, b) >= r for b in pts if b != a)


# literals


def test_split_product():
    assert split_product("per(;e|;f) * [e|f]") == ["per(;e|;f)", "[e|f]"]
    with pytest.raises(ValueError):
        split_product("e**f")


def test_model_literals():
    assert eval_model("delta", "e^2*e^-1") == dm.power_pair(2, 1)
    assert eval_model("delta", "e^3*delta*e^-1") is dm.DELTA
    assert eval_model("p2x", "f*X*F") == xm.parse_x("f.X.1~")
    assert str(eval_model("density", "f*per(;e|;f)")) == "per(f;e | ;f)"
    with pytest.raises(ValueError):
        eval_model("density", "per(;f|;e)")
    with pytest.raises(ValueError):
        eval_model("nope", "0")


def test_model_examples():
    assert dm.delta_dist(dm.DELTA, dm.power_pair(3, 5)) == Fraction(1, 4)
    assert xm.x_continuity_witness(xm.X_ZERO, xm.X_ZERO, 5) == 10
    assert xm.x_continuity_witness(xm.X, xm.X, 1) == 1 and xm.x_mul(xm.X, xm.X) == xm.X_ZERO
    for a in xm.x_universe(depth=3, exps=(0, 2, 7)):
        assert xm.x_mul(a, xm.X_ONE) == a and xm.x_mul(xm.X_ONE, a) == a
        assert xm.x_dist(a, a) == 0
    s = dn.SeqPair(dn.PeriodicSeq("", "eef"), dn.PeriodicSeq("", "ffe"))
    t = dn.SeqPair(dn.PeriodicSeq("eef", "eefeef"), dn.PeriodicSeq("f", "fef"))
    assert dn.density_dist(s, t) == 0
    assert dn.density_dist(ZERO, s) == 1 and dn.density_dist(ZERO, parse_element("e", dn.P2)) == 1
    assert not dn.density_valid(dn.SeqPair(dn.PeriodicSeq("", "ef"), dn.PeriodicSeq("", "f")))
