"""P2 compactified by the limit points ``u X v^-1`` of ``u e^n f^-n v^-1``.

Words use the letters ``e f E F X`` (capitals are inverses) plus ``1`` and
``0``.  The rewriting rules are::

    Ee -> 1   Ff -> 1   Ef -> 0   Fe -> 0
    eX -> X   XF -> X   EX -> X   Xf -> X
    FX -> 0   Xe -> 0   XX -> 0

X behaves as ``e^inf f^-inf``: absorbing e on the left and f^-1 on the
right, and cancelling e^-1 on the left and f on the right.  Every rule
shortens the word and all critical pairs resolve, so each word has a unique
normal form ``u e^m f^-n v^-1`` (u empty or ending in f, v empty or ending
in e), with ``m = n = inf`` for ``u X v^-1``.
"""

from __future__ import annotations

import math
import random
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence

import numpy as np

__all__ = [
    "INF",
    "X",
    "X_ONE",
    "X_ZERO",
    "RULES",
    "XAudit",
    "XElement",
    "audit_x_continuity",
    "continuity_case",
    "critical_pairs",
    "isolation_radius",
    "make_x",
    "parse_x",
    "p2_element",
    "x_delta",
    "x_dist",
    "x_dist_matrix",
    "x_continuity_witness",
    "x_mul",
    "x_normalize",
    "x_phi",
    "x_universe",
    "x_word",
    "xi",
]

INF = math.inf

RULES: dict[str, str] = {
    "Ee": "1", "Ff": "1", "Ef": "0", "Fe": "0",
    "eX": "X", "XF": "X", "EX": "X", "Xf": "X",
    "FX": "0", "Xe": "0", "XX": "0",
}

_TOKENS = {
    "e": "e", "f": "f", "E": "E", "F": "F", "X": "X", "1": "1", "0": "0",
    "e^-1": "E", "f^-1": "F", "e-": "E", "f-": "F",
}
_INVERSE = {"e": "E", "f": "F", "E": "e", "F": "f"}


@dataclass(frozen=True)
class XElement:
    """``u e^m f^-n v^-1``; X-shaped when ``m = n = inf``; zero has ``u = v = "0"``."""

    u: str
    m: float
    n: float
    v: str

    @property
    def is_zero(self) -> bool:
        return self.u == "0"

    @property
    def is_x(self) -> bool:
        return not self.is_zero and self.m == INF

    @property
    def in_p2(self) -> bool:
        return self.m != INF

    def __str__(self):
        if self.is_zero:
            return "0"
        u = self.u or "1"
        v = self.v or "1"
        if self.is_x:
            return f"{u}.X.{v}~"
        return f"{u}.e^{self.m}.f^-{self.n}.{v}~"


X_ZERO = XElement("0", INF, INF, "0")
X = XElement("", INF, INF, "")
X_ONE = XElement("", 0, 0, "")


def _split(word: str, letter: str) -> tuple[str, int]:
    stem = word.rstrip(letter)
    return stem, len(word) - len(stem)


def _from_parts(P: str, core: str, Q: str) -> XElement:
    """Normal form of ``P core Q^-1`` with P, Q positive words."""
    u, m = _split(P, "e")
    v, n = _split(Q, "f")
    if core == "X":
        return XElement(u, INF, INF, v)
    return XElement(u, m, n, v)


def make_x(u: str, m, n, v: str) -> XElement:
    """Validated constructor; u must be empty or end in f, v empty or end in e."""
    for w in (u, v):
        if set(w) - {"e", "f"}:
            raise ValueError(f"{w!r} is not a word over e, f")
    if u and u[-1] != "f":
        raise ValueError(f"u = {u!r} must be empty or end in f")
    if v and v[-1] != "e":
        raise ValueError(f"v = {v!r} must be empty or end in e")
    if (m == INF) != (n == INF):
        raise ValueError("m and n are infinite together or not at all")
    if m != INF and (m < 0 or n < 0):
        raise ValueError("exponents must be nonnegative")
    return XElement(u, m, n, v)


def p2_element(x: str, y: str) -> XElement:
    """``x y^-1`` for positive words x, y."""
    return _from_parts(x, "", y)


def _parts(a: XElement) -> tuple[str, str, str]:
    if a.is_x:
        return a.u, "X", a.v
    return a.u + "e" * int(a.m), "", a.v + "f" * int(a.n)


def x_word(a: XElement) -> list[str]:
    """A letter word whose normal form is a."""
    if a.is_zero:
        return ["0"]
    P, core, Q = _parts(a)
    return list(P) + ([core] if core else []) + [_INVERSE[c] for c in reversed(Q)]


def x_mul(a: XElement, b: XElement) -> XElement:
    """Product computed on normal forms (agrees with :func:`x_normalize`)."""
    if a.is_zero or b.is_zero:
        return X_ZERO
    P1, c1, Q1 = _parts(a)
    P2, c2, Q2 = _parts(b)
    if P2.startswith(Q1):
        w = P2[len(Q1):]
        if not c1:
            return _from_parts(P1 + w, c2, Q2)
        # X w c2 Q2^-1: X swallows a run of f, then e kills it
        if w.strip("f"):
            return X_ZERO
        if c2:
            return X_ZERO
        return _from_parts(P1, "X", Q2)
    if Q1.startswith(P2):
        w = Q1[len(P2):]
        if not c2:
            return _from_parts(P1, c1, Q2 + w)
        # w^-1 X: X swallows a run of e^-1, then f^-1 kills it
        if w.strip("e"):
            return X_ZERO
        if c1:
            return X_ZERO
        return _from_parts(P1, "X", Q2)
    return X_ZERO


def _tokens(word: Iterable[str]) -> list[str]:
    out = []
    for t in word:
        if t not in _TOKENS:
            raise ValueError(f"unknown letter {t!r}")
        out.append(_TOKENS[t])
    return out


def _to_element(letters: Sequence[str]) -> XElement:
    """Read an irreducible word (no zero) as a normal form."""
    if "0" in letters:
        return X_ZERO
    if "X" in letters:
        i = letters.index("X")
        P, core, inv_part = letters[:i], "X", letters[i + 1:]
    else:
        i = next((k for k, c in enumerate(letters) if c in "EF"), len(letters))
        P, core, inv_part = letters[:i], "", letters[i:]
    if any(c not in "ef" for c in P) or any(c not in "EF" for c in inv_part):
        raise AssertionError(f"{''.join(letters)} is not irreducible")
    Q = "".join(_INVERSE[c] for c in reversed(inv_part))
    return _from_parts("".join(P), core, Q)


def x_normalize(word: Iterable[str], rng: random.Random | None = None) -> XElement:
    """Rewrite a word to normal form.

    By default a left-to-right stack pass is used; with ``rng`` a random
    redex is contracted at every step, which gives an independent strategy
    for confluence checks.
    """
    letters = [c for c in _tokens(word) if c != "1"]
    if "0" in letters:
        return X_ZERO
    if rng is None:
        stack: list[str] = []
        for c in letters:
            while stack:
                r = RULES.get(stack[-1] + c)
                if r is None:
                    break
                stack.pop()
                if r == "0":
                    return X_ZERO
                if r == "1":
                    c = ""
                    break
                c = r
            if c:
                stack.append(c)
        return _to_element(stack)
    while True:
        redexes = [i for i in range(len(letters) - 1) if letters[i] + letters[i + 1] in RULES]
        if not redexes:
            return _to_element(letters)
        i = rng.choice(redexes)
        r = RULES[letters[i] + letters[i + 1]]
        if r == "0":
            return X_ZERO
        letters[i : i + 2] = [] if r == "1" else [r]


def critical_pairs() -> list[tuple[str, XElement, XElement]]:
    """Overlaps ``abc`` of two rules whose two one-step reducts normalize differently."""
    bad = []
    for lhs1, rhs1 in RULES.items():
        for lhs2, rhs2 in RULES.items():
            if lhs1[1] != lhs2[0]:
                continue
            word = lhs1 + lhs2[1]
            left = [] if rhs1 == "1" else [rhs1]
            right = [] if rhs2 == "1" else [rhs2]
            a = x_normalize(left + [word[2]])
            b = x_normalize([word[0]] + right)
            if a != b:
                bad.append((word, a, b))
    return bad


_NUM = r"(\d+|inf)"
_ELEM = re.compile(rf"(?P<u>[ef]+|1)\.(?:(?P<x>X)|e\^{_NUM}\.f\^-{_NUM})\.(?P<v>[ef]+|1)~\Z")


def parse_x(text: str) -> XElement:
    """Parse ``0``, ``X``, ``u.X.v~`` or ``u.e^m.f^-n.v~`` (u, v may be ``1``)."""
    s = "".join(text.split())
    if s == "0":
        return X_ZERO
    if s == "X":
        return X
    mt = _ELEM.match(s)
    if mt is None:
        raise ValueError(f"cannot parse X-model element {text!r}")
    u = "" if mt["u"] == "1" else mt["u"]
    v = "" if mt["v"] == "1" else mt["v"]
    if mt["x"]:
        return make_x(u, INF, INF, v)
    m, n = (INF if g == "inf" else int(g) for g in mt.groups()[2:4])
    return make_x(u, m, n, v)


def _blocks(word: str, letter: str) -> int:
    return sum(1 for k, c in enumerate(word) if c == letter and (k == 0 or word[k - 1] != letter))


def xi(a: XElement) -> float:
    """Block statistic: 0 if u or v is empty, inf at 0, else min(k, l).

    ``k = 2 (number of f-blocks of u) - 1`` and ``l = 2 (number of
    e-blocks of v) - 1``.
    """
    if a.is_zero:
        return INF
    if not a.u or not a.v:
        return 0
    return min(2 * _blocks(a.u, "f") - 1, 2 * _blocks(a.v, "e") - 1)


def _recip(k: float) -> Fraction:
    return Fraction(0) if k == INF else Fraction(1, int(k) + 1)


def x_delta(a: XElement, b: XElement) -> Fraction:
    if (a.u, a.v) == (b.u, b.v):
        return Fraction(0)
    return _recip(min(xi(a), xi(b)))


def x_phi(a: XElement, b: XElement) -> Fraction:
    if (a.m, a.n) == (b.m, b.n):
        return Fraction(0)
    return _recip(min(a.m, a.n, b.m, b.n))


def x_dist(a: XElement, b: XElement) -> Fraction:
    return x_delta(a, b) + x_phi(a, b)


def x_dist_matrix(points: Sequence[XElement]) -> tuple[np.ndarray, int]:
    """``den * d`` as an int64 matrix, den being the lcm of all denominators."""
    classes: dict[tuple[str, str], int] = {}
    exps: dict[tuple, int] = {}
    cls = np.array([classes.setdefault((a.u, a.v), len(classes)) for a in points])
    mn = np.array([exps.setdefault((a.m, a.n), len(exps)) for a in points])
    xis = np.array([xi(a) for a in points], dtype=float)
    lows = np.array([min(a.m, a.n) for a in points], dtype=float)
    finite = [int(k) for k in np.concatenate([xis, lows]) if k != INF]
    den = math.lcm(*(k + 1 for k in finite)) if finite else 1

    def scaled(k):
        return np.where(np.isinf(k), 0, den // (np.where(np.isinf(k), 0, k).astype(np.int64) + 1))

    delta = np.where(cls[:, None] == cls[None, :], 0, scaled(np.minimum(xis[:, None], xis[None, :])))
    phi = np.where(mn[:, None] == mn[None, :], 0, scaled(np.minimum(lows[:, None], lows[None, :])))
    return (delta + phi).astype(np.int64), den


def isolation_radius(a: XElement) -> Fraction:
    """A radius r with ``B(a, r) = {a}`` for a in P2 minus 0.

    A different (u, v) costs at least ``1/(1 + xi(a))`` and different
    exponents cost at least ``1/(1 + min(m, n))``.
    """
    if not a.in_p2 or a.is_zero:
        raise ValueError("isolation radius is defined on P2 minus 0")
    return _recip(max(xi(a), min(a.m, a.n)))


def _pin(a: XElement) -> int:
    """Smallest m for which ``B(a, 1/m)`` keeps a's (u, v), and for P2 also (m, n)."""
    k = int(xi(a)) + 1
    if a.in_p2:
        k = max(k, int(min(a.m, a.n)) + 1)
    return k


def continuity_case(sigma: XElement, tau: XElement) -> str:
    if sigma.is_zero and tau.is_zero:
        return "1"
    if sigma.is_zero:
        return "2"
    if tau.is_zero:
        return "2'"
    if sigma.in_p2 and tau.in_p2:
        return "3"
    if sigma.in_p2:
        return "4"
    if tau.in_p2:
        return "4'"
    return "5"


def x_continuity_witness(sigma: XElement, tau: XElement, n: int) -> int:
    """An m with ``B(sigma, 1/m) B(tau, 1/m)`` inside ``B(sigma tau, 1/n)``.

    Primed cases are the left-right mirrors.  Near 0 the block count of
    ``v_mu`` only bounds its length from below by about half, so Case 2
    also needs m beyond twice ``|u_tau|``; Cases 4 and 5 need enough of
    ``e^m`` (or ``f^-m``) in the neighbour to run past the other factor.
    """
    if n < 1:
        raise ValueError("n must be positive")
    case = continuity_case(sigma, tau)
    if case == "1":
        return 2 * n
    if case == "2":
        return max(2 * n + 2 * len(tau.u) + 2, int(xi(tau)) + 2 * n + 1, _pin(tau))
    if case == "2'":
        return max(2 * n + 2 * len(sigma.v) + 2, int(xi(sigma)) + 2 * n + 1, _pin(sigma))
    pins = max(_pin(sigma), _pin(tau))
    if case == "3":
        return pins
    if case == "4":
        return max(len(sigma.v) + int(sigma.n) + n + 1, pins)
    if case == "4'":
        return max(len(tau.u) + int(tau.m) + n + 1, pins)
    return max(len(sigma.v) + len(tau.u) + 1, pins)


_SHORT_U = ["", "f", "ef", "ff", "eef", "eff", "fef", "fff"]
_MN = [0, 1, 2, 3, 4, 5, 6, 8, 11, 15, 20, 27, 36, 48]


def _swap(w: str) -> str:
    return w.translate(str.maketrans("ef", "fe"))


def x_universe(depth: int = 8, exps: Sequence[int] = tuple(_MN)) -> list[XElement]:
    """A finite sample of the model for audits.

    u ranges over short words plus alternating ``(ef)^j`` words (many
    blocks, so large Xi), v over the mirror images; every (u, v) gets all
    exponent pairs from ``exps`` plus the X-shaped point.  Zero comes first.
    """
    us = list(_SHORT_U) + ["ef" * j for j in range(2, depth + 1)] + ["ff" + "ef" * j for j in (3, depth)]
    vs = [_swap(u) for u in us]
    out = [X_ZERO]
    for u in us:
        for v in vs:
            for m in exps:
                for n in exps:
                    out.append(XElement(u, m, n, v))
            out.append(XElement(u, INF, INF, v))
    return out


class _BallIndex:
    """Ball queries over a universe, grouped by (u, v) class and exponent floor."""

    def __init__(self, universe: Sequence[XElement]):
        self.classes: dict[tuple[str, str], list[XElement]] = {}
        for a in universe:
            self.classes.setdefault((a.u, a.v), []).append(a)
        self.class_xi = {k: xi(v[0]) for k, v in self.classes.items()}

    def ball(self, c: XElement, r: Fraction) -> list[XElement]:
        out = []
        xc = xi(c)
        for key, members in self.classes.items():
            delta = Fraction(0) if key == (c.u, c.v) else _recip(min(xc, self.class_xi[key]))
            slack = r - delta
            if slack <= 0:
                continue
            # phi < slack: equal exponents, or min of all four exponents > 1/slack - 1
            floor = 1 / slack - 1
            cmin = min(c.m, c.n)
            for a in members:
                if (a.m, a.n) == (c.m, c.n) or (cmin > floor and min(a.m, a.n) > floor):
                    out.append(a)
        return out


@dataclass
class XAudit:
    cases: dict = field(default_factory=dict)
    checked: int = 0
    violations: list = field(default_factory=list)
    evidence_bound: str = ""

    @property
    def ok(self) -> bool:
        return not self.violations


def audit_x_continuity(
    pairs: Sequence[tuple[XElement, XElement]],
    n_max: int,
    universe: Sequence[XElement] | None = None,
    witness=x_continuity_witness,
    cap: int = 60,
    seed: int = 0,
    limit: int = 20,
) -> XAudit:
    """Check ``B(s, 1/m) B(t, 1/m)`` against ``B(st, 1/n)`` on a sampled universe.

    Each ball is cut to ``cap`` members by a seeded sample that always keeps
    the centre; the report is evidence over that sample only.
    """
    universe = x_universe() if universe is None else universe
    index = _BallIndex(universe)
    rng = random.Random(seed)
    report = XAudit()
    report.evidence_bound = f"{len(universe)} sample points, balls capped at {cap}"

    def sample(c, r):
        members = [a for a in index.ball(c, r) if a != c]
        if len(members) > cap - 1:
            members = rng.sample(members, cap - 1)
        return [c] + members

    for s, t in pairs:
        case = continuity_case(s, t)
        report.cases[case] = report.cases.get(case, 0) + 1
        target = x_mul(s, t)
        for n in range(1, n_max + 1):
            m = witness(s, t, n)
            r = Fraction(1, m)
            bound = Fraction(1, n)
            left, right = sample(s, r), sample(t, r)
            for a in left:
                for b in right:
                    report.checked += 1
                    if x_dist(target, x_mul(a, b)) >= bound and len(report.violations) < limit:
                        report.violations.append((case, s, t, n, m, a, b))
    return report
