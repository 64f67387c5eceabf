"""Inverse subsemigroups of G(E) generated inside a length bound.

When no two nonzero members multiply to 0, the subsemigroup is described by
one non-idempotent ``mu = x p x^-1`` together with its idempotents: after
conjugating by x, each non-idempotent member is ``p^n y y^-1 p^-m`` with y
a proper prefix of p.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .algebra import ZERO, AlgebraError, Element, PathPair, element_key, ghost, inv, is_idempotent, mul, path_element
from .graph import Path, strip_prefix

__all__ = [
    "ClosureReport",
    "Decomposition",
    "Form",
    "closure",
    "conjugate",
    "conjugation_iso_check",
    "decompose",
    "evaluate_form",
    "idempotent_shape_failures",
    "is_zero_divisor_free",
    "minimal_non_idempotent",
]


@dataclass
class ClosureReport:
    generators: list
    elements: tuple
    closed: bool
    zero_witness: tuple | None
    max_len: int
    max_size: int

    @property
    def nonzero(self) -> list[PathPair]:
        return [a for a in self.elements if a is not ZERO]

    @property
    def evidence(self) -> str:
        if self.closed:
            return "complete"
        return f"evidence up to max_len={self.max_len}, max_size={self.max_size}"


def _fits(a: Element, max_len: int) -> bool:
    return a is ZERO or (len(a.x) <= max_len and len(a.y) <= max_len)


def closure(gens: Sequence[Element], max_len: int, max_size: int = 10**5) -> ClosureReport:
    """The inverse subsemigroup generated by ``gens``, cut at ``max_len``.

    Products with a component longer than ``max_len`` are dropped and mark
    the report as not closed; so does reaching ``max_size`` members.
    """
    gens = list(gens)
    if not gens:
        raise ValueError("at least one generator is required")
    if any(g is ZERO for g in gens):
        raise ValueError("generators must be nonzero")
    members: dict[Element, None] = {}
    truncated = False
    for g in gens:
        members.setdefault(g)
        members.setdefault(inv(g))
    frontier = list(members)
    full = len(members) >= max_size
    while frontier and not full:
        fresh: list[Element] = []
        for a in frontier:
            for b in list(members):
                for c in (mul(a, b), mul(b, a)):
                    if c in members:
                        continue
                    if not _fits(c, max_len):
                        truncated = True
                        continue
                    new = [d for d in dict.fromkeys((c, inv(c))) if d not in members]
                    if len(members) + len(new) > max_size:
                        full = truncated = True
                        break
                    for d in new:
                        members[d] = None
                        fresh.append(d)
                if full:
                    break
            if full:
                break
        frontier = fresh
    if full and not truncated:
        truncated = _has_missing_product(members, max_len)
    elements = tuple(sorted(members, key=element_key))
    return ClosureReport(gens, elements, not truncated, _zero_witness(elements), max_len, max_size)


def _has_missing_product(members: dict, max_len: int) -> bool:
    for a in members:
        for b in members:
            c = mul(a, b)
            if c not in members:
                return True
    return False


def _zero_witness(elements: Sequence[Element]) -> tuple[PathPair, PathPair] | None:
    nonzero = [a for a in elements if a is not ZERO]
    for a in nonzero:
        for b in nonzero:
            if mul(a, b) is ZERO:
                return a, b
    return None


def is_zero_divisor_free(report: ClosureReport) -> bool:
    """No two nonzero members multiply to 0 (within the bound when not closed)."""
    return report.zero_witness is None


def idempotent_shape_failures(report: ClosureReport) -> list[Element]:
    """Members where ``a a = a`` disagrees with the ``u u^-1`` shape."""
    return [a for a in report.elements if (mul(a, a) == a) != is_idempotent(a)]


def minimal_non_idempotent(report: ClosureReport) -> PathPair | None:
    """The non-idempotent ``[y|x]`` (meaning ``y x^-1``) with |x| least, then |y| least."""
    cands = [a for a in report.nonzero if not is_idempotent(a)]
    if not cands:
        return None
    return min(cands, key=lambda a: (len(a.y), len(a.x), element_key(a)))


@dataclass(frozen=True)
class Form:
    """``p^n y y^-1 p^-m`` with y a proper prefix of p."""

    n: int
    m: int
    y: Path


@dataclass
class Decomposition:
    x: Path | None
    p: Path | None
    mu: PathPair | None
    forms: dict = field(default_factory=dict)
    idempotents: list = field(default_factory=list)


def conjugate(x: Path, a: Element) -> Element:
    """``x^-1 a x``."""
    return mul(mul(ghost(x), a), path_element(x))


def _split_powers(p: Path, w: Path) -> tuple[int, Path] | None:
    """Write ``w = p^k y`` with y a proper prefix of p."""
    k = 0
    while True:
        rest = strip_prefix(p, w)
        if rest is None:
            break
        w = rest
        k += 1
    if strip_prefix(w, p) is None or len(w) == len(p):
        return None
    return k, w


def _form_of(x: Path, p: Path, a: PathPair) -> Form | None:
    b = conjugate(x, a)
    if b is ZERO or mul(path_element(x), mul(b, ghost(x))) != a:
        return None
    left = _split_powers(p, b.x)
    right = _split_powers(p, b.y)
    if left is None or right is None or left[1] != right[1]:
        return None
    return Form(left[0], right[0], left[1])


def evaluate_form(x: Path, p: Path, form: Form) -> Element:
    """``x p^n y y^-1 p^-m x^-1`` evaluated by multiplication only."""
    acc: Element = path_element(x)
    for _ in range(form.n):
        acc = mul(acc, path_element(p))
    acc = mul(acc, PathPair(form.y, form.y))
    for _ in range(form.m):
        acc = mul(acc, ghost(p))
    return mul(acc, ghost(x))


def decompose(report: ClosureReport) -> Decomposition:
    """Find ``mu = x p x^-1`` and the form of every member.

    Non-idempotent members must all have a form; idempotents get one when
    they lie in ``x G(E) x^-1`` and are listed separately otherwise.
    """
    if not is_zero_divisor_free(report):
        raise ValueError(f"zero divisors {report.zero_witness} present")
    mu = minimal_non_idempotent(report)
    if mu is None:
        return Decomposition(None, None, None, {}, list(report.nonzero))
    x = mu.y
    p = strip_prefix(x, mu.x)
    if p is None or not p.edges:
        raise AlgebraError(f"{mu} is not of the form x p x^-1")
    dec = Decomposition(x, p, mu)
    for a in report.nonzero:
        form = _form_of(x, p, a)
        if form is not None:
            if evaluate_form(x, p, form) != a:
                raise AlgebraError(f"form {form} does not reproduce {a}")
            dec.forms[a] = form
        elif is_idempotent(a):
            dec.idempotents.append(a)
        else:
            raise AlgebraError(f"{a} has no form x p^n y y^-1 p^-m x^-1")
    return dec


def conjugation_iso_check(report: ClosureReport, x: Path) -> bool:
    """``a -> x^-1 a x`` is an injective homomorphism on ``S' = S cap x G(E) x^-1``."""
    sub = [a for a in report.nonzero if strip_prefix(x, a.x) is not None and strip_prefix(x, a.y) is not None]
    images = {}
    for a in sub:
        b = conjugate(x, a)
        if b is ZERO or mul(mul(path_element(x), b), ghost(x)) != a:
            return False
        images[a] = b
    if len(set(images.values())) != len(images):
        return False
    for a in sub:
        for b in sub:
            if conjugate(x, mul(a, b)) != mul(images[a], images[b]):
                return False
    return True
