"""Named audits that turn module checks into flat, deterministic records."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .algebra import ZERO, audit_laws, defining_relations, enumerate_elements, idempotent_law_violations, inv
from .graph import CapacityError, GraphError, RayGraph
from .metric import EVIDENCE_NOTE, audit_continuity, audit_metric, matrix_axiom_violations, metric_axiom_violations, nondiscreteness_check
from .models import delta as dm
from .models import density as dn
from .models import xmodel as xm
from .t1 import audit_t1

__all__ = ["AUDIT_KINDS", "AuditConfig", "UsageError", "run_audit"]

AUDIT_KINDS = ("algebra", "metric", "continuity", "t1", "model:delta", "model:p2x", "model:density")


class UsageError(ValueError):
    """The audit kind does not fit the configured graph."""


@dataclass(frozen=True)
class AuditConfig:
    graph: object
    graph_name: str
    max_len: int = 3
    max_size: int = 10**5
    n_max: int = 4
    seed: int = 0


def _record(kind: str, cfg: AuditConfig, checked: int, violations: list, evidence: str, **extra) -> dict:
    rec = {
        "command": "audit",
        "kind": kind,
        "graph": cfg.graph_name,
        "max_len": cfg.max_len,
        "n_max": cfg.n_max,
        "seed": cfg.seed,
        "checked": checked,
    }
    rec.update(extra)
    rec["violations"] = [_show(v) for v in violations]
    rec["evidence_bound"] = evidence
    rec["note"] = EVIDENCE_NOTE
    rec["ok"] = not violations
    return rec


def _show(v) -> str:
    if isinstance(v, tuple):
        return " ".join(str(p) for p in v)
    return str(v)


def audit_algebra(cfg: AuditConfig) -> dict:
    tr = enumerate_elements(cfg.graph, cfg.max_len)
    laws = audit_laws(tr)
    bad: list = []
    if not laws.ok:
        bad.append(("laws", laws.associativity_failures, laws.inverse_law_failures, laws.inverse_uniqueness_failures))
    bad += [("idempotent-law",) + pair for pair in idempotent_law_violations(tr)]
    relations = 0
    if not isinstance(cfg.graph, RayGraph):
        for name, lhs, rhs in defining_relations(cfg.graph):
            relations += 1
            if lhs != rhs:
                bad.append((name, lhs, rhs))
    return _record("algebra", cfg, laws.triples + relations, bad, f"truncation max_len={cfg.max_len} ({len(tr)} elements)")


def audit_metric_kind(cfg: AuditConfig) -> dict:
    tr = enumerate_elements(cfg.graph, cfg.max_len)
    rep = audit_metric(tr)
    bad = list(rep.violations) + [("isolation", a) for a, _ in rep.isolation_failures]
    try:
        nondiscreteness_check(cfg.graph, cfg.n_max)
        limit = True
    except ValueError:
        limit = False
    n = len(tr)
    return _record("metric", cfg, n * n * n, bad, f"truncation max_len={cfg.max_len} ({n} elements)", zero_is_limit=limit)


def audit_continuity_kind(cfg: AuditConfig) -> dict:
    tr = enumerate_elements(cfg.graph, cfg.max_len)
    rep = audit_continuity(tr, cfg.n_max)
    return _record("continuity", cfg, rep.checked, rep.violations, rep.evidence_bound)


def audit_t1_kind(cfg: AuditConfig) -> dict:
    if not isinstance(cfg.graph, RayGraph):
        raise UsageError("audit t1 needs --graph ray")
    rep = audit_t1(cfg.graph, cfg.max_len, cfg.n_max)
    return _record("t1", cfg, rep.separations + rep.continuity_checks, rep.violations, rep.evidence_bound)


def audit_delta(cfg: AuditConfig) -> dict:
    top = max(cfg.max_len, 10)
    pts = [dm.DELTA, ZERO] + [dm.power_pair(n, m) for n in range(cfg.max_len + 1) for m in range(cfg.max_len + 1)]
    bad: list = list(metric_axiom_violations(pts, dm.delta_dist))
    checked = len(pts) ** 3
    for n in range(top + 1):
        for m in range(top + 1):
            checked += 1
            if dm.delta_dist(dm.DELTA, dm.power_pair(n, m)) != Fraction(1, min(n, m) + 1):
                bad.append(("delta-distance", n, m))
    one = dm.power_pair(0, 0)
    facts = {
        "delta*delta": dm.delta_mul(dm.DELTA, dm.DELTA) is dm.DELTA,
        "inverse": dm.delta_inv(dm.DELTA) is dm.DELTA,
        "1*delta": dm.delta_mul(one, dm.DELTA) is dm.DELTA and dm.delta_mul(dm.DELTA, one) is dm.DELTA,
        "0*delta": dm.delta_mul(ZERO, dm.DELTA) is ZERO and dm.delta_mul(dm.DELTA, ZERO) is ZERO,
    }
    bad += [("fact", k) for k, ok in facts.items() if not ok]
    for a in pts:
        for b in pts:
            for c in pts:
                checked += 1
                if dm.delta_mul(dm.delta_mul(a, b), c) != dm.delta_mul(a, dm.delta_mul(b, c)):
                    bad.append(("associativity", a, b, c))
    return _record("model:delta", cfg, checked, bad, f"powers up to {cfg.max_len}, formula up to {top}")


def x_metric_sample(max_word: int = 3, max_exp: int = 3) -> list:
    us = [""] + [w for w in _words(max_word) if w.endswith("f")]
    vs = [""] + [w for w in _words(max_word) if w.endswith("e")]
    out = [xm.X_ZERO]
    for u in us:
        for v in vs:
            for m in range(max_exp + 1):
                for n in range(max_exp + 1):
                    out.append(xm.XElement(u, m, n, v))
            out.append(xm.XElement(u, xm.INF, xm.INF, v))
    return out


def _words(k: int) -> list[str]:
    out = [""]
    level = [""]
    for _ in range(k):
        level = [w + c for w in level for c in "ef"]
        out += level
    return out[1:]


def x_representatives() -> list:
    """Centres for the continuity audit: 0, several X-shaped and P2 points."""
    texts = [
        "X", "f.X.e~", "ef.X.1~", "1.X.fe~", "efef.X.fefe~", "efefefefef.X.e~",
        "1.e^0.f^-0.e~", "f.e^1.f^-2.1~", "1.e^3.f^-0.1~", "efefef.e^2.f^-1.fefe~",
        "1.e^0.f^-0.eeeee~", "fffff.e^0.f^-0.1~",
    ]
    return [xm.X_ZERO] + [xm.parse_x(t) for t in texts]


def audit_p2x(cfg: AuditConfig) -> dict:
    bad: list = []
    checked = 0
    sample = x_metric_sample()
    mat, _ = xm.x_dist_matrix(sample)
    bad += matrix_axiom_violations(mat, sample)
    checked += len(sample) ** 3
    bad += [("critical-pair",) + c for c in xm.critical_pairs()]
    for k in range(11):
        for u, v in (("", ""), ("f", "e"), ("efef", "fe")):
            checked += 1
            lhs = xm.x_dist(xm.XElement(u, k, k, v), xm.XElement(u, xm.INF, xm.INF, v))
            if lhs != Fraction(1, 1 + k):
                bad.append(("phi-limit", u, k, v, lhs))
    reps = x_representatives()
    rep = xm.audit_x_continuity([(s, t) for s in reps for t in reps], cfg.n_max, seed=cfg.seed)
    checked += rep.checked
    bad += rep.violations
    rng = random.Random(cfg.seed)
    pool = rng.sample(sample, 300)
    for s in pool:
        for t in pool:
            checked += 1
            if xm.xi(xm.x_mul(s, t)) < min(xm.xi(s), xm.xi(t)):
                bad.append(("xi", s, t))
    for s in sample:
        if s.in_p2 and not s.is_zero:
            checked += 1
            r = xm.isolation_radius(s)
            if r <= 0 or any(xm.x_dist(s, t) < r for t in sample if t != s):
                bad.append(("isolation", s))
    cases = ",".join(f"{k}:{v}" for k, v in sorted(rep.cases.items()))
    return _record("model:p2x", cfg, checked, bad, f"{len(sample)} metric points; {rep.evidence_bound}", cases=cases)


def audit_density(cfg: AuditConfig) -> dict:
    bad: list = []
    checked = 0
    pairs = dn.distinct_pairs(50, seed=cfg.seed)
    p2 = [a for a in enumerate_elements(dn.P2, 2).elements if a is not ZERO]
    pts = pairs + p2 + [ZERO]
    bad += metric_axiom_violations(pts, dn.density_dist)
    checked += len(pts) ** 3
    for s in pairs[:20]:
        for n in range(11):
            checked += 1
            if dn.density_dist(s, dn.truncate_density(s, n)) != Fraction(1, n + 1):
                bad.append(("truncation", s, n))
    for a in p2:
        checked += 1
        r = dn.density_isolation_radius(a)
        if r <= 0 or any(dn.density_dist(a, b) < r for b in pts if b != a):
            bad.append(("isolation", a))
    rng = random.Random(cfg.seed)
    mixed = pairs[:10] + p2 + [inv(a) for a in p2] + [ZERO]
    for _ in range(1000):
        a, b, c = (rng.choice(mixed) for _ in range(3))
        checked += 1
        if dn.density_mul(dn.density_mul(a, b), c) != dn.density_mul(a, dn.density_mul(b, c)):
            bad.append(("associativity", a, b, c))
    return _record("model:density", cfg, checked, bad, f"{len(pairs)} sequence pairs, P2 up to length 2")


_RUNNERS = {
    "algebra": audit_algebra,
    "metric": audit_metric_kind,
    "continuity": audit_continuity_kind,
    "t1": audit_t1_kind,
    "model:delta": audit_delta,
    "model:p2x": audit_p2x,
    "model:density": audit_density,
}


def run_audit(kind: str, cfg: AuditConfig) -> dict:
    if kind not in _RUNNERS:
        raise UsageError(f"unknown audit {kind!r}; choose from {', '.join(AUDIT_KINDS)}")
    try:
        return _RUNNERS[kind](cfg)
    except (CapacityError, GraphError) as exc:
        raise UsageError(str(exc)) from None
