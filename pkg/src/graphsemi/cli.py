"""Command line entry point: ``graphsemi {eval,audit,closure}``.

Exit codes: 0 on success or a clean audit, 1 when an audit finds
violations, 2 on usage or parse errors.
"""

from __future__ import annotations

import argparse
import json
import sys

from .algebra import ZERO, AlgebraError
from .audits import AUDIT_KINDS, AuditConfig, UsageError, run_audit
from .graph import GraphError, line, load_graph, ray, rose
from .models.literals import MODEL_NAMES, eval_model
from .subsemigroups import closure, decompose, is_zero_divisor_free, minimal_non_idempotent
from .syntax import ParseError, parse_element

EXIT_OK, EXIT_VIOLATIONS, EXIT_USAGE = 0, 1, 2


def resolve_graph(spec: str):
    """``rose:n``, ``line:d``, ``ray`` or a graph file path."""
    if spec == "ray":
        return ray(), "ray"
    kind, _, arg = spec.partition(":")
    if kind in ("rose", "line") and arg:
        try:
            k = int(arg)
        except ValueError:
            raise UsageError(f"bad graph size in {spec!r}") from None
        if k < 1:
            raise UsageError(f"graph size must be positive in {spec!r}")
        return (rose(k) if kind == "rose" else line(k)), spec
    try:
        return load_graph(spec), spec
    except OSError as exc:
        raise UsageError(f"cannot read graph file {spec!r}: {exc.strerror}") from None


def _positive(text: str) -> int:
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be a positive integer")
    return v


def _nonnegative(text: str) -> int:
    v = int(text)
    if v < 0:
        raise argparse.ArgumentTypeError("must be a nonnegative integer")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--graph", default="rose:2", help="rose:n, line:d, ray, or a graph file")
    common.add_argument("--max-len", type=_nonnegative, default=3)
    common.add_argument("--max-size", type=_positive, default=10**5)
    common.add_argument("--n-max", type=_positive, default=4)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--format", choices=("text", "records"), default="text")

    parser = argparse.ArgumentParser(prog="graphsemi", description="Graph inverse semigroup toolkit")
    sub = parser.add_subparsers(dest="command", required=True)
    p = sub.add_parser("eval", parents=[common], help="evaluate an element expression")
    p.add_argument("expr")
    p.add_argument("--model", choices=MODEL_NAMES, help="evaluate a model literal instead of a G(E) element")
    p = sub.add_parser("audit", parents=[common], help="run a property audit")
    p.add_argument("kind", help="one of " + ", ".join(AUDIT_KINDS))
    p = sub.add_parser("closure", parents=[common], help="inverse subsemigroup generated by elements")
    p.add_argument("gens", nargs="*")
    return parser


def emit(record: dict, fmt: str, out=None) -> None:
    out = out or sys.stdout
    if fmt == "records":
        out.write(json.dumps(record, separators=(", ", ": ")) + "\n")
        return
    for key, value in record.items():
        if isinstance(value, list):
            out.write(f"{key}: {len(value)}\n")
            for item in value:
                out.write(f"  {item}\n")
        elif isinstance(value, dict):
            out.write(f"{key}:\n")
            for k, v in value.items():
                out.write(f"  {k}: {v}\n")
        else:
            out.write(f"{key}: {value}\n")


def cmd_eval(args, graph, name) -> int:
    if args.model:
        try:
            value = eval_model(args.model, args.expr)
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        name = "model:" + args.model
    else:
        value = parse_element(args.expr, graph)
    emit({"command": "eval", "graph": name, "expr": args.expr, "value": str(value)}, args.format)
    return EXIT_OK


def cmd_audit(args, graph, name) -> int:
    cfg = AuditConfig(graph, name, args.max_len, args.max_size, args.n_max, args.seed)
    record = run_audit(args.kind, cfg)
    emit(record, args.format)
    return EXIT_OK if record["ok"] else EXIT_VIOLATIONS


def closure_record(gens, graph, name, max_len, max_size) -> dict:
    report = closure(gens, max_len, max_size)
    rec = {
        "command": "closure",
        "graph": name,
        "generators": [str(g) for g in gens],
        "size": len(report.elements),
        "closed": report.closed,
        "evidence": report.evidence,
        "zero_witness": None if report.zero_witness is None else [str(a) for a in report.zero_witness],
    }
    if is_zero_divisor_free(report):
        dec = decompose(report)
        mu = minimal_non_idempotent(report)
        rec["decomposition"] = {
            "mu": None if mu is None else str(mu),
            "x": None if dec.x is None else str(dec.x),
            "p": None if dec.p is None else str(dec.p),
            "forms": {str(a): [f.n, f.m, str(f.y)] for a, f in dec.forms.items()},
            "idempotents": [str(a) for a in dec.idempotents],
        }
    else:
        rec["decomposition"] = None
    return rec


def cmd_closure(args, graph, name) -> int:
    if not args.gens:
        raise UsageError("closure needs at least one generator")
    gens = [parse_element(g, graph) for g in args.gens]
    if any(g is ZERO for g in gens):
        raise UsageError("generators must be nonzero")
    emit(closure_record(gens, graph, name, args.max_len, args.max_size), args.format)
    return EXIT_OK


COMMANDS = {"eval": cmd_eval, "audit": cmd_audit, "closure": cmd_closure}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    try:
        graph, name = resolve_graph(args.graph)
        return COMMANDS[args.command](args, graph, name)
    except (UsageError, ParseError, GraphError, AlgebraError) as exc:
        print(f"graphsemi: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
