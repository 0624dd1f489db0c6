"""Command-line entry point."""

from __future__ import annotations

import argparse
import json
import sys
from typing import Optional, Sequence

from . import __version__
from .checks import CHECKS, run_check
from .clubs import parse_cseq
from .export import tree_to_ascii, tree_to_dot, tree_to_json
from .norders import classify_restriction, enumerate_h3, hypertournament, is_H_free, rho2n_fiber
from .ordinal import OrdinalParseError, add, classify, compare, fundamental_sequence, parse, render
from .walks_classic import InfiniteWeight, upper_trace, rho1
from .walks_higher import expand_tr


class UsageError(Exception):
    pass


def _ordinal(text: str, flag: str):
    try:
        return parse(text)
    except OrdinalParseError as exc:
        raise UsageError(f"{flag}: {exc}") from None


def _cseq(text: str, order: int):
    try:
        return parse_cseq(text, default_order=order)
    except ValueError as exc:
        raise UsageError(f"--cseq: {exc}") from None


def _emit(obj) -> None:
    print(json.dumps(obj))


def cmd_walk(args) -> int:
    alpha = _ordinal(args.alpha, "alpha")
    beta = _ordinal(args.beta, "beta")
    if alpha > beta:
        raise UsageError("alpha: must not exceed beta")
    C = _cseq(args.cseq, 1)
    tr = upper_trace(C, alpha, beta)
    try:
        r1: Optional[int] = rho1(C, alpha, beta)
    except InfiniteWeight:
        r1 = None
    report = {
        "steps": [render(x) for x in tr.steps],
        "lower": [render(x) for x in tr.lower],
        "rho2": tr.rho2,
        "rho1": r1,
    }
    if args.json:
        _emit(report)
    elif args.show == "trace":
        print(" > ".join(report["steps"]))
    elif args.show == "lower":
        print(" <= ".join(report["lower"]))
    elif args.show == "rho2":
        print(tr.rho2)
    else:
        print("inf" if r1 is None else r1)
    return 0


def cmd_hwalk(args) -> int:
    t = tuple(_ordinal(x, f"a{i}") for i, x in enumerate(args.ordinals))
    if len(t) != args.n + 1:
        raise UsageError(f"-n: order {args.n} needs {args.n + 1} ordinals, got {len(t)}")
    if any(a > b for a, b in zip(t, t[1:])):
        raise UsageError("a0..an: ordinals must be nondecreasing")
    C = _cseq(args.cseq, args.n)
    if C.order < args.n:
        raise UsageError(f"--cseq: sequence of order {C.order} cannot run order-{args.n} walks")
    tree = expand_tr(C, t)
    if args.format == "json":
        print(tree_to_json(tree))
    elif args.format == "dot":
        sys.stdout.write(tree_to_dot(tree, args.show))
    else:
        sys.stdout.write(tree_to_ascii(tree, args.show))
        print(f"charge {tree.charge()}")
    return 0


def cmd_check(args) -> int:
    bound = _ordinal(args.bound, "--bound")
    if args.name == "depth-truncation" and args.n != 2:
        raise UsageError("-n: depth-truncation runs on order-2 walks")
    C = _cseq(args.cseq or f"compound:{args.n}", args.n)
    if C.order < args.n:
        raise UsageError(f"--cseq: sequence of order {C.order} cannot run order-{args.n} walks")
    res = run_check(args.name, C, args.n, bound, args.samples, args.seed)
    stats = " ".join(f"{k}={v}" for k, v in sorted(res.stats.items()))
    verdict = "ok" if res.ok else f"{len(res.violations)} violation(s)"
    print(f"{res.name}: n={args.n} cseq={C.kind} bound={render(bound)} "
          f"samples={res.samples} {verdict} {stats}".rstrip())
    if not res.ok:
        _emit(res.violations[0])
        return 1
    return 0


def cmd_norder(args) -> int:
    if args.rho != "rho2n":
        raise UsageError(f"--rho: unknown fiber function {args.rho!r}")
    ground = [_ordinal(x, "--ground") for x in args.ground.split(",") if x.strip()]
    if len(set(ground)) < args.n + 1:
        raise UsageError(f"--ground: need at least {args.n + 1} distinct points")
    C = _cseq(args.cseq or f"compound:{args.n}", args.n)
    H = hypertournament(rho2n_fiber(C), ground, args.n)
    free, witness = is_H_free(H)
    report = {
        "n": args.n,
        "ground": [render(x) for x in H.points],
        "relation": [[render(x) for x in g] for g, bit in sorted(H.bits.items()) if bit],
        "h_free": free,
        "witness": None if witness is None else [render(x) for x in witness],
    }
    if args.classify:
        report["classes"] = {
            ",".join(render(x) for x in q): classify_restriction(H, q)
            for q in H.subsets(args.n + 2)
        }
    if args.json:
        _emit(report)
    else:
        for g in report["relation"]:
            print("(" + ", ".join(g) + ")")
        for q, tag in report.get("classes", {}).items():
            print(f"{{{q}}}: {tag}")
        print("H-free" if free else "contains H at {" + ", ".join(report["witness"]) + "}")
    return 0 if free else 1


def cmd_enumerate(args) -> int:
    if args.what != "h3":
        raise UsageError(f"what: unknown family {args.what!r}")
    try:
        counts = enumerate_h3(args.vertices)
    except ValueError as exc:
        raise UsageError(f"--vertices: {exc}") from None
    _emit(counts)
    return 0


def cmd_ord(args) -> int:
    xs = [_ordinal(x, f"operand {i + 1}") for i, x in enumerate(args.operands)]
    need = {"cmp": 2, "add": 2, "classify": 1, "fs": 1}[args.op]
    if args.op == "fs" and len(xs) == 2:
        pass
    elif len(xs) != need:
        raise UsageError(f"{args.op}: expected {need} operand(s), got {len(xs)}")
    if args.op == "cmp":
        print(compare(xs[0], xs[1]))
    elif args.op == "add":
        print(render(add(xs[0], xs[1])))
    elif args.op == "classify":
        kind, pred = classify(xs[0])
        print(kind if pred is None else f"{kind} {render(pred)}")
    else:
        if not xs[0].is_limit():
            raise UsageError(f"fs: {render(xs[0])} is not a limit ordinal")
        if len(xs) == 2:
            if not xs[1].is_finite():
                raise UsageError("fs: the index must be finite")
            print(render(fundamental_sequence(xs[0], int(xs[1]))))
        else:
            print(", ".join(render(fundamental_sequence(xs[0], k)) for k in range(args.terms)))
    return 0


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="ordwalk", description="Walks on ordinals and higher walks.")
    p.add_argument("--version", action="version", version=f"ordwalk {__version__}")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    w = sub.add_parser("walk", help="classical walk from beta down to alpha")
    w.add_argument("alpha")
    w.add_argument("beta")
    w.add_argument("--cseq", default="canonical")
    w.add_argument("--show", choices=["trace", "lower", "rho1", "rho2"], default="trace")
    w.add_argument("--json", action="store_true")
    w.set_defaults(func=cmd_walk)

    h = sub.add_parser("hwalk", help="signed order-n walk tree")
    h.add_argument("-n", type=int, required=True)
    h.add_argument("ordinals", nargs="+")
    h.add_argument("--cseq", default=None)
    h.add_argument("--format", choices=["ascii", "json", "dot"], default="ascii")
    h.add_argument("--show", choices=["outputs", "inputs", "both"], default="both")
    h.set_defaults(func=cmd_hwalk)

    c = sub.add_parser("check", help="seeded property check")
    c.add_argument("name", choices=sorted(CHECKS))
    c.add_argument("-n", type=int, default=2)
    c.add_argument("--bound", default="w^3")
    c.add_argument("--samples", type=int, default=200)
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--cseq", default=None)
    c.set_defaults(func=cmd_check)

    o = sub.add_parser("norder", help="n-order induced on a finite ground set")
    o.add_argument("-n", type=int, default=2)
    o.add_argument("--ground", required=True)
    o.add_argument("--rho", default="rho2n")
    o.add_argument("--cseq", default=None)
    o.add_argument("--classify", action="store_true")
    o.add_argument("--json", action="store_true")
    o.set_defaults(func=cmd_norder)

    e = sub.add_parser("enumerate", help="count small hypertournaments")
    e.add_argument("what", choices=["h3"])
    e.add_argument("--vertices", type=int, default=4)
    e.set_defaults(func=cmd_enumerate)

    d = sub.add_parser("ord", help="ordinal arithmetic")
    d.add_argument("op", choices=["cmp", "add", "classify", "fs"])
    d.add_argument("operands", nargs="+")
    d.add_argument("--terms", type=int, default=5, help="ladder length for fs")
    d.set_defaults(func=cmd_ord)
    return p


def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if getattr(args, "n", 1) is not None and getattr(args, "n", 1) < 1:
            raise UsageError("-n: order must be at least 1")
        if args.command == "hwalk" and args.cseq is None:
            args.cseq = f"compound:{args.n}" if args.n > 1 else "canonical"
        return args.func(args)
    except UsageError as exc:
        print(f"ordwalk: error: {exc}", file=sys.stderr)
        return 2


def run(argv: Optional[Sequence[str]] = None) -> int:
    return main(argv)


if __name__ == "__main__":
    sys.exit(main())
