"""Command-line interface: solve, classify, certify, generate, chromatic,
enumerate-check, cubic-experiment, play.

Exit codes: 0 success, 1 errors or failed checks, 2 inconclusive solve,
3 enumerate-check disagreement (should never happen).
"""

from __future__ import annotations

import argparse
import os
import sys

from .graph import (
    Graph,
    ParseError,
    bits,
    connected,
    format_edge_list,
    parse_graph,
    popcount,
    to_graph6,
)
from .colouring import chromatic_number, k_colourable
from .generators import (
    InvalidParameter,
    NAMED_GRAPHS,
    enumerate_graphs,
    make_named,
    parse_named_spec,
    random_cubic,
)
from . import solver
from .solver import Verdict, adversarial_response, belief_update, solve
from .certificates import (
    CopStrategyTree,
    RobberCertificate,
    certificate_from_json,
    certificate_to_json,
    verify_cop_strategy,
    verify_robber_certificate,
)
from .classifier import classify, diamond_condition, hideout_check
from .subgraph import contains


def _default_budget() -> int:
    env = os.environ.get("LOCATABLE_BUDGET")
    return int(env) if env else solver.DEFAULT_BUDGET


def _load_graph(args) -> Graph:
    if getattr(args, "named", None):
        return make_named(parse_named_spec(args.named))
    if getattr(args, "file", None):
        with open(args.file, "r", encoding="utf-8") as fh:
            return parse_graph(fh.read(), args.format)
    raise SystemExit("a graph is required: use --named or --file")


def _add_graph_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--named", help="named graph spec, e.g. sunlet:6 or pretzel")
    p.add_argument("--file", help="path to a graph file")
    p.add_argument(
        "--format",
        choices=("edge-list", "graph6"),
        default="edge-list",
        help="file format for --file",
    )


def cmd_solve(args) -> int:
    g = _load_graph(args)
    result = solve(g, budget=args.budget, engine=args.engine)
    print(result.report())
    if args.emit_certificate:
        if result.verdict is Verdict.LOCATABLE:
            cert = solver.extract_cop_strategy(g, result)
        elif result.verdict is Verdict.NON_LOCATABLE:
            cert = solver.extract_robber_certificate(g, result)
        else:
            print("no certificate for an inconclusive verdict", file=sys.stderr)
            return 2
        with open(args.emit_certificate, "w", encoding="utf-8") as fh:
            fh.write(certificate_to_json(cert))
        print(f"certificate written to {args.emit_certificate}")
    return 2 if result.verdict is Verdict.INCONCLUSIVE else 0


def cmd_classify(args) -> int:
    g = _load_graph(args)
    verdict = classify(g)
    print(verdict.to_json())
    if args.cross_check:
        result = solve(g, budget=args.budget)
        print(f"solver: {result.verdict.value}")
        agree = (
            verdict.outcome == "Unknown"
            or result.verdict is Verdict.INCONCLUSIVE
            or verdict.outcome == result.verdict.value
        )
        print(f"agreement: {'ok' if agree else 'MISMATCH'}")
        if not agree:
            return 1
    return 0


def cmd_certify(args) -> int:
    g = _load_graph(args)
    with open(args.certificate, "r", encoding="utf-8") as fh:
        cert = certificate_from_json(fh.read())
    if isinstance(cert, RobberCertificate):
        res = verify_robber_certificate(g, cert)
        if res.valid:
            print("Valid (robber evades forever; graph is non-locatable)")
            return 0
        member = sorted(bits(res.member)) if res.member is not None else None
        print(f"Invalid: member {member}, probe {res.probe}: {res.reason}")
        return 1
    res = verify_cop_strategy(g, cert)
    if res.valid:
        print(f"Valid (cop locates within {res.depth} probes)")
        return 0
    print(f"Invalid at path {list(res.path)}: {res.reason}")
    return 1


def cmd_generate(args) -> int:
    g = _load_graph(args)
    if args.out_format == "graph6":
        print(to_graph6(g))
    else:
        sys.stdout.write(format_edge_list(g))
    return 0


def cmd_chromatic(args) -> int:
    g = _load_graph(args)
    chi = chromatic_number(g)
    colouring = k_colourable(g, chi)
    print(f"chromatic_number: {chi}")
    print("colouring: " + " ".join(str(c) for c in colouring))
    return 0


def _diam2_mismatches(n: int, lo: int, hi: int, budget: int):
    """Scan labeled graphs with edge masks in [lo, hi); return
    (graphs, diameter-2 graphs, mismatching masks)."""
    from .graph import distance_matrix

    pairs = [(u, v) for u in range(n) for v in range(u + 1, n)]
    scanned = checked = 0
    bad = []
    for mask in range(lo, hi):
        edges = [pairs[k] for k in range(len(pairs)) if mask >> k & 1]
        g = Graph.from_edges(n, edges)
        if not connected(g):
            continue
        scanned += 1
        dm = distance_matrix(g)
        if max(max(row) for row in dm.dist) != 2:
            continue
        checked += 1
        verdict = classify(g)
        result = solve(g, budget=budget)
        if verdict.outcome == "Unknown" or verdict.outcome != result.verdict.value:
            bad.append(mask)
    return scanned, checked, bad


def cmd_enumerate_check(args) -> int:
    n = args.n
    if n > 7:
        raise SystemExit("enumerate-check supports n <= 7")
    if n == 7 and not args.large:
        raise SystemExit("n = 7 scans 2^21 graphs; pass --large to confirm")
    total_masks = 1 << (n * (n - 1) // 2)
    if args.jobs > 1:
        import multiprocessing as mp

        step = (total_masks + args.jobs - 1) // args.jobs
        ranges = [
            (n, lo, min(lo + step, total_masks), args.budget)
            for lo in range(0, total_masks, step)
        ]
        with mp.Pool(args.jobs) as pool:
            parts = pool.starmap(_diam2_mismatches, ranges)
        scanned = sum(p[0] for p in parts)
        checked = sum(p[1] for p in parts)
        bad = sorted(m for p in parts for m in p[2])
    else:
        scanned, checked, bad = _diam2_mismatches(n, 0, total_masks, args.budget)
    print(f"n={n}: {scanned} connected graphs, {checked} of diameter 2")
    if bad:
        print(f"DISAGREEMENT on {len(bad)} graphs; first edge mask: {bad[0]}")
        return 3
    print("solver and classifier agree on all diameter-2 graphs; 0 counterexamples")
    return 0


def cmd_cubic_experiment(args) -> int:
    n, samples = args.n, args.samples
    diamond_free = 0
    classifier_counts: dict[str, int] = {}
    solver_counts: dict[str, int] = {}
    run_solver = n <= solver.PYTHON_ENGINE_MAX_N
    for i in range(samples):
        g = random_cubic(n, seed=args.seed + i)
        free = next(iter(__import__("locatable.subgraph", fromlist=["enumerate_diamonds"]).enumerate_diamonds(g)), None) is None
        if free:
            diamond_free += 1
            if hideout_check(g) is None:
                print(f"sample {i}: diamond-free but hideout_check is None")
                return 1
        v = classify(g)
        classifier_counts[v.outcome] = classifier_counts.get(v.outcome, 0) + 1
        if run_solver:
            r = solve(g, budget=args.budget)
            solver_counts[r.verdict.value] = solver_counts.get(r.verdict.value, 0) + 1
    print(f"samples: {samples} at n={n} (seed base {args.seed})")
    print(f"diamond-free fraction: {diamond_free / samples:.3f}")
    print(f"classifier verdicts: {sorted(classifier_counts.items())}")
    if run_solver:
        print(f"solver verdicts: {sorted(solver_counts.items())}")
    else:
        print(f"solver skipped (n > {solver.PYTHON_ENGINE_MAX_N}; belief space too large)")
    return 0


def cmd_play(args) -> int:
    g = _load_graph(args)
    result = None
    if args.solved:
        result = solve(g, budget=args.budget)
        print(f"(exact play: graph solved, verdict {result.verdict.value})")
    belief = g.full_mask
    probes = 0
    print(f"graph with {g.n} vertices; belief: {' '.join(map(str, bits(belief)))}")
    while True:
        try:
            line = input("probe> ").strip()
        except EOFError:
            print()
            return 0
        if line in ("q", "quit", "exit"):
            return 0
        try:
            p = int(line)
        except ValueError:
            print(f"enter a vertex 0..{g.n - 1} or 'quit'")
            continue
        if not 0 <= p < g.n:
            print(f"vertex out of range 0..{g.n - 1}")
            continue
        probes += 1
        d = adversarial_response(g, belief, p, result)
        out = belief_update(g, belief, p, d)
        print(f"distance: {d}")
        if out.terminal:
            located = next(bits(out.consistent))
            print(f"LOCATED at vertex {located} after {probes} probes")
            return 0
        belief = out.successor
        print(f"belief ({popcount(belief)}): {' '.join(map(str, bits(belief)))}")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="locatable",
        description="Exact decisions, certificates and structural rules for "
        "the distance-probe robber-locating game.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("solve", help="decide locatability exactly")
    _add_graph_args(p)
    p.add_argument("--budget", type=int, default=_default_budget())
    p.add_argument("--engine", choices=("auto", "python", "numpy"), default="auto")
    p.add_argument("--jobs", type=int, default=1, help="accepted; solving is sequential")
    p.add_argument("--emit-certificate", metavar="PATH")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("classify", help="structural rule verdict")
    _add_graph_args(p)
    p.add_argument("--budget", type=int, default=_default_budget())
    p.add_argument("--cross-check", action="store_true")
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("certify", help="verify a certificate JSON")
    p.add_argument("certificate", help="path to certificate JSON")
    _add_graph_args(p)
    p.set_defaults(func=cmd_certify)

    p = sub.add_parser("generate", help="emit a named graph")
    _add_graph_args(p)
    p.add_argument(
        "--out-format",
        dest="out_format",
        choices=("edge-list", "graph6"),
        default="edge-list",
    )
    p.set_defaults(func=cmd_generate)

    p = sub.add_parser("chromatic", help="exact chromatic number")
    _add_graph_args(p)
    p.set_defaults(func=cmd_chromatic)

    p = sub.add_parser(
        "enumerate-check",
        help="exhaustive diameter-2 agreement scan between solver and classifier",
    )
    p.add_argument("-n", type=int, default=6)
    p.add_argument("--large", action="store_true", help="allow n = 7")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--budget", type=int, default=_default_budget())
    p.set_defaults(func=cmd_enumerate_check)

    p = sub.add_parser("cubic-experiment", help="random cubic graph sweep")
    p.add_argument("-n", type=int, default=50)
    p.add_argument("--samples", type=int, default=200)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--budget", type=int, default=_default_budget())
    p.add_argument("--jobs", type=int, default=1, help="accepted; runs sequentially")
    p.set_defaults(func=cmd_cubic_experiment)

    p = sub.add_parser("play", help="interactive cop play against the engine")
    _add_graph_args(p)
    p.add_argument("--budget", type=int, default=_default_budget())
    p.add_argument("--solved", action="store_true", help="exact adversary via a full solve")
    p.set_defaults(func=cmd_play)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (ParseError, InvalidParameter, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    raise SystemExit(main())
