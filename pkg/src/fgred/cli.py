"""Command-line front end: gen, reduce, solve, verify, bench.

Exit codes: 0 success, 1 domain failure (campaign mismatches, infeasible
solve), 2 usage or parse errors.  All randomness flows from --seed.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from . import bench, formats, generators, oracles, reduce_csp, reduce_cycle, reduce_distance, verify
from .fast import min_weight_kcycle, shortest_kcycle_through
from .model import CircleLayeredGraph, CspInstance, UniformHypergraph

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_USAGE = 2


class UsageError(Exception):
    pass


def _read_instance(path: str):
    try:
        return formats.parse(Path(path).read_text())
    except (OSError, formats.ParseError) as exc:
        raise UsageError(f"error reading {path}: {exc}") from None


def _write(path: str, text: str):
    Path(path).write_text(text)


def _write_sidecar(out_path: str, lines: list[str]):
    if lines:
        _write(out_path + ".meta", "\n".join(lines) + "\n")


# ---------------------------------------------------------------------------
# gen


def cmd_gen(args) -> int:
    kind = args.kind
    seed = args.seed
    if kind == "digraph":
        instance = generators.gen_digraph(args.n, args.m, args.wmin, args.wmax, seed)
        text = formats.emit(instance)
    elif kind == "layered":
        instance = generators.gen_layered(args.k, args.per_layer, args.wmin, args.wmax, seed)
        text = formats.emit(instance)
    elif kind == "planted-kcycle":
        instance, planted = generators.gen_planted_kcycle(
            args.n, args.m, args.k, args.wmin, args.wmax, seed
        )
        text = formats.emit(instance)
        print(f"planted {planted}")
    elif kind == "planted-kclique":
        instance, planted = generators.gen_planted_kclique(
            args.k, args.per_part, args.wmin, args.wmax, seed
        )
        text = formats.emit(instance)
        print(f"planted {planted}")
    elif kind == "clique":
        instance = generators.gen_clique_instance(
            args.k, args.per_part, args.wmin, args.wmax, seed
        )
        text = formats.emit(instance)
    elif kind == "hypergraph":
        instance = generators.gen_hypergraph(
            args.n, args.k, args.m, seed, parts=args.parts,
            wmin=args.wmin, wmax=args.wmax,
        )
        text = formats.emit(instance)
    elif kind == "cnf":
        instance = generators.gen_cnf(args.n, args.m, args.k, seed)
        text = formats.emit_cnf(instance)
    else:
        raise UsageError(f"unknown kind {kind!r}")
    _write(args.out, text)
    print(f"wrote {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# reduce


def cmd_reduce(args) -> int:
    instance = _read_instance(args.input)
    pair = (args.source, args.target)
    sidecar: list[str] = []
    if pair == ("clique", "cycle"):
        if not isinstance(instance, UniformHypergraph) or instance.k != 2:
            raise UsageError("clique source must be a 2-uniform partite hypergraph")
        reduction = (
            reduce_cycle.clique_to_cycle_direct(instance)
            if args.direct
            else reduce_cycle.clique_to_cycle(instance)
        )
        out = formats.emit(reduction.instance)
        sidecar.append(f"scale {reduction.scale} shift {reduction.shift}")
        print(f"N={reduction.info['node_count']} M={reduction.info['edge_count']}")
    elif pair == ("hyperclique", "hypercycle"):
        if not isinstance(instance, UniformHypergraph):
            raise UsageError("hyperclique source must be a hypergraph")
        reduction = reduce_cycle.hyperclique_to_hypercycle(instance)
        out = formats.emit(reduction.instance)
        sidecar.append(f"scale {reduction.scale} shift {reduction.shift}")
        print(f"gamma={reduction.info['gamma']} M={reduction.instance.edge_count}")
    elif pair == ("hypercycle", "cycle"):
        if not isinstance(instance, UniformHypergraph):
            raise UsageError("hypercycle source must be a hypergraph")
        reduction = reduce_cycle.hypercycle_to_digraph(instance)
        out = formats.emit(reduction.instance)
        sidecar.append(f"scale {reduction.scale} shift {reduction.shift}")
        print(f"N={reduction.info['node_count']} M={reduction.info['edge_count']}")
    elif pair == ("min-kcycle", "shortest-cycle"):
        if not isinstance(instance, CircleLayeredGraph):
            raise UsageError("shortest-cycle shift needs a layered instance")
        reduction = reduce_cycle.shift_layered(instance)
        out = formats.emit(reduction.instance)
        sidecar.append(f"scale {reduction.scale} shift {reduction.shift}")
        print(f"shift={reduction.shift}")
    elif pair == ("min-kcycle", "radius"):
        if not isinstance(instance, CircleLayeredGraph):
            raise UsageError("radius gadget needs a layered instance")
        bound = max(instance.graph.weight_bound(), 1)
        if args.unweighted:
            gadget = reduce_distance.build_radius_gadget_unweighted(instance, instance.k)
        else:
            gadget = reduce_distance.build_radius_gadget_weighted(instance, instance.k, bound)
        out = formats.emit(gadget.graph)
        sidecar.append(f"threshold {gadget.threshold}")
        print(f"N={gadget.graph.node_count} threshold={gadget.threshold}")
    elif pair == ("min-kcycle", "wiener"):
        if not isinstance(instance, CircleLayeredGraph):
            raise UsageError("wiener gadget needs a layered instance")
        bound = max(instance.graph.weight_bound(), 1)
        if args.unweighted:
            gadget = reduce_distance.build_wiener_gadget_unweighted(instance, instance.k)
        else:
            gadget = reduce_distance.build_wiener_gadget_weighted(instance, instance.k, bound)
        out = formats.emit(gadget.graph)
        sidecar.append(f"threshold {gadget.threshold}")
        print(f"N={gadget.graph.node_count} threshold={gadget.threshold}")
    elif pair == ("cnf", "hyperclique"):
        if not isinstance(instance, CspInstance):
            raise UsageError("cnf source must be a CNF/CSP instance")
        reduction = reduce_csp.csp_to_hyperclique(instance, args.l)
        out = formats.emit(reduction.instance)
        sidecar.append(f"scale {reduction.scale} shift {reduction.shift}")
        print(f"N={reduction.instance.node_count} M={reduction.instance.edge_count}")
    elif pair == ("cnf", "cycle"):
        if not isinstance(instance, CspInstance):
            raise UsageError("cnf source must be a CNF/CSP instance")
        reduction = reduce_csp.maxksat_to_cycle(instance, args.l)
        out = formats.emit(reduction.instance)
        sidecar.append(f"scale {reduction.scale} shift {reduction.shift}")
        print(f"N={reduction.info['node_count']} M={reduction.info['edge_count']}")
    else:
        raise UsageError(f"unsupported reduction {args.source} -> {args.target}")
    _write(args.out, out)
    _write_sidecar(args.out, sidecar)
    print(f"wrote {args.out}")
    return EXIT_OK


# ---------------------------------------------------------------------------
# solve


def cmd_solve(args) -> int:
    instance = _read_instance(args.input)
    problem = args.problem
    algo = args.algo
    witness = None
    if problem == "min-kcycle":
        g = instance.graph if isinstance(instance, CircleLayeredGraph) else instance
        if algo == "fast":
            result, stats = min_weight_kcycle(g, args.k, seed=args.seed)
            if args.stats:
                print(json.dumps(stats.as_dict()))
        elif algo == "oracle":
            result = oracles.bf_min_kcycle(g, args.k)
        elif algo == "through":
            result = shortest_kcycle_through(g, args.source_node, args.k, seed=args.seed)
        else:
            raise UsageError(f"unknown algo {algo!r} for min-kcycle")
        status, weight, witness = result.status, result.weight, result.witness
    elif problem == "shortest-cycle":
        g = instance.graph if isinstance(instance, CircleLayeredGraph) else instance
        result = oracles.bf_shortest_cycle(g)
        status, weight, witness = result.status, result.weight, result.witness
    elif problem == "min-clique":
        result = oracles.bf_min_clique(instance, args.k)
        status, weight, witness = result.status, result.weight, result.witness
    elif problem == "hyperclique":
        result = oracles.bf_hyperclique(instance, args.l, mode=args.mode)
        status, weight, witness = result.status, result.weight, result.witness
    elif problem == "hypercycle":
        result = oracles.bf_hypercycle(instance, args.l, mode=args.mode)
        status, weight, witness = result.status, result.weight, result.witness
    elif problem == "maxsat":
        if algo == "oracle":
            count, witness = oracles.bf_max_ksat(instance)
        elif algo == "hyperclique":
            count, witness = reduce_csp.max_csp_via_hyperclique(
                instance, args.l,
                lambda h, size: oracles.bf_hyperclique(h, size, mode="max"),
            )
        elif algo == "cycle":
            count, witness = reduce_csp.max_ksat_via_cycle(
                instance, args.l,
                lambda lg, size: oracles.bf_min_kcycle(lg.graph, size, mode="max"),
            )
        else:
            raise UsageError(f"unknown algo {algo!r} for maxsat")
        status, weight = "found", count
    elif problem == "radius":
        g = instance.graph if isinstance(instance, CircleLayeredGraph) else instance
        status, weight = "found", oracles.bf_radius(g)
    elif problem == "wiener":
        g = instance.graph if isinstance(instance, CircleLayeredGraph) else instance
        status, weight = "found", oracles.bf_wiener(g)
    elif problem == "apsp":
        g = instance.graph if isinstance(instance, CircleLayeredGraph) else instance
        matrix = oracles.bf_apsp(g)
        status, weight = "found", oracles.radius_via_apsp(matrix)
        print("# radius via APSP")
    else:
        raise UsageError(f"unknown problem {problem!r}")
    print(f"{status} {weight if weight is not None else ''}".rstrip())
    if witness is not None and args.witness_out:
        _write(args.witness_out, formats.emit(witness))
    return EXIT_OK


# ---------------------------------------------------------------------------
# verify / bench


def cmd_verify(args) -> int:
    report = verify.run_campaign(args.reduction, args.trials, args.seed)
    print(
        f"reduction={report.name} trials={report.trials} "
        f"mismatches={report.mismatches} wall={report.wall_time:.2f}s"
    )
    if report.first_failure:
        print(f"first_failure={json.dumps(report.first_failure)}")
    return EXIT_OK if report.ok else EXIT_DOMAIN


def cmd_bench(args) -> int:
    schedule = bench.density_schedule(range(args.min_exp, args.max_exp + 1))
    result = bench.run_bench(
        schedule, args.k, args.seed,
        heavy_trials=args.trials, rb_trials=args.trials,
        time_budget=args.time_budget,
    )
    Path(args.out).write_text(result.csv_text())
    slope = result.slope
    print(f"wrote {args.out}")
    print(f"slope {slope:.4f}" if slope is not None else "slope n/a")
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fgred",
        description="fine-grained reductions toolkit: generate, reduce, solve, verify, bench",
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0, help="master random seed")
    common.add_argument("--threads", type=int, default=1,
                        help="accepted for interface compatibility; runs are sequential")
    common.add_argument("--time-budget", type=float, default=None,
                        help="soft wall-clock budget in seconds where supported")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("gen", help="generate an instance file", parents=[common])
    p.add_argument("--kind", required=True,
                   choices=["digraph", "layered", "planted-kcycle", "planted-kclique",
                            "clique", "hypergraph", "cnf"])
    p.add_argument("--n", type=int, default=10)
    p.add_argument("--m", type=int, default=20)
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--l", type=int, default=4)
    p.add_argument("--parts", type=int, default=0)
    p.add_argument("--per-layer", type=int, default=3)
    p.add_argument("--per-part", type=int, default=3)
    p.add_argument("--wmin", type=int, default=-8)
    p.add_argument("--wmax", type=int, default=8)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_gen)

    p = sub.add_parser("reduce", help="apply a reduction to an instance file", parents=[common])
    p.add_argument("--from", dest="source", required=True,
                   choices=["clique", "hyperclique", "hypercycle", "min-kcycle", "cnf"])
    p.add_argument("--to", dest="target", required=True,
                   choices=["cycle", "hypercycle", "hyperclique", "shortest-cycle",
                            "radius", "wiener"])
    p.add_argument("--l", type=int, default=4)
    p.add_argument("--direct", action="store_true",
                   help="use the factorial-weighted direct clique-to-cycle construction")
    p.add_argument("--unweighted", action="store_true")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_reduce)

    p = sub.add_parser("solve", help="solve a problem on an instance file", parents=[common])
    p.add_argument("--problem", required=True,
                   choices=["min-kcycle", "shortest-cycle", "min-clique", "hyperclique",
                            "hypercycle", "maxsat", "radius", "wiener", "apsp"])
    p.add_argument("--algo", default="oracle",
                   choices=["oracle", "fast", "through", "hyperclique", "cycle"])
    p.add_argument("--k", type=int, default=3)
    p.add_argument("--l", type=int, default=4)
    p.add_argument("--mode", default="min", choices=["min", "max"])
    p.add_argument("--source-node", type=int, default=0)
    p.add_argument("--stats", action="store_true", help="emit one JSON stats line")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--witness-out")
    p.set_defaults(fn=cmd_solve)

    p = sub.add_parser("verify", help="run a seeded oracle-equivalence campaign", parents=[common])
    p.add_argument("--reduction", required=True, choices=sorted(verify.CAMPAIGNS))
    p.add_argument("--trials", type=int, default=100)
    p.set_defaults(fn=cmd_verify)

    p = sub.add_parser("bench", help="benchmark the fast solver, emit CSV + slope", parents=[common])
    p.add_argument("--k", type=int, default=5)
    p.add_argument("--min-exp", type=int, default=10)
    p.add_argument("--max-exp", type=int, default=15)
    p.add_argument("--trials", type=int, default=1)
    p.add_argument("--out", required=True)
    p.set_defaults(fn=cmd_bench)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except UsageError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except formats.ParseError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN


if __name__ == "__main__":
    sys.exit(main())
