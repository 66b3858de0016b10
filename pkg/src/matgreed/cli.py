"""Command-line front end.

Exit codes: 0 ok, 2 parse/usage error, 3 classification mismatch,
4 size cap or enumeration budget exceeded, 10 satisfiable, 20 unsatisfiable.
Output is one ``key: value`` pair per line.
"""
from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from .core import (
    EXHAUSTIVE_CAP,
    Classification,
    ConstructionError,
    DomainTooLargeError,
    GroundSet,
    check_axioms,
    classify,
    intersection_oracle,
    is_greedoid,
)
from .graphs import GraphFormatError, graph_from_json, tree_from_json
from .logic import ParseError, brute_force_sat, parse_circuit, parse_dimacs
from .oracles import PartitionSpec, explicit_family, partition_matroid, rooted_subtree_greedoid, uniform_matroid
from .reductions import (
    KINDS,
    InstanceFormatError,
    deserialize_instance,
    padded_sat_to_intersection,
    sat_to_intersection,
    sat_to_weighted_greedoid,
    serialize_instance,
    wcs_to_dual_param_intersection,
    wcs_to_param_intersection,
    weighted_instance,
    weights_from_json,
    weights_to_json,
)
from .solvers import brute_force_max_intersection, brute_force_max_weight, greedy_basis, matroid_intersection
from .treematch import (
    BudgetExceededError,
    DEFAULT_BUDGET,
    bipartite_matching_as_intersection,
    tree_constrained_matching,
    tree_matching_as_intersection,
)

EXIT_OK, EXIT_PARSE, EXIT_MISMATCH, EXIT_BUDGET, EXIT_SAT, EXIT_UNSAT = 0, 2, 3, 4, 10, 20
STOCK_KINDS = ("explicit", "uniform", "partition", "subtree")
PADDED_AUTO_LIMIT = 16


class UsageError(Exception):
    pass


def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None


def _emit(lines: list[str]) -> None:
    sys.stdout.write("".join(line + "\n" for line in lines))


def _labels(ground: GroundSet, mask: int) -> str:
    return " ".join(ground.labels_of(mask)) or "-"


def _flag(value) -> str:
    return "skipped" if value is None else str(value).lower()


# check


def _stock_oracle(doc: dict):
    kind = doc["kind"]
    if kind == "subtree":
        return rooted_subtree_greedoid(tree_from_json(json.dumps(doc["tree"])))
    ground = GroundSet(tuple(doc["ground"]))
    if kind == "explicit":
        return explicit_family(ground, [ground.mask(s) for s in doc["feasible"]])
    if kind == "uniform":
        return uniform_matroid(ground, int(doc["rank"]))
    blocks = [[ground.index(lab) for lab in b] for b in doc["blocks"]]
    return partition_matroid(ground, PartitionSpec(tuple(map(tuple, blocks)), tuple(doc["capacities"])))


def _load_check_targets(text: str):
    """[(name, oracle, expected)] from an instance descriptor or a stock-oracle spec."""
    try:
        doc = json.loads(text)
    except json.JSONDecodeError:
        doc = None
    if isinstance(doc, dict) and doc.get("kind") in STOCK_KINDS:
        declared = doc.get("declared")
        if declared not in ("matroid", "greedoid") or doc.get("schema") != "v1":
            raise UsageError("stock oracle spec needs schema 'v1' and declared 'matroid' or 'greedoid'")
        try:
            oracle = _stock_oracle(doc)
        except (KeyError, TypeError, ValueError) as exc:
            raise UsageError(f"malformed stock oracle spec: {exc}") from None
        return [(declared, oracle, declared)]
    inst = deserialize_instance(text)
    return [("matroid", inst.matroid, "matroid"), ("greedoid", inst.greedoid, "greedoid")]


def cmd_check(args) -> int:
    targets = _load_check_targets(_read(args.spec))
    if args.samples is not None and args.seed is None:
        raise UsageError("--samples requires an explicit --seed")
    sampled = args.samples is not None and not args.exhaustive
    lines = []
    status = EXIT_OK
    for name, oracle, expected in targets:
        if sampled:
            report = check_axioms(oracle, "sampled", samples=args.samples, seed=args.seed)
        else:
            report = check_axioms(oracle, "exhaustive", cap=args.cap)
        cls = classify(report)
        ok = cls == Classification.MATROID if expected == "matroid" else is_greedoid(report)
        lines += [
            f"{name}.mode: {report.mode}",
            f"{name}.m1: {_flag(report.m1)}",
            f"{name}.m2: {_flag(report.m2)}",
            f"{name}.m3: {_flag(report.m3)}",
            f"{name}.class: {cls}",
        ]
        if report.counterexample is not None:
            c = report.counterexample
            g = oracle.ground
            x, y = (" ".join(g.labels_of(m)) for m in (c.x, c.y))
            lines.append(f"{name}.counterexample: {c.axiom} X={{{x}}} Y={{{y}}}")
        lines.append(f"{name}: {'OK' if ok else 'MISMATCH'}")
        if not ok:
            status = EXIT_MISMATCH
    _emit(lines)
    return status


# reduce


def _require(value, flag):
    if value is None:
        raise UsageError(f"{flag} is required for this reduction")
    return value


def cmd_reduce(args) -> int:
    text = _read(args.input)
    weights = None
    kind = args.kind
    if kind == "sat3":
        inst = sat_to_intersection(parse_dimacs(text))
    elif kind == "padded":
        inst = padded_sat_to_intersection(parse_dimacs(text), _require(args.inv_eps, "--inv-eps"))
    elif kind == "weighted":
        inst = weighted_instance(parse_dimacs(text), _require(args.k, "--k"))
        weights = inst.weights
    elif kind == "wcs":
        inst, _ = wcs_to_param_intersection(parse_circuit(text), _require(args.k, "--k"))
    elif kind == "wcs-dual":
        inst, _ = wcs_to_dual_param_intersection(parse_circuit(text), _require(args.k, "--k"))
    elif kind == "matching":
        inst = bipartite_matching_as_intersection(graph_from_json(text))
    else:
        tree = tree_from_json(_read(_require(args.tree, "--tree")))
        inst = tree_matching_as_intersection(graph_from_json(text), tree)
    descriptor = serialize_instance(inst)
    if args.output is None:
        sys.stdout.write(descriptor)
        return EXIT_OK
    Path(args.output).write_text(descriptor)
    lines = [f"kind: {kind}", f"ground_size: {inst.ground.size}", f"output: {args.output}"]
    if inst.target is not None:
        lines.append(f"target: {inst.target}")
    if weights is not None:
        lines.append(f"indicator_weight: {weights['1']}")
        if args.weights_out:
            Path(args.weights_out).write_text(weights_to_json(weights))
            lines.append(f"weights: {args.weights_out}")
    _emit(lines)
    return EXIT_OK


# solve


def cmd_solve(args) -> int:
    inst = deserialize_instance(_read(args.instance))
    weights = weights_from_json(_read(args.weights), inst.ground) if args.weights else inst.weights
    lines = [f"method: {args.method}"]
    if args.method == "brute":
        if weights is not None:
            sol = brute_force_max_weight(intersection_oracle(inst.matroid, inst.greedoid), weights, cap=args.cap)
            lines.append(f"weight: {sol.value}")
        else:
            sol = brute_force_max_intersection(inst, cap=args.cap)
            lines.append(f"size: {sol.value}")
    elif args.method == "edmonds":
        if inst.provenance.kind != "matching":
            raise UsageError("edmonds needs two matroids; only 'matching' instances qualify")
        sol = matroid_intersection(inst.matroid, inst.greedoid)
        lines.append(f"size: {sol.value}")
    else:
        if args.weights:
            raise UsageError("greedy solves the unweighted greedoid side only")
        sol = greedy_basis(inst.greedoid)
        lines.append(f"size: {sol.value}")
    lines += [f"witness: {_labels(inst.ground, sol.witness)}", f"calls: {sol.calls}"]
    _emit(lines)
    return EXIT_OK


# sat


def auto_inv_eps(n: int, limit: int = PADDED_AUTO_LIMIT) -> int:
    """Largest 1/eps whose padded ground set (2n)^(1/eps) stays within ``limit``, at least 1."""
    e = 1
    while (2 * n) ** (e + 1) <= limit:
        e += 1
    return e


def sat_verdict(text: str, via: str, inv_eps: Optional[int] = None, k: int = 1, cap: int = 24) -> bool:
    h = parse_dimacs(text)
    n = h.num_vars
    if via == "direct":
        return brute_force_sat(h, cap=cap) is not None
    if via == "intersection":
        return brute_force_max_intersection(sat_to_intersection(h), cap=cap).value == n
    if via == "padded":
        inst = padded_sat_to_intersection(h, inv_eps or auto_inv_eps(n))
        return brute_force_max_intersection(inst, cap=cap).value >= n
    greedoid, weights = sat_to_weighted_greedoid(h, k)
    return brute_force_max_weight(greedoid, weights, cap=cap).value > n + 1


def cmd_sat(args) -> int:
    sat = sat_verdict(_read(args.cnf), args.via, args.inv_eps, args.k, args.cap)
    _emit([f"via: {args.via}", f"result: {'SAT' if sat else 'UNSAT'}"])
    return EXIT_SAT if sat else EXIT_UNSAT


# treematch


def cmd_treematch(args) -> int:
    graph = graph_from_json(_read(args.graph))
    tree = tree_from_json(_read(args.tree))
    if args.method == "enum":
        matching, _ = tree_constrained_matching(graph, tree, budget=args.budget)
        mask = matching.mask
    else:
        sol = brute_force_max_intersection(tree_matching_as_intersection(graph, tree), cap=args.cap)
        mask = sol.witness
    edges = [graph.edges[i] for i in range(len(graph.edges)) if mask >> i & 1]
    left = {u for u, _ in edges}
    lines = [f"method: {args.method}", f"size: {len(edges)}"]
    lines.append(f"matched_left: {' '.join(v for v in tree.vertices if v in left) or '-'}")
    if edges:
        lines += [f"edge: {u} {v}" for u, v in edges]
    else:
        lines.append("matching: empty")
    _emit(lines)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="matgreed", description=__doc__.splitlines()[0])
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("check", help="verify matroid/greedoid axioms")
    p.add_argument("spec", help="instance descriptor or stock-oracle spec (JSON)")
    p.add_argument("--exhaustive", action="store_true")
    p.add_argument("--samples", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--cap", type=int, default=EXHAUSTIVE_CAP)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("reduce", help="build an instance descriptor")
    p.add_argument("kind", choices=KINDS)
    p.add_argument("input", help="DIMACS CNF, circuit text, or graph JSON")
    p.add_argument("--inv-eps", type=int)
    p.add_argument("--k", type=int)
    p.add_argument("--tree", help="tree JSON (treematch only)")
    p.add_argument("-o", "--output")
    p.add_argument("--weights-out")
    p.set_defaults(func=cmd_reduce)

    p = sub.add_parser("solve", help="solve an instance")
    p.add_argument("instance")
    p.add_argument("--method", choices=("brute", "edmonds", "greedy"), default="brute")
    p.add_argument("--weights")
    p.add_argument("--cap", type=int, default=24)
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("sat", help="decide a 3CNF formula through one of the gadgets")
    p.add_argument("cnf")
    p.add_argument("--via", choices=("direct", "intersection", "padded", "weighted"), default="direct")
    p.add_argument("--inv-eps", type=int)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--cap", type=int, default=24)
    p.set_defaults(func=cmd_sat)

    p = sub.add_parser("treematch", help="maximum tree-constrained matching")
    p.add_argument("graph")
    p.add_argument("tree")
    p.add_argument("--method", choices=("enum", "intersection"), default="enum")
    p.add_argument("--budget", type=int, default=DEFAULT_BUDGET)
    p.add_argument("--cap", type=int, default=24)
    p.set_defaults(func=cmd_treematch)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (DomainTooLargeError, BudgetExceededError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (UsageError, ParseError, InstanceFormatError, GraphFormatError, ConstructionError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARSE


if __name__ == "__main__":
    sys.exit(main())
