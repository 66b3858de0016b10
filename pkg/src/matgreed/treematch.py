"""Maximum tree-constrained bipartite matching.

A matching is admissible when its matched left vertices contain the root and
induce a connected subtree.  Two routes are provided: enumerate every rooted
subtree W and test whether a maximum matching out of W saturates it, or encode
the problem as a matroid/greedoid intersection over the edge set.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Iterator, Optional

from .core import GroundSet, MatgreedError, SetSystemOracle, indices, mask_of
from .graphs import (
    BipartiteGraph,
    GraphFormatError,
    RootedTree,
    graph_from_json,
    graph_to_json,
    tree_from_json,
    tree_to_json,
)
from .oracles import PartitionSpec, partition_matroid, tree_constrained_edge_greedoid
from .reductions import IntersectionInstance, InstanceFormatError, Provenance

__all__ = [
    "BipartiteGraph",
    "RootedTree",
    "Matching",
    "BudgetExceededError",
    "enumerate_root_subtrees",
    "count_root_subtrees",
    "bipartite_max_matching",
    "tree_constrained_matching",
    "tree_matching_as_intersection",
    "bipartite_matching_as_intersection",
]

DEFAULT_BUDGET = 100_000


class BudgetExceededError(MatgreedError):
    pass


@dataclass(frozen=True)
class Matching:
    graph: BipartiteGraph
    mask: int  # over graph.edges

    def __post_init__(self):
        lefts = [self.graph.edges[i][0] for i in indices(self.mask)]
        rights = [self.graph.edges[i][1] for i in indices(self.mask)]
        if len(set(lefts)) != len(lefts) or len(set(rights)) != len(rights):
            raise ValueError("edges of a matching must not share endpoints")

    @property
    def edges(self) -> list[tuple[str, str]]:
        return [self.graph.edges[i] for i in indices(self.mask)]

    @property
    def size(self) -> int:
        return self.mask.bit_count()

    @property
    def matched_left(self) -> frozenset:
        return frozenset(u for u, _ in self.edges)


def enumerate_root_subtrees(tree: RootedTree) -> Iterator[frozenset]:
    """Yield every vertex set that contains the root and is connected, once each.

    Order: by size, then lexicographically by the positions of the vertices in
    ``tree.vertices``.  Sets are produced lazily by a pruned backtracking search
    within each size, so the whole family is never held in memory.
    """
    verts = tree.vertices
    pos = {v: i for i, v in enumerate(verts)}
    m = len(verts)
    # ancestors[i] = positions of all proper ancestors of vertex i
    ancestors = []
    for v in verts:
        chain = []
        while v != tree.root:
            v = tree.parent[v]
            chain.append(pos[v])
        ancestors.append(chain)

    def extend(size, chosen, required, last):
        if len(chosen) == size:
            if not required:
                yield frozenset(verts[i] for i in chosen)
            return
        slots = size - len(chosen)
        for j in range(last + 1, m):
            if required and min(required) < j:
                # a required ancestor was skipped; later choices cannot fix that
                return
            need = (required | {a for a in ancestors[j] if a not in chosen}) - {j}
            if len(need) > slots - 1:
                continue
            chosen.append(j)
            yield from extend(size, chosen, need, j)
            chosen.pop()

    for size in range(1, m + 1):
        yield from extend(size, [], frozenset(), -1)


def count_root_subtrees(tree: RootedTree) -> int:
    """Closed-form count: c(v) = prod over children (c(child) + 1)."""

    def c(v):
        out = 1
        for ch in tree.children[v]:
            out *= c(ch) + 1
        return out

    return c(tree.root)


def bipartite_max_matching(graph: BipartiteGraph, allowed_left: Optional[Iterable[str]] = None) -> Matching:
    """Maximum matching by repeated augmenting-path search (Kuhn's algorithm).

    Only edges whose left endpoint lies in ``allowed_left`` are used, when given.
    """
    allowed = set(graph.left) if allowed_left is None else set(allowed_left)
    adj: dict[str, list[tuple[str, int]]] = {u: [] for u in graph.left}
    for i, (u, v) in enumerate(graph.edges):
        if u in allowed:
            adj[u].append((v, i))
    match_right: dict[str, tuple[str, int]] = {}

    def augment(u, seen):
        for v, i in adj[u]:
            if v in seen:
                continue
            seen.add(v)
            if v not in match_right or augment(match_right[v][0], seen):
                match_right[v] = (u, i)
                return True
        return False

    for u in graph.left:
        if u in allowed:
            augment(u, set())
    return Matching(graph, mask_of(i for _, i in match_right.values()))


def tree_constrained_matching(
    graph: BipartiteGraph, tree: RootedTree, budget: int = DEFAULT_BUDGET
) -> tuple[Matching, frozenset]:
    """Largest matching whose matched left vertices form a rooted subtree.

    Every rooted subtree W is tried; a maximum matching on the edges leaving W
    counts only when it matches all of W.  If no W qualifies the empty matching
    is returned with an empty matched set.
    """
    if set(tree.vertices) != set(graph.left):
        raise ValueError("tree vertices must equal the left side of the graph")
    best = Matching(graph, 0)
    best_w: frozenset = frozenset()
    for seen, w in enumerate(enumerate_root_subtrees(tree), 1):
        if seen > budget:
            raise BudgetExceededError(f"enumeration budget exceeded: more than {budget} rooted subtrees")
        m = bipartite_max_matching(graph, w)
        if m.size == len(w) and m.size > best.size:
            best, best_w = m, w
    return best, best_w


def tree_matching_as_intersection(graph: BipartiteGraph, tree: RootedTree) -> IntersectionInstance:
    """Edge-set instance: one edge per right vertex (matroid), tree-constrained left side (greedoid)."""
    greedoid = tree_constrained_edge_greedoid(graph, tree)
    matroid = _endpoint_matroid(graph, greedoid.ground, side=1)
    source = json.dumps({"graph": json.loads(graph_to_json(graph)), "tree": json.loads(tree_to_json(tree))}, indent=2)
    return IntersectionInstance(greedoid.ground, matroid, greedoid, Provenance("treematch", source + "\n", {}))


def bipartite_matching_as_intersection(graph: BipartiteGraph) -> IntersectionInstance:
    """Plain bipartite matching as the intersection of two partition matroids."""
    ground = GroundSet(tuple(graph.edge_label(i) for i in range(len(graph.edges))))
    left = _endpoint_matroid(graph, ground, side=0)
    right = _endpoint_matroid(graph, ground, side=1)
    return IntersectionInstance(ground, left, right, Provenance("matching", graph_to_json(graph), {}))


def _endpoint_matroid(graph: BipartiteGraph, ground: GroundSet, side: int) -> SetSystemOracle:
    blocks: dict[str, list[int]] = {}
    for i, e in enumerate(graph.edges):
        blocks.setdefault(e[side], []).append(i)
    name = "left" if side == 0 else "right"
    return partition_matroid(ground, PartitionSpec.unit(blocks.values()), f"at most one edge per {name} vertex")


def instance_from_source(kind: str, source: str) -> IntersectionInstance:
    try:
        if kind == "matching":
            return bipartite_matching_as_intersection(graph_from_json(source))
        doc = json.loads(source)
        graph = graph_from_json(json.dumps(doc["graph"]))
        tree = tree_from_json(json.dumps(doc["tree"]))
        return tree_matching_as_intersection(graph, tree)
    except (GraphFormatError, ValueError, KeyError, TypeError) as exc:
        raise InstanceFormatError(f"embedded graph: {exc}") from None
