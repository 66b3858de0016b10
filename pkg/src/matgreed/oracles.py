"""Stock set systems: partition and uniform matroids, tree greedoids."""
from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from .core import ConstructionError, GroundSet, SetSystemOracle, mask_of
from .graphs import BipartiteGraph, RootedTree


@dataclass(frozen=True)
class PartitionSpec:
    """Disjoint blocks of element indices, each with a capacity.

    Elements outside every block are unconstrained.
    """

    blocks: tuple[tuple[int, ...], ...]
    capacities: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "blocks", tuple(tuple(b) for b in self.blocks))
        object.__setattr__(self, "capacities", tuple(int(c) for c in self.capacities))
        if len(self.blocks) != len(self.capacities):
            raise ConstructionError("one capacity per block is required")
        if any(c < 0 for c in self.capacities):
            raise ConstructionError("capacities must be non-negative")
        seen = set()
        for b in self.blocks:
            for i in b:
                if i in seen:
                    raise ConstructionError(f"element {i} appears in more than one block")
                seen.add(i)

    @classmethod
    def unit(cls, blocks: Iterable[Iterable[int]]) -> "PartitionSpec":
        blocks = tuple(tuple(b) for b in blocks)
        return cls(blocks, (1,) * len(blocks))


def partition_matroid(ground: GroundSet, spec: PartitionSpec, description: str = "") -> SetSystemOracle:
    for b in spec.blocks:
        for i in b:
            if not 0 <= i < ground.size:
                raise ConstructionError(f"block element {i} is outside the ground set")
    limits = [(mask_of(b), c) for b, c in zip(spec.blocks, spec.capacities)]

    def member(x):
        return all((x & bm).bit_count() <= cap for bm, cap in limits)

    return SetSystemOracle(ground, member, description or f"partition matroid, {len(limits)} blocks")


def uniform_matroid(ground: GroundSet, rank: int) -> SetSystemOracle:
    if not 0 <= rank <= ground.size:
        raise ConstructionError(f"rank {rank} outside [0, {ground.size}]")
    return SetSystemOracle(ground, lambda x: x.bit_count() <= rank, f"uniform matroid U({rank},{ground.size})")


def power_set(ground: GroundSet) -> SetSystemOracle:
    return SetSystemOracle(ground, lambda x: True, "power set")


def explicit_family(ground: GroundSet, feasible: Iterable[int], description: str = "explicit family") -> SetSystemOracle:
    """Oracle over a listed family of masks."""
    family = frozenset(feasible)
    for m in family:
        ground.check_mask(m)
    return SetSystemOracle(ground, family.__contains__, description)


def _closed_under_parent(w: int, parent_bit: list[int], root_bit: int) -> bool:
    if not w & root_bit:
        return False
    rest = w & ~root_bit
    while rest:
        b = rest & -rest
        if not w & parent_bit[b.bit_length() - 1]:
            return False
        rest ^= b
    return True


def _parent_bits(tree: RootedTree, order: list[str]) -> list[int]:
    pos = {v: i for i, v in enumerate(order)}
    return [0 if v == tree.root else 1 << pos[tree.parent[v]] for v in order]


def rooted_subtree_greedoid(tree: RootedTree) -> SetSystemOracle:
    """Vertex sets that are empty or contain the root and induce a connected subtree."""
    ground = GroundSet(tree.vertices)
    parent_bit = _parent_bits(tree, list(tree.vertices))
    root_bit = ground.bit(tree.root)

    def member(w):
        # a set containing the root is connected iff it is closed under taking parents
        return w == 0 or _closed_under_parent(w, parent_bit, root_bit)

    return SetSystemOracle(ground, member, f"rooted subtrees of a {len(tree.vertices)}-vertex tree")


def tree_constrained_edge_greedoid(graph: BipartiteGraph, tree: RootedTree) -> SetSystemOracle:
    """Edge sets with distinct left endpoints whose left endpoints form a rooted subtree."""
    if set(tree.vertices) != set(graph.left) or len(tree.vertices) != len(graph.left):
        raise ConstructionError("tree vertices must equal the left side of the graph")
    ground = GroundSet(tuple(graph.edge_label(i) for i in range(len(graph.edges))))
    left_pos = {v: i for i, v in enumerate(graph.left)}
    tail = [left_pos[u] for u, _ in graph.edges]
    parent_bit = _parent_bits(tree, list(graph.left))
    root_bit = 1 << left_pos[tree.root]

    def member(m):
        if m == 0:
            return True
        w = 0
        while m:
            b = m & -m
            t = 1 << tail[b.bit_length() - 1]
            if w & t:
                return False
            w |= t
            m ^= b
        return _closed_under_parent(w, parent_bit, root_bit)

    return SetSystemOracle(ground, member, "tree-constrained edge greedoid")
