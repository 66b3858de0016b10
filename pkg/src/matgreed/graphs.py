"""Bipartite graphs and rooted trees, plus their v1 JSON file format."""
from __future__ import annotations

import json
from dataclasses import dataclass, field

from .core import ConstructionError, MatgreedError

SCHEMA = "v1"


class GraphFormatError(MatgreedError, ValueError):
    pass


@dataclass(frozen=True)
class BipartiteGraph:
    left: tuple[str, ...]
    right: tuple[str, ...]
    edges: tuple[tuple[str, str], ...]

    def __post_init__(self):
        left = tuple(str(v) for v in self.left)
        right = tuple(str(v) for v in self.right)
        edges = tuple((str(u), str(v)) for u, v in self.edges)
        object.__setattr__(self, "left", left)
        object.__setattr__(self, "right", right)
        object.__setattr__(self, "edges", edges)
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise ConstructionError("duplicate vertex in bipartite graph")
        if set(left) & set(right):
            raise ConstructionError("left and right vertex sets must be disjoint")
        if len(set(edges)) != len(edges):
            raise ConstructionError("duplicate edge in bipartite graph")
        ls, rs = set(left), set(right)
        for u, v in edges:
            if u not in ls or v not in rs:
                raise ConstructionError(f"edge ({u}, {v}) must run from left to right")

    def edge_label(self, i: int) -> str:
        u, v = self.edges[i]
        return f"{u}:{v}"


@dataclass(frozen=True)
class RootedTree:
    """A tree on ``vertices`` given by child -> parent links."""

    vertices: tuple[str, ...]
    parent: dict
    root: str
    children: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        vertices = tuple(str(v) for v in self.vertices)
        parent = {str(c): str(p) for c, p in dict(self.parent).items()}
        root = str(self.root)
        object.__setattr__(self, "vertices", vertices)
        object.__setattr__(self, "parent", parent)
        object.__setattr__(self, "root", root)
        vs = set(vertices)
        if not vertices:
            raise ConstructionError("tree must have at least one vertex")
        if len(vs) != len(vertices):
            raise ConstructionError("duplicate tree vertex")
        if root not in vs:
            raise ConstructionError(f"root {root!r} is not a vertex")
        if root in parent:
            raise ConstructionError("the root cannot have a parent")
        for v in vertices:
            if v != root and v not in parent:
                raise ConstructionError(f"vertex {v!r} has no parent")
        for c, p in parent.items():
            if c not in vs or p not in vs:
                raise ConstructionError(f"parent link {c!r} -> {p!r} names an unknown vertex")
        for v in vertices:
            seen = set()
            while v != root:
                if v in seen:
                    raise ConstructionError("parent links contain a cycle")
                seen.add(v)
                v = parent[v]
        children = {v: [] for v in vertices}
        for v in vertices:
            if v != root:
                children[parent[v]].append(v)
        object.__setattr__(self, "children", {v: tuple(cs) for v, cs in children.items()})

    def __hash__(self):
        return hash((self.vertices, tuple(sorted(self.parent.items())), self.root))

    @classmethod
    def path(cls, m: int, prefix: str = "v") -> "RootedTree":
        vs = [f"{prefix}{i}" for i in range(m)]
        return cls(tuple(vs), {vs[i]: vs[i - 1] for i in range(1, m)}, vs[0])

    @classmethod
    def complete_binary(cls, depth: int) -> "RootedTree":
        """Heap-numbered complete binary tree with ``2**(depth+1) - 1`` vertices."""
        count = 2 ** (depth + 1) - 1
        vs = [f"n{i}" for i in range(count)]
        return cls(tuple(vs), {vs[i]: vs[(i - 1) // 2] for i in range(1, count)}, vs[0])


def graph_to_json(graph: BipartiteGraph) -> str:
    doc = {
        "schema": SCHEMA,
        "left": list(graph.left),
        "right": list(graph.right),
        "edges": [list(e) for e in graph.edges],
    }
    return json.dumps(doc, indent=2) + "\n"


def tree_to_json(tree: RootedTree) -> str:
    doc = {
        "schema": SCHEMA,
        "vertices": list(tree.vertices),
        "root": tree.root,
        "parent": {v: tree.parent[v] for v in tree.vertices if v != tree.root},
    }
    return json.dumps(doc, indent=2) + "\n"


def _load(text: str, keys) -> dict:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise GraphFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA:
        raise GraphFormatError(f"expected an object with schema {SCHEMA!r}")
    missing = [k for k in keys if k not in doc]
    if missing:
        raise GraphFormatError(f"missing fields: {', '.join(missing)}")
    return doc


def graph_from_json(text: str) -> BipartiteGraph:
    doc = _load(text, ("left", "right", "edges"))
    try:
        return BipartiteGraph(tuple(doc["left"]), tuple(doc["right"]), tuple(tuple(e) for e in doc["edges"]))
    except (TypeError, ValueError) as exc:
        raise GraphFormatError(str(exc)) from None


def tree_from_json(text: str) -> RootedTree:
    doc = _load(text, ("vertices", "root", "parent"))
    try:
        return RootedTree(tuple(doc["vertices"]), dict(doc["parent"]), doc["root"])
    except (TypeError, ValueError) as exc:
        raise GraphFormatError(str(exc)) from None
