"""Matchings whose left endpoints must form a subtree containing the root."""
from matgreed import BipartiteGraph, RootedTree
from matgreed.solvers import brute_force_max_intersection
from matgreed.treematch import count_root_subtrees, tree_constrained_matching, tree_matching_as_intersection

tree = RootedTree(("r", "a", "b", "c"), {"a": "r", "b": "r", "c": "a"}, "r")
graph = BipartiteGraph(
    tree.vertices,
    ("x", "y", "z"),
    (("r", "x"), ("a", "x"), ("b", "y"), ("c", "z")),
)

print("rooted subtrees:", count_root_subtrees(tree))
matching, w = tree_constrained_matching(graph, tree)
print("best matching:", matching.edges, "on", sorted(w))

# c can only be matched once a is, and a competes with r for x
inst = tree_matching_as_intersection(graph, tree)
print("intersection optimum:", brute_force_max_intersection(inst).value)

for depth in (1, 2, 3):
    print(f"complete binary depth {depth}:", count_root_subtrees(RootedTree.complete_binary(depth)), "subtrees")
