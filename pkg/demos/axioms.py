"""Build a few set systems and see which axioms each one satisfies."""
from matgreed import GroundSet, RootedTree, check_axioms, classify
from matgreed.oracles import explicit_family, rooted_subtree_greedoid, uniform_matroid

g = GroundSet(("a", "b", "c"))

# every set of size <= 2: the textbook matroid
print("uniform rank 2:", classify(check_axioms(uniform_matroid(g, 2))))

# rooted subtrees of a path are feasible only as prefixes, so not hereditary
path = RootedTree.path(4)
print("path subtrees:", classify(check_axioms(rooted_subtree_greedoid(path))))

# {a,b} without {a} or {b} breaks hereditarity; the checker names a witness pair
fam = explicit_family(g, [0, g.mask(["a", "b"]), g.mask(["c"])])
report = check_axioms(fam)
print("odd family:", classify(report))
cex = report.counterexample
print("  violated", cex.axiom, "with X =", g.labels_of(cex.x), "and Y =", g.labels_of(cex.y))
