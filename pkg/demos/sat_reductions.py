"""A 3CNF formula becomes a matroid/greedoid pair whose common sets reveal satisfiability."""
from matgreed import parse_dimacs
from matgreed.reductions import padded_sat_to_intersection, sat_to_intersection, sat_to_weighted_greedoid
from matgreed.solvers import brute_force_max_intersection, brute_force_max_weight

formulas = {
    "x1 or x2": "p cnf 2 1\n1 2 0\n",
    "contradiction": "p cnf 2 4\n1 2 0\n1 -2 0\n-1 2 0\n-1 -2 0\n",
}

for name, text in formulas.items():
    h = parse_dimacs(text)
    inst = sat_to_intersection(h)
    sol = brute_force_max_intersection(inst)
    print(f"{name}: largest common set {inst.ground.labels_of(sol.witness)} (size {sol.value}, n = {h.num_vars})")

    # padding stretches the gap: 14 versus at most 1 on 16 elements
    padded = padded_sat_to_intersection(h, 2)
    print(f"  padded optimum {brute_force_max_intersection(padded).value} of {padded.ground.size}")

    greedoid, w = sat_to_weighted_greedoid(h, 1)
    print(f"  weighted optimum {brute_force_max_weight(greedoid, w).value} (indicator weight {w['1']})")
