"""Weighted circuit satisfiability through both parameterized reductions."""
import itertools

from matgreed import parse_circuit
from matgreed.logic import brute_force_weighted_sat
from matgreed.reductions import wcs_to_dual_param_intersection, wcs_to_param_intersection


def has_common_set(inst, size):
    g = inst.ground
    for combo in itertools.combinations(g.labels, size):
        m = g.mask(combo)
        if inst.matroid.member(m) and inst.greedoid.member(m):
            return combo
    return None


circuit = parse_circuit("g1 = AND x1 x2\ng2 = NOT x3\ng3 = AND g1 g2\nout = g3")
print("circuit size", circuit.size)
for k in range(4):
    z = brute_force_weighted_sat(circuit, k)
    primal, t = wcs_to_param_intersection(circuit, k)
    dual, td = wcs_to_dual_param_intersection(circuit, k)
    print(f"k={k}: assignment {z}, primal set {has_common_set(primal, t)}, dual has one: {has_common_set(dual, td) is not None}")
