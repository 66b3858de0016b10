import random

import pytest

from matgreed.core import DomainTooLargeError, GroundSet, enumerate_feasible, intersection_oracle
from matgreed.graphs import BipartiteGraph, RootedTree
from matgreed.logic import CnfFormula
from matgreed.oracles import PartitionSpec, explicit_family, partition_matroid, power_set, rooted_subtree_greedoid, uniform_matroid
from matgreed.reductions import WeightVector, padded_sat_to_intersection, sat_to_intersection, sat_to_weighted_greedoid
from matgreed.solvers import (
    brute_force_max_intersection,
    brute_force_max_partition,
    brute_force_max_weight,
    greedy_basis,
    greedy_weighted_matroid,
    matroid_intersection,
    max_common_set,
)
from matgreed.treematch import bipartite_matching_as_intersection

import reference as ref


def ground(n):
    return GroundSet(tuple(f"e{i}" for i in range(n)))


def random_matroid(rng, g):
    n = g.size
    if rng.random() < 0.3:
        return uniform_matroid(g, rng.randint(0, n))
    idx = list(range(n))
    rng.shuffle(idx)
    blocks, caps = [], []
    while idx:
        size = rng.randint(1, len(idx))
        blocks.append(tuple(idx[:size]))
        caps.append(rng.randint(0, size))
        idx = idx[size:]
    return partition_matroid(g, PartitionSpec(tuple(blocks), tuple(caps)))


def naive_max_common(a, b):
    n = a.ground.size
    return max(bin(m).count("1") for m in range(1 << n) if a.member(m) and b.member(m))


def test_brute_force_power_sets():
    g = ground(3)
    sol = max_common_set(power_set(g), power_set(g))
    assert sol.value == 3 and sol.witness == 0b111


def test_brute_force_lemma1():
    assert brute_force_max_intersection(sat_to_intersection(CnfFormula(1, ((1,),)))).value == 1
    assert brute_force_max_intersection(sat_to_intersection(CnfFormula(1, ((1,), (-1,))))).value == 0


def test_brute_force_lexicographic_witness():
    g = ground(3)
    sol = max_common_set(uniform_matroid(g, 2), power_set(g))
    assert g.labels_of(sol.witness) == ["e0", "e1"]


def test_brute_force_cap():
    g = ground(25)
    with pytest.raises(DomainTooLargeError):
        max_common_set(power_set(g), power_set(g))


def test_max_weight_examples():
    g = ground(3)
    assert brute_force_max_weight(power_set(g), WeightVector(g, (0, 0, 0))).value == 0
    o, w = sat_to_weighted_greedoid(CnfFormula(1, ((1,),)), 1)
    assert brute_force_max_weight(o, w).value == 17
    o, w = sat_to_weighted_greedoid(CnfFormula(1, ((1,), (-1,))), 1)
    assert brute_force_max_weight(o, w).value == 2


def test_max_weight_matches_naive():
    rng = random.Random(8)
    for _ in range(30):
        g = ground(rng.randint(1, 7))
        fam = {0} | {rng.getrandbits(g.size) for _ in range(10)}
        o = explicit_family(g, fam)
        w = WeightVector(g, tuple(rng.randint(-5, 20) for _ in range(g.size)))
        best = max(w.total(m) for m in fam)
        sol = brute_force_max_weight(o, w)
        assert sol.value == best and sol.witness in fam


def test_partition_examples():
    g1 = ground(1)
    assert brute_force_max_partition(power_set(g1), power_set(g1)).size == 1
    g2 = ground(2)
    sol = brute_force_max_partition(power_set(g2), explicit_family(g2, [0]))
    assert sol.size == 2 and sol.z == 0


def naive_partition(a, b):
    n = a.ground.size
    fa = [m for m in range(1 << n) if a.member(m)]
    fb = [m for m in range(1 << n) if b.member(m)]
    return max(bin(y | z).count("1") for y in fa for z in fb if not y & z)


def test_partition_matches_naive_and_dominates_intersection():
    rng = random.Random(21)
    for _ in range(40):
        n = rng.randint(1, 6)
        g = ground(n)
        a = random_matroid(rng, g)
        b = explicit_family(g, {0} | {rng.getrandbits(n) for _ in range(6)})
        sol = brute_force_max_partition(a, b)
        assert sol.size == naive_partition(a, b)
        assert not sol.y & sol.z and a.member(sol.y) and b.member(sol.z)
        assert sol.size >= max_common_set(a, b).value
    inst = sat_to_intersection(CnfFormula(1, ((1,),)))
    assert brute_force_max_partition(inst.matroid, inst.greedoid).size >= 1


def test_partition_cap():
    g = ground(17)
    with pytest.raises(DomainTooLargeError):
        brute_force_max_partition(power_set(g), power_set(g))


def test_matroid_intersection_examples():
    g = ground(4)
    spec = PartitionSpec(((0, 1), (2, 3)), (1, 2))
    a = partition_matroid(g, spec)
    assert matroid_intersection(a, partition_matroid(g, spec)).value == 3
    assert matroid_intersection(a, uniform_matroid(g, 0)).value == 0
    k22 = BipartiteGraph(("u1", "u2"), ("v1", "v2"), tuple((u, v) for u in ("u1", "u2") for v in ("v1", "v2")))
    inst = bipartite_matching_as_intersection(k22)
    sol = matroid_intersection(inst.matroid, inst.greedoid)
    assert sol.value == 2 == brute_force_max_intersection(inst).value == ref.matching_size(k22.edges)


def test_matroid_intersection_matches_brute_force():
    rng = random.Random(99)
    for _ in range(120):
        g = ground(rng.randint(0, 8))
        a, b = random_matroid(rng, g), random_matroid(rng, g)
        sol = matroid_intersection(a, b)
        assert a.member(sol.witness) and b.member(sol.witness)
        assert sol.value == naive_max_common(a, b)


def test_greedy_basis_examples():
    assert greedy_basis(power_set(ground(3))).witness == 0b111
    path = rooted_subtree_greedoid(RootedTree.path(4))
    assert greedy_basis(path).value == 4
    unsat2 = CnfFormula(2, ((1, 2), (1, -2), (-1, 2), (-1, -2)))
    g = sat_to_intersection(unsat2).greedoid
    sol = greedy_basis(g)
    assert g.member(sol.witness)
    assert sol.value == max(bin(m).count("1") for m in enumerate_feasible(g))
    assert g.ground.labels_of(sol.witness) == ["t1", "f1"]


def test_greedy_basis_reaches_maximum_on_greedoids():
    rng = random.Random(4)
    for _ in range(30):
        n, clauses = ref.random_cnf(rng, 3)
        h = CnfFormula(n, tuple(map(tuple, clauses)))
        for o in (sat_to_intersection(h).greedoid, sat_to_weighted_greedoid(h, 1)[0], padded_sat_to_intersection(h, 1).greedoid):
            best = max(bin(m).count("1") for m in enumerate_feasible(o))
            assert greedy_basis(o).value == best


def test_greedy_weighted_matroid_examples():
    g = ground(2)
    assert greedy_weighted_matroid(uniform_matroid(g, 1), WeightVector(g, (5, 7))).value == 7
    tf = GroundSet(("t1", "f1"))
    pm = partition_matroid(tf, PartitionSpec.unit([(0, 1)]))
    assert greedy_weighted_matroid(pm, WeightVector(tf, (3, 4))).value == 4


def test_greedy_weighted_matroid_equals_brute_force():
    rng = random.Random(13)
    for _ in range(40):
        g = ground(8)
        m = random_matroid(rng, g)
        w = WeightVector(g, tuple(rng.randint(-3, 10) for _ in range(8)))
        assert greedy_weighted_matroid(m, w).value == brute_force_max_weight(m, w).value


def test_call_counts_reported():
    g = ground(6)
    a, b = uniform_matroid(g, 3), uniform_matroid(g, 2)
    sol = matroid_intersection(a, b)
    assert sol.calls > 0
    brute = max_common_set(a, b)
    assert brute.calls > 0
    inter = intersection_oracle(a, b)
    assert inter.member(0b11) and not inter.member(0b111)
