"""Exact solvers: exhaustive search, matroid intersection, greedy."""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .core import (
    ENUMERATION_CAP,
    ConstructionError,
    DomainTooLargeError,
    SetSystemOracle,
    enumerate_feasible,
    indices,
    iter_masks_by_cardinality,
    popcount,
)
from .reductions import IntersectionInstance, WeightVector

PARTITION_CAP = 16


@dataclass(frozen=True)
class Solution:
    """Optimum value, a witness mask and the oracle calls spent finding it."""

    value: int
    witness: int
    calls: int

    @property
    def size(self) -> int:
        return popcount(self.witness)


@dataclass(frozen=True)
class PartitionSolution:
    size: int
    y: int
    z: int
    calls: int


def _same_ground(a: SetSystemOracle, b: SetSystemOracle) -> None:
    if a.ground != b.ground:
        raise ConstructionError("oracles must share one ground set")


def _cap(n: int, cap: int) -> None:
    if n > cap:
        raise DomainTooLargeError(f"domain too large: {n} elements exceeds the cap of {cap}")


class _Counter:
    def __init__(self, *oracles):
        self.oracles = oracles
        self.start = [o.calls for o in oracles]

    def __call__(self) -> int:
        return sum(o.calls - s for o, s in zip(self.oracles, self.start))


def max_common_set(a: SetSystemOracle, b: SetSystemOracle, cap: int = ENUMERATION_CAP) -> Solution:
    """Largest set feasible in both oracles, lexicographically smallest among maxima."""
    _same_ground(a, b)
    n = a.ground.size
    _cap(n, cap)
    count = _Counter(a, b)
    for m in iter_masks_by_cardinality(n, descending=True):
        if a.member(m) and b.member(m):
            return Solution(popcount(m), m, count())
    # only reachable when the empty set is infeasible in one of the systems
    return Solution(-1, 0, count())


def brute_force_max_intersection(inst: IntersectionInstance, cap: int = ENUMERATION_CAP) -> Solution:
    return max_common_set(inst.matroid, inst.greedoid, cap)


def brute_force_max_weight(oracle: SetSystemOracle, w: WeightVector, cap: int = ENUMERATION_CAP) -> Solution:
    """Heaviest feasible set; ties go to the first in cardinality-then-lexicographic order."""
    if w.ground != oracle.ground:
        raise ConstructionError("weights and oracle must share one ground set")
    count = _Counter(oracle)
    best = None
    best_mask = 0
    for m in enumerate_feasible(oracle, cap=cap):
        value = w.total(m)
        if best is None or value > best:
            best, best_mask = value, m
    if best is None:
        raise ValueError("oracle has no feasible set")
    return Solution(best, best_mask, count())


def brute_force_max_partition(
    matroid: SetSystemOracle, greedoid: SetSystemOracle, cap: int = PARTITION_CAP
) -> PartitionSolution:
    """Largest disjoint union Y + Z with Y matroid-feasible and Z greedoid-feasible.

    For every mask C the best greedoid-feasible subset of C is tabulated by a
    subset DP, then each feasible Y is paired with the best Z inside its complement.
    """
    _same_ground(matroid, greedoid)
    n = matroid.ground.size
    _cap(n, cap)
    count = _Counter(matroid, greedoid)
    size = 1 << n
    full = size - 1
    masks = np.arange(size, dtype=np.int64)
    feasible_z = np.fromiter((greedoid.member(m) for m in range(size)), dtype=bool, count=size)
    card = np.zeros(size, dtype=np.int64)
    for i in range(n):
        card += (masks >> i) & 1
    best = np.where(feasible_z, card, -1)
    arg = np.where(feasible_z, masks, -1)
    for i in range(n):
        with_bit = masks[(masks >> i) & 1 == 1]
        sub = with_bit ^ (1 << i)
        better = best[sub] > best[with_bit]
        best[with_bit[better]] = best[sub[better]]
        arg[with_bit[better]] = arg[sub[better]]

    top = (-1, 0, 0)
    for y in enumerate_feasible(matroid, cap=cap):
        rest = full & ~y
        if best[rest] < 0:
            continue
        total = popcount(y) + int(best[rest])
        if total > top[0]:
            top = (total, y, int(arg[rest]))
    return PartitionSolution(top[0], top[1], top[2], count())


def matroid_intersection(a: SetSystemOracle, b: SetSystemOracle) -> Solution:
    """Maximum common independent set of two matroids by exchange-graph augmentation.

    Starting from the empty set, each round builds the exchange graph of the
    current set I: an arc y -> x when I - y + x is independent in ``a`` and an
    arc x -> y when I - y + x is independent in ``b`` (y in I, x not in I).  A
    shortest path from {x : I + x in a} to {x : I + x in b} is found by BFS and
    I is replaced by its symmetric difference with the path.  Both inputs must
    be matroids; this is not checked.
    """
    _same_ground(a, b)
    n = a.ground.size
    count = _Counter(a, b)
    current = 0
    while True:
        inside = indices(current)
        outside = [x for x in range(n) if not current >> x & 1]
        sources = {x for x in outside if a.member(current | (1 << x))}
        sinks = {x for x in outside if b.member(current | (1 << x))}
        if not sources or not sinks:
            break
        path = _shortest_path(a, b, current, inside, outside, sources, sinks)
        if path is None:
            break
        for v in path:
            current ^= 1 << v
    return Solution(popcount(current), current, count())


def _shortest_path(a, b, current, inside, outside, sources, sinks):
    pred: dict[int, Optional[int]] = {}
    queue = deque()
    for x in sorted(sources):
        pred[x] = None
        queue.append(x)
    while queue:
        v = queue.popleft()
        if v in sinks:
            path = [v]
            while pred[path[-1]] is not None:
                path.append(pred[path[-1]])
            return path
        if current >> v & 1:
            # v = y in I: arcs y -> x where I - y + x is independent in a
            for x in outside:
                if x not in pred and a.member((current ^ (1 << v)) | (1 << x)):
                    pred[x] = v
                    queue.append(x)
        else:
            # v = x outside I: arcs x -> y where I - y + x is independent in b
            for y in inside:
                if y not in pred and b.member((current ^ (1 << y)) | (1 << v)):
                    pred[y] = v
                    queue.append(y)
    return None


def greedy_basis(oracle: SetSystemOracle) -> Solution:
    """Grow from the empty set, always adding the lowest-index feasible extension.

    On a greedoid the exchange axiom guarantees the result has maximum cardinality.
    """
    count = _Counter(oracle)
    n = oracle.ground.size
    current = 0
    grown = True
    while grown:
        grown = False
        for x in range(n):
            if not current >> x & 1 and oracle.member(current | (1 << x)):
                current |= 1 << x
                grown = True
                break
    return Solution(popcount(current), current, count())


def greedy_weighted_matroid(oracle: SetSystemOracle, w: WeightVector) -> Solution:
    """Classical matroid greedy: heaviest first, non-positive weights skipped."""
    if w.ground != oracle.ground:
        raise ConstructionError("weights and oracle must share one ground set")
    count = _Counter(oracle)
    order = sorted((i for i, v in enumerate(w.values) if v > 0), key=lambda i: (-w.values[i], i))
    current = 0
    for i in order:
        if oracle.member(current | (1 << i)):
            current |= 1 << i
    return Solution(w.total(current), current, count())
