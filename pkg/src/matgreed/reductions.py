"""Hardness-reduction gadgets: formulas and circuits turned into oracle pairs.

Each builder returns oracles that evaluate the source formula or circuit
inside the membership test, so an instance is fully described by its kind,
its source text and a few integer parameters.  That descriptor is also the
serialized form.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field
from typing import Optional

from .core import ConstructionError, GroundSet, MatgreedError, SetSystemOracle, popcount
from .logic import (
    BoolCircuit,
    CnfFormula,
    ParseError,
    eval_circuit,
    eval_cnf,
    format_circuit,
    format_dimacs,
    parse_circuit,
    parse_dimacs,
)
from .oracles import PartitionSpec, partition_matroid, power_set

SCHEMA = "v1"
MAX_GROUND = 1 << 16
KINDS = ("sat3", "padded", "weighted", "wcs", "wcs-dual", "matching", "treematch")


class InstanceFormatError(MatgreedError, ValueError):
    pass


@dataclass(frozen=True)
class Provenance:
    kind: str
    source: str
    params: dict = field(default_factory=dict)


@dataclass(frozen=True)
class WeightVector:
    ground: GroundSet
    values: tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", tuple(int(v) for v in self.values))
        if len(self.values) != self.ground.size:
            raise ConstructionError("one weight per ground element is required")

    def total(self, mask: int) -> int:
        s = 0
        i = 0
        while mask:
            if mask & 1:
                s += self.values[i]
            mask >>= 1
            i += 1
        return s

    def __getitem__(self, label: str) -> int:
        return self.values[self.ground.index(label)]


@dataclass(frozen=True)
class IntersectionInstance:
    ground: GroundSet
    matroid: SetSystemOracle
    greedoid: SetSystemOracle
    provenance: Provenance
    weights: Optional[WeightVector] = None
    target: Optional[int] = None

    def __post_init__(self):
        if self.matroid.ground != self.ground or self.greedoid.ground != self.ground:
            raise ConstructionError("both oracles must use the instance ground set")


def _assignment_labels(n: int) -> list[str]:
    labels = []
    for i in range(1, n + 1):
        labels += [f"t{i}", f"f{i}"]
    return labels


def _pair_tools(n: int):
    """Bit helpers for the interleaved layout t1,f1,...,tn,fn at bits 0..2n-1."""
    t_bits = sum(1 << (2 * i) for i in range(n))
    last_pair = 0b11 << (2 * (n - 1))

    def decode(x):
        """The encoded assignment if x holds exactly one symbol of every pair, else None."""
        t = x & t_bits
        f = (x >> 1) & t_bits
        if t & f or (t | f) != t_bits:
            return None
        return tuple(bool(t >> (2 * i) & 1) for i in range(n))

    return last_pair, decode


def _lemma1_greedoid_member(h: CnfFormula):
    n = h.num_vars
    last_pair, decode = _pair_tools(n)

    def member(x):
        c = popcount(x)
        if c <= n and not x & last_pair:
            return True  # group A
        if c == n:
            z = decode(x)
            return z is not None and eval_cnf(h, z)  # group B
        return False

    return member


def _pair_matroid(ground: GroundSet, n: int) -> SetSystemOracle:
    return partition_matroid(
        ground, PartitionSpec.unit((2 * i, 2 * i + 1) for i in range(n)), "at most one of t_i, f_i per variable"
    )


def sat_to_intersection(h: CnfFormula) -> IntersectionInstance:
    """Matroid/greedoid pair whose maximum common set has size n iff ``h`` is satisfiable."""
    n = h.num_vars
    ground = GroundSet(tuple(_assignment_labels(n)))
    greedoid = SetSystemOracle(ground, _lemma1_greedoid_member(h), "assignment greedoid (groups A, B)")
    prov = Provenance("sat3", format_dimacs(h), {})
    return IntersectionInstance(ground, _pair_matroid(ground, n), greedoid, prov, target=n)


def padding_count(n: int, inv_eps: int) -> int:
    return (2 * n) ** inv_eps - 2 * n


def padded_sat_to_intersection(h: CnfFormula, inv_eps: int, max_ground: int = MAX_GROUND) -> IntersectionInstance:
    """The Lemma-1 gadget padded with ``(2n)**inv_eps - 2n`` indicator elements.

    Satisfiable formulas reach ``|S| - n``; unsatisfiable ones stay below ``n``.
    """
    if inv_eps < 1:
        raise ConstructionError("inv_eps must be a positive integer")
    n = h.num_vars
    total = (2 * n) ** inv_eps
    if total > max_ground:
        raise ConstructionError(f"padded ground set of {total} elements exceeds the cap {max_ground}")
    count = total - 2 * n
    ground = GroundSet(tuple(_assignment_labels(n) + [f"p{i}" for i in range(1, count + 1)]))
    sym = (1 << (2 * n)) - 1
    base = _lemma1_greedoid_member(h)

    def member(x):
        s = x & sym
        if x == s:
            return base(s)  # groups A and B
        return popcount(s) == n and base(s)  # group C

    greedoid = SetSystemOracle(ground, member, "padded assignment greedoid (groups A, B, C)")
    prov = Provenance("padded", format_dimacs(h), {"inv_eps": inv_eps})
    return IntersectionInstance(ground, _pair_matroid(ground, n), greedoid, prov, target=total - n)


def indicator_weight(n: int, k: int) -> int:
    size = 2 * n + 1
    return (n + 1) * 2 ** (size**k) - n + 1


def sat_to_weighted_greedoid(h: CnfFormula, k: int) -> tuple[SetSystemOracle, WeightVector]:
    """Greedoid plus weights with optimum ``(n+1)2^{|S|^k}+1`` if satisfiable, ``n+1`` if not."""
    if k < 1:
        raise ConstructionError("k must be a positive integer")
    n = h.num_vars
    ground = GroundSet(tuple(_assignment_labels(n) + ["1"]))
    one = 1 << (2 * n)
    _, decode = _pair_tools(n)

    def member(x):
        if not x & one:
            return popcount(x) <= n + 1
        if popcount(x) != n + 1:
            return False
        z = decode(x & ~one)
        return z is not None and eval_cnf(h, z)

    oracle = SetSystemOracle(ground, member, "weighted assignment greedoid")
    weights = WeightVector(ground, (1,) * (2 * n) + (indicator_weight(n, k),))
    return oracle, weights


def weighted_instance(h: CnfFormula, k: int) -> IntersectionInstance:
    """The weighted gadget paired with the free matroid (all subsets)."""
    greedoid, weights = sat_to_weighted_greedoid(h, k)
    prov = Provenance("weighted", format_dimacs(h), {"k": k})
    return IntersectionInstance(greedoid.ground, power_set(greedoid.ground), greedoid, prov, weights=weights)


def _check_k(e: BoolCircuit, k: int) -> None:
    if not 0 <= k <= e.num_inputs:
        raise ConstructionError(f"k={k} must lie in [0, {e.num_inputs}]")


def wcs_to_param_intersection(e: BoolCircuit, k: int) -> tuple[IntersectionInstance, int]:
    """Instance with a common set of size k+1 iff ``e`` has a weight-k satisfying assignment."""
    _check_k(e, k)
    n, size = e.num_inputs, e.size
    labels = [f"t{i}" for i in range(1, n + 1)] + ["1"] + [f"d{j}" for j in range(1, size + 1)]
    ground = GroundSet(tuple(labels))
    tmask = (1 << n) - 1
    one = 1 << n

    def matroid_member(x):
        return not x & ~(tmask | one) and popcount(x) <= k + 1 and popcount(x & tmask) <= k

    def greedoid_member(x):
        c = popcount(x)
        if not x & ~tmask:
            return c <= k + 1  # groups A and C
        if x & ~(tmask | one) or c != k + 1:
            return False
        return eval_circuit(e, tuple(bool(x >> i & 1) for i in range(n)))  # group B

    matroid = SetSystemOracle(ground, matroid_member, f"at most {k} t-symbols, at most {k + 1} in total, no padding")
    greedoid = SetSystemOracle(ground, greedoid_member, "weighted-circuit greedoid (groups A, B, C)")
    prov = Provenance("wcs", format_circuit(e), {"k": k})
    return IntersectionInstance(ground, matroid, greedoid, prov, target=k + 1), k + 1


def wcs_to_dual_param_intersection(e: BoolCircuit, k: int) -> tuple[IntersectionInstance, int]:
    """Instance with a common set of size |S|-k iff ``e`` has a weight-k satisfying assignment."""
    _check_k(e, k)
    n, size = e.num_inputs, e.size
    labels = [f"f{i}" for i in range(1, n + 1)] + ["1"] + [f"d{j}" for j in range(1, size + 1)]
    ground = GroundSet(tuple(labels))
    fmask = (1 << n) - 1
    one = 1 << n
    dmask = ((1 << size) - 1) << (n + 1)
    falses = n - k

    def matroid_member(x):
        return popcount(x & fmask) <= falses

    def greedoid_member(x):
        if not x & ~dmask:
            return True  # group A'
        if x & dmask != dmask:
            return False
        c = popcount(x)
        if not x & one:
            return c <= size + falses + 1  # groups A and C
        if c != size + falses + 1 or popcount(x & fmask) != falses:
            return False
        return eval_circuit(e, tuple(not (x >> i & 1) for i in range(n)))  # group B

    matroid = SetSystemOracle(ground, matroid_member, f"at most {falses} f-symbols")
    greedoid = SetSystemOracle(ground, greedoid_member, "dual weighted-circuit greedoid (groups A', A, B, C)")
    prov = Provenance("wcs-dual", format_circuit(e), {"k": k})
    target = ground.size - k
    return IntersectionInstance(ground, matroid, greedoid, prov, target=target), target


def build(kind: str, source: str, params: dict) -> IntersectionInstance:
    """Rebuild an instance from its provenance descriptor."""
    if kind == "sat3":
        return sat_to_intersection(parse_dimacs(source))
    if kind == "padded":
        return padded_sat_to_intersection(parse_dimacs(source), _int_param(params, "inv_eps"))
    if kind == "weighted":
        return weighted_instance(parse_dimacs(source), _int_param(params, "k"))
    if kind == "wcs":
        return wcs_to_param_intersection(parse_circuit(source), _int_param(params, "k"))[0]
    if kind == "wcs-dual":
        return wcs_to_dual_param_intersection(parse_circuit(source), _int_param(params, "k"))[0]
    if kind in ("matching", "treematch"):
        from . import treematch

        return treematch.instance_from_source(kind, source)
    raise InstanceFormatError(f"unknown instance kind {kind!r}")


def _int_param(params: dict, name: str) -> int:
    value = params.get(name)
    if not isinstance(value, int) or isinstance(value, bool):
        raise InstanceFormatError(f"parameter {name!r} must be an integer")
    return value


def serialize_instance(inst: IntersectionInstance) -> str:
    p = inst.provenance
    doc = {"schema": SCHEMA, "kind": p.kind, "params": dict(sorted(p.params.items())), "source": p.source}
    return json.dumps(doc, indent=2) + "\n"


def deserialize_instance(text: str) -> IntersectionInstance:
    if not text.strip():
        raise InstanceFormatError("empty instance descriptor")
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict):
        raise InstanceFormatError("descriptor must be a JSON object")
    if doc.get("schema") != SCHEMA:
        raise InstanceFormatError(f"unsupported schema {doc.get('schema')!r}")
    kind, source, params = doc.get("kind"), doc.get("source"), doc.get("params", {})
    if kind not in KINDS:
        raise InstanceFormatError(f"unknown instance kind {kind!r}")
    if not isinstance(source, str) or not isinstance(params, dict):
        raise InstanceFormatError("descriptor needs a string 'source' and an object 'params'")
    try:
        return build(kind, source, params)
    except ParseError as exc:
        raise InstanceFormatError(f"embedded source: {exc}") from None
    except ConstructionError as exc:
        raise InstanceFormatError(str(exc)) from None


def weights_to_json(weights: WeightVector) -> str:
    doc = {"schema": SCHEMA, "weights": {lab: str(w) for lab, w in zip(weights.ground.labels, weights.values)}}
    return json.dumps(doc, indent=2) + "\n"


def weights_from_json(text: str, ground: GroundSet) -> WeightVector:
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as exc:
        raise InstanceFormatError(f"invalid JSON: {exc}") from None
    if not isinstance(doc, dict) or doc.get("schema") != SCHEMA or not isinstance(doc.get("weights"), dict):
        raise InstanceFormatError("weights file needs schema 'v1' and a 'weights' object")
    table = doc["weights"]
    if set(table) != set(ground.labels):
        raise InstanceFormatError("weights must name exactly the ground set elements")
    try:
        return WeightVector(ground, tuple(int(table[lab]) for lab in ground.labels))
    except (TypeError, ValueError):
        raise InstanceFormatError("weights must be integers or decimal strings") from None
