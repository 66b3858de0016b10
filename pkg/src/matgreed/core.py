"""Ground sets, membership oracles and axiom verification.

Subsets of a ground set are plain Python ints used as bit vectors: bit ``i``
is set when the element with index ``i`` belongs to the subset.  Python ints
are unbounded, so ground sets of any size are representable; the exhaustive
procedures are guarded by explicit caps instead.
"""
from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

import numpy as np

EXHAUSTIVE_CAP = 12
ENUMERATION_CAP = 24
DEFAULT_SAMPLES = 10_000


class MatgreedError(Exception):
    """Base class for errors raised by this package."""


class DomainTooLargeError(MatgreedError):
    """An exhaustive procedure was asked to run over a ground set above its cap."""


class ConstructionError(MatgreedError, ValueError):
    """Invalid arguments when building an oracle or an instance."""


@dataclass(frozen=True)
class Element:
    index: int
    label: str


@dataclass(frozen=True)
class GroundSet:
    """An ordered, labelled finite ground set."""

    labels: tuple[str, ...]
    _index: dict = field(init=False, repr=False, compare=False, hash=False)

    def __post_init__(self):
        labels = tuple(str(x) for x in self.labels)
        object.__setattr__(self, "labels", labels)
        index = {lab: i for i, lab in enumerate(labels)}
        if len(index) != len(labels):
            raise ConstructionError("ground set labels must be pairwise distinct")
        object.__setattr__(self, "_index", index)

    @property
    def size(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    @property
    def elements(self) -> list[Element]:
        return [Element(i, lab) for i, lab in enumerate(self.labels)]

    @property
    def full(self) -> int:
        return (1 << len(self.labels)) - 1

    def index(self, label: str) -> int:
        try:
            return self._index[label]
        except KeyError:
            raise KeyError(f"unknown element {label!r}") from None

    def bit(self, label: str) -> int:
        return 1 << self.index(label)

    def mask(self, labels: Sequence[str] = ()) -> int:
        m = 0
        for lab in labels:
            m |= 1 << self.index(lab)
        return m

    def labels_of(self, mask: int) -> list[str]:
        return [self.labels[i] for i in indices(mask)]

    def check_mask(self, mask: int) -> None:
        if mask < 0 or mask >> len(self.labels):
            raise ValueError(f"mask {mask:#x} has bits outside a ground set of size {self.size}")


def indices(mask: int) -> list[int]:
    """Indices of the set bits of ``mask``, ascending."""
    out = []
    i = 0
    while mask:
        if mask & 1:
            out.append(i)
        mask >>= 1
        i += 1
    return out


def mask_of(idx) -> int:
    m = 0
    for i in idx:
        m |= 1 << i
    return m


def popcount(mask: int) -> int:
    return mask.bit_count()


class SetSystemOracle:
    """A membership oracle ``member(mask) -> bool`` over one ground set.

    The predicate must be pure.  ``calls`` counts queries so solvers can report
    how many oracle evaluations they needed.
    """

    def __init__(self, ground: GroundSet, member: Callable[[int], bool], description: str = ""):
        self.ground = ground
        self._member = member
        self.description = description
        self.calls = 0

    def member(self, mask: int) -> bool:
        self.ground.check_mask(mask)
        self.calls += 1
        return bool(self._member(mask))

    __call__ = member

    def contains_labels(self, labels: Sequence[str]) -> bool:
        return self.member(self.ground.mask(labels))

    def __repr__(self):
        return f"SetSystemOracle({self.description or 'anonymous'}, size={self.ground.size})"


class Classification:
    MATROID = "Matroid"
    GREEDOID = "Greedoid"
    NEITHER = "Neither"


@dataclass(frozen=True)
class Counterexample:
    axiom: str  # "M1", "M2" or "M3"
    x: int
    y: int


@dataclass(frozen=True)
class AxiomReport:
    m1: bool
    m2: Optional[bool]  # None when the hereditary check was skipped
    m3: bool
    counterexample: Optional[Counterexample]
    mode: str
    samples: int
    seed: Optional[int]


def _check_cap(oracle: SetSystemOracle, cap: int) -> None:
    if oracle.ground.size > cap:
        raise DomainTooLargeError(
            f"domain too large: {oracle.ground.size} elements exceeds the cap of {cap}"
        )


def iter_masks_by_cardinality(n: int, descending: bool = False) -> Iterator[int]:
    """All masks over ``n`` elements, by cardinality then lexicographically."""
    sizes = range(n, -1, -1) if descending else range(n + 1)
    for c in sizes:
        for combo in itertools.combinations(range(n), c):
            yield mask_of(combo)


def enumerate_feasible(oracle: SetSystemOracle, cap: int = ENUMERATION_CAP) -> Iterator[int]:
    """Yield every feasible mask, smallest cardinality first, then lexicographically."""
    _check_cap(oracle, cap)
    for m in iter_masks_by_cardinality(oracle.ground.size):
        if oracle.member(m):
            yield m


def replay(oracle: SetSystemOracle, cex: Counterexample) -> bool:
    """True when ``cex`` still violates its axiom under ``oracle``."""
    if cex.axiom == "M1":
        return not oracle.member(0)
    if cex.axiom == "M2":
        return (cex.y & ~cex.x) == 0 and oracle.member(cex.x) and not oracle.member(cex.y)
    if cex.axiom == "M3":
        x, y = cex.x, cex.y
        if not (oracle.member(x) and oracle.member(y)) or popcount(x) <= popcount(y):
            return False
        return not any(oracle.member(y | (1 << i)) for i in indices(x & ~y))
    raise ValueError(f"unknown axiom {cex.axiom!r}")


def check_axioms(
    oracle: SetSystemOracle,
    mode: str = "exhaustive",
    samples: int = DEFAULT_SAMPLES,
    seed: Optional[int] = None,
    *,
    cap: int = EXHAUSTIVE_CAP,
    hereditary: bool = True,
) -> AxiomReport:
    """Check (M1) empty set, (M2) hereditarity and (M3) exchange.

    ``mode="exhaustive"`` is exact and refuses ground sets larger than ``cap``.
    ``mode="sampled"`` draws ``samples`` pairs per axiom from a
    ``random.Random(seed)``; the seed is mandatory.  Pass ``hereditary=False``
    to skip (M2), which is then reported as ``None``.
    """
    if mode == "exhaustive":
        return _check_exhaustive(oracle, cap, hereditary)
    if mode == "sampled":
        if seed is None:
            raise ValueError("sampled axiom checking requires an explicit seed")
        return _check_sampled(oracle, samples, seed, hereditary)
    raise ValueError(f"unknown mode {mode!r}")


def _check_exhaustive(oracle, cap, hereditary):
    _check_cap(oracle, cap)
    n = oracle.ground.size
    feasible = list(enumerate_feasible(oracle, cap=cap))
    fset = set(feasible)
    cex = None

    m1 = 0 in fset
    if not m1:
        cex = Counterexample("M1", 0, 0)

    m2 = None
    if hereditary:
        m2 = True
        # closure under single-element removal is equivalent to hereditarity
        for x in feasible:
            for i in indices(x):
                y = x & ~(1 << i)
                if y not in fset:
                    m2 = False
                    if cex is None:
                        cex = Counterexample("M2", x, y)
                    break
            if not m2:
                break

    m3 = True
    pair = _exchange_violation(feasible, fset, n)
    if pair is not None:
        m3 = False
        if cex is None:
            cex = Counterexample("M3", *pair)
    return AxiomReport(m1, m2, m3, cex, "exhaustive", 0, None)


def _exchange_violation(feasible, fset, n):
    """First (X, Y) with |X| > |Y| and no x in X-Y augmenting Y, or None.

    Y can be augmented from X iff X meets ext(Y) = {x not in Y : Y+x feasible},
    so the test reduces to a disjointness check per distinct (ext(Y), |Y|).
    """
    if not feasible:
        return None
    exts = []
    for y in feasible:
        e = 0
        free = ~y & ((1 << n) - 1)
        while free:
            b = free & -free
            if (y | b) in fset:
                e |= b
            free ^= b
        exts.append(e)
    cards = [popcount(m) for m in feasible]
    seen = set()
    if n <= 63:
        arr = np.array(feasible, dtype=np.uint64)
        card_arr = np.array(cards, dtype=np.int64)
        for y, e, c in zip(feasible, exts, cards):
            if (e, c) in seen:
                continue
            seen.add((e, c))
            bad = ((arr & np.uint64(e)) == 0) & (card_arr > c)
            if bad.any():
                return int(arr[int(np.argmax(bad))]), y
        return None
    for y, e, c in zip(feasible, exts, cards):
        if (e, c) in seen:
            continue
        seen.add((e, c))
        for x, cx in zip(feasible, cards):
            if cx > c and not (x & e):
                return x, y
    return None


def _random_mask(rng: random.Random, n: int) -> int:
    return rng.getrandbits(n) if n else 0


def _grow(oracle, rng, n):
    """A random feasible set reached by single-element augmentations from the empty set."""
    cur = 0
    target = rng.randint(0, n)
    order = list(range(n))
    rng.shuffle(order)
    for i in order:
        if popcount(cur) >= target:
            break
        if oracle.member(cur | (1 << i)):
            cur |= 1 << i
    return cur


def _sample_feasible(oracle, rng, n):
    if rng.random() < 0.5:
        m = _random_mask(rng, n)
        if oracle.member(m):
            return m
    return _grow(oracle, rng, n)


def _check_sampled(oracle, samples, seed, hereditary):
    rng = random.Random(seed)
    n = oracle.ground.size
    cex = None
    m1 = oracle.member(0)
    if not m1:
        cex = Counterexample("M1", 0, 0)

    m2 = None
    if hereditary:
        m2 = True
        for _ in range(samples):
            x = _sample_feasible(oracle, rng, n)
            if not oracle.member(x):
                continue
            y = x & _random_mask(rng, n)
            if not oracle.member(y):
                m2 = False
                if cex is None:
                    cex = Counterexample("M2", x, y)
                break

    m3 = True
    for _ in range(samples):
        x = _sample_feasible(oracle, rng, n)
        y = _sample_feasible(oracle, rng, n)
        if popcount(x) < popcount(y):
            x, y = y, x
        if popcount(x) == popcount(y) or not (oracle.member(x) and oracle.member(y)):
            continue
        if not any(oracle.member(y | (1 << i)) for i in indices(x & ~y)):
            m3 = False
            if cex is None:
                cex = Counterexample("M3", x, y)
            break
    return AxiomReport(m1, m2, m3, cex, "sampled", samples, seed)


def classify(report: AxiomReport) -> str:
    """Matroid when all three axioms hold, Greedoid when (M1) and (M3) hold."""
    if report.m1 and report.m3:
        return Classification.MATROID if report.m2 is True else Classification.GREEDOID
    return Classification.NEITHER


def is_greedoid(report: AxiomReport) -> bool:
    """Every matroid is also a greedoid."""
    return classify(report) in (Classification.MATROID, Classification.GREEDOID)


def intersection_oracle(a: SetSystemOracle, b: SetSystemOracle) -> SetSystemOracle:
    if a.ground != b.ground:
        raise ConstructionError("oracles must share one ground set")
    return SetSystemOracle(
        a.ground, lambda m: a.member(m) and b.member(m), f"({a.description}) & ({b.description})"
    )
