"""Finite-depth analysis of subsums with multiple representations.

A subsum value achieved by two distinct finite index sets is certified
non-unique (both extend by the empty tail).  The converse direction is not
finitely decidable, so the module reports certified collisions, an outer
brick approximation of the depth-k multiple-representation set, and the
semi-fast criterion that forces global uniqueness for repeated-term series.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

from .exact import Interval, IntervalSet, PointSet, normalize, rat_str
from .families.grouped import GroupedStream
from .families.periodic import (
    BlockGeometric,
    PeriodicSeq,
    weighted_block_geometric,
)
from .series import DEFAULT_CAP, CapacityError, TermStream, finite_subsums


@dataclass(frozen=True)
class RepeatedTermSpec:
    """Strictly decreasing base values y_i, each repeated counts[i] times.

    y is block-geometric (exact tails) and the counts are eventually
    periodic, so the expanded stream has exact group structure.
    """

    y: BlockGeometric
    counts: PeriodicSeq

    def __post_init__(self) -> None:
        if not self.y.is_strictly_decreasing():
            raise ValueError("base values must be strictly decreasing")
        probe = self.counts.preperiod_length + self.counts.period_length
        for i in range(1, probe + 1):
            c = self.counts[i]
            if not isinstance(c, int) or c < 1:
                raise ValueError(f"repetition count K_{i} must be a positive integer")

    @property
    def group_preperiod(self) -> int:
        blocks_needed = -(-self.y.preperiod_length // self.y.block_length)
        return max(self.counts.preperiod_length, self.y.preperiod_length, blocks_needed)

    @property
    def group_period(self) -> int:
        from math import lcm

        return lcm(self.counts.period_length, self.y.block_length)

    @property
    def block_ratio(self) -> Fraction:
        return self.y.ratio ** (self.group_period // self.y.block_length)

    def weighted_tail(self, k: int) -> Fraction:
        """Exact sum over i > k of counts[i] * y_i (base-value indexing)."""
        weighted = weighted_block_geometric(
            self.counts.value,
            self.y.value,
            self.group_preperiod,
            self.group_period,
            self.block_ratio,
        )
        return weighted.tail(k)

    def to_json(self) -> dict:
        return {
            "type": "repeated",
            "y": self.y.to_json(),
            "counts": self.counts.to_json(),
        }

    @staticmethod
    def from_json(doc: dict) -> "RepeatedTermSpec":
        return RepeatedTermSpec(
            BlockGeometric.from_json(doc["y"]), PeriodicSeq.from_json(doc["counts"])
        )


class RepeatedTermStream(GroupedStream):
    """Expanded stream: group i is counts[i] copies of y_i."""

    def __init__(self, spec: RepeatedTermSpec) -> None:
        self.spec = spec
        super().__init__(
            preperiod=spec.group_preperiod,
            period=spec.group_period,
            block_ratio=spec.block_ratio,
        )

    def group_terms(self, k: int) -> tuple[Fraction, ...]:
        return (self.spec.y.value(k),) * self.spec.counts[k]

    @property
    def descriptor(self) -> str:
        return "repeated-term"


def repeated_stream(spec: RepeatedTermSpec) -> RepeatedTermStream:
    return RepeatedTermStream(spec)


@dataclass(frozen=True)
class RepetitionReport:
    """Certified multiple-representation values at depth k, with witnesses.

    Collisions are counted per distinct multiset of term values: permuting
    equal terms never yields a genuinely different decomposition, so only
    representations that differ as value multisets are reported.  Each
    collision value carries two witness index subsets realizing distinct
    multisets; such a pair also produces distinct prefix values f != g whose
    bricks both contain the value, which is what the outer approximation
    captures.
    """

    k: int
    collisions: PointSet
    witnesses: tuple[tuple[Fraction, tuple[int, ...], tuple[int, ...]], ...]
    outer: IntervalSet

    def to_json(self) -> dict:
        return {
            "k": self.k,
            "collisions": self.collisions.to_json(),
            "witnesses": [
                {"value": rat_str(v), "first": list(a), "second": list(b)}
                for v, a, b in self.witnesses
            ],
            "outer": self.outer.to_pairs(),
        }


def collisions(stream: TermStream, k: int, cap: int = DEFAULT_CAP) -> PointSet:
    """Subsum values of depth k achieved by at least two subsets."""
    return repetition_report(stream, k, cap).collisions


def _value_groups(terms: tuple[Fraction, ...]) -> list[tuple[Fraction, list[int]]]:
    """Distinct term values with their 1-based indices (terms nonincreasing,
    so equal values are consecutive)."""
    groups: list[tuple[Fraction, list[int]]] = []
    for i, t in enumerate(terms, start=1):
        if groups and groups[-1][0] == t:
            groups[-1][1].append(i)
        else:
            groups.append((t, [i]))
    return groups


def repetition_report(stream: TermStream, k: int, cap: int = DEFAULT_CAP) -> RepetitionReport:
    """Collisions (distinct value multisets, same sum) with witness subsets.

    Enumerates multiplicity profiles over the distinct term values; the
    profile count is guarded by cap.  The reported count for each collision
    value is the number of distinct multisets achieving it.
    """
    if k < 0:
        raise ValueError("depth must be nonnegative")
    groups = _value_groups(stream.terms(k))
    total = 1
    for _, indices in groups:
        total *= len(indices) + 1
        if total > cap:
            raise CapacityError("repetition_report", total, cap)
    seen: dict[Fraction, list[tuple[int, ...]]] = {}
    tallies: dict[Fraction, int] = {}
    for profile in itertools.product(*(range(len(ix) + 1) for _, ix in groups)):
        value = sum(
            (n * v for n, (v, _) in zip(profile, groups)), Fraction(0)
        )
        tallies[value] = tallies.get(value, 0) + 1
        bucket = seen.setdefault(value, [])
        if len(bucket) < 2:
            bucket.append(profile)
    collided = sorted(v for v, c in tallies.items() if c >= 2)

    def subset(profile: tuple[int, ...]) -> tuple[int, ...]:
        picks: list[int] = []
        for n, (_, indices) in zip(profile, groups):
            picks.extend(indices[:n])
        return tuple(sorted(picks))

    witnesses = tuple((v, subset(seen[v][0]), subset(seen[v][1])) for v in collided)
    collision_set = (
        PointSet(tuple(collided), tuple(tallies[v] for v in collided))
        if collided
        else PointSet((), ())
    )
    return RepetitionReport(
        k=k,
        collisions=collision_set,
        witnesses=witnesses,
        outer=multirep_outer(stream, k, cap) if k >= 1 else IntervalSet(()),
    )


def multirep_outer(stream: TermStream, k: int, cap: int = DEFAULT_CAP) -> IntervalSet:
    """Outer approximation of the depth-k multiple-representation set.

    Union over distinct subsum values f < g of [f, f+r_k] intersect
    [g, g+r_k]; replacing the tail achievement set by [0, r_k] makes this a
    superset of the true set.  Only consecutive overlapping values
    contribute: for g beyond the successor the intersection is contained in
    the successor's.
    """
    if k < 1:
        raise ValueError("depth must be at least 1")
    values = finite_subsums(stream, k, cap).values
    tail = stream.tail(k)
    pieces = [
        Interval(b, a + tail)
        for a, b in zip(values, values[1:])
        if b <= a + tail
    ]
    return normalize(pieces)


@dataclass(frozen=True)
class SemifastResult:
    """Exact verdict of the semi-fast inequality y_k > sum_{i>k} K_i y_i."""

    semifast: bool
    first_violation: Optional[int]
    checked_through: int

    def to_json(self) -> dict:
        return {
            "semifast": self.semifast,
            "first_violation": self.first_violation,
            "checked_through": self.checked_through,
        }


def semifast_check(spec: RepeatedTermSpec, proof_horizon: Optional[int] = None) -> SemifastResult:
    """Decide the semi-fast inequality for every k.

    Both sides scale by the same factor across a period of base indices, so
    checking through preperiod + period decides all k; a larger
    proof_horizon only widens the explicitly reported range.  When the
    inequality holds, every achieved point has exactly one representation
    over the repetition alphabet, forcing a Cantor-type achievement set.
    """
    decisive = spec.group_preperiod + spec.group_period
    limit = max(decisive, proof_horizon or 0)
    violation = None
    for k in range(1, limit + 1):
        if not spec.y.value(k) > spec.weighted_tail(k):
            violation = k
            break
    return SemifastResult(
        semifast=violation is None,
        first_violation=violation,
        checked_through=limit,
    )


def representation_uniqueness_oracle(
    spec: RepeatedTermSpec, depth: int, cap: int = DEFAULT_CAP
) -> bool:
    """Finite-depth injectivity certificate for the representation map.

    Enumerates all coefficient tuples (n_1..n_depth) with 0 <= n_i <= K_i
    and checks that the partial sums are pairwise separated by more than the
    remaining tail; then no two full representations can collide at this
    resolution.  Depth 0 is vacuously unique.
    """
    if depth < 0:
        raise ValueError("depth must be nonnegative")
    if depth == 0:
        return True
    total = 1
    ks = [spec.counts[i] for i in range(1, depth + 1)]
    for c in ks:
        total *= c + 1
        if total > cap:
            raise CapacityError("representation_uniqueness_oracle", total, cap)
    ys = [spec.y.value(i) for i in range(1, depth + 1)]
    sums = sorted(
        sum((n * y for n, y in zip(tup, ys)), Fraction(0))
        for tup in itertools.product(*(range(c + 1) for c in ks))
    )
    tail = spec.weighted_tail(depth)
    return all(b - a > tail for a, b in zip(sums, sums[1:]))


def tail_sum_unique(stream: TermStream, k: int) -> bool:
    """True iff r_k < x_k exactly, which certifies that the tail sum r_k
    has only one representing subset (the full tail)."""
    if k < 1:
        raise ValueError("indices start at 1")
    return stream.tail(k) < stream.term(k)


def tail_collision_evidence(
    stream: TermStream,
    depths: Sequence[int],
    cap: int = DEFAULT_CAP,
    inner_depth: int = 10,
) -> tuple[tuple[int, bool], ...]:
    """For each k: does the tail series beyond k show a certified collision?

    True entries are certificates (a collision in the suffix subsums); False
    only means none was found at the configured inner depth.
    """
    if inner_depth < 1:
        raise ValueError("inner depth must be at least 1")
    if 2**inner_depth > cap:
        raise CapacityError("tail_collision_evidence", 2**inner_depth, cap)
    out = []
    for k in depths:
        if k < 0:
            raise ValueError("depths must be nonnegative")
        found = len(collisions(stream.suffix(k), inner_depth, cap)) > 0
        out.append((k, found))
    return tuple(out)
