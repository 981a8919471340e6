"""Exact rational scalars, closed intervals, normalized interval unions, point sets.

Everything in this package is computed over ``fractions.Fraction``; no
operation ever rounds.  Whether two closed intervals touch or leave a gap is
decided by exact endpoint comparison, which is the entire point: a single
rounding error could flip "touching" into "disjoint" and change the topology
of every derived set.

Denominators are unbounded.  Worst-case bit growth: interval algebra is
linear in the operand bit sizes; affine maps add the bit sizes of scale and
shift.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Iterator, Optional, Sequence, Union

Rational = Fraction
RationalLike = Union[Fraction, int, str]


def rat(value: RationalLike) -> Fraction:
    """Coerce an int, Fraction, or canonical "p/q" string to a Fraction.

    Floats are rejected: accepting them silently would smuggle rounding
    error into an exact pipeline.
    """
    if isinstance(value, bool):
        raise TypeError("booleans are not rational scalars")
    if isinstance(value, Fraction):
        return value
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        return Fraction(value.strip())
    raise TypeError(f"cannot interpret {value!r} as an exact rational")


def rat_str(value: RationalLike) -> str:
    """Canonical "p/q" form, denominator always explicit (e.g. "-3/1")."""
    x = rat(value)
    return f"{x.numerator}/{x.denominator}"


@dataclass(frozen=True)
class Interval:
    """Closed interval [lo, hi] with rational endpoints; lo == hi is allowed."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "lo", rat(self.lo))
        object.__setattr__(self, "hi", rat(self.hi))
        if self.lo > self.hi:
            raise ValueError(f"interval endpoints out of order: {self.lo} > {self.hi}")

    @property
    def length(self) -> Fraction:
        return self.hi - self.lo

    @property
    def is_degenerate(self) -> bool:
        return self.lo == self.hi

    def contains_point(self, x: RationalLike) -> bool:
        v = rat(x)
        return self.lo <= v <= self.hi

    def as_pair(self) -> list[str]:
        return [rat_str(self.lo), rat_str(self.hi)]

    @staticmethod
    def from_pair(pair: Sequence[RationalLike]) -> "Interval":
        if len(pair) != 2:
            raise ValueError(f"interval pair must have two entries, got {pair!r}")
        return Interval(rat(pair[0]), rat(pair[1]))

    def __repr__(self) -> str:
        return f"[{self.lo}, {self.hi}]"


def interval(lo: RationalLike, hi: RationalLike) -> Interval:
    return Interval(rat(lo), rat(hi))


@dataclass(frozen=True)
class IntervalSet:
    """Finite union of disjoint closed intervals, kept in canonical form.

    Canonical means strictly increasing with a positive gap between
    consecutive parts: parts[i].hi < parts[i+1].lo.  Intervals that touch at
    an endpoint are merged on construction, so the union of points determines
    the representation uniquely.  Degenerate parts [x, x] are retained (they
    matter for intersections) but excluded from interior measure.
    """

    parts: tuple[Interval, ...] = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "parts", tuple(self.parts))
        for a, b in zip(self.parts, self.parts[1:]):
            if not a.hi < b.lo:
                raise ValueError(
                    f"parts not canonical: {a} and {b} overlap or touch; use normalize()"
                )

    def __iter__(self) -> Iterator[Interval]:
        return iter(self.parts)

    def __len__(self) -> int:
        return len(self.parts)

    def __bool__(self) -> bool:
        return bool(self.parts)

    @property
    def measure(self) -> Fraction:
        """Exact total length (Lebesgue measure of the union)."""
        return sum((p.length for p in self.parts), Fraction(0))

    @property
    def interior_measure(self) -> Fraction:
        """Measure of the topological interior.

        For a finite union of closed intervals this equals the measure of the
        nondegenerate parts, so it is the same exact sum with points dropped.
        """
        return sum((p.length for p in self.parts if not p.is_degenerate), Fraction(0))

    def nondegenerate(self) -> "IntervalSet":
        return IntervalSet(tuple(p for p in self.parts if not p.is_degenerate))

    @property
    def hull(self) -> Optional[Interval]:
        if not self.parts:
            return None
        return Interval(self.parts[0].lo, self.parts[-1].hi)

    def contains_point(self, x: RationalLike) -> bool:
        v = rat(x)
        lo, hi = 0, len(self.parts) - 1
        while lo <= hi:
            mid = (lo + hi) // 2
            p = self.parts[mid]
            if v < p.lo:
                hi = mid - 1
            elif v > p.hi:
                lo = mid + 1
            else:
                return True
        return False

    def union(self, other: "IntervalSet") -> "IntervalSet":
        return normalize(self.parts + other.parts)

    def intersect(self, other: "IntervalSet") -> "IntervalSet":
        """Pointwise intersection; degenerate touching points are kept."""
        out: list[Interval] = []
        i = j = 0
        a, b = self.parts, other.parts
        while i < len(a) and j < len(b):
            lo = max(a[i].lo, b[j].lo)
            hi = min(a[i].hi, b[j].hi)
            if lo <= hi:
                out.append(Interval(lo, hi))
            if a[i].hi < b[j].hi:
                i += 1
            else:
                j += 1
        return IntervalSet(tuple(out))

    def is_subset_of(self, other: "IntervalSet") -> bool:
        """True iff every point of self lies in other (linear sweep).

        Parts of a canonical set are separated by open gaps, so a connected
        part of self fits in other iff it fits inside a single part of other.
        """
        j = 0
        b = other.parts
        for p in self.parts:
            while j < len(b) and b[j].hi < p.lo:
                j += 1
            if j == len(b) or not (b[j].lo <= p.lo and p.hi <= b[j].hi):
                return False
        return True

    def difference(self, other: "IntervalSet") -> "IntervalSet":
        """Closures of the components of self minus other (merged sweep).

        The set difference of closed unions need not be closed; taking
        component closures keeps the result in IntervalSet form.  Used for
        gap geometry and diagnostics, where the closure is what is wanted.
        """
        out: list[Interval] = []
        b = other.parts
        j = 0
        for p in self.parts:
            while j < len(b) and b[j].hi < p.lo:
                j += 1
            cursor = p.lo
            covered_end = False
            i = j
            while i < len(b) and b[i].lo <= p.hi:
                if b[i].lo > cursor:
                    out.append(Interval(cursor, b[i].lo))
                if b[i].hi >= cursor:
                    cursor = b[i].hi
                if cursor >= p.hi:
                    covered_end = True
                    break
                i += 1
            if not covered_end and cursor <= p.hi:
                out.append(Interval(cursor, p.hi))
        return normalize(out)

    def affine(self, scale: RationalLike, shift: RationalLike) -> "IntervalSet":
        """Image {scale*x + shift}; scale must be positive.

        An orientation-preserving affine map keeps gaps open, so the image of
        a canonical set is canonical without re-merging.
        """
        a = rat(scale)
        b = rat(shift)
        if a <= 0:
            raise ValueError(f"affine scale must be positive, got {a}")
        return IntervalSet(tuple(Interval(a * p.lo + b, a * p.hi + b) for p in self.parts))

    def gaps_within(self, ambient: Interval) -> "IntervalSet":
        """Closures of the components of ambient minus self.

        Requires self to be contained in the ambient interval.
        """
        if not self.is_subset_of(IntervalSet((ambient,))):
            raise ValueError("set is not contained in the ambient interval")
        if not self.parts:
            return IntervalSet((ambient,))
        out: list[Interval] = []
        prev = ambient.lo
        for p in self.parts:
            if p.lo > prev:
                out.append(Interval(prev, p.lo))
            prev = max(prev, p.hi)
        if prev < ambient.hi:
            out.append(Interval(prev, ambient.hi))
        return IntervalSet(tuple(out))

    def to_pairs(self) -> list[list[str]]:
        return [p.as_pair() for p in self.parts]

    @staticmethod
    def from_pairs(pairs: Iterable[Sequence[RationalLike]]) -> "IntervalSet":
        return normalize(Interval.from_pair(p) for p in pairs)

    def __repr__(self) -> str:
        return "{" + ", ".join(repr(p) for p in self.parts) + "}"


EMPTY_SET = IntervalSet(())


def normalize(intervals: Iterable[Interval]) -> IntervalSet:
    """Canonical IntervalSet with the same union of points.

    Sorts by left endpoint and merges overlapping or touching intervals;
    intervals sharing only an endpoint are merged because the union of two
    touching closed intervals is a single closed interval.
    """
    items = sorted(intervals, key=lambda p: (p.lo, p.hi))
    out: list[Interval] = []
    for p in items:
        if out and p.lo <= out[-1].hi:
            if p.hi > out[-1].hi:
                out[-1] = Interval(out[-1].lo, p.hi)
        else:
            out.append(p)
    return IntervalSet(tuple(out))


def tail_ratio_bounds(
    a: Sequence[RationalLike], b: Sequence[RationalLike]
) -> tuple[Fraction, Fraction, Fraction]:
    """(min a_i/b_i, max a_i/b_i, sum(a)/sum(b)) for positive sequences.

    The aggregate ratio is a convex combination of the termwise ratios, so it
    always lies between the extremes; this is asserted, not assumed.
    """
    xs = [rat(v) for v in a]
    ys = [rat(v) for v in b]
    if not xs or len(xs) != len(ys):
        raise ValueError("need two positive sequences of equal nonzero length")
    if any(v <= 0 for v in xs) or any(v <= 0 for v in ys):
        raise ValueError("all entries must be positive")
    ratios = [x / y for x, y in zip(xs, ys)]
    lo, hi = min(ratios), max(ratios)
    ratio = sum(xs, Fraction(0)) / sum(ys, Fraction(0))
    assert lo <= ratio <= hi
    return lo, hi, ratio


@dataclass(frozen=True)
class PointSet:
    """Sorted distinct rationals, optionally with positive multiplicities."""

    values: tuple[Fraction, ...]
    counts: Optional[tuple[int, ...]] = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "values", tuple(rat(v) for v in self.values))
        for a, b in zip(self.values, self.values[1:]):
            if not a < b:
                raise ValueError("point set values must be strictly increasing")
        if self.counts is not None:
            object.__setattr__(self, "counts", tuple(int(c) for c in self.counts))
            if len(self.counts) != len(self.values):
                raise ValueError("counts must parallel values")
            if any(c <= 0 for c in self.counts):
                raise ValueError("multiplicities must be positive")

    @staticmethod
    def from_values(values: Iterable[RationalLike]) -> "PointSet":
        """Deduplicated point set without multiplicity information."""
        return PointSet(tuple(sorted(set(rat(v) for v in values))))

    @staticmethod
    def from_pairs(pairs: Iterable[tuple[RationalLike, int]]) -> "PointSet":
        """Point set from (value, count) pairs; duplicate values merge counts."""
        acc: dict[Fraction, int] = {}
        for v, c in pairs:
            key = rat(v)
            acc[key] = acc.get(key, 0) + int(c)
        values = tuple(sorted(acc))
        return PointSet(values, tuple(acc[v] for v in values))

    def __len__(self) -> int:
        return len(self.values)

    def __iter__(self) -> Iterator[Fraction]:
        return iter(self.values)

    def __contains__(self, x: object) -> bool:
        try:
            v = rat(x)  # type: ignore[arg-type]
        except TypeError:
            return False
        lo, hi = 0, len(self.values) - 1
        while lo <= hi:
            mid = (lo + hi) // 2
            if self.values[mid] < v:
                lo = mid + 1
            elif self.values[mid] > v:
                hi = mid - 1
            else:
                return True
        return False

    @property
    def min(self) -> Fraction:
        if not self.values:
            raise ValueError("empty point set has no minimum")
        return self.values[0]

    @property
    def max(self) -> Fraction:
        if not self.values:
            raise ValueError("empty point set has no maximum")
        return self.values[-1]

    @property
    def total_count(self) -> int:
        if self.counts is None:
            return len(self.values)
        return sum(self.counts)

    def gaps(self) -> tuple[Fraction, ...]:
        """Consecutive differences, in order."""
        return tuple(b - a for a, b in zip(self.values, self.values[1:]))

    def count_of(self, x: RationalLike) -> int:
        v = rat(x)
        if self.counts is None:
            return 1 if v in self else 0
        lo, hi = 0, len(self.values) - 1
        while lo <= hi:
            mid = (lo + hi) // 2
            if self.values[mid] < v:
                lo = mid + 1
            elif self.values[mid] > v:
                hi = mid - 1
            else:
                return self.counts[mid]
        return 0

    def to_json(self) -> dict:
        doc: dict = {"values": [rat_str(v) for v in self.values]}
        doc["counts"] = list(self.counts) if self.counts is not None else None
        return doc

    @staticmethod
    def from_json(doc: dict) -> "PointSet":
        counts = doc.get("counts")
        return PointSet(
            tuple(rat(v) for v in doc["values"]),
            tuple(int(c) for c in counts) if counts is not None else None,
        )

    def __repr__(self) -> str:
        return f"PointSet({list(self.values)!r})"
