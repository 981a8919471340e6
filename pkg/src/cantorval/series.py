"""Term streams for convergent positive nonincreasing series.

A stream exposes exact terms x_n, exact tail sums r_n = sum of x_i for i > n,
and suffix views (the remainder series).  Finite subsum sets carry
multiplicities so that downstream uniqueness analysis can see collisions.
"""

from __future__ import annotations

import abc
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional

from .exact import PointSet, rat, RationalLike

DEFAULT_CAP = 2_000_000

LESS, EQUAL, GREATER = "<", "=", ">"


class CapacityError(RuntimeError):
    """A deduplicated set would exceed its capacity; nothing was truncated."""

    def __init__(self, stage: str, size: int, cap: int) -> None:
        super().__init__(f"{stage}: would produce {size} values, cap is {cap}")
        self.stage = stage
        self.size = size
        self.cap = cap


def compare_sign(x: Fraction, r: Fraction) -> str:
    if x > r:
        return GREATER
    if x == r:
        return EQUAL
    return LESS


@dataclass(frozen=True)
class KakeyaPattern:
    """Proof-carrying description of the comparisons x_n vs r_n.

    ``prefix`` gives the comparison sign for n = 1..len(prefix); afterwards
    the signs repeat ``cycle`` forever.  A stream returns a pattern only when
    the periodicity is exact (scale-invariance of both terms and tails), so a
    pattern is an analytic statement about all n, not finite-horizon evidence.
    """

    prefix: tuple[str, ...]
    cycle: tuple[str, ...]

    def __post_init__(self) -> None:
        if not self.cycle:
            raise ValueError("pattern cycle must be nonempty")
        for sym in self.prefix + self.cycle:
            if sym not in (LESS, EQUAL, GREATER):
                raise ValueError(f"bad comparison symbol {sym!r}")

    def comparison_at(self, n: int) -> str:
        if n < 1:
            raise ValueError("indices start at 1")
        if n <= len(self.prefix):
            return self.prefix[n - 1]
        return self.cycle[(n - len(self.prefix) - 1) % len(self.cycle)]

    @property
    def kakeya_is_finite(self) -> bool:
        """True iff {n : x_n > r_n} is finite."""
        return GREATER not in self.cycle

    @property
    def strict_reversed_is_finite(self) -> bool:
        """True iff {n : x_n < r_n} is finite."""
        return LESS not in self.cycle

    @property
    def reversed_is_finite(self) -> bool:
        """True iff {n : x_n <= r_n} is finite."""
        return LESS not in self.cycle and EQUAL not in self.cycle

    @property
    def eventually_equal(self) -> bool:
        return all(sym == EQUAL for sym in self.cycle)

    def shifted(self, k: int) -> "KakeyaPattern":
        """Pattern of the suffix stream (x_n) for n > k."""
        if k <= len(self.prefix):
            return KakeyaPattern(self.prefix[k:], self.cycle)
        offset = (k - len(self.prefix)) % len(self.cycle)
        return KakeyaPattern((), self.cycle[offset:] + self.cycle[:offset])


class TermStream(abc.ABC):
    """Exact generator of a convergent positive nonincreasing series."""

    @abc.abstractmethod
    def term(self, n: int) -> Fraction:
        """x_n for n >= 1."""

    @abc.abstractmethod
    def tail(self, n: int) -> Fraction:
        """r_n = sum of x_i over i > n, for n >= 0; r_0 is the full sum."""

    @property
    def descriptor(self) -> str:
        return type(self).__name__

    def terms(self, k: int) -> tuple[Fraction, ...]:
        return tuple(self.term(n) for n in range(1, k + 1))

    def suffix(self, k: int) -> "TermStream":
        if k < 0:
            raise ValueError("suffix shift must be nonnegative")
        if k == 0:
            return self
        return SuffixStream(self, k)

    def kakeya_pattern(self) -> Optional[KakeyaPattern]:
        """Exact comparison pattern when one is analytically available."""
        return None


class SuffixStream(TermStream):
    """View of the remainder series (x_n) for n > shift."""

    def __init__(self, base: TermStream, shift: int) -> None:
        if isinstance(base, SuffixStream):
            shift += base._shift
            base = base._base
        self._base = base
        self._shift = shift

    def term(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("term indices start at 1")
        return self._base.term(self._shift + n)

    def tail(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("tail indices start at 0")
        return self._base.tail(self._shift + n)

    def suffix(self, k: int) -> TermStream:
        if k < 0:
            raise ValueError("suffix shift must be nonnegative")
        if k == 0:
            return self
        return SuffixStream(self._base, self._shift + k)

    @property
    def descriptor(self) -> str:
        return f"{self._base.descriptor}[{self._shift}:]"

    def kakeya_pattern(self) -> Optional[KakeyaPattern]:
        pattern = self._base.kakeya_pattern()
        return pattern.shifted(self._shift) if pattern is not None else None


class GeometricTailStream(TermStream):
    """Finitely many explicit terms followed by an exact geometric tail.

    The workhorse for hand-built streams in tests and for planted examples:
    positivity and monotonicity are validated on construction, and every tail
    sum is a closed-form geometric sum.
    """

    def __init__(
        self,
        prefix: Iterable[RationalLike],
        start: RationalLike,
        ratio: RationalLike,
    ) -> None:
        self._prefix = tuple(rat(v) for v in prefix)
        self._start = rat(start)
        self._ratio = rat(ratio)
        if self._start <= 0:
            raise ValueError("geometric tail must have a positive first term")
        if not (0 < self._ratio < 1):
            raise ValueError("geometric ratio must lie in (0, 1)")
        for v in self._prefix:
            if v <= 0:
                raise ValueError("terms must be positive")
        for a, b in zip(self._prefix, self._prefix[1:]):
            if b > a:
                raise ValueError("terms must be nonincreasing")
        if self._prefix and self._start > self._prefix[-1]:
            raise ValueError("geometric tail must not exceed the last explicit term")
        self._geo_sum = self._start / (1 - self._ratio)

    def term(self, n: int) -> Fraction:
        if n < 1:
            raise ValueError("term indices start at 1")
        p = len(self._prefix)
        if n <= p:
            return self._prefix[n - 1]
        return self._start * self._ratio ** (n - p - 1)

    def tail(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("tail indices start at 0")
        p = len(self._prefix)
        if n >= p:
            return self._geo_sum * self._ratio ** (n - p)
        return sum(self._prefix[n:], Fraction(0)) + self._geo_sum

    @property
    def descriptor(self) -> str:
        return f"geometric(prefix={len(self._prefix)}, ratio={self._ratio})"

    def kakeya_pattern(self) -> KakeyaPattern:
        # In the geometric regime x_n / r_n = (1 - ratio) / ratio exactly,
        # so one comparison settles every index past the prefix.
        prefix = tuple(
            compare_sign(self.term(n), self.tail(n)) for n in range(1, len(self._prefix) + 1)
        )
        cycle = (compare_sign(1 - self._ratio, self._ratio),)
        return KakeyaPattern(prefix, cycle)


@dataclass(frozen=True)
class KakeyaSplit:
    """Indices up to a horizon split by the exact comparison x_n vs r_n."""

    horizon: int
    kakeya: tuple[int, ...]
    reversed_kakeya: tuple[int, ...]

    def __post_init__(self) -> None:
        merged = sorted(self.kakeya + self.reversed_kakeya)
        if merged != list(range(1, self.horizon + 1)):
            raise ValueError("split must partition 1..horizon")

    def to_json(self) -> dict:
        return {
            "horizon": self.horizon,
            "kakeya": list(self.kakeya),
            "reversed": list(self.reversed_kakeya),
        }


def kakeya_split(stream: TermStream, horizon: int) -> KakeyaSplit:
    """Classify each n <= horizon by the exact comparison x_n vs r_n."""
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    strict: list[int] = []
    weak: list[int] = []
    for n in range(1, horizon + 1):
        if stream.term(n) > stream.tail(n):
            strict.append(n)
        else:
            weak.append(n)
    return KakeyaSplit(horizon, tuple(strict), tuple(weak))


def group_convolve(a: PointSet, b: PointSet, cap: int = DEFAULT_CAP) -> PointSet:
    """Minkowski sumset {u + v} with multiplicities multiplied and summed.

    Commutative and associative; fails with CapacityError if the deduplicated
    result would exceed ``cap`` (never truncates silently).
    """
    if cap < 1:
        raise ValueError("cap must be positive")
    ca = a.counts if a.counts is not None else (1,) * len(a)
    cb = b.counts if b.counts is not None else (1,) * len(b)
    if len(a) * len(b) > max(64 * cap, 50_000_000):
        raise CapacityError("group_convolve", len(a) * len(b), cap)
    acc: dict[Fraction, int] = {}
    for u, cu in zip(a.values, ca):
        for v, cv in zip(b.values, cb):
            key = u + v
            acc[key] = acc.get(key, 0) + cu * cv
    if len(acc) > cap:
        raise CapacityError("group_convolve", len(acc), cap)
    values = tuple(sorted(acc))
    return PointSet(values, tuple(acc[v] for v in values))


def finite_subsums(stream: TermStream, k: int, cap: int = DEFAULT_CAP) -> PointSet:
    """All subsums of the first k terms, deduplicated with multiplicities.

    Multiplicities count the subsets of {1..k} achieving each value; they sum
    to 2^k.  Built incrementally, one term at a time.
    """
    if k < 0:
        raise ValueError("depth must be nonnegative")
    result = PointSet((Fraction(0),), (1,))
    for n in range(1, k + 1):
        step = PointSet.from_pairs([(Fraction(0), 1), (stream.term(n), 1)])
        result = group_convolve(result, step, cap)
    return result


def subsums_of_values(values: Iterable[RationalLike], cap: int = DEFAULT_CAP) -> PointSet:
    """Subsums of a finite multiset of values, with multiplicities."""
    result = PointSet((Fraction(0),), (1,))
    for v in values:
        step = PointSet.from_pairs([(Fraction(0), 1), (rat(v), 1)])
        result = group_convolve(result, step, cap)
    return result
