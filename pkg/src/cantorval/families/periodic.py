"""Eventually-periodic integer sequences and block-geometric rational scales.

Family parameters are restricted to these two shapes so that every infinite
tail sum in the package is a finite exact computation: one period block plus
a geometric series over block repetitions.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Callable

from ..exact import rat, rat_str, RationalLike


@dataclass(frozen=True)
class PeriodicSeq:
    """Sequence with an explicit prefix followed by a repeating period.

    Indexing is 1-based to match series indexing throughout the package.
    """

    pre: tuple = ()
    period: tuple = ()

    def __post_init__(self) -> None:
        object.__setattr__(self, "pre", tuple(self.pre))
        object.__setattr__(self, "period", tuple(self.period))
        if not self.period:
            raise ValueError("period must be nonempty")

    def value(self, n: int):
        if n < 1:
            raise ValueError("indices start at 1")
        if n <= len(self.pre):
            return self.pre[n - 1]
        return self.period[(n - len(self.pre) - 1) % len(self.period)]

    def __getitem__(self, n: int):
        return self.value(n)

    @property
    def preperiod_length(self) -> int:
        return len(self.pre)

    @property
    def period_length(self) -> int:
        return len(self.period)

    def values(self, k: int) -> tuple:
        return tuple(self.value(n) for n in range(1, k + 1))

    def to_json(self) -> dict:
        return {"pre": list(self.pre), "period": list(self.period)}

    @staticmethod
    def from_json(doc: dict) -> "PeriodicSeq":
        return PeriodicSeq(tuple(doc.get("pre", ())), tuple(doc["period"]))


def constant(value) -> PeriodicSeq:
    return PeriodicSeq((), (value,))


@dataclass(frozen=True)
class BlockGeometric:
    """Positive rationals: prefix, then one block scaled geometrically.

    value(i) = pre[i-1] for i <= P, and block[j] * ratio^c for
    i = P + c*L + j + 1 (0 <= j < L).  Tail sums are exact geometric sums of
    block totals, which is what makes every family tail computable.
    """

    pre: tuple[Fraction, ...]
    block: tuple[Fraction, ...]
    ratio: Fraction

    def __post_init__(self) -> None:
        object.__setattr__(self, "pre", tuple(rat(v) for v in self.pre))
        object.__setattr__(self, "block", tuple(rat(v) for v in self.block))
        object.__setattr__(self, "ratio", rat(self.ratio))
        if not self.block:
            raise ValueError("block must be nonempty")
        if not (0 < self.ratio < 1):
            raise ValueError("ratio must lie in (0, 1)")
        if any(v <= 0 for v in self.pre + self.block):
            raise ValueError("values must be positive")

    @property
    def preperiod_length(self) -> int:
        return len(self.pre)

    @property
    def block_length(self) -> int:
        return len(self.block)

    def value(self, i: int) -> Fraction:
        if i < 1:
            raise ValueError("indices start at 1")
        p = len(self.pre)
        if i <= p:
            return self.pre[i - 1]
        t = i - p - 1
        c, j = divmod(t, len(self.block))
        return self.block[j] * self.ratio**c

    def __getitem__(self, i: int) -> Fraction:
        return self.value(i)

    def tail(self, k: int) -> Fraction:
        """Exact sum of value(i) over i > k."""
        if k < 0:
            raise ValueError("tail indices start at 0")
        p = len(self.pre)
        if k < p:
            return sum(self.pre[k:], Fraction(0)) + self.tail(p)
        block_sum = sum(self.block, Fraction(0))
        c, j = divmod(k - p, len(self.block))
        rest = sum(self.block[j:], Fraction(0)) * self.ratio**c
        return rest + block_sum * self.ratio ** (c + 1) / (1 - self.ratio)

    def is_strictly_decreasing(self) -> bool:
        """Exact check over one period boundary proves it for all indices."""
        probe = len(self.pre) + 2 * len(self.block) + 1
        seq = [self.value(i) for i in range(1, probe + 1)]
        return all(a > b for a, b in zip(seq, seq[1:]))

    def to_json(self) -> dict:
        return {
            "pre": [rat_str(v) for v in self.pre],
            "block": [rat_str(v) for v in self.block],
            "ratio": rat_str(self.ratio),
        }

    @staticmethod
    def from_json(doc: dict) -> "BlockGeometric":
        return BlockGeometric(
            tuple(rat(v) for v in doc.get("pre", ())),
            tuple(rat(v) for v in doc["block"]),
            rat(doc["ratio"]),
        )


def geometric(start: RationalLike, ratio: RationalLike) -> BlockGeometric:
    """Plain geometric scale start, start*ratio, start*ratio^2, ..."""
    return BlockGeometric((), (rat(start),), rat(ratio))


def weighted_block_geometric(
    coefficient: Callable[[int], RationalLike],
    scale: Callable[[int], Fraction],
    preperiod: int,
    period: int,
    block_ratio: Fraction,
) -> BlockGeometric:
    """BlockGeometric for w_i = coefficient(i) * scale(i).

    Valid whenever coefficient has period dividing ``period`` beyond
    ``preperiod`` and scale satisfies scale(i + period) = block_ratio *
    scale(i) there; then w inherits exactly the same block structure, and
    w.tail gives exact weighted tail sums.
    """
    pre = tuple(rat(coefficient(i)) * scale(i) for i in range(1, preperiod + 1))
    block = tuple(
        rat(coefficient(i)) * scale(i)
        for i in range(preperiod + 1, preperiod + period + 1)
    )
    return BlockGeometric(pre, block, block_ratio)


def align_periods(*seqs: PeriodicSeq) -> tuple[int, int]:
    """(preperiod, period) valid simultaneously for all given sequences."""
    pre = max(s.preperiod_length for s in seqs)
    per = lcm(*(s.period_length for s in seqs))
    return pre, per
