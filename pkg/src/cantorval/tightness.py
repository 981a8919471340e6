"""Tight decompositions of finite point sets.

A finite set splits uniquely into maximal blocks whose consecutive gaps do
not exceed a threshold eps; the largest block diameter, evaluated at
eps = r_n over the subsum sets F_n, is the quantity whose positive limit
characterizes achievement sets containing an interval.  All comparisons are
exact: a gap equal to eps stays inside a block, anything larger splits.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .exact import PointSet, rat, rat_str, RationalLike
from .series import DEFAULT_CAP, TermStream, group_convolve


@dataclass(frozen=True)
class TightDecomposition:
    """Maximal eps-tight blocks of a point set, as index ranges.

    blocks[i] = (start, end) are inclusive indices into the underlying
    values; diameters[i] is the exact diameter of that block.
    """

    epsilon: Fraction
    blocks: tuple[tuple[int, int], ...]
    diameters: tuple[Fraction, ...]

    @property
    def max_diameter(self) -> Fraction:
        return max(self.diameters)

    def __len__(self) -> int:
        return len(self.blocks)


def tight_decompose(points: PointSet, eps: RationalLike) -> TightDecomposition:
    """Split at every gap strictly exceeding eps (single left-to-right sweep)."""
    e = rat(eps)
    if e < 0:
        raise ValueError("eps must be nonnegative")
    if len(points) == 0:
        raise ValueError("cannot decompose an empty point set")
    blocks: list[tuple[int, int]] = []
    start = 0
    values = points.values
    for i in range(1, len(values)):
        if values[i] - values[i - 1] > e:
            blocks.append((start, i - 1))
            start = i
    blocks.append((start, len(values) - 1))
    diameters = tuple(values[b] - values[a] for a, b in blocks)
    return TightDecomposition(epsilon=e, blocks=tuple(blocks), diameters=diameters)


def max_tight_diameter(points: PointSet, eps: RationalLike) -> Fraction:
    """Largest diameter among the maximal eps-tight blocks."""
    return tight_decompose(points, eps).max_diameter


@dataclass(frozen=True)
class TightTrend:
    """Exact values of the largest r_n-tight block diameter of F_n.

    ``interval_evidence`` is finite-horizon evidence only (the true criterion
    is a limit): the final value is positive and the values over the last
    third of the horizon are bounded away from zero.
    """

    rows: tuple[tuple[int, Fraction], ...]
    interval_evidence: bool

    @property
    def depth(self) -> int:
        return self.rows[-1][0]

    @property
    def final(self) -> Fraction:
        return self.rows[-1][1]

    def to_json(self) -> dict:
        return {
            "rows": [[n, rat_str(v)] for n, v in self.rows],
            "interval_evidence": self.interval_evidence,
        }

    def csv_rows(self) -> list[str]:
        return [f"{n},{rat_str(v)}" for n, v in self.rows]


def tight_trend(stream: TermStream, depth: int, cap: int = DEFAULT_CAP) -> TightTrend:
    """Largest r_n-tight block diameter of F_n for n = 1..depth."""
    if depth < 1:
        raise ValueError("depth must be at least 1")
    rows: list[tuple[int, Fraction]] = []
    subsums = PointSet((Fraction(0),), (1,))
    for n in range(1, depth + 1):
        step = PointSet.from_pairs([(Fraction(0), 1), (stream.term(n), 1)])
        subsums = group_convolve(subsums, step, cap)
        rows.append((n, max_tight_diameter(subsums, stream.tail(n))))
    window_start = max(1, (2 * depth) // 3 + 1)
    window = [v for n, v in rows if n >= window_start]
    evidence = rows[-1][1] > 0 and all(v > 0 for v in window)
    return TightTrend(rows=tuple(rows), interval_evidence=evidence)
