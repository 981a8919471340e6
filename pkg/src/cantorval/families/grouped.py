"""Streams assembled from consecutive groups of terms with periodic scaling.

Every explicit family here (multigeometric, generalized Ferens,
Marchwicki-Miska, Kyiv, repeated-term) produces its terms in groups, and
beyond a preperiod the whole group pattern repeats scaled by one exact
rational factor.  That single fact gives closed-form tails and an analytic
Kakeya comparison pattern, so subclasses only provide the group terms and
the scaling data.
"""

from __future__ import annotations

import abc
from fractions import Fraction
from typing import Optional

from ..series import KakeyaPattern, TermStream, compare_sign


class GroupedStream(TermStream):
    """Base for streams whose groups repeat geometrically.

    Subclass contract: ``group_terms(k)`` returns the terms of group k
    (k >= 1) in order, and for every k > ``preperiod`` the identity
    group_terms(k + period) == block_ratio * group_terms(k) holds exactly.
    The base class turns that into exact tails, global monotonicity
    validation, and a proof-carrying Kakeya pattern.

    Streams are observationally pure: the interior caches only memoize
    values that are deterministic functions of the index, so concurrent
    readers can at worst duplicate a computation, never observe a wrong one.
    """

    def __init__(self, preperiod: int, period: int, block_ratio: Fraction) -> None:
        if period < 1:
            raise ValueError("period must be positive")
        if not (0 < block_ratio < 1):
            raise ValueError("block ratio must lie in (0, 1)")
        self._preperiod = preperiod
        self._period = period
        self._block_ratio = block_ratio
        self._groups: dict[int, tuple[Fraction, ...]] = {}
        self._boundaries: list[int] = [0]  # N_0, N_1, ... cumulative term counts
        self._tail_cache: dict[int, Fraction] = {}
        self._validate()

    @abc.abstractmethod
    def group_terms(self, k: int) -> tuple[Fraction, ...]:
        """Terms of group k, in order, exact."""

    # -- derived structure ------------------------------------------------

    @property
    def preperiod(self) -> int:
        return self._preperiod

    @property
    def period(self) -> int:
        return self._period

    @property
    def block_ratio(self) -> Fraction:
        return self._block_ratio

    def _group(self, k: int) -> tuple[Fraction, ...]:
        got = self._groups.get(k)
        if got is None:
            got = tuple(self.group_terms(k))
            if not got:
                raise ValueError(f"group {k} is empty")
            self._groups[k] = got
        return got

    def boundary(self, k: int) -> int:
        """N_k, the index of the last term of group k (N_0 = 0)."""
        while len(self._boundaries) <= k:
            j = len(self._boundaries)
            self._boundaries.append(self._boundaries[-1] + len(self._group(j)))
        return self._boundaries[k]

    def group_sum(self, k: int) -> Fraction:
        return sum(self._group(k), Fraction(0))

    def group_tail(self, k: int) -> Fraction:
        """r at the group boundary: sum of all terms in groups > k."""
        if k < 0:
            raise ValueError("group index must be nonnegative")
        cached = self._tail_cache.get(k)
        if cached is not None:
            return cached
        if k < self._preperiod:
            value = self.group_sum(k + 1) + self.group_tail(k + 1)
        else:
            block = sum(
                (self.group_sum(j) for j in range(k + 1, k + self._period + 1)),
                Fraction(0),
            )
            value = block / (1 - self._block_ratio)
        self._tail_cache[k] = value
        return value

    def locate(self, n: int) -> tuple[int, int]:
        """(group k, offset within group) for term index n >= 1; offset >= 1."""
        if n < 1:
            raise ValueError("term indices start at 1")
        k = 1
        while self.boundary(k) < n:
            k += 1
        return k, n - self.boundary(k - 1)

    # -- TermStream interface ---------------------------------------------

    def term(self, n: int) -> Fraction:
        k, offset = self.locate(n)
        return self._group(k)[offset - 1]

    def tail(self, n: int) -> Fraction:
        if n < 0:
            raise ValueError("tail indices start at 0")
        if n == 0:
            return self.group_sum(1) + self.group_tail(1)
        k, offset = self.locate(n)
        rest = sum(self._group(k)[offset:], Fraction(0))
        return rest + self.group_tail(k)

    def kakeya_pattern(self) -> Optional[KakeyaPattern]:
        # Terms and tails both scale by the block ratio from one period of
        # groups to the next (beyond the preperiod), so the comparison signs
        # over a single period of groups repeat exactly.
        head = self.boundary(self._preperiod)
        cycle_end = self.boundary(self._preperiod + self._period)
        prefix = tuple(
            compare_sign(self.term(n), self.tail(n)) for n in range(1, head + 1)
        )
        cycle = tuple(
            compare_sign(self.term(n), self.tail(n)) for n in range(head + 1, cycle_end + 1)
        )
        return KakeyaPattern(prefix, cycle)

    # -- construction-time validation ---------------------------------------

    def _validate(self) -> None:
        """Exact positivity, monotonicity, and periodic-scaling checks.

        Checking groups up to preperiod + 2*period + 1 proves the properties
        for every index because later groups are exact scaled copies.
        """
        horizon = self._preperiod + 2 * self._period + 1
        previous_last: Optional[Fraction] = None
        for k in range(1, horizon + 1):
            terms = self._group(k)
            if any(t <= 0 for t in terms):
                raise ValueError(f"group {k} contains a nonpositive term")
            for a, b in zip(terms, terms[1:]):
                if b > a:
                    raise ValueError(f"group {k} is not nonincreasing")
            if previous_last is not None and terms[0] > previous_last:
                raise ValueError(f"terms increase across the boundary into group {k}")
            previous_last = terms[-1]
        for k in range(self._preperiod + 1, self._preperiod + self._period + 1):
            scaled = tuple(t * self._block_ratio for t in self._group(k))
            if self._group(k + self._period) != scaled:
                raise ValueError("groups do not scale by the declared block ratio")
