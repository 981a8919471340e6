"""Standardness ratios: certified interval length over tail length.

For each non-multigeometric family the achievement set of every suffix
contains an interval of exact closed-form length; dividing by the boundary
tail gives the ratio whose positive limit makes the Cantorval "standard"
(and hence gives boundary measure zero).  With eventually periodic
parameters the ratio sequence is itself eventually periodic, so its limsup
is an exact maximum over one period.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from ..exact import rat_str
from .ferens import GFSpec, gf_weighted_tail
from .kyiv import KyivSpec, kyiv_values
from .marchwicki import MMSpec, mm_scale
from .periodic import weighted_block_geometric


@dataclass(frozen=True)
class StandardnessResult:
    """Ratio at one index plus its exact limsup over the repeating part."""

    family: str
    index: int
    at_index: Fraction
    limit: Fraction

    def to_json(self) -> dict:
        return {
            "family": self.family,
            "index": self.index,
            "at_index": rat_str(self.at_index),
            "limit": rat_str(self.limit),
        }


def _gf_ratio(spec: GFSpec, k: int) -> Fraction:
    num = gf_weighted_tail(spec, lambda i: spec.s(i) - spec.m[i], k)
    den = gf_weighted_tail(spec, lambda i: spec.s(i) + spec.m[i], k)
    return num / den


def _mm_ratio(spec: MMSpec, k: int) -> Fraction:
    pre = spec.group_preperiod + 1
    period = spec.group_period
    num = weighted_block_geometric(
        lambda i: 3 * 2 ** spec.gaps[i] - 1,
        lambda i: mm_scale(spec, i),
        pre,
        period,
        spec.block_ratio,
    )
    den = weighted_block_geometric(
        lambda i: 5 * 2 ** spec.gaps[i] - 1,
        lambda i: mm_scale(spec, i),
        pre,
        period,
        spec.block_ratio,
    )
    return num.tail(k) / den.tail(k)


def _kyiv_ratio(spec: KyivSpec, k: int) -> Fraction:
    vals = kyiv_values(spec, k)
    pre = spec.group_preperiod + 1
    period = spec.group_period
    probe = pre + 1
    block_ratio = kyiv_values(spec, probe + period).a / kyiv_values(spec, probe).a
    weighted = weighted_block_geometric(
        lambda i: spec.s[i] - spec.m[i] + 6 - Fraction(4, spec.m[i]),
        lambda i: kyiv_values(spec, i).a,
        pre,
        period,
        block_ratio,
    )
    interval_length = weighted.tail(k)
    return spec.m[k] * interval_length / (2 * vals.a)


def standardness_ratio(spec, k: int) -> StandardnessResult:
    """Exact interval-over-tail ratio at index k, with its periodic limsup.

    Defined for the generalized Ferens, Marchwicki-Miska, and Kyiv families,
    whose suffix interval lengths have closed forms; other inputs are
    rejected.
    """
    if k < 1:
        raise ValueError("indices start at 1")
    if isinstance(spec, GFSpec):
        family, ratio_at = "gf", _gf_ratio
        pre, period = spec.group_preperiod, spec.group_period
    elif isinstance(spec, MMSpec):
        family, ratio_at = "mm", _mm_ratio
        pre, period = spec.group_preperiod + 1, spec.group_period
    elif isinstance(spec, KyivSpec):
        family, ratio_at = "kyiv", _kyiv_ratio
        pre, period = spec.group_preperiod + 1, spec.group_period
    else:
        raise ValueError(
            "standardness ratio has a closed form only for gf, mm, and kyiv specs"
        )
    at_index = ratio_at(spec, k)
    limit = max(ratio_at(spec, j) for j in range(pre + 1, pre + period + 1))
    return StandardnessResult(family=family, index=k, at_index=at_index, limit=limit)
