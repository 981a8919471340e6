"""Topological classification of achievement sets with explicit proof tiers.

Every achievement set of a convergent positive series is a finite set, a
multi-interval set, a Cantor set, or a Cantorval.  The classifier reports
the verdict together with how it knows:

* Proved: a family-analytic argument (validated family construction, or an
  exact eventually-periodic Kakeya comparison pattern feeding the classical
  term-vs-tail theorems).
* Certified: an exact finite witness (a verified interior certificate plus
  an infinite Kakeya pattern, or separated block bricks).
* Heuristic: finite-horizon evidence only; always carries the horizon.

Unknown is an honest first-class verdict, not an error.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass, field
from typing import Optional, Union

from .engine import certify_interior, iterate
from .exact import rat_str
from .families.ferens import GFSpec, gf_stream, gf_validate
from .families.kyiv import KyivSpec, kyiv_stream, kyiv_validate
from .families.marchwicki import MMSpec, mm_stream
from .families.multigeometric import MultigeometricSpec, mg_block, mg_stream
from .series import (
    DEFAULT_CAP,
    GREATER,
    CapacityError,
    KakeyaPattern,
    TermStream,
    kakeya_split,
)
from .tightness import tight_trend
from .uniqueness import RepeatedTermSpec, repeated_stream, semifast_check

Subject = Union[
    TermStream, MultigeometricSpec, GFSpec, MMSpec, KyivSpec, RepeatedTermSpec
]


class Verdict(enum.Enum):
    FINITE = "Finite"
    MULTI_INTERVAL = "MultiInterval"
    CANTOR = "Cantor"
    CANTORVAL = "Cantorval"
    UNKNOWN = "Unknown"


class Tier(enum.Enum):
    PROVED = "Proved"
    CERTIFIED = "Certified"
    HEURISTIC = "Heuristic"


@dataclass(frozen=True)
class Classification:
    verdict: Verdict
    tier: Tier
    horizon: int
    witnesses: dict = field(default_factory=dict)

    def to_json(self) -> dict:
        return {
            "verdict": self.verdict.value,
            "tier": self.tier.value,
            "horizon": self.horizon,
            "witnesses": self.witnesses,
        }


def resolve_stream(subject: Subject) -> tuple[TermStream, Optional[object]]:
    """(stream, spec-or-None) for any classifiable subject."""
    if isinstance(subject, TermStream):
        return subject, None
    if isinstance(subject, MultigeometricSpec):
        return mg_stream(subject), subject
    if isinstance(subject, GFSpec):
        return gf_stream(subject), subject
    if isinstance(subject, MMSpec):
        return mm_stream(subject), subject
    if isinstance(subject, KyivSpec):
        return kyiv_stream(subject), subject
    if isinstance(subject, RepeatedTermSpec):
        return repeated_stream(subject), subject
    raise TypeError(f"cannot classify {subject!r}")


def _pattern_witness(pattern: KakeyaPattern) -> dict:
    return {"prefix": list(pattern.prefix), "cycle": list(pattern.cycle)}


def _pattern_classification(
    pattern: KakeyaPattern, horizon: int
) -> Optional[Classification]:
    """Verdicts provable from the exact comparison pattern alone.

    Finitely many Kakeya indices force a multi-interval set (and conversely);
    finitely many reversed indices force a Cantor set; and when x_n < r_n
    happens only finitely often, the set is multi-interval if the comparisons
    are eventually all equalities and Cantor otherwise.
    """
    witness = {"kakeya_pattern": _pattern_witness(pattern)}
    if pattern.kakeya_is_finite:
        return Classification(Verdict.MULTI_INTERVAL, Tier.PROVED, horizon, witness)
    if pattern.strict_reversed_is_finite:
        # Cycle has '>' (otherwise the previous branch fired) and no '<'.
        return Classification(Verdict.CANTOR, Tier.PROVED, horizon, witness)
    return None


def _family_classification(spec, horizon: int) -> Optional[Classification]:
    if isinstance(spec, KyivSpec):
        report = kyiv_validate(spec)
        if report.passed:
            return Classification(
                Verdict.CANTORVAL,
                Tier.PROVED,
                horizon,
                {"family": "kyiv", "validation": report.to_json()},
            )
    if isinstance(spec, GFSpec):
        report = gf_validate(spec)
        if report.passed:
            return Classification(
                Verdict.CANTORVAL,
                Tier.PROVED,
                horizon,
                {"family": "gf", "validation": report.to_json()},
            )
    if isinstance(spec, MMSpec):
        return Classification(
            Verdict.CANTORVAL,
            Tier.PROVED,
            horizon,
            {"family": "mm", "gaps": spec.gaps.to_json()},
        )
    if isinstance(spec, RepeatedTermSpec):
        report = semifast_check(spec)
        if report.semifast:
            return Classification(
                Verdict.CANTOR,
                Tier.PROVED,
                horizon,
                {"family": "repeated", "semifast": report.to_json()},
            )
    return None


def _separated_blocks(spec: MultigeometricSpec) -> Optional[dict]:
    """Witness that consecutive block subsums are separated by more than r_0.

    Then the group-level bricks are pairwise disjoint and the separation
    recurs inside every brick by self-similarity, so the attractor is
    totally disconnected: a Cantor set.
    """
    block = mg_block(spec)
    gaps = block.gaps()
    if gaps and min(gaps) > spec.total:
        return {
            "block": [rat_str(v) for v in block.values],
            "min_gap": rat_str(min(gaps)),
            "r0": rat_str(spec.total),
        }
    return None


def classify(
    subject: Subject,
    horizon: int = 12,
    cap: int = DEFAULT_CAP,
    budget: int = 16,
    seed_depth: int = 2,
) -> Classification:
    """Decide the topological type at the strongest honest tier.

    Family-analytic proofs are tried first, then exact pattern proofs, then
    exact finite certificates (multigeometric only), then finite-horizon
    heuristics.  Certified verdicts do not depend on the horizon, so they are
    stable under horizon increase.
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    stream, spec = resolve_stream(subject)

    from_family = _family_classification(spec, horizon) if spec is not None else None
    if from_family is not None:
        return from_family

    pattern = stream.kakeya_pattern()
    if pattern is not None:
        from_pattern = _pattern_classification(pattern, horizon)
        if from_pattern is not None:
            return from_pattern

    if isinstance(spec, MultigeometricSpec):
        separated = _separated_blocks(spec)
        if separated is not None:
            return Classification(
                Verdict.CANTOR, Tier.CERTIFIED, horizon, {"separated_blocks": separated}
            )
        try:
            certificate = certify_interior(spec, seed_depth, budget, cap=cap)
        except CapacityError:
            certificate = None
        if (
            certificate is not None
            and certificate.verified
            and certificate.interior_measure > 0
            and pattern is not None
            and GREATER in pattern.cycle
        ):
            # Interval inside the attractor plus infinitely many Kakeya
            # indices (each strict index splits bricks at its level, and the
            # pattern repeats forever) rules out every type but Cantorval.
            stream_for_gaps = mg_stream(spec)
            first_strict = next(
                n for n in range(1, len(pattern.prefix) + len(pattern.cycle) + 1)
                if pattern.comparison_at(n) == GREATER
            )
            gap_witness = iterate(stream_for_gaps, first_strict, cap).gaps()
            return Classification(
                Verdict.CANTORVAL,
                Tier.CERTIFIED,
                horizon,
                {
                    "certificate": certificate.to_json(),
                    "kakeya_pattern": _pattern_witness(pattern),
                    "gaps": gap_witness.to_pairs(),
                },
            )

    # Heuristic tier: exact finite-horizon measurements, honest about reach.
    trend = tight_trend(stream, horizon, cap)
    report = iterate(stream, horizon, cap)
    split = kakeya_split(stream, horizon)
    witness = {
        "tight_trend": trend.to_json(),
        "gap_count": report.gap_count,
        "kakeya": split.to_json(),
    }
    if pattern is not None:
        witness["kakeya_pattern"] = _pattern_witness(pattern)
    kakeya_infinite = (
        GREATER in pattern.cycle if pattern is not None else bool(split.kakeya)
    )
    if trend.interval_evidence and report.gap_count > 0 and kakeya_infinite:
        return Classification(Verdict.CANTORVAL, Tier.HEURISTIC, horizon, witness)
    if trend.interval_evidence and report.gap_count == 0:
        return Classification(Verdict.MULTI_INTERVAL, Tier.HEURISTIC, horizon, witness)
    if trend.final == 0:
        return Classification(Verdict.CANTOR, Tier.HEURISTIC, horizon, witness)
    return Classification(Verdict.UNKNOWN, Tier.HEURISTIC, horizon, witness)


def reversed_kakeya_dichotomy(
    subject: Subject, horizon: int = 12, asserted_finite: bool = False
) -> Classification:
    """Multi-interval vs Cantor for series with finitely many n: x_n < r_n.

    With an exact pattern the hypothesis is proved or refuted outright; a
    bare stream is only analyzed when the caller asserts the hypothesis, and
    then the verdict is heuristic (horizon-limited).
    """
    if horizon < 1:
        raise ValueError("horizon must be at least 1")
    stream, _ = resolve_stream(subject)
    pattern = stream.kakeya_pattern()
    if pattern is not None:
        if not pattern.strict_reversed_is_finite:
            raise ValueError(
                "the stream provably has infinitely many indices with x_n < r_n"
            )
        witness = {"kakeya_pattern": _pattern_witness(pattern)}
        if pattern.eventually_equal:
            return Classification(Verdict.MULTI_INTERVAL, Tier.PROVED, horizon, witness)
        return Classification(Verdict.CANTOR, Tier.PROVED, horizon, witness)
    if not asserted_finite:
        raise ValueError(
            "refusing to run without a pattern proof or an explicit assertion "
            "that {n : x_n < r_n} is finite"
        )
    comparisons = [
        (n, stream.term(n), stream.tail(n)) for n in range(1, horizon + 1)
    ]
    last_strictly_below = max(
        (n for n, x, r in comparisons if x < r), default=0
    )
    beyond = [(n, x, r) for n, x, r in comparisons if n > last_strictly_below]
    witness = {
        "horizon": horizon,
        "last_strictly_below": last_strictly_below,
        "asserted": True,
    }
    if all(x == r for _, x, r in beyond):
        return Classification(Verdict.MULTI_INTERVAL, Tier.HEURISTIC, horizon, witness)
    return Classification(Verdict.CANTOR, Tier.HEURISTIC, horizon, witness)
