from fractions import Fraction as F

import pytest

from cantorval.classify import (
    Tier,
    Verdict,
    classify,
    resolve_stream,
    reversed_kakeya_dichotomy,
)
from cantorval.engine import iterate
from cantorval.families import (
    GFSpec,
    KyivSpec,
    MMSpec,
    PeriodicSeq,
    geometric,
    multigeometric,
)
from cantorval.series import GeometricTailStream, TermStream, kakeya_split
from cantorval.uniqueness import RepeatedTermSpec

DYADIC = multigeometric([1], "1/2")
THIRDS = multigeometric([2], "1/3")
GN = multigeometric([3, 2], "1/4")
FERENS = multigeometric([5, 4, 3, 2], "1/10")
FULL = multigeometric([3, 2, 1], "1/4")
GF_DECIMAL = GFSpec(PeriodicSeq((), (2,)), PeriodicSeq((), (4,)), geometric("1/10", "1/10"))
MM_ONES = MMSpec(PeriodicSeq((), (1,)))
KYIV_48 = KyivSpec(PeriodicSeq((), (4,)), PeriodicSeq((), (8,)))
SEMIFAST = RepeatedTermSpec(geometric("1/4", "1/4"), PeriodicSeq((), (2,)))


class PatternlessStream(TermStream):
    """Wrapper that hides the analytic pattern (forces heuristic paths)."""

    def __init__(self, base: TermStream) -> None:
        self._base = base

    def term(self, n):
        return self._base.term(n)

    def tail(self, n):
        return self._base.tail(n)


class TestClassify:
    def test_dyadic_multi_interval_proved(self):
        got = classify(DYADIC, horizon=10)
        assert got.verdict is Verdict.MULTI_INTERVAL
        assert got.tier is Tier.PROVED

    def test_middle_thirds_cantor_proved(self):
        got = classify(THIRDS, horizon=10)
        assert got.verdict is Verdict.CANTOR
        assert got.tier is Tier.PROVED

    def test_gn_cantorval_never_unknown(self):
        got = classify(GN, horizon=10)
        assert got.verdict is Verdict.CANTORVAL
        assert got.verdict is not Verdict.UNKNOWN
        assert got.witnesses["tight_trend"]["interval_evidence"]
        assert got.witnesses["gap_count"] > 0

    def test_ferens_cantorval_certified(self):
        got = classify(FERENS, horizon=8)
        assert got.verdict is Verdict.CANTORVAL
        assert got.tier is Tier.CERTIFIED
        assert got.witnesses["certificate"]["verified"]
        # a certified Cantorval carries both witness halves: the interior
        # certificate and a concrete nonempty gap list
        assert got.witnesses["gaps"]
        assert got.witnesses["certificate"]["parts"] == [["2/9", "4/3"]]

    def test_full_interval_spec_multi_interval_proved(self):
        got = classify(FULL, horizon=8)
        assert got.verdict is Verdict.MULTI_INTERVAL
        assert got.tier is Tier.PROVED

    def test_family_proofs(self):
        for spec in (GF_DECIMAL, MM_ONES, KYIV_48):
            got = classify(spec, horizon=6)
            assert got.verdict is Verdict.CANTORVAL
            assert got.tier is Tier.PROVED

    def test_separated_blocks_certify_cantor(self):
        # position 1 has x < r (5 < 4 + 2 + r_0), so neither classical
        # theorem applies, but all block subsum gaps exceed r_0 = 11/12:
        # the group bricks are pairwise disjoint and recur self-similarly.
        spec = multigeometric([5, 4, 2], "1/13")
        got = classify(spec, horizon=8)
        assert got.verdict is Verdict.CANTOR
        assert got.tier is Tier.CERTIFIED
        assert "separated_blocks" in got.witnesses
        pattern = resolve_stream(spec)[0].kakeya_pattern()
        assert "<" in pattern.cycle and ">" in pattern.cycle

    def test_semifast_repeated_terms_cantor_proved(self):
        got = classify(SEMIFAST, horizon=6)
        assert got.verdict is Verdict.CANTOR
        assert got.tier is Tier.PROVED
        assert got.witnesses["semifast"]["semifast"]

    def test_invalid_kyiv_falls_through_to_stream_analysis(self):
        bad = KyivSpec(PeriodicSeq((), (3,)), PeriodicSeq((), (5,)))
        got = classify(bad, horizon=8)
        assert got.witnesses.get("family") != "kyiv"

    def test_verdicts_stable_under_horizon_increase(self):
        for spec in (DYADIC, THIRDS, GN, FERENS, KYIV_48):
            a = classify(spec, horizon=8)
            b = classify(spec, horizon=9)
            assert (a.verdict, a.tier) == (b.verdict, b.tier)

    def test_proved_multi_interval_iterations_stabilize(self):
        stream, _ = resolve_stream(DYADIC)
        split = kakeya_split(stream, 9)
        assert split.kakeya == ()
        reports = [iterate(stream, n) for n in range(0, 10)]
        for n in range(1, 10):
            assert reports[n - 1].iteration == reports[n].iteration

    def test_proved_cantor_gaps_multiply(self):
        stream, _ = resolve_stream(THIRDS)
        for n in range(1, 9):
            parts_now = len(iterate(stream, n).iteration.parts)
            parts_next = len(iterate(stream, n + 1).iteration.parts)
            assert parts_next == 2 * parts_now

    def test_heuristic_verdict_carries_horizon(self):
        got = classify(GN, horizon=9)
        assert got.tier is Tier.HEURISTIC
        assert got.horizon == 9
        assert got.witnesses["kakeya"]["horizon"] == 9

    def test_patternless_stream_heuristics(self):
        stream = PatternlessStream(resolve_stream(GN)[0])
        got = classify(stream, horizon=10)
        assert got.verdict is Verdict.CANTORVAL
        assert got.tier is Tier.HEURISTIC

    def test_rejects_bad_horizon(self):
        with pytest.raises(ValueError):
            classify(GN, horizon=0)

    def test_json_shape(self):
        doc = classify(GN, horizon=6).to_json()
        assert set(doc) == {"verdict", "tier", "horizon", "witnesses"}
        assert doc["verdict"] == "Cantorval"


class TestDichotomy:
    def test_dyadic_multi_interval(self):
        got = reversed_kakeya_dichotomy(DYADIC, horizon=8)
        assert got.verdict is Verdict.MULTI_INTERVAL
        assert got.tier is Tier.PROVED

    def test_middle_thirds_cantor(self):
        got = reversed_kakeya_dichotomy(THIRDS, horizon=8)
        assert got.verdict is Verdict.CANTOR
        assert got.tier is Tier.PROVED

    def test_equality_prefix_then_strict_is_cantor(self):
        # x_n = r_n for n <= 3, x_n > r_n afterwards
        stream = GeometricTailStream([6, 3, F(3, 2)], 1, F(1, 3))
        split = kakeya_split(stream, 8)
        assert split.reversed_kakeya == (1, 2, 3)
        got = reversed_kakeya_dichotomy(stream, horizon=8)
        assert got.verdict is Verdict.CANTOR
        assert got.tier is Tier.PROVED

    def test_refuses_when_hypothesis_provably_fails(self):
        with pytest.raises(ValueError):
            reversed_kakeya_dichotomy(GN, horizon=8)

    def test_refuses_without_assertion_or_proof(self):
        stream = PatternlessStream(resolve_stream(DYADIC)[0])
        with pytest.raises(ValueError):
            reversed_kakeya_dichotomy(stream, horizon=8)

    def test_asserted_heuristic_paths(self):
        dyadic_like = PatternlessStream(resolve_stream(DYADIC)[0])
        got = reversed_kakeya_dichotomy(dyadic_like, horizon=8, asserted_finite=True)
        assert got.verdict is Verdict.MULTI_INTERVAL
        assert got.tier is Tier.HEURISTIC

        thirds_like = PatternlessStream(resolve_stream(THIRDS)[0])
        got = reversed_kakeya_dichotomy(thirds_like, horizon=8, asserted_finite=True)
        assert got.verdict is Verdict.CANTOR
        assert got.tier is Tier.HEURISTIC
