from fractions import Fraction as F

import pytest

from cantorval.exact import IntervalSet, interval, normalize
from cantorval.families import PeriodicSeq, geometric, mg_stream, multigeometric
from cantorval.series import CapacityError, GeometricTailStream, kakeya_split
from cantorval.uniqueness import (
    RepeatedTermSpec,
    collisions,
    multirep_outer,
    repeated_stream,
    repetition_report,
    representation_uniqueness_oracle,
    semifast_check,
    tail_collision_evidence,
    tail_sum_unique,
)

GN = mg_stream(multigeometric([3, 2], "1/4"))
DYADIC = mg_stream(multigeometric([1], "1/2"))
THIRDS = mg_stream(multigeometric([2], "1/3"))

# y_i = 2^(1-i) repeated (1, 2, 2, ...): 1, 1/2, 1/2, 1/4, 1/4, ...
HALVING = RepeatedTermSpec(geometric(1, "1/2"), PeriodicSeq((1,), (2,)))
SEMIFAST = RepeatedTermSpec(geometric("1/4", "1/4"), PeriodicSeq((), (2,)))


def planted_stream():
    """x_2 = x_3 + x_4 by construction (1, 1/2, 1/4, 1/4, then geometric)."""
    return GeometricTailStream([1, F(1, 2), F(1, 4), F(1, 4)], F(1, 8), F(1, 2))


def iset(*pairs):
    return normalize(interval(lo, hi) for lo, hi in pairs)


class TestCollisions:
    def test_repeated_halving_collides_at_three(self):
        report = repetition_report(repeated_stream(HALVING), 3)
        assert report.collisions.values == (F(1),)
        assert report.collisions.counts == (2,)
        (value, first, second) = report.witnesses[0]
        assert value == 1
        assert {first, second} == {(1,), (2, 3)}

    def test_gn_depth_four_is_collision_free(self):
        assert len(collisions(GN, 4)) == 0

    def test_depth_zero_empty(self):
        assert len(collisions(GN, 0)) == 0

    def test_capacity_guard(self):
        with pytest.raises(CapacityError):
            repetition_report(GN, 10, cap=100)

    def test_witness_sums_check_out(self):
        stream = planted_stream()
        report = repetition_report(stream, 4)
        # the planted identity x_2 = x_3 + x_4 propagates into 1 and 3/2
        assert report.collisions.values == (F(1, 2), F(1), F(3, 2))
        for value, first, second in report.witnesses:
            assert sum((stream.term(i) for i in first), F(0)) == value
            assert sum((stream.term(i) for i in second), F(0)) == value
            assert first != second

    def test_equal_term_swaps_are_not_collisions(self):
        # two copies of the same value: one multiset, no collision
        spec = RepeatedTermSpec(geometric("1/4", "1/4"), PeriodicSeq((), (2,)))
        assert len(collisions(repeated_stream(spec), 6)) == 0


class TestMultirepOuter:
    def test_dyadic_touching_point(self):
        got = multirep_outer(DYADIC, 1)
        assert got == IntervalSet((interval("1/2", "1/2"),))

    def test_middle_thirds_disjoint_bricks(self):
        assert multirep_outer(THIRDS, 1) == IntervalSet(())

    def test_gn_depth_two_overlap(self):
        assert multirep_outer(GN, 2) == iset(("3/4", "11/12"))

    def test_collisions_lie_in_outer_at_deeper_levels(self):
        stream = planted_stream()
        report = repetition_report(stream, 4)
        for j in range(4, 8):
            outer = multirep_outer(stream, j)
            for value in report.collisions.values:
                assert outer.contains_point(value)

    def test_outer_contains_collisions_at_own_level(self):
        stream = repeated_stream(HALVING)
        for k in (3, 4, 5, 6):
            outer = multirep_outer(stream, k)
            for value in collisions(stream, k).values:
                assert outer.contains_point(value)


class TestSemifast:
    def test_quartering_with_two_repeats_passes(self):
        got = semifast_check(SEMIFAST)
        assert got.semifast
        assert got.first_violation is None

    def test_halving_with_two_repeats_fails_immediately(self):
        spec = RepeatedTermSpec(geometric("1/2", "1/2"), PeriodicSeq((), (2,)))
        got = semifast_check(spec)
        assert not got.semifast
        assert got.first_violation == 1

    def test_plain_fast_convergence(self):
        spec = RepeatedTermSpec(geometric("1/3", "1/3"), PeriodicSeq((), (1,)))
        assert semifast_check(spec).semifast

    def test_proof_horizon_extends_reporting(self):
        got = semifast_check(SEMIFAST, proof_horizon=9)
        assert got.checked_through == 9
        assert got.semifast


class TestRepresentationOracle:
    def test_semifast_depth_four(self):
        assert representation_uniqueness_oracle(SEMIFAST, 4)

    def test_halving_collides_at_depth_three(self):
        spec = RepeatedTermSpec(geometric("1/2", "1/2"), PeriodicSeq((), (2,)))
        assert not representation_uniqueness_oracle(spec, 3)

    def test_depth_zero_vacuous(self):
        assert representation_uniqueness_oracle(SEMIFAST, 0)

    def test_capacity(self):
        with pytest.raises(CapacityError):
            representation_uniqueness_oracle(SEMIFAST, 10, cap=50)

    @pytest.mark.parametrize(
        "spec",
        [
            SEMIFAST,
            RepeatedTermSpec(geometric("1/3", "1/3"), PeriodicSeq((), (1,))),
            RepeatedTermSpec(geometric("1/5", "1/5"), PeriodicSeq((), (3,))),
            RepeatedTermSpec(geometric("1/10", "1/10"), PeriodicSeq((), (4,))),
            RepeatedTermSpec(geometric("1/8", "1/8"), PeriodicSeq((2,), (1, 2))),
        ],
    )
    def test_semifast_implies_oracle_at_feasible_depths(self, spec):
        assert semifast_check(spec).semifast
        for depth in (1, 2, 3, 4):
            assert representation_uniqueness_oracle(spec, depth)


class TestTailUniqueness:
    def test_gn_depth_two(self):
        assert tail_sum_unique(GN, 2)  # r_2 = 5/12 < x_2 = 1/2

    def test_dyadic_never_certifies(self):
        assert not any(tail_sum_unique(DYADIC, k) for k in range(1, 8))

    def test_middle_thirds_certifies(self):
        assert tail_sum_unique(THIRDS, 1)  # r_1 = 1/3 < x_1 = 2/3

    def test_gn_matches_kakeya_indices(self):
        split = kakeya_split(GN, 6)
        for k in range(1, 7):
            assert tail_sum_unique(GN, k) == (k in split.kakeya)


class TestTailCollisionEvidence:
    def test_semifast_tails_show_nothing(self):
        got = tail_collision_evidence(repeated_stream(SEMIFAST), [0, 1, 2, 3], inner_depth=8)
        assert got == ((0, False), (1, False), (2, False), (3, False))

    def test_planted_collision_found(self):
        got = dict(tail_collision_evidence(planted_stream(), [0, 1, 2], inner_depth=6))
        assert got[1]  # suffix(1) starts 1/2, 1/4, 1/4: collision at its depth 3
        assert got[0]  # the collision is visible from the start too

    def test_rejects_bad_depths(self):
        with pytest.raises(ValueError):
            tail_collision_evidence(planted_stream(), [-1])
        with pytest.raises(CapacityError):
            tail_collision_evidence(planted_stream(), [0], cap=10, inner_depth=12)


class TestRepeatedTermSpecValidation:
    def test_rejects_nondecreasing_base(self):
        with pytest.raises(ValueError):
            RepeatedTermSpec(
                geometric(1, "1/2").__class__((), (F(1), F(1)), F(1, 2)),
                PeriodicSeq((), (1,)),
            )

    def test_rejects_bad_counts(self):
        with pytest.raises(ValueError):
            RepeatedTermSpec(geometric(1, "1/2"), PeriodicSeq((), (0,)))

    def test_expanded_stream_shape(self):
        stream = repeated_stream(HALVING)
        assert stream.terms(5) == (1, F(1, 2), F(1, 2), F(1, 4), F(1, 4))

    def test_json_round_trip(self):
        from cantorval.families import spec_from_json

        assert spec_from_json(SEMIFAST.to_json()) == SEMIFAST
