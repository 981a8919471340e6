from fractions import Fraction as F

import pytest
from hypothesis import given, settings, strategies as st

from cantorval.engine import (
    certify_interior,
    hutchinson,
    iterate,
    longest_component_trend,
    measure_bounds,
)
from cantorval.exact import EMPTY_SET, Interval, IntervalSet, interval, normalize
from cantorval.families import (
    KyivSpec,
    PeriodicSeq,
    kyiv_stream,
    mg_stream,
    multigeometric,
)
from cantorval.series import kakeya_split

from oracles import brute_bricks, brute_subsums

DYADIC = multigeometric([1], "1/2")
THIRDS = multigeometric([2], "1/3")
GN = multigeometric([3, 2], "1/4")
FERENS = multigeometric([5, 4, 3, 2], "1/10")
FULL = multigeometric([3, 2, 1], "1/4")
KYIV_48 = KyivSpec(PeriodicSeq((), (4,)), PeriodicSeq((), (8,)))


def iset(*pairs):
    return normalize(interval(lo, hi) for lo, hi in pairs)


class TestIterate:
    def test_dyadic_first_iteration_is_full_interval(self):
        rep = iterate(mg_stream(DYADIC), 1)
        assert rep.iteration == iset((0, 1))
        assert rep.brick_count == 2
        assert rep.gap_count == 0

    def test_gn_depth_two(self):
        rep = iterate(mg_stream(GN), 2)
        assert rep.iteration == iset((0, "5/12"), ("1/2", "7/6"), ("5/4", "5/3"))
        assert rep.measure == F(3, 2)
        assert rep.gap_count == 2
        assert rep.longest_component == interval("1/2", "7/6")
        assert rep.gaps() == iset(("5/12", "1/2"), ("7/6", "5/4"))

    def test_middle_thirds_first_step(self):
        rep = iterate(mg_stream(THIRDS), 1)
        assert rep.iteration == iset((0, "1/3"), ("2/3", 1))
        assert rep.measure == F(2, 3)

    def test_depth_zero_is_the_full_brick(self):
        rep = iterate(mg_stream(GN), 0)
        assert rep.iteration == iset((0, "5/3"))

    @pytest.mark.parametrize("depth", range(0, 11))
    def test_matches_brute_force_bricks(self, depth):
        stream = mg_stream(GN)
        rep = iterate(stream, depth)
        expected = brute_bricks(sorted(brute_subsums(stream.terms(depth))), stream.tail(depth))
        assert [(p.lo, p.hi) for p in rep.iteration.parts] == expected

    @pytest.mark.parametrize(
        "spec", [DYADIC, THIRDS, GN, FERENS], ids=["dyadic", "thirds", "gn", "ferens"]
    )
    def test_nesting_and_measure_monotone(self, spec):
        stream = mg_stream(spec)
        reports = [iterate(stream, n) for n in range(0, 10)]
        for prev, cur in zip(reports, reports[1:]):
            assert cur.iteration.is_subset_of(prev.iteration)
            assert cur.measure <= prev.measure
            assert min(p.length for p in cur.iteration.parts) >= stream.tail(cur.n)

    @pytest.mark.parametrize(
        "stream_maker",
        [lambda: mg_stream(GN), lambda: kyiv_stream(KYIV_48)],
        ids=["gn", "kyiv"],
    )
    def test_kakeya_iteration_coupling(self, stream_maker):
        # I_{n-1} = I_n iff n is a reversed index; equivalently the step to
        # I_{n+1} is strict iff n+1 is a Kakeya index.
        stream = stream_maker()
        split = kakeya_split(stream, 13)
        reports = [iterate(stream, n) for n in range(0, 14)]
        for n in range(1, 13):
            stable = reports[n - 1].iteration == reports[n].iteration
            assert stable == (n in split.reversed_kakeya)
            strict = (
                reports[n + 1].iteration != reports[n].iteration
                and reports[n + 1].iteration.is_subset_of(reports[n].iteration)
            )
            assert strict == ((n + 1) in split.kakeya)

    def test_brick_splitting_when_next_index_is_kakeya(self):
        # For a stream with disjoint bricks, each order-n brick meets I_{n+1}
        # in exactly [x_t, x_t + r_{n+1}] and [x_t + x_{n+1}, x_t + r_n].
        stream = mg_stream(THIRDS)
        for n in range(0, 6):
            nxt = iterate(stream, n + 1).iteration
            r_n, r_next, x_next = stream.tail(n), stream.tail(n + 1), stream.term(n + 1)
            for f in sorted(brute_subsums(stream.terms(n))):
                brick = IntervalSet((Interval(f, f + r_n),))
                got = nxt.intersect(brick)
                assert got == iset((f, f + r_next), (f + x_next, f + r_n))


class TestHutchinson:
    def test_gn_one_step_from_the_hull(self):
        got = hutchinson(GN, iset((0, "5/3")))
        assert got == iset((0, "5/12"), ("1/2", "7/6"), ("5/4", "5/3"))

    def test_empty_to_empty(self):
        assert hutchinson(GN, EMPTY_SET) == EMPTY_SET

    def test_dyadic_full_interval_is_fixed(self):
        assert hutchinson(DYADIC, iset((0, 1))) == iset((0, 1))

    def test_rejects_operand_outside_hull(self):
        with pytest.raises(ValueError):
            hutchinson(GN, iset((0, 2)))

    @pytest.mark.parametrize(
        "spec,steps",
        [(DYADIC, 5), (THIRDS, 5), (GN, 5), (FERENS, 3)],
        ids=["dyadic", "thirds", "gn", "ferens"],
    )
    def test_step_identity_on_iterations(self, spec, steps):
        stream = mg_stream(spec)
        m = spec.m
        for n in range(0, steps + 1):
            stepped = hutchinson(spec, iterate(stream, m * n).iteration)
            assert stepped == iterate(stream, m * (n + 1)).iteration


class TestCertify:
    def test_dyadic_certifies_the_unit_interval(self):
        cert = certify_interior(DYADIC, seed_depth=2, budget=4)
        assert cert.verified
        assert cert.s == iset((0, 1))
        assert cert.interior_measure == 1

    def test_full_interval_spec_certifies(self):
        cert = certify_interior(FULL, seed_depth=1, budget=4)
        assert cert.verified
        assert cert.s == iset((0, 2))
        assert cert.interior_measure == 2

    @pytest.mark.parametrize("budget", [0, 2, 8, 20])
    def test_middle_thirds_never_verifies(self, budget):
        cert = certify_interior(THIRDS, seed_depth=2, budget=budget)
        assert not cert.verified
        assert cert.interior_measure == 0
        assert cert.s == EMPTY_SET

    def test_gn_outcome_recorded_not_verified(self):
        cert = certify_interior(GN, seed_depth=3, budget=10)
        assert not cert.verified
        assert cert.diagnostics  # explains why

    def test_ferens_certifies_a_fat_interval(self):
        cert = certify_interior(FERENS, seed_depth=1, budget=6)
        assert cert.verified
        assert cert.s == iset(("2/9", "4/3"))
        assert cert.interior_measure == F(10, 9)

    def test_snap_path_also_lands_on_a_certificate(self):
        cert = certify_interior(FERENS, seed_depth=1, budget=0, snap_denominator=9)
        assert cert.verified
        assert cert.interior_measure >= F(10, 9)

    @pytest.mark.parametrize(
        "spec", [DYADIC, FULL, FERENS], ids=["dyadic", "full", "ferens"]
    )
    def test_certificates_sit_inside_every_iteration(self, spec):
        cert = certify_interior(spec, seed_depth=2, budget=6)
        assert cert.verified
        stream = mg_stream(spec)
        for n in range(0, 15):
            assert cert.s.is_subset_of(iterate(stream, n).iteration)

    def test_invalid_arguments(self):
        with pytest.raises(ValueError):
            certify_interior(GN, seed_depth=0, budget=4)
        with pytest.raises(ValueError):
            certify_interior(GN, seed_depth=1, budget=-1)

    @given(
        st.lists(st.integers(min_value=1, max_value=6), min_size=1, max_size=4),
        st.integers(min_value=2, max_value=8),
    )
    @settings(max_examples=25, deadline=None)
    def test_random_spec_certificates_are_sound(self, raw_coeffs, denom):
        # soundness must hold for arbitrary specs, not just the curated ones
        spec = multigeometric(sorted(raw_coeffs, reverse=True), F(1, denom))
        cert = certify_interior(spec, seed_depth=1, budget=3, part_limit=128)
        if cert.verified:
            assert cert.interior_measure == cert.s.measure
            stream = mg_stream(spec)
            for n in range(0, 9):
                assert cert.s.is_subset_of(iterate(stream, n).iteration)
        else:
            assert cert.interior_measure == 0 and not cert.s


class TestMeasureBounds:
    def test_dyadic_bounds_are_tight(self):
        got = measure_bounds(DYADIC, 4)
        assert got.upper_lambda_e == 1
        assert got.lower_interior == 1
        assert got.boundary_gap == 0

    def test_middle_thirds_upper_decays(self):
        for depth in (1, 2, 5):
            got = measure_bounds(THIRDS, depth)
            assert got.upper_lambda_e == F(2, 3) ** depth
            assert got.lower_interior == 0

    def test_gn_frozen_chain(self):
        values = {d: measure_bounds(GN, d) for d in (2, 4, 6, 8)}
        assert values[2].upper_lambda_e == F(3, 2)
        assert values[4].upper_lambda_e == F(11, 8)
        assert values[6].upper_lambda_e == F(41, 32)
        assert values[8].upper_lambda_e == F(155, 128)
        gaps = [values[d].boundary_gap for d in (2, 4, 6, 8)]
        assert all(a >= b for a, b in zip(gaps, gaps[1:]))
        assert gaps[-1] < gaps[0]

    def test_ferens_two_sided(self):
        got = measure_bounds(FERENS, 8)
        assert got.lower_interior == F(10, 9)
        assert got.upper_lambda_e >= got.lower_interior
        assert got.boundary_gap == got.upper_lambda_e - got.lower_interior

    def test_plain_stream_gets_upper_only(self):
        got = measure_bounds(kyiv_stream(KYIV_48), 13)
        assert got.upper_lambda_e < 1
        assert got.lower_interior == 0

    @pytest.mark.parametrize("spec", [DYADIC, FERENS], ids=["dyadic", "ferens"])
    def test_gap_nonincreasing_in_budget(self, spec):
        gaps = [measure_bounds(spec, 8, budget=b).boundary_gap for b in (0, 4, 12)]
        assert all(a >= b for a, b in zip(gaps, gaps[1:]))


class TestComponentTrend:
    def test_dyadic_ratio_one(self):
        rows = longest_component_trend(mg_stream(DYADIC), [0, 1, 2, 3], inner_depth=4)
        assert all(r.ratio == 1 for r in rows)

    def test_gn_self_similar_ratios_agree(self):
        rows = longest_component_trend(mg_stream(GN), [2, 4, 6], inner_depth=6)
        assert rows[0].ratio == rows[1].ratio == rows[2].ratio

    def test_kyiv_proxy_dominates_closed_form(self):
        from cantorval.families import standardness_ratio

        stream = kyiv_stream(KYIV_48)
        boundary = stream.boundary(1)  # N_1
        rows = longest_component_trend(stream, [boundary], inner_depth=13)
        closed = standardness_ratio(KYIV_48, 1).at_index
        assert rows[0].ratio >= closed

    def test_rejects_negative_depths(self):
        with pytest.raises(ValueError):
            longest_component_trend(mg_stream(DYADIC), [-1])
