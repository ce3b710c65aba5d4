#include <doctest.h>

#include <cstdint>
#include <string>
#include <vector>

#include "cohsys/json_io.hpp"
#include "cohsys/stability.hpp"
#include "fixtures.hpp"

using namespace cohsys;

namespace {

SubsystemCandidate cand_of(const NodalCurve& c, std::vector<long long> mr,
                           std::vector<long long> dg, std::vector<long long> gl, bool lf,
                           long long h) {
    SubsystemCandidate out;
    out.sheaf = make_sheaf_class(c, std::move(mr), std::move(dg), std::move(gl), lf);
    out.sections = h;
    return out;
}

}  // namespace

TEST_CASE("alpha-slope evaluation") {
    NodalCurve c = t1_curve();
    SystemType sys = t1_rank2_system();
    CHECK(alpha_slope(sys, Rat(0), c) == Rat(5));
    CHECK(alpha_slope(sys, Rat(2, 3), c) == Rat(6));
    CHECK(alpha_slope(sys, Rat(2), c) == Rat(8));
    CHECK_THROWS_AS(alpha_slope(sys, Rat(-1), c), ValidationError);
    CHECK_THROWS_AS(alpha_slope(sys.sheaf, -1, Rat(0), c), ValidationError);
}

TEST_CASE("alpha threshold and its k-fold multiple") {
    NodalCurve c = t1_curve();
    AlphaG ag = alpha_g(c, 2, 10, 3);
    CHECK(ag.value == Rat(64, 3));
    CHECK(ag.k_fold == Rat(64));
    AlphaG small = alpha_g(c, 1, 2, 1);
    CHECK(small.value == Rat(10));
    CHECK(small.k_fold == Rat(10));
    CHECK_THROWS_AS(alpha_g(c, 0, 10, 3), ZeroRankError);
    CHECK_THROWS_AS(alpha_g(c, 2, 10, 0), ZeroKError);
}

TEST_CASE("slope comparison against the rank-2 system") {
    NodalCurve c = t1_curve();
    SystemType sys = t1_rank2_system();

    // tie at alpha = 2, destabilizing below
    SubsystemCandidate below = cand_of(c, {1, 1}, {3, 3}, {1}, true, 1);
    SlopeComparison cmp = compare_slopes(sys, below, c);
    CHECK(cmp.exceeds == Region::kBelowWall);
    REQUIRE(cmp.wall.has_value());
    CHECK(*cmp.wall == Rat(2));
    CHECK_FALSE(cmp.tie_everywhere);
    CHECK(exceeds_at(cmp, Rat(0)));
    CHECK(exceeds_at(cmp, Rat(199, 100)));
    CHECK_FALSE(exceeds_at(cmp, Rat(2)));
    CHECK(ties_at(cmp, Rat(2)));
    CHECK_FALSE(exceeds_at(cmp, Rat(3)));
    CHECK_FALSE(ties_at(cmp, Rat(3)));
    REQUIRE(wall_for_candidate(sys, below, c).has_value());
    CHECK(*wall_for_candidate(sys, below, c) == Rat(2));

    // higher slope and higher section density: exceeds everywhere
    SubsystemCandidate big = cand_of(c, {1, 1}, {5, 5}, {1}, true, 2);
    SlopeComparison ev = compare_slopes(sys, big, c);
    CHECK(ev.exceeds == Region::kEverywhere);
    CHECK_FALSE(ev.wall.has_value());
    CHECK(strong_instability_check(sys, big, c));

    // low slope, no sections: exceeds nowhere, tie point below 0 discarded
    SubsystemCandidate low = cand_of(c, {1, 0}, {0, 0}, {0}, false, 0);
    SlopeComparison nw = compare_slopes(sys, low, c);
    CHECK(nw.exceeds == Region::kNowhere);
    CHECK_FALSE(nw.wall.has_value());
    CHECK_FALSE(strong_instability_check(sys, low, c));

    // equal density, lower slope: parallel and never exceeding
    SubsystemCandidate par = cand_of(c, {2, 2}, {4, 4}, {2}, true, 3);
    SlopeComparison pl = compare_slopes(sys, par, c);
    CHECK(pl.exceeds == Region::kNowhere);
    CHECK_FALSE(pl.wall.has_value());
    CHECK_FALSE(pl.tie_everywhere);

    // numerically identical: ties for every alpha
    SubsystemCandidate same = cand_of(c, {2, 2}, {5, 5}, {2}, true, 3);
    SlopeComparison tie = compare_slopes(sys, same, c);
    CHECK(tie.tie_everywhere);
    CHECK(tie.exceeds == Region::kNowhere);
    CHECK(ties_at(tie, Rat(7, 13)));
}

TEST_CASE("section-density shape test") {
    NodalCurve c = t1_curve();
    SystemType sys = t1_rank2_system();

    StarClassification drop = property_star(sys, cand_of(c, {1, 1}, {3, 3}, {1}, true, 1), c, true);
    CHECK(drop.density_drop);
    CHECK(drop.satisfied);

    StarClassification tie_lo = property_star(sys, cand_of(c, {2, 2}, {4, 4}, {2}, true, 3), c, true);
    CHECK_FALSE(tie_lo.density_drop);
    CHECK(tie_lo.tie_strict_slope);
    CHECK(tie_lo.tie_weak_slope);
    CHECK(tie_lo.satisfied);

    SubsystemCandidate eq = cand_of(c, {2, 2}, {5, 5}, {2}, true, 3);
    CHECK_FALSE(property_star(sys, eq, c, true).satisfied);
    StarClassification weak = property_star(sys, eq, c, false);
    CHECK(weak.tie_weak_slope);
    CHECK_FALSE(weak.tie_strict_slope);
    CHECK(weak.satisfied);

    StarClassification dense = property_star(sys, cand_of(c, {1, 1}, {5, 5}, {1}, true, 2), c, true);
    CHECK_FALSE(dense.density_drop);
    CHECK_FALSE(dense.satisfied);
}

TEST_CASE("candidate box counting") {
    NodalCurve c = t1_curve();
    CHECK(count_candidates(t1_rank1_system(), c) == 20);
    CHECK(count_candidates(t1_rank2_system(), c) == 1380);

    CandidateBounds clamp;
    clamp.max_sections = 7;  // clamped back down to k = 3
    CHECK(count_candidates(t1_rank2_system(), c, clamp) == 1380);

    CandidateBounds narrow;
    narrow.degree_ceil = std::vector<long long>{1, 1};
    CHECK(count_candidates(t1_rank2_system(), c, narrow) == 176);

    CandidateBounds cap;
    cap.max_candidates = 10;
    CHECK_THROWS_AS(count_candidates(t1_rank1_system(), c, cap), BoundsError);

    CandidateBounds bad;
    bad.degree_floor = std::vector<long long>{0};
    CHECK_THROWS_AS(count_candidates(t1_rank1_system(), c, bad), ShapeError);
}

TEST_CASE("enumeration is dense, ordered, and proper") {
    NodalCurve c = t1_curve();
    SystemType sys = t1_rank1_system();
    std::vector<std::string> first, second;
    std::uint64_t expect = 0;
    std::uint64_t total = enumerate_candidates(sys, c, {}, [&](const SubsystemCandidate& f,
                                                               std::uint64_t idx) {
        CHECK(idx == expect);
        ++expect;
        bool is_full_pair = f.sheaf.multirank == sys.sheaf.multirank &&
                            f.sheaf.degrees == sys.sheaf.degrees;
        CHECK_FALSE(is_full_pair);
        std::string key;
        for (long long v : f.sheaf.multirank) key += std::to_string(v) + ",";
        for (long long v : f.sheaf.degrees) key += std::to_string(v) + ",";
        for (long long v : f.sheaf.gluings) key += std::to_string(v) + ",";
        key += std::to_string(f.sections);
        first.push_back(key);
    });
    CHECK(total == 20);
    CHECK(first.size() == 20);
    enumerate_candidates(sys, c, {}, [&](const SubsystemCandidate& f, std::uint64_t) {
        std::string key;
        for (long long v : f.sheaf.multirank) key += std::to_string(v) + ",";
        for (long long v : f.sheaf.degrees) key += std::to_string(v) + ",";
        for (long long v : f.sheaf.gluings) key += std::to_string(v) + ",";
        key += std::to_string(f.sections);
        second.push_back(key);
    });
    CHECK(first == second);
}

TEST_CASE("wall structure of the small rank-1 system") {
    NodalCurve c = t1_curve();
    SystemType sys = t1_rank1_system();
    WallReport rep = walls(sys, c);

    CHECK(rep.candidate_count == 20);
    REQUIRE(rep.walls.size() == 2);
    CHECK(rep.walls[0].alpha == Rat(0));
    CHECK(rep.walls[0].witness_count == 2);
    CHECK(rep.walls[0].below_count == 2);
    CHECK(rep.walls[0].above_count == 0);
    CHECK(rep.walls[0].destabilized_at_wall);
    CHECK(rep.walls[1].alpha == Rat(1));
    CHECK(rep.walls[1].witness_count == 4);
    CHECK(rep.walls[1].below_count == 2);
    CHECK(rep.walls[1].above_count == 2);
    CHECK(rep.walls[1].destabilized_at_wall);
    for (const auto& w : rep.walls)
        for (std::size_t i = 1; i < w.witnesses.size(); ++i)
            CHECK(w.witnesses[i - 1].cand.index < w.witnesses[i].cand.index);

    REQUIRE(rep.chambers.size() == 2);
    CHECK(rep.chambers[0].lo == Rat(0));
    REQUIRE(rep.chambers[0].hi.has_value());
    CHECK(*rep.chambers[0].hi == Rat(1));
    CHECK(rep.chambers[0].sample == Rat(1, 2));
    CHECK(rep.chambers[0].destabilized);
    CHECK_FALSE(rep.chambers[1].hi.has_value());
    CHECK(rep.chambers[1].lo == Rat(1));
    CHECK(rep.chambers[1].sample == Rat(2));
    CHECK(rep.chambers[1].destabilized);

    CHECK(rep.always_exceeding_count == 2);
    CHECK(rep.everywhere_tied_count == 2);
    CHECK(rep.strongly_unstable_count == 4);
    REQUIRE(rep.alpha_g_value.has_value());
    CHECK(*rep.alpha_g_value == Rat(10));
    REQUIRE(rep.k_alpha_g.has_value());
    CHECK(*rep.k_alpha_g == Rat(10));
    REQUIRE(rep.max_wall.has_value());
    CHECK(*rep.max_wall == Rat(1));
    REQUIRE(rep.stabilizes_beyond_threshold.has_value());
    CHECK(*rep.stabilizes_beyond_threshold);

    // chamber witnesses agree with a direct point check at the samples
    for (const auto& ch : rep.chambers) {
        PointCheck pc = check_at_alpha(sys, c, ch.sample);
        CHECK(pc.verdict == "destabilized");
        REQUIRE(ch.witness.has_value());
        REQUIRE(pc.witness.has_value());
        CHECK(ch.witness->index == pc.witness->index);
    }
}

TEST_CASE("point checks on the small rank-1 system") {
    NodalCurve c = t1_curve();
    SystemType sys = t1_rank1_system();

    PointCheck at0 = check_at_alpha(sys, c, Rat(0));
    CHECK(at0.verdict == "destabilized");
    CHECK(at0.exceeding_count == 4);
    CHECK(at0.tie_count == 4);
    CHECK(at0.candidate_count == 20);

    PointCheck mid = check_at_alpha(sys, c, Rat(1, 2));
    CHECK(mid.verdict == "destabilized");
    CHECK(mid.exceeding_count == 4);
    CHECK(mid.tie_count == 2);

    PointCheck wall = check_at_alpha(sys, c, Rat(1));
    CHECK(wall.verdict == "destabilized");
    CHECK(wall.exceeding_count == 2);
    CHECK(wall.tie_count == 6);
    REQUIRE(wall.tie_witness.has_value());

    PointCheck high = check_at_alpha(sys, c, Rat(10));
    CHECK(high.verdict == "destabilized");
    CHECK(high.exceeding_count == 4);
    CHECK(high.tie_count == 2);

    CHECK_THROWS_AS(check_at_alpha(sys, c, Rat(-1)), ValidationError);
    CHECK_THROWS_WITH_AS(check_at_alpha(sys, c, Rat(-1, 2)), "alpha must be a nonnegative rational",
                         ValidationError);
}

TEST_CASE("rank-2 wall report carries the hand-checked wall at 2") {
    NodalCurve c = t1_curve();
    SystemType sys = t1_rank2_system();
    WallReport rep = walls(sys, c);

    CHECK(rep.candidate_count == 1380);
    CHECK(rep.threshold_bound_checked);
    REQUIRE(rep.k_alpha_g.has_value());
    CHECK(*rep.k_alpha_g == Rat(64));
    REQUIRE(rep.stabilizes_beyond_threshold.has_value());
    CHECK(*rep.stabilizes_beyond_threshold);
    for (const auto& w : rep.walls) CHECK(w.alpha <= Rat(64));

    bool found = false;
    for (const auto& w : rep.walls) {
        if (w.alpha != Rat(2)) continue;
        for (const auto& wit : w.witnesses) {
            if (wit.cand.multirank == std::vector<long long>{1, 1} &&
                wit.cand.degrees == std::vector<long long>{3, 3} &&
                wit.cand.gluings == std::vector<long long>{1} && wit.cand.sections == 1) {
                found = true;
                CHECK(wit.side == Side::kBelow);
            }
        }
    }
    CHECK(found);
}

TEST_CASE("wall report is identical across worker counts") {
    NodalCurve c = t1_curve();
    SystemType sys = t1_rank2_system();
    CandidateBounds one;
    one.workers = 1;
    CandidateBounds four;
    four.workers = 4;
    ordered_json a = wall_report_json(sys, walls(sys, c, one));
    ordered_json b = wall_report_json(sys, walls(sys, c, four));
    CHECK(a.dump(2) == b.dump(2));
}

TEST_CASE("conditional stability criterion") {
    NodalCurve c = t1_curve();
    SystemType sys = t1_rank2_system();

    StabVerdict full = stability_criterion(sys, c, {true, true, true, true});
    CHECK(full.applicable);
    CHECK(full.coprime);
    REQUIRE(full.threshold.has_value());
    CHECK(*full.threshold == Rat(64));
    CHECK(full.missing.empty());

    StabVerdict part = stability_criterion(sys, c, {true, false, true, true});
    CHECK_FALSE(part.applicable);
    REQUIRE(part.missing.size() == 1);
    CHECK(part.missing[0] == "restrictions_full_sections");
    CHECK_FALSE(part.threshold.has_value());

    SystemType even = sys;
    even.k = 2;  // gcd(2, 2) != 1, so the w-stability fallback is required
    StabVerdict noco = stability_criterion(even, c, {true, true, true, false});
    CHECK_FALSE(noco.applicable);
    CHECK_FALSE(noco.coprime);
    REQUIRE(noco.missing.size() == 1);
    CHECK(noco.missing[0] == "w_stable_or_coprime");
    StabVerdict withw = stability_criterion(even, c, {true, true, true, true});
    CHECK(withw.applicable);
    REQUIRE(withw.threshold.has_value());
    CHECK(*withw.threshold == Rat(64));  // 2 * alpha_g(2, 10, 2)

    SystemType mixed;
    mixed.sheaf = make_sheaf_class(c, {1, 2}, {3, 4}, {1}, false);
    mixed.k = 1;
    CHECK_THROWS_AS(stability_criterion(mixed, c, {true, true, true, true}), ValidationError);
    SystemType zerok = sys;
    zerok.k = 0;
    CHECK_THROWS_AS(stability_criterion(zerok, c, {true, true, true, true}), ZeroKError);
}

TEST_CASE("restriction dimension floor") {
    NodalCurve c = t1_curve();
    CHECK(restriction_dimension_floor(c, 0, 3) == Rat(3, 2));
    CHECK(restriction_dimension_bound(c, 0, 3, 2));
    CHECK_FALSE(restriction_dimension_bound(c, 0, 3, 1));
    CHECK(restriction_dimension_bound(c, 0, 3, 3));

    NodalCurve p = p3_curve();
    Rat total(0);
    for (int i = 0; i < 3; ++i) total += restriction_dimension_floor(p, i, 4);
    CHECK(total == Rat(4));
    CHECK(restriction_dimension_floor(p, 2, 4) == Rat(2));

    CHECK_THROWS_AS(restriction_dimension_floor(c, 2, 1), ShapeError);
    CHECK_THROWS_AS(restriction_dimension_floor(c, 0, -1), ValidationError);
}
