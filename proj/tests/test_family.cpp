// Tail families: condition validation and the monotone pair estimated from
// per-parameter liminf/limsup classifications.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "entorder/family_monotones.hpp"
#include "entorder/log_oscillation.hpp"

using namespace entorder;

TEST_CASE("exp-rate family passes all three conditions") {
    // closed form: the pair ratio is e^{-n (1/r_small - 1/r_large)}, so the
    // larger rate parameter dominates
    SampleSchedule s;
    s.decades = 48.0;
    const auto v = validate_family(exp_rate_family(1.0, 2.0, 5), s);
    CHECK(v.monotonicity_ok);
    CHECK(v.convexity_ok);
    CHECK(v.order_ok);
    CHECK(v.all_ok());
    CHECK(v.conclusive);
    for (const auto& pc : v.pair_checks) {
        CHECK(pc.r_heavy > pc.r_light);
        CHECK(pc.dominant_direction == Verdict::convertible);
        CHECK(pc.reverse_blocked);
    }
}

TEST_CASE("single-member family validates vacuously") {
    SampleSchedule s;
    const auto v = validate_family(exp_rate_family(1.5, 1.5, 1), s);
    CHECK(v.all_ok());
    CHECK(v.pair_checks.empty());
    CHECK(v.member_reports.size() == 1);
}

TEST_CASE("power-law family is a valid descending family") {
    SampleSchedule s;
    s.decades = 60.0;
    const auto fam = power_law_family(0.5, 2.0, 4);
    CHECK(fam.orientation == FamilyOrientation::descending);
    const auto v = validate_family(fam, s);
    CHECK(v.all_ok());
    for (const auto& pc : v.pair_checks) CHECK(pc.r_heavy < pc.r_light);
}

TEST_CASE("log-oscillation family passes the three conditions") {
    SampleSchedule s;
    s.decades = 300.0;
    const auto fam = oscillation_family(LogOscillationFamily::create(0.5, 1.0, 2.0), 5);
    const auto v = validate_family(fam, s);
    CHECK(v.monotonicity_ok);
    CHECK(v.convexity_ok);
    CHECK(v.order_ok);
    for (const auto& pc : v.pair_checks) {
        CHECK(pc.dominant_direction == Verdict::convertible);
        CHECK(pc.reverse_blocked);
    }
}

TEST_CASE("estimate recovers a family member") {
    SampleSchedule s;
    s.decades = 64.0;
    const auto fam = exp_rate_family(1.0, 2.0, 9);
    const double grid_step = (fam.r_hi - fam.r_lo) / 10.0;
    const auto est = estimate_family_monotones(fam, geometric_tail(1.0 / 1.5), s);
    CHECK(est.r_minus_hat == doctest::Approx(1.5).epsilon(grid_step));
    CHECK(est.r_plus_hat == doctest::Approx(1.5).epsilon(grid_step));
    CHECK(est.r_minus_hat <= est.r_plus_hat);
    CHECK(est.monotone_classes);
}

TEST_CASE("estimate localizes the power-law crossover") {
    SampleSchedule s;
    s.decades = 64.0;
    const auto fam = power_law_family(0.5, 2.0, 9);
    const double grid_step = (fam.r_hi - fam.r_lo) / 10.0;
    const auto est = estimate_family_monotones(fam, power_law_tail(1.0, 1.0), s);
    CHECK(std::abs(est.r_minus_hat - 1.0) <= grid_step);
    CHECK(std::abs(est.r_plus_hat - 1.0) <= grid_step);
    CHECK(est.r_minus_hat <= est.r_plus_hat);
    CHECK(est.monotone_classes);

    // refinement narrows toward the crossover as the grid and horizon grow
    SampleSchedule longer;
    longer.decades = 256.0;
    FamilyEstimateOptions fine;
    fine.grid_count = 19;
    fine.bisection_rounds = 5;
    const auto better = estimate_family_monotones(fam, power_law_tail(1.0, 1.0), longer, fine);
    CHECK(std::abs(better.r_minus_hat - 1.0) <= std::abs(est.r_minus_hat - 1.0) + 1e-12);
    CHECK(std::abs(better.r_plus_hat - 1.0) <= std::abs(est.r_plus_hat - 1.0) + 1e-12);
}

TEST_CASE("boundary conventions map full and empty sets to the interval ends") {
    SampleSchedule s;
    s.decades = 48.0;
    const auto fam = exp_rate_family(1.0, 2.0, 9);

    // a state below the whole family: every member dominates it
    const auto below = estimate_family_monotones(fam, geometric_tail(4.0), s);
    CHECK(below.r_minus_hat == 1.0);  // liminf zero everywhere
    CHECK(below.r_plus_hat == 1.0);   // limsup finite everywhere

    // a state above the whole family: it dominates every member
    const auto above = estimate_family_monotones(fam, geometric_tail(1.0 / 4.0), s);
    CHECK(above.r_minus_hat == 2.0);
    CHECK(above.r_plus_hat == 2.0);
}

TEST_CASE("descending families mirror the endpoint conventions") {
    SampleSchedule s;
    s.decades = 48.0;
    const auto fam = power_law_family(0.5, 2.0, 9);

    // decays faster than every member: the whole family dominates it, and for
    // a descending parameterization the bottom end is r_hi
    const auto below = estimate_family_monotones(fam, geometric_tail(2.0), s);
    CHECK(below.r_minus_hat == 2.0);
    CHECK(below.r_plus_hat == 2.0);

    // decays slower than every member: it dominates the whole family
    const auto above = estimate_family_monotones(fam, geometric_tail(0.5), s);
    CHECK(above.r_minus_hat == 0.5);
    CHECK(above.r_plus_hat == 0.5);
}

TEST_CASE("oscillation members classify as zero-liminf and infinite-limsup") {
    SampleSchedule s;
    s.decades = 1200.0;
    const auto base = LogOscillationFamily::create(0.5, 1.0, 2.0);
    const auto fam = oscillation_family(base, 5);
    const auto est = estimate_family_monotones(fam, reference_tail(base), s);
    CHECK(est.r_minus_hat == 1.0);
    CHECK(est.r_plus_hat == 2.0);
    CHECK(est.conclusive);
    CHECK(est.monotone_classes);
    for (const auto& row : est.table) {
        CHECK(row.liminf_zero == ThreeWay::yes);
        CHECK(row.limsup_infinite == ThreeWay::yes);
    }
}
