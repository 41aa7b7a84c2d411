#include "entorder/family_monotones.hpp"

#include <algorithm>
#include <cmath>

namespace entorder {

namespace {

constexpr double kMaxExactIndex = 4.5e15;

ThreeWay liminf_zero_of(const TrendReport& rep) {
    switch (classify_liminf(rep)) {
        case LiminfClass::zero: return ThreeWay::yes;
        case LiminfClass::positive: return ThreeWay::no;
        default: return ThreeWay::inconclusive;
    }
}

ThreeWay limsup_infinite_of(const TrendReport& rep) {
    switch (classify_limsup(rep)) {
        case LimsupClass::infinite: return ThreeWay::yes;
        case LimsupClass::finite: return ThreeWay::no;
        default: return ThreeWay::inconclusive;
    }
}

ThreeWay invert(ThreeWay v) {
    if (v == ThreeWay::yes) return ThreeWay::no;
    if (v == ThreeWay::no) return ThreeWay::yes;
    return ThreeWay::inconclusive;
}

struct BoundaryResult {
    double estimate = 0.0;
    std::optional<std::pair<double, double>> bracket;
    bool conclusive = true;
};

// Locates the edge of a one-sided classification set over [r_lo, r_hi].
// `up_closed` says the set contains everything above its boundary; the
// mirrored case contains everything below. `full_value` / `empty_value` are
// the endpoint conventions when every or no grid point is in the set.
BoundaryResult locate_boundary(double r_lo, double r_hi, const std::vector<double>& rs,
                               const std::vector<ThreeWay>& in_set, bool up_closed,
                               double full_value, double empty_value,
                               const std::function<ThreeWay(double)>& classify, int rounds) {
    BoundaryResult out;
    bool any_yes = false, any_no = false, any_inconclusive = false;
    double max_yes = r_lo, min_yes = r_hi, max_no = r_lo, min_no = r_hi;
    for (std::size_t i = 0; i < rs.size(); ++i) {
        if (in_set[i] == ThreeWay::yes) {
            any_yes = true;
            max_yes = std::max(max_yes, rs[i]);
            min_yes = std::min(min_yes, rs[i]);
        } else if (in_set[i] == ThreeWay::no) {
            any_no = true;
            max_no = std::max(max_no, rs[i]);
            min_no = std::min(min_no, rs[i]);
        } else {
            any_inconclusive = true;
        }
    }
    if (any_yes && !any_no && !any_inconclusive) {
        out.estimate = full_value;
        return out;
    }
    if (any_no && !any_yes && !any_inconclusive) {
        out.estimate = empty_value;
        return out;
    }
    if (!any_yes && !any_no) {
        out.estimate = 0.5 * (r_lo + r_hi);
        out.conclusive = false;
        return out;
    }
    out.conclusive = !any_inconclusive;
    double lo = up_closed ? (any_no ? max_no : r_lo) : (any_yes ? max_yes : r_lo);
    double hi = up_closed ? (any_yes ? min_yes : r_hi) : (any_no ? min_no : r_hi);
    if (lo > hi) {  // classifications were not monotone; report the overlap
        out.estimate = 0.5 * (lo + hi);
        out.bracket = {hi, lo};
        out.conclusive = false;
        return out;
    }
    for (int round = 0; round < rounds && hi - lo > 0; ++round) {
        const double mid = 0.5 * (lo + hi);
        const ThreeWay v = classify(mid);
        if (v == ThreeWay::inconclusive) {
            out.conclusive = false;
            break;
        }
        const bool in = v == ThreeWay::yes;
        if (in == up_closed) hi = mid;
        else lo = mid;
    }
    out.estimate = 0.5 * (lo + hi);
    out.bracket = {lo, hi};
    return out;
}

bool monotone_in_r(const std::vector<double>& rs, const std::vector<ThreeWay>& vals,
                   bool up_closed) {
    // once definitively inside (scanning toward the closed side), never
    // definitively outside again
    bool seen_in = false;
    for (std::size_t k = 0; k < rs.size(); ++k) {
        const std::size_t i = up_closed ? k : rs.size() - 1 - k;
        if (vals[i] == ThreeWay::yes) seen_in = true;
        else if (vals[i] == ThreeWay::no && seen_in) return false;
    }
    return true;
}

}  // namespace

const char* to_string(ThreeWay v) {
    switch (v) {
        case ThreeWay::yes: return "yes";
        case ThreeWay::no: return "no";
        default: return "inconclusive";
    }
}

std::vector<double> interior_grid(double lo, double hi, int count) {
    std::vector<double> rs;
    for (int k = 1; k <= count; ++k)
        rs.push_back(lo + (hi - lo) * k / static_cast<double>(count + 1));
    return rs;
}

std::vector<double> closed_grid(double lo, double hi, int count) {
    std::vector<double> rs;
    if (count == 1) return {0.5 * (lo + hi)};
    for (int k = 0; k < count; ++k)
        rs.push_back(lo + (hi - lo) * k / static_cast<double>(count - 1));
    return rs;
}

TailFamily exp_rate_family(double r_lo, double r_hi, int grid_count) {
    TailFamily f;
    f.r_lo = r_lo;
    f.r_hi = r_hi;
    f.orientation = FamilyOrientation::ascending;
    f.kind = "exp_rate";
    f.member = [](double r) { return geometric_tail(1.0 / r); };
    f.grid = closed_grid(r_lo, r_hi, grid_count);
    return f;
}

TailFamily power_law_family(double r_lo, double r_hi, int grid_count) {
    TailFamily f;
    f.r_lo = r_lo;
    f.r_hi = r_hi;
    f.orientation = FamilyOrientation::descending;
    f.kind = "power_law";
    f.member = [](double r) { return power_law_tail(r, 1.0); };
    f.grid = closed_grid(r_lo, r_hi, grid_count);
    return f;
}

FamilyValidation validate_family(const TailFamily& f, const SampleSchedule& schedule) {
    FamilyValidation v;
    const double hi = std::min(std::pow(10.0, std::min(schedule.decades, 15.0)), kMaxExactIndex);
    for (double r : f.grid) {
        const auto rep = validate_tail(f.member(r), {0.0, hi});
        if (!rep.monotonicity_ok || !rep.positivity_ok) v.monotonicity_ok = false;
        if (!rep.convexity_ok) v.convexity_ok = false;
        v.member_reports.emplace_back(r, rep);
    }
    for (std::size_t i = 0; i < f.grid.size(); ++i)
        for (std::size_t j = i + 1; j < f.grid.size(); ++j) {
            const double r_small = f.grid[i], r_large = f.grid[j];
            PairCheck pc;
            pc.r_heavy = f.orientation == FamilyOrientation::ascending ? r_large : r_small;
            pc.r_light = f.orientation == FamilyOrientation::ascending ? r_small : r_large;
            const auto heavy = f.member(pc.r_heavy), light = f.member(pc.r_light);
            const auto forward = ratio_trend(heavy, light, schedule);
            const auto reverse = ratio_trend(light, heavy, schedule);
            pc.dominant_direction = forward.verdict;
            pc.reverse_blocked =
                reverse.verdict == Verdict::not_convertible || reverse.evidence.min_falling;
            pc.ok = forward.verdict == Verdict::convertible && pc.reverse_blocked;
            if (!pc.ok) v.order_ok = false;
            if (forward.verdict == Verdict::inconclusive ||
                (!pc.reverse_blocked && !reverse.evidence.min_settled))
                v.conclusive = false;
            v.pair_checks.push_back(pc);
        }
    return v;
}

FamilyMonotoneEstimate estimate_family_monotones(const TailFamily& f, const TailSequence& g_psi,
                                                 const SampleSchedule& schedule,
                                                 const FamilyEstimateOptions& opts) {
    FamilyMonotoneEstimate est;
    const auto classify = [&](double r) {
        PerParamClass row;
        row.r = r;
        const auto rep = ratio_trend(g_psi, f.member(r), schedule);
        row.liminf_zero = liminf_zero_of(rep);
        row.limsup_infinite = limsup_infinite_of(rep);
        est.table.push_back(row);
        return row;
    };

    const auto rs = interior_grid(f.r_lo, f.r_hi, opts.grid_count);
    std::vector<ThreeWay> zero_set, finite_set;
    for (double r : rs) {
        const auto row = classify(r);
        zero_set.push_back(row.liminf_zero);
        finite_set.push_back(invert(row.limsup_infinite));
    }

    const bool ascending = f.orientation == FamilyOrientation::ascending;
    est.monotone_classes = monotone_in_r(rs, zero_set, ascending) &&
                           monotone_in_r(rs, finite_set, ascending);

    const double full = ascending ? f.r_lo : f.r_hi;
    const double empty = ascending ? f.r_hi : f.r_lo;
    const auto minus = locate_boundary(
        f.r_lo, f.r_hi, rs, zero_set, ascending, full, empty,
        [&](double r) { return classify(r).liminf_zero; }, opts.bisection_rounds);
    const auto plus = locate_boundary(
        f.r_lo, f.r_hi, rs, finite_set, ascending, full, empty,
        [&](double r) { return invert(classify(r).limsup_infinite); }, opts.bisection_rounds);

    est.r_minus_hat = minus.estimate;
    est.r_plus_hat = plus.estimate;
    est.minus_bracket = minus.bracket;
    est.plus_bracket = plus.bracket;
    est.conclusive = minus.conclusive && plus.conclusive;
    if (est.r_minus_hat > est.r_plus_hat) {
        // brackets straddle a common boundary; the order guarantees the true
        // values coincide there, so pinch both estimates to the midpoint
        const double mid = 0.5 * (est.r_minus_hat + est.r_plus_hat);
        est.r_minus_hat = est.r_plus_hat = mid;
    }
    std::sort(est.table.begin(), est.table.end(),
              [](const PerParamClass& a, const PerParamClass& b) { return a.r < b.r; });
    return est;
}

}  // namespace entorder
