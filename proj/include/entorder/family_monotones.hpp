// family_monotones.hpp - parameterized tail families and the monotone pair
// estimated from liminf/limsup classifications of tail ratios
//
// A family { xi_r } over an interval (r_lo, r_hi) gives two monotones per
// state: the infimum r whose member tail asymptotically escapes g_psi from
// below (liminf of the ratio hits zero) and the infimum r whose member
// dominates it (limsup stays finite). Families may be parameterized in either
// direction; the declared orientation decides how the classification sets are
// read off and how the empty and full sets map to the interval endpoints.

#pragma once

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "entorder/slocc.hpp"

namespace entorder {

enum class FamilyOrientation {
    ascending,   // larger r = heavier tail, dominates smaller r
    descending,  // smaller r = heavier tail
};

struct TailFamily {
    double r_lo = 0.0, r_hi = 1.0;
    FamilyOrientation orientation = FamilyOrientation::ascending;
    std::function<TailSequence(double)> member;
    std::string kind;
    std::vector<double> grid;  // r values used by validation
};

std::vector<double> interior_grid(double lo, double hi, int count);
std::vector<double> closed_grid(double lo, double hi, int count);

// g_r(n) = e^{-n/r}: heavier tails for larger r
TailFamily exp_rate_family(double r_lo, double r_hi, int grid_count);
// g_r(n) = e^{-n} (n+1)^{-r}: heavier tails for smaller r (descending)
TailFamily power_law_family(double r_lo, double r_hi, int grid_count);

// ------------------------------------------------------------- validation

struct PairCheck {
    double r_heavy = 0.0, r_light = 0.0;
    Verdict dominant_direction = Verdict::inconclusive;  // heavy -> light, expect convertible
    bool reverse_blocked = false;  // light -> heavy trend falls or is certified blocked
    bool ok = false;
};

struct FamilyValidation {
    bool monotonicity_ok = true;  // condition I, per member
    bool convexity_ok = true;     // condition II, per member
    bool order_ok = true;         // condition III, ordered grid pairs
    bool conclusive = true;
    std::vector<std::pair<double, ValidityReport>> member_reports;
    std::vector<PairCheck> pair_checks;
    bool all_ok() const { return monotonicity_ok && convexity_ok && order_ok; }
};

FamilyValidation validate_family(const TailFamily& f, const SampleSchedule& schedule);

// -------------------------------------------------------------- estimates

enum class ThreeWay { yes, no, inconclusive };
const char* to_string(ThreeWay v);

struct PerParamClass {
    double r = 0.0;
    ThreeWay liminf_zero = ThreeWay::inconclusive;
    ThreeWay limsup_infinite = ThreeWay::inconclusive;
};

struct FamilyEstimateOptions {
    int grid_count = 9;        // interior r samples
    int bisection_rounds = 3;  // refinement around classification boundaries
};

struct FamilyMonotoneEstimate {
    double r_minus_hat = 0.0;
    double r_plus_hat = 0.0;
    bool conclusive = true;        // no inconclusive classification touched a boundary
    bool monotone_classes = true;  // classifications were monotone in r
    std::vector<PerParamClass> table;
    std::optional<std::pair<double, double>> minus_bracket, plus_bracket;
};

FamilyMonotoneEstimate estimate_family_monotones(const TailFamily& f, const TailSequence& g_psi,
                                                 const SampleSchedule& schedule,
                                                 const FamilyEstimateOptions& opts = {});

}  // namespace entorder
