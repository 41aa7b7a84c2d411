// slocc.hpp - convertibility criteria between bipartite pure states
//
// Finite spectra get exact answers: majorization for deterministic
// conversion, rank comparison and the Vidal probability for stochastic
// conversion. Infinite (generated) tails get trend evidence: the ratio
// g_psi(n) / g_phi(n) decides stochastic convertibility through its
// boundedness below, so we track windowed minima and maxima of the log
// ratio over geometrically growing index windows and classify the trend.

#pragma once

#include <cstddef>
#include <limits>
#include <string>
#include <vector>

#include "entorder/spectra.hpp"

namespace entorder {

// ---------------------------------------------------------------- finite

// deterministic conversion: psi -> phi iff every tail of psi dominates phi's
bool locc_convertible(const SchmidtSpectrum& psi, const SchmidtSpectrum& phi);

// stochastic conversion between finite spectra: rank non-increase
bool slocc_convertible_finite(const SchmidtSpectrum& psi, const SchmidtSpectrum& phi);

// largest success probability of a stochastic psi -> phi conversion,
// inf_n g_psi(n)/g_phi(n) over the support of phi, clipped to [0,1]
double max_conversion_probability(const SchmidtSpectrum& psi, const SchmidtSpectrum& phi);

// Extremal positions of psi against the maximally entangled chain, in
// dimension parameterization: k_minus is the largest k such that psi
// converts to the k-dimensional maximally entangled state, k_plus the
// smallest k whose maximally entangled state converts to psi.
struct MeBounds {
    std::size_t k_minus = 0;
    std::size_t k_plus = 0;
};
MeBounds me_bounds(const SchmidtSpectrum& psi);

// ---------------------------------------------------------------- trends

struct SampleSchedule {
    double decades = 48.0;             // horizon: indices n < 10^decades
    double samples_per_period = 64.0;  // uniform-in-ln(n) density per e^{2 pi} factor
    double exact_prefix = 100.0;       // n = 1..exact_prefix sampled exactly
};

namespace trend {
// Windows span 3 decades of index so that any log-periodic modifier with
// multiplicative period <= e^{2 pi} ~ 535 completes a full cycle inside
// every window; per-window minima and maxima then follow their envelopes.
inline constexpr double window_decades = 3.0;
inline constexpr int burn_in_windows = 4;
inline constexpr int min_windows = 8;         // below this every verdict is inconclusive
inline constexpr int qualifying_required = 4; // trailing windows past a threshold
inline constexpr double ratio_floor = 1e-3;   // record low must cross this and
inline constexpr double ratio_ceiling = 1e3;  // record high this, for definite verdicts
inline constexpr double decline_factor = 2.0; // record fall required vs burn-in record
inline constexpr double stable_band = 1.1;    // allowed drift for a settled trend
}  // namespace trend

enum class Verdict { convertible, not_convertible, inconclusive };
const char* to_string(Verdict v);

struct TrendWindow {
    double decade_lo = 0.0, decade_hi = 0.0;  // window covers 10^decade_lo <= n < 10^decade_hi
    double n_lo = 0.0, n_hi = 0.0;            // +inf past the double range
    double min_log_ratio = 0.0;
    double max_log_ratio = 0.0;
    std::size_t samples = 0;
};

struct TrendEvidence {
    double record_min_log = std::numeric_limits<double>::infinity();
    double record_max_log = -std::numeric_limits<double>::infinity();
    bool min_falling = false;  // record low keeps sinking (fresh records, >= decline_factor)
    bool min_settled = false;  // minima drifted < stable_band since the quarter anchor
    bool max_rising = false;
    bool max_settled = false;
    bool floor_crossed = false;    // record low below ln(ratio_floor)
    bool ceiling_crossed = false;  // record high above ln(ratio_ceiling)
    int qualifying_min_windows = 0;  // trailing consecutive windows with min below floor
    int qualifying_max_windows = 0;  // trailing consecutive windows with max above ceiling
    bool exact = false;  // finite-support evaluation, no asymptotics involved
};

struct TrendReport {
    std::string direction;  // "psi->phi" or "phi->psi"
    Verdict verdict = Verdict::inconclusive;
    std::vector<TrendWindow> windows;
    TrendEvidence evidence;
};

// Evidence about whether g_psi / g_phi stays bounded below, i.e. whether the
// stochastic conversion psi -> phi is possible. Both tails must be finite or
// both generated; mixing kinds throws std::invalid_argument.
TrendReport ratio_trend(const TailSequence& g_psi, const TailSequence& g_phi,
                        const SampleSchedule& schedule);

struct IncomparabilityCertificate {
    TrendReport forward;   // psi -> phi evidence
    TrendReport backward;  // phi -> psi evidence
    bool certified = false;  // both directions classified not_convertible
};
IncomparabilityCertificate certify_incomparable(const TailSequence& g_psi,
                                                const TailSequence& g_phi,
                                                const SampleSchedule& schedule);

// three-valued asymptotic classifications reused by the family monotones
enum class LiminfClass { zero, positive, inconclusive };
enum class LimsupClass { finite, infinite, inconclusive };
LiminfClass classify_liminf(const TrendReport& report);
LimsupClass classify_limsup(const TrendReport& report);

}  // namespace entorder
