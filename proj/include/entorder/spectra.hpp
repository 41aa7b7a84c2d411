// spectra.hpp - Schmidt spectra and their tail-sum representation
//
// A bipartite pure state enters this library as its Schmidt coefficient
// sequence lambda_0 >= lambda_1 >= ... > 0, a probability vector. Everything
// downstream works on the tail function g(n) = sum_{i>=n} lambda_i, kept in
// log domain: geometric tails underflow doubles near n ~ 500 and the
// asymptotic criteria live far beyond that.

#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <memory>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace entorder {

namespace tol {
inline constexpr double norm = 1e-9;         // spectrum normalization slack
inline constexpr double roundtrip = 1e-12;   // spectrum <-> tail roundtrip slack
inline constexpr double strict_rel = 1e-14;  // strictness margin between adjacent values
inline constexpr double majorization = 1e-12;  // partial-sum comparisons, absolute
}  // namespace tol

namespace detail {

// log(e^a + e^b) without leaving log domain
inline double log_add_exp(double a, double b) {
    if (std::isinf(a) && a < 0) return b;
    if (std::isinf(b) && b < 0) return a;
    const double hi = a > b ? a : b;
    const double lo = a > b ? b : a;
    return hi + std::log1p(std::exp(lo - hi));
}

}  // namespace detail

// ---------------------------------------------------------------- validity

// The four conditions a tail function must satisfy to describe a state:
// g > 0, strictly decreasing, convex, and g(0) = 1.
struct ValidityReport {
    bool positivity_ok = true;
    bool monotonicity_ok = true;
    bool convexity_ok = true;
    bool normalization_ok = true;
    std::optional<double> first_violation;  // smallest checked index that failed

    bool all_ok() const {
        return positivity_ok && monotonicity_ok && convexity_ok && normalization_ok;
    }
};

class TailValidityError : public std::runtime_error {
public:
    TailValidityError(const std::string& what, ValidityReport report)
        : std::runtime_error(what), report_(report) {}
    const ValidityReport& report() const { return report_; }

private:
    ValidityReport report_;
};

// ---------------------------------------------------------------- spectra

class SchmidtSpectrum {
public:
    // Requires entries > 0 after trimming trailing zeros, nonincreasing order,
    // and sum 1 within tol::norm. Throws std::invalid_argument otherwise.
    explicit SchmidtSpectrum(std::vector<double> lambdas);

    std::span<const double> lambdas() const { return lambdas_; }
    std::size_t rank() const { return lambdas_.size(); }
    double operator[](std::size_t i) const { return lambdas_[i]; }

private:
    std::vector<double> lambdas_;
};

std::size_t schmidt_rank(const SchmidtSpectrum& s);
double entropy(const SchmidtSpectrum& s);  // bits

// lambda_n = (1 - q^2) q^{2n} for n = 0..n_terms-1; tail g(n) = q^{2n}
SchmidtSpectrum squeezed_state_spectrum(double q, std::size_t n_terms);

// ---------------------------------------------------------------- tails

// Closed-form tail rule log g(n) = -decay_rate * n + log_correction(n) with a
// sub-exponential correction. Keeping the linear part explicit lets ratio
// evaluation cancel it symbolically instead of subtracting two huge numbers.
class TailGenerator {
public:
    virtual ~TailGenerator() = default;

    virtual double decay_rate() const = 0;
    virtual double log_correction(double n) const = 0;
    // Same quantity addressed by ln n. Overrides keep precision alive when n
    // itself would overflow a double.
    virtual double log_correction_at_log_index(double log_n) const {
        return log_correction(std::exp(log_n));
    }
    // Sample points (as ln n) where an oscillatory correction attains extremes.
    virtual void extremal_log_indices(double /*log_n_max*/, std::vector<double>& /*out*/) const {}

    virtual std::string kind() const = 0;
    virtual std::vector<std::pair<std::string, double>> parameters() const = 0;

    double log_tail(double n) const { return -decay_rate() * n + log_correction(n); }
};

class TailSequence {
public:
    enum class Kind { finite, generated };

    static TailSequence from_values(const std::vector<double>& g);   // linear g(n) values
    static TailSequence from_log_values(std::vector<double> log_g);
    static TailSequence generated(std::shared_ptr<const TailGenerator> gen);

    Kind kind() const { return kind_; }
    bool finite() const { return kind_ == Kind::finite; }
    // finite tails: first n with g(n) = 0 (entries past the stored range count as 0)
    std::size_t rank() const;
    double log_g(double n) const;      // -inf where g(n) = 0
    double log_step(double n) const;   // log g(n) - log g(n+1)
    const TailGenerator* generator() const { return gen_.get(); }
    const std::vector<double>& finite_log_values() const { return log_values_; }

private:
    TailSequence() = default;
    Kind kind_ = Kind::finite;
    std::vector<double> log_values_;                 // finite kind
    std::shared_ptr<const TailGenerator> gen_;       // generated kind
};

// backward (smallest-first) accumulation of log g(n) from a valid spectrum
TailSequence tail_sums(const SchmidtSpectrum& s);
// same accumulation without invariant enforcement, for validating raw files
TailSequence tail_sums_raw(std::span<const double> lambdas);

TailSequence squeezed_tail(double q);    // log g(n) = 2 n ln q
TailSequence geometric_tail(double rate);  // log g(n) = -rate * n
// g(n) = e^{-rate n} (n+1)^{-exponent}
TailSequence power_law_tail(double exponent, double rate = 1.0);

// First n_terms coefficients lambda_n = g(n) - g(n+1). Validates g on
// [0, n_terms+1] first and throws TailValidityError on failure.
SchmidtSpectrum spectrum_from_tail(const TailSequence& g, std::size_t n_terms,
                                   bool renormalize = false);

struct IndexRange {
    double lo = 0.0;
    double hi = 0.0;
};

// Checks the four conditions on [range.lo, range.hi]. Finite tails are scanned
// exactly; generated tails on a geometric index grid plus the generator's
// extremal points. Normalization is checked only at n = 0.
ValidityReport validate_tail(const TailSequence& g, IndexRange range);

}  // namespace entorder
