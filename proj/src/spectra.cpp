#include "entorder/spectra.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace entorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Largest index n for which n, n+1 and n+2 are still exact doubles.
constexpr double kMaxExactIndex = 4.5e15;

}  // namespace

// ---------------------------------------------------------------- spectrum

SchmidtSpectrum::SchmidtSpectrum(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
    while (!lambdas_.empty() && lambdas_.back() == 0.0) lambdas_.pop_back();
    if (lambdas_.empty()) throw std::invalid_argument("spectrum: no positive coefficients");
    double sum = 0.0;
    for (std::size_t i = 0; i < lambdas_.size(); ++i) {
        const double v = lambdas_[i];
        if (!(v > 0.0) || !std::isfinite(v))
            throw std::invalid_argument("spectrum: coefficient " + std::to_string(i) +
                                        " is not strictly positive");
        if (i > 0 && v > lambdas_[i - 1] * (1.0 + tol::strict_rel))
            throw std::invalid_argument("spectrum: coefficients increase at index " +
                                        std::to_string(i));
        sum += v;
    }
    if (std::abs(sum - 1.0) > tol::norm)
        throw std::invalid_argument("spectrum: coefficients sum to " + std::to_string(sum));
}

std::size_t schmidt_rank(const SchmidtSpectrum& s) { return s.rank(); }

double entropy(const SchmidtSpectrum& s) {
    double h = 0.0;
    for (double v : s.lambdas()) h -= v * std::log2(v);
    return h;
}

SchmidtSpectrum squeezed_state_spectrum(double q, std::size_t n_terms) {
    if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("squeezed spectrum: q outside (0,1)");
    if (n_terms == 0) throw std::invalid_argument("squeezed spectrum: empty");
    std::vector<double> lambdas(n_terms);
    const double q2 = q * q;
    double v = 1.0 - q2;
    for (std::size_t n = 0; n < n_terms; ++n) {
        lambdas[n] = v;
        v *= q2;
    }
    return SchmidtSpectrum(std::move(lambdas));
}

// ------------------------------------------------------------------- tails

TailSequence TailSequence::from_values(const std::vector<double>& g) {
    std::vector<double> logs(g.size());
    for (std::size_t i = 0; i < g.size(); ++i)
        logs[i] = g[i] > 0.0 ? std::log(g[i]) : (g[i] == 0.0 ? -kInf : std::numeric_limits<double>::quiet_NaN());
    return from_log_values(std::move(logs));
}

TailSequence TailSequence::from_log_values(std::vector<double> log_g) {
    TailSequence t;
    t.kind_ = Kind::finite;
    t.log_values_ = std::move(log_g);
    return t;
}

TailSequence TailSequence::generated(std::shared_ptr<const TailGenerator> gen) {
    if (!gen) throw std::invalid_argument("tail: null generator");
    TailSequence t;
    t.kind_ = Kind::generated;
    t.gen_ = std::move(gen);
    return t;
}

std::size_t TailSequence::rank() const {
    if (!finite()) throw std::logic_error("tail: rank undefined for generated tails");
    std::size_t r = 0;
    while (r < log_values_.size() && std::isfinite(log_values_[r])) ++r;
    return r;
}

double TailSequence::log_g(double n) const {
    if (kind_ == Kind::generated) return gen_->log_tail(n);
    if (n < 0) throw std::out_of_range("tail: negative index");
    const auto i = static_cast<std::size_t>(n);
    return i < log_values_.size() ? log_values_[i] : -kInf;
}

double TailSequence::log_step(double n) const {
    if (kind_ == Kind::generated)
        return gen_->decay_rate() + gen_->log_correction(n) - gen_->log_correction(n + 1.0);
    const double a = log_g(n), b = log_g(n + 1.0);
    if (std::isinf(a) && std::isinf(b)) return 0.0;  // both zero: flat
    return a - b;
}

TailSequence tail_sums_raw(std::span<const double> lambdas) {
    std::vector<double> logs(lambdas.size() + 1, -kInf);
    double acc = -kInf;
    for (std::size_t i = lambdas.size(); i-- > 0;) {
        const double v = lambdas[i];
        const double lv = v > 0.0 ? std::log(v)
                                  : (v == 0.0 ? -kInf : std::numeric_limits<double>::quiet_NaN());
        acc = detail::log_add_exp(acc, lv);
        logs[i] = acc;
    }
    return TailSequence::from_log_values(std::move(logs));
}

TailSequence tail_sums(const SchmidtSpectrum& s) { return tail_sums_raw(s.lambdas()); }

namespace {

class GeometricTail final : public TailGenerator {
public:
    GeometricTail(double rate, std::string kind, std::vector<std::pair<std::string, double>> params)
        : rate_(rate), kind_(std::move(kind)), params_(std::move(params)) {}
    double decay_rate() const override { return rate_; }
    double log_correction(double) const override { return 0.0; }
    double log_correction_at_log_index(double) const override { return 0.0; }
    std::string kind() const override { return kind_; }
    std::vector<std::pair<std::string, double>> parameters() const override { return params_; }

private:
    double rate_;
    std::string kind_;
    std::vector<std::pair<std::string, double>> params_;
};

class PowerLawTail final : public TailGenerator {
public:
    PowerLawTail(double exponent, double rate) : exponent_(exponent), rate_(rate) {}
    double decay_rate() const override { return rate_; }
    double log_correction(double n) const override { return -exponent_ * std::log1p(n); }
    double log_correction_at_log_index(double log_n) const override {
        // ln(n+1) = ln n + log1p(1/n)
        const double corr = log_n < 600.0 ? std::log1p(std::exp(-log_n)) : 0.0;
        return -exponent_ * (log_n + corr);
    }
    std::string kind() const override { return "power_law"; }
    std::vector<std::pair<std::string, double>> parameters() const override {
        return {{"exponent", exponent_}, {"rate", rate_}};
    }

private:
    double exponent_;
    double rate_;
};

}  // namespace

TailSequence squeezed_tail(double q) {
    if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("squeezed tail: q outside (0,1)");
    return TailSequence::generated(
        std::make_shared<GeometricTail>(-2.0 * std::log(q), "squeezed",
                                        std::vector<std::pair<std::string, double>>{{"q", q}}));
}

TailSequence geometric_tail(double rate) {
    if (!(rate > 0.0)) throw std::invalid_argument("geometric tail: rate must be positive");
    return TailSequence::generated(
        std::make_shared<GeometricTail>(rate, "geometric",
                                        std::vector<std::pair<std::string, double>>{{"rate", rate}}));
}

TailSequence power_law_tail(double exponent, double rate) {
    if (!(exponent > 0.0) && !(rate > 0.0))
        throw std::invalid_argument("power-law tail: needs a decaying part");
    return TailSequence::generated(std::make_shared<PowerLawTail>(exponent, rate));
}

// ------------------------------------------------------------- validation

namespace {

struct Checker {
    ValidityReport report;

    void fail(bool ValidityReport::*flag, double n) {
        report.*flag = false;
        if (!report.first_violation || n < *report.first_violation) report.first_violation = n;
    }

    void check_point(const TailSequence& g, double n, double hi, bool convexity_applies) {
        const double lg = g.log_g(n);
        if (std::isnan(lg) || (std::isinf(lg) && lg > 0)) {
            fail(&ValidityReport::positivity_ok, n);
            return;
        }
        // finite tails are allowed to hit exact zero at their rank
        if (std::isinf(lg)) {
            if (!g.finite()) fail(&ValidityReport::positivity_ok, n);
            return;
        }
        if (n + 1.0 > hi) return;
        const double d1 = g.log_step(n);
        if (std::isnan(d1)) {
            fail(&ValidityReport::positivity_ok, n + 1.0);
            return;
        }
        if (!(d1 > tol::strict_rel)) fail(&ValidityReport::monotonicity_ok, n);
        if (!convexity_applies || n + 2.0 > hi) return;
        const double d2 = g.log_step(n + 1.0);
        if (std::isnan(d2)) return;  // reported at the next point
        // g(n)/g(n+1) + g(n+2)/g(n+1) >= 2
        const double lhs = std::exp(d1) + std::exp(-d2);
        if (!(lhs >= 2.0 * (1.0 - 8.0 * tol::strict_rel))) fail(&ValidityReport::convexity_ok, n);
    }
};

}  // namespace

ValidityReport validate_tail(const TailSequence& g, IndexRange range) {
    if (range.hi < range.lo) throw std::invalid_argument("validate_tail: empty range");
    Checker ck;

    if (range.lo <= 0.0) {
        const double lg0 = g.log_g(0.0);
        if (!(std::abs(std::expm1(lg0)) <= tol::norm)) {
            ck.report.normalization_ok = false;
            if (!ck.report.first_violation) ck.report.first_violation = 0.0;
        }
    }

    if (g.finite()) {
        const double hi = std::min(range.hi, static_cast<double>(g.rank()));
        for (double n = std::floor(range.lo); n <= hi; n += 1.0) {
            const bool convexity_applies = n + 2.0 <= static_cast<double>(g.rank());
            ck.check_point(g, n, range.hi, convexity_applies);
        }
        return ck.report;
    }

    if (range.hi > kMaxExactIndex)
        throw std::out_of_range("validate_tail: range exceeds exact-integer tail evaluation");

    // exact prefix, then a geometric grid, then the generator's own extremes
    std::vector<double> samples;
    const double dense_hi = std::min(range.hi, 256.0);
    for (double n = std::max(0.0, std::floor(range.lo)); n <= dense_hi; n += 1.0)
        samples.push_back(n);
    const double factor = std::exp(2.0 * 3.141592653589793 / 64.0);
    for (double n = 256.0; n <= range.hi; n *= factor)
        if (n >= range.lo) samples.push_back(std::floor(n));
    std::vector<double> extremes;
    g.generator()->extremal_log_indices(std::log(std::max(range.hi, 1.0)), extremes);
    for (double ln_n : extremes) {
        const double n = std::round(std::exp(ln_n));
        if (n >= range.lo && n <= range.hi) samples.push_back(n);
    }
    if (samples.empty() || samples.back() < range.hi) samples.push_back(std::floor(range.hi));
    std::sort(samples.begin(), samples.end());
    samples.erase(std::unique(samples.begin(), samples.end()), samples.end());

    for (double n : samples) ck.check_point(g, n, range.hi, true);
    return ck.report;
}

SchmidtSpectrum spectrum_from_tail(const TailSequence& g, std::size_t n_terms, bool renormalize) {
    if (n_terms == 0) throw std::invalid_argument("spectrum_from_tail: empty request");
    const auto report = validate_tail(g, {0.0, static_cast<double>(n_terms) + 1.0});
    if (!report.all_ok())
        throw TailValidityError("spectrum_from_tail: tail violates validity conditions", report);

    std::vector<double> lambdas;
    lambdas.reserve(n_terms);
    for (std::size_t n = 0; n < n_terms; ++n) {
        const double lg = g.log_g(static_cast<double>(n));
        if (std::isinf(lg)) break;  // finite tail ended early
        const double step = g.log_step(static_cast<double>(n));
        // lambda_n = g(n) (1 - e^{-step})
        lambdas.push_back(std::exp(lg) * -std::expm1(-step));
    }
    if (renormalize) {
        const double sum = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
        for (double& v : lambdas) v /= sum;
    }
    return SchmidtSpectrum(std::move(lambdas));
}

}  // namespace entorder
