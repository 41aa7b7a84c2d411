#include "entorder/log_oscillation.hpp"

#include <algorithm>
#include <cmath>

namespace entorder {

namespace {

constexpr double kPi = 3.141592653589793;
constexpr double kTwoPi = 6.283185307179586;

void require_x(double x) {
    if (!(x > 1.0)) throw std::invalid_argument("modifier: requires x > 1");
}

double modifier_from_log_x(double L, double r) {
    return std::pow(L, r) * (std::sin(L) + 1.0) + 1.0 / L;
}

// geometric x grid over [lo, hi] with all sin/cos extremes e^{k pi/2} included
std::vector<double> modifier_sample_grid(double lo, double hi, double samples_per_period) {
    std::vector<double> xs;
    const double step = kTwoPi / samples_per_period;
    for (double lx = std::log(lo); lx <= std::log(hi); lx += step) xs.push_back(std::exp(lx));
    xs.push_back(hi);
    for (double th = kPi / 2.0;; th += kPi / 2.0) {
        const double x = std::exp(th);
        if (x > hi) break;
        if (x >= lo) xs.push_back(x);
    }
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    return xs;
}

}  // namespace

double modifier_value(double x, double r) {
    require_x(x);
    return modifier_from_log_x(std::log(x), r);
}

double log_modifier_at_log_x(double log_x, double r) {
    if (!(log_x > 0.0)) throw std::invalid_argument("modifier: requires ln x > 0");
    return std::log(modifier_from_log_x(log_x, r));
}

ModifierEval modifier_derivatives(double x, double r) {
    require_x(x);
    const double L = std::log(x);
    const double s = std::sin(L), co = std::cos(L);
    const double Lr = std::pow(L, r);
    const double Lrm1 = Lr / L;
    const double Lrm2 = Lrm1 / L;
    const double sp1 = s + 1.0;

    ModifierEval e;
    e.p = Lr * sp1 + 1.0 / L;
    // p'(x) = F(ln x) / x with F(L) = r L^{r-1}(s+1) + L^r cos L - L^{-2}
    const double F = r * Lrm1 * sp1 + Lr * co - 1.0 / (L * L);
    e.p_prime = F / x;
    // p''(x) = (F'(ln x) - F(ln x)) / x^2
    const double Fp =
        r * (r - 1.0) * Lrm2 * sp1 + 2.0 * r * Lrm1 * co - Lr * s + 2.0 / (L * L * L);
    e.p_double_prime = (Fp - F) / (x * x);
    e.m = e.p - e.p_prime;
    e.c = e.p - 2.0 * e.p_prime + e.p_double_prime;
    return e;
}

double find_shift(double r_lo, double r_hi, const ShiftSearch& opts) {
    if (!(0.0 < r_lo) || !(r_lo <= r_hi)) throw std::invalid_argument("find_shift: bad r range");
    if (!(opts.x_lo > 1.0) || !(opts.x_verify > opts.x_lo))
        throw std::invalid_argument("find_shift: bad search range");

    const auto xs = modifier_sample_grid(opts.x_lo, opts.x_verify, opts.samples_per_period);
    const auto rs = closed_grid(r_lo, r_hi, opts.r_grid);
    double last_violation = -1.0;
    for (double x : xs) {
        for (double r : rs) {
            const auto e = modifier_derivatives(x, r);
            if (!(e.m > 0.0) || !(e.c >= 0.0)) {
                last_violation = x;
                break;
            }
        }
    }
    for (double x : xs)
        if (x > last_violation) return x;
    throw std::runtime_error("find_shift: no valid threshold below the search bound");
}

std::optional<double> verify_shift(double shift, double r_lo, double r_hi,
                                   const ShiftSearch& opts) {
    const auto xs = modifier_sample_grid(shift, opts.x_verify, opts.samples_per_period);
    const auto rs = closed_grid(r_lo, r_hi, opts.r_grid);
    for (double x : xs)
        for (double r : rs) {
            const auto e = modifier_derivatives(x, r);
            if (!(e.m > 0.0) || !(e.c >= 0.0)) return x;
        }
    return std::nullopt;
}

LogOscillationFamily LogOscillationFamily::create(double q, double r_lo, double r_hi,
                                                  std::optional<double> shift) {
    if (!(q > 0.0) || !(q < 1.0)) throw std::invalid_argument("family: q outside (0,1)");
    if (!(0.0 < r_lo) || !(r_lo <= r_hi)) throw std::invalid_argument("family: bad r interval");
    LogOscillationFamily fam;
    fam.q = q;
    fam.r_lo = r_lo;
    fam.r_hi = r_hi;
    fam.delta = -std::log(q);
    fam.shift = shift ? *shift : find_shift(r_lo, r_hi);
    return fam;
}

namespace {

class OscillationTail final : public TailGenerator {
public:
    OscillationTail(const LogOscillationFamily& fam, double r)
        : delta_(fam.delta), shift_(fam.shift), r_(r), q_(fam.q),
          log_p0_(log_modifier_at_log_x(std::log(fam.shift), r)) {}

    double decay_rate() const override { return delta_; }

    double log_correction(double n) const override {
        return std::log(modifier_from_log_x(std::log(delta_ * n + shift_), r_)) - log_p0_;
    }

    double log_correction_at_log_index(double log_n) const override {
        // ln(delta e^l + shift), kept finite when e^l overflows
        const double L = log_n < 600.0
                             ? std::log(delta_ * std::exp(log_n) + shift_)
                             : log_n + std::log(delta_);
        return std::log(modifier_from_log_x(L, r_)) - log_p0_;
    }

    void extremal_log_indices(double log_n_max, std::vector<double>& out) const override {
        for (double th = kPi / 2.0;; th += kPi / 2.0) {
            double ln_n;
            if (th < 600.0) {
                const double n = (std::exp(th) - shift_) / delta_;
                if (n < 1.0) continue;
                ln_n = std::log(n < 9e15 ? std::max(std::round(n), 1.0) : n);
            } else {
                ln_n = th - std::log(delta_);
            }
            if (ln_n > log_n_max) break;
            out.push_back(ln_n);
        }
    }

    std::string kind() const override { return "log_oscillation"; }
    std::vector<std::pair<std::string, double>> parameters() const override {
        return {{"q", q_}, {"r", r_}, {"shift", shift_}};
    }

private:
    double delta_, shift_, r_, q_, log_p0_;
};

}  // namespace

TailSequence oscillation_member_tail(const LogOscillationFamily& fam, double r) {
    if (!(r > 0.0)) throw std::invalid_argument("member tail: r must be positive");
    return TailSequence::generated(std::make_shared<OscillationTail>(fam, r));
}

TailSequence reference_tail(const LogOscillationFamily& fam) {
    return geometric_tail(fam.delta);
}

TailFamily oscillation_family(const LogOscillationFamily& fam, int grid_count) {
    TailFamily f;
    f.r_lo = fam.r_lo;
    f.r_hi = fam.r_hi;
    f.orientation = FamilyOrientation::ascending;
    f.kind = "log_oscillation";
    f.member = [fam](double r) { return oscillation_member_tail(fam, r); };
    f.grid = closed_grid(fam.r_lo, fam.r_hi, grid_count);
    return f;
}

IncomparabilityDemo run_incomparability_demo(const DemoConfig& cfg) {
    if (!(cfg.r_lo <= cfg.r_hi)) throw std::invalid_argument("demo: r_lo must not exceed r_hi");
    IncomparabilityDemo demo;
    demo.family = LogOscillationFamily::create(cfg.q, cfg.r_lo, cfg.r_hi, cfg.shift);
    demo.schedule.decades = cfg.horizon_decades;

    const auto psi = reference_tail(demo.family);
    demo.all_certified = true;
    for (double r : closed_grid(cfg.r_lo, cfg.r_hi, cfg.certificate_grid)) {
        auto cert = certify_incomparable(psi, oscillation_member_tail(demo.family, r),
                                         demo.schedule);
        demo.all_certified = demo.all_certified && cert.certified;
        demo.certificates.emplace_back(r, std::move(cert));
    }

    if (cfg.r_lo < cfg.r_hi) {
        demo.estimate = estimate_family_monotones(
            oscillation_family(demo.family, cfg.certificate_grid), psi, demo.schedule,
            cfg.estimate);
    } else {
        // degenerate interval: the single member's classification is the estimate
        const auto rep = ratio_trend(psi, oscillation_member_tail(demo.family, cfg.r_lo),
                                     demo.schedule);
        PerParamClass row;
        row.r = cfg.r_lo;
        row.liminf_zero = classify_liminf(rep) == LiminfClass::zero ? ThreeWay::yes
                          : classify_liminf(rep) == LiminfClass::positive ? ThreeWay::no
                                                                          : ThreeWay::inconclusive;
        row.limsup_infinite = classify_limsup(rep) == LimsupClass::infinite ? ThreeWay::yes
                              : classify_limsup(rep) == LimsupClass::finite
                                  ? ThreeWay::no
                                  : ThreeWay::inconclusive;
        demo.estimate.table.push_back(row);
        demo.estimate.r_minus_hat = cfg.r_lo;
        demo.estimate.r_plus_hat = cfg.r_hi;
        demo.estimate.conclusive = row.liminf_zero != ThreeWay::inconclusive &&
                                   row.limsup_infinite != ThreeWay::inconclusive;
    }

    demo.reproduced = demo.all_certified && demo.estimate.conclusive &&
                      demo.estimate.r_minus_hat == cfg.r_lo &&
                      demo.estimate.r_plus_hat == cfg.r_hi;
    return demo;
}

}  // namespace entorder
