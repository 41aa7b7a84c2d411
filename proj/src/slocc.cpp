#include "entorder/slocc.hpp"

#include <algorithm>
#include <cmath>

namespace entorder {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kLn10 = 2.302585092994046;
constexpr double kTwoPi = 6.283185307179586;

std::vector<double> tail_values(const SchmidtSpectrum& s, std::size_t count) {
    // true tails g[k] = sum_{i>=k} lambda_i by backward accumulation,
    // returned for k = 0..count
    const auto l = s.lambdas();
    std::vector<double> g(std::max(count, l.size()) + 1, 0.0);
    for (std::size_t i = l.size(); i-- > 0;) g[i] = g[i + 1] + l[i];
    g.resize(count + 1);
    return g;
}

}  // namespace

bool locc_convertible(const SchmidtSpectrum& psi, const SchmidtSpectrum& phi) {
    const std::size_t n = std::max(psi.rank(), phi.rank());
    const auto gp = tail_values(psi, n), gq = tail_values(phi, n);
    for (std::size_t k = 0; k <= n; ++k)
        if (gp[k] < gq[k] - tol::majorization) return false;
    return true;
}

bool slocc_convertible_finite(const SchmidtSpectrum& psi, const SchmidtSpectrum& phi) {
    return psi.rank() >= phi.rank();
}

double max_conversion_probability(const SchmidtSpectrum& psi, const SchmidtSpectrum& phi) {
    if (locc_convertible(psi, phi)) return 1.0;  // deterministic conversion exists
    if (psi.rank() < phi.rank()) return 0.0;
    const std::size_t n = phi.rank();
    const auto gp = tail_values(psi, n), gq = tail_values(phi, n);
    double p = 1.0;
    for (std::size_t k = 0; k < n; ++k) p = std::min(p, gp[k] / gq[k]);
    return std::clamp(p, 0.0, 1.0);
}

MeBounds me_bounds(const SchmidtSpectrum& psi) {
    const double l0 = psi[0];
    auto k = static_cast<std::size_t>(std::floor(1.0 / l0));
    while (static_cast<double>(k + 1) * l0 <= 1.0 + tol::majorization) ++k;
    while (k > 1 && static_cast<double>(k) * l0 > 1.0 + tol::majorization) --k;
    return {k, psi.rank()};
}

// ------------------------------------------------------------------ trends

const char* to_string(Verdict v) {
    switch (v) {
        case Verdict::convertible: return "convertible";
        case Verdict::not_convertible: return "not_convertible";
        default: return "inconclusive";
    }
}

namespace {

int window_of(double log_n) { return static_cast<int>(log_n / (trend::window_decades * kLn10)); }

struct WindowAccumulator {
    std::vector<TrendWindow> windows;

    explicit WindowAccumulator(int count) : windows(count) {
        for (int w = 0; w < count; ++w) {
            windows[w].decade_lo = w * trend::window_decades;
            windows[w].decade_hi = (w + 1) * trend::window_decades;
            windows[w].n_lo = std::pow(10.0, windows[w].decade_lo);
            windows[w].n_hi = std::pow(10.0, windows[w].decade_hi);
            windows[w].min_log_ratio = kInf;
            windows[w].max_log_ratio = -kInf;
        }
    }

    void add(double log_n, double log_ratio) {
        const int w = window_of(log_n);
        if (w < 0 || w >= static_cast<int>(windows.size())) return;
        auto& win = windows[w];
        win.min_log_ratio = std::min(win.min_log_ratio, log_ratio);
        win.max_log_ratio = std::max(win.max_log_ratio, log_ratio);
        ++win.samples;
    }
};

TrendEvidence summarize(const std::vector<TrendWindow>& windows) {
    TrendEvidence ev;
    const int n_windows = static_cast<int>(windows.size());
    std::vector<double> rec_min(n_windows), rec_max(n_windows);
    int last_min_record = 0, last_max_record = 0;
    double lo = kInf, hi = -kInf;
    for (int w = 0; w < n_windows; ++w) {
        if (windows[w].samples > 0) {
            if (windows[w].min_log_ratio < lo) {
                lo = windows[w].min_log_ratio;
                if (w > 0) last_min_record = w;
            }
            if (windows[w].max_log_ratio > hi) {
                hi = windows[w].max_log_ratio;
                if (w > 0) last_max_record = w;
            }
        }
        rec_min[w] = lo;
        rec_max[w] = hi;
    }
    ev.record_min_log = lo;
    ev.record_max_log = hi;
    ev.floor_crossed = lo < std::log(trend::ratio_floor);
    ev.ceiling_crossed = hi > std::log(trend::ratio_ceiling);
    for (int w = n_windows; w-- > 0;) {
        if (!(windows[w].samples > 0 && windows[w].min_log_ratio < std::log(trend::ratio_floor)))
            break;
        ++ev.qualifying_min_windows;
    }
    for (int w = n_windows; w-- > 0;) {
        if (!(windows[w].samples > 0 && windows[w].max_log_ratio > std::log(trend::ratio_ceiling)))
            break;
        ++ev.qualifying_max_windows;
    }
    if (n_windows < trend::min_windows) return ev;

    const int last = n_windows - 1;
    const int burn = std::min(trend::burn_in_windows, last);
    const int quarter = std::max(burn, last / 4);
    const double decline = std::log(trend::decline_factor);
    const double drift = std::log(trend::stable_band);
    ev.min_falling = rec_min[last] <= rec_min[burn] - decline && last_min_record >= last - 1;
    ev.min_settled = rec_min[last] >= rec_min[quarter] - drift;
    ev.max_rising = rec_max[last] >= rec_max[burn] + decline && last_max_record >= last - 1;
    ev.max_settled = rec_max[last] <= rec_max[quarter] + drift;
    return ev;
}

Verdict verdict_from(const TrendEvidence& ev) {
    if (ev.exact) {
        return std::isinf(ev.record_min_log) && ev.record_min_log < 0 ? Verdict::not_convertible
                                                                      : Verdict::convertible;
    }
    if (ev.min_settled) return Verdict::convertible;
    if (ev.min_falling && ev.floor_crossed &&
        ev.qualifying_min_windows >= trend::qualifying_required)
        return Verdict::not_convertible;
    return Verdict::inconclusive;
}

TrendReport exact_trend(const TailSequence& a, const TailSequence& b) {
    TrendReport rep;
    const std::size_t ra = a.rank(), rb = b.rank();
    const int n_windows = rb > 1 ? window_of(std::log(static_cast<double>(rb - 1))) + 1 : 1;
    WindowAccumulator acc(n_windows);
    TrendEvidence ev;
    ev.exact = true;
    // constraint region: support of the target b; a zero denominator imposes none
    for (std::size_t n = 1; n < rb; ++n) {
        const double lr = a.log_g(static_cast<double>(n)) - b.log_g(static_cast<double>(n));
        acc.add(std::log(static_cast<double>(n)), lr);
        ev.record_min_log = std::min(ev.record_min_log, lr);
        ev.record_max_log = std::max(ev.record_max_log, lr);
    }
    if (rb <= 1) ev.record_min_log = ev.record_max_log = 0.0;  // only n = 0 constrains
    if (ra < rb) ev.record_min_log = -kInf;
    ev.floor_crossed = ev.record_min_log < std::log(trend::ratio_floor);
    ev.ceiling_crossed = ev.record_max_log > std::log(trend::ratio_ceiling);
    rep.windows = std::move(acc.windows);
    rep.evidence = ev;
    rep.verdict = verdict_from(ev);
    return rep;
}

// merged sample positions (as ln n) for a generated pair
std::vector<double> sample_positions(const TailGenerator& a, const TailGenerator& b,
                                     const SampleSchedule& s) {
    const double ln_max = s.decades * kLn10;
    std::vector<double> pts;
    const double prefix = std::min(s.exact_prefix, std::pow(10.0, s.decades));
    for (double n = 1.0; n <= prefix; n += 1.0) pts.push_back(std::log(n));
    const double step = kTwoPi / s.samples_per_period;
    for (double ln = std::log(std::max(prefix, 1.0)); ln <= ln_max; ln += step) pts.push_back(ln);
    pts.push_back(ln_max);
    a.extremal_log_indices(ln_max, pts);
    b.extremal_log_indices(ln_max, pts);
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    while (!pts.empty() && pts.back() > ln_max) pts.pop_back();
    return pts;
}

}  // namespace

TrendReport ratio_trend(const TailSequence& g_psi, const TailSequence& g_phi,
                        const SampleSchedule& schedule) {
    if (g_psi.finite() != g_phi.finite())
        throw std::invalid_argument("ratio_trend: mixed finite and generated tails");
    if (g_psi.finite()) {
        TrendReport rep = exact_trend(g_psi, g_phi);
        rep.direction = "psi->phi";
        return rep;
    }
    if (!(schedule.decades > 0) || schedule.decades > 1e6)
        throw std::out_of_range("ratio_trend: schedule outside generator validity range");

    const TailGenerator& a = *g_psi.generator();
    const TailGenerator& b = *g_phi.generator();
    const double rate_gap = b.decay_rate() - a.decay_rate();
    const bool same_rate =
        std::abs(rate_gap) <=
        1e-12 * std::max({std::abs(a.decay_rate()), std::abs(b.decay_rate()), 1.0});

    TrendReport rep;
    rep.direction = "psi->phi";
    const int n_windows = static_cast<int>(schedule.decades / trend::window_decades);
    WindowAccumulator acc(n_windows);
    for (double ln_n : sample_positions(a, b, schedule)) {
        double lr = a.log_correction_at_log_index(ln_n) - b.log_correction_at_log_index(ln_n);
        if (!same_rate) {
            // the linear parts dominate; saturate instead of overflowing
            const double n = ln_n < 690.0 ? std::exp(ln_n) : kInf;
            const double linear = rate_gap * n;
            lr = std::isfinite(linear) ? lr + linear : (linear > 0 ? kInf : -kInf);
        }
        acc.add(ln_n, lr);
    }
    rep.windows = std::move(acc.windows);
    rep.evidence = summarize(rep.windows);
    rep.verdict = verdict_from(rep.evidence);
    return rep;
}

IncomparabilityCertificate certify_incomparable(const TailSequence& g_psi,
                                                const TailSequence& g_phi,
                                                const SampleSchedule& schedule) {
    IncomparabilityCertificate cert;
    cert.forward = ratio_trend(g_psi, g_phi, schedule);
    cert.backward = ratio_trend(g_phi, g_psi, schedule);
    cert.backward.direction = "phi->psi";
    cert.certified = cert.forward.verdict == Verdict::not_convertible &&
                     cert.backward.verdict == Verdict::not_convertible;
    return cert;
}

LiminfClass classify_liminf(const TrendReport& report) {
    if (report.evidence.exact) {
        return std::isinf(report.evidence.record_min_log) && report.evidence.record_min_log < 0
                   ? LiminfClass::zero
                   : LiminfClass::positive;
    }
    if (report.verdict == Verdict::not_convertible) return LiminfClass::zero;
    if (report.evidence.min_settled) return LiminfClass::positive;
    return LiminfClass::inconclusive;
}

LimsupClass classify_limsup(const TrendReport& report) {
    if (report.evidence.exact) return LimsupClass::finite;
    if (report.evidence.max_rising && report.evidence.ceiling_crossed &&
        report.evidence.qualifying_max_windows >= trend::qualifying_required)
        return LimsupClass::infinite;
    if (report.evidence.max_settled) return LimsupClass::finite;
    return LimsupClass::inconclusive;
}

}  // namespace entorder
