// Convertibility criteria: majorization, rank, conversion probability, the
// maximally entangled chain bounds, and tail ratio trend classification.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>

#include "entorder/slocc.hpp"

using namespace entorder;

namespace {

std::vector<double> random_spectrum(std::mt19937_64& rng, std::size_t max_dim) {
    std::uniform_int_distribution<std::size_t> dim(1, max_dim);
    std::exponential_distribution<double> ex(1.0);
    std::vector<double> v(dim(rng));
    double sum = 0.0;
    for (auto& x : v) {
        x = ex(rng) + 1e-6;
        sum += x;
    }
    for (auto& x : v) x /= sum;
    std::sort(v.rbegin(), v.rend());
    return v;
}

// oracle: the partial-sum definition of majorization, written directly
bool majorizes_oracle(const std::vector<double>& psi, const std::vector<double>& phi) {
    const std::size_t n = std::max(psi.size(), phi.size());
    double sp = 0.0, sq = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        sp += k < psi.size() ? psi[k] : 0.0;
        sq += k < phi.size() ? phi[k] : 0.0;
        if (sp > sq + tol::majorization) return false;
    }
    return true;
}

std::vector<double> uniform_spectrum(std::size_t k) {
    return std::vector<double>(k, 1.0 / static_cast<double>(k));
}

}  // namespace

TEST_CASE("locc conversion basics") {
    const SchmidtSpectrum bell({0.5, 0.5});
    const SchmidtSpectrum product({1.0});
    CHECK(locc_convertible(bell, product));
    CHECK_FALSE(locc_convertible(product, bell));
}

TEST_CASE("locc agrees with the partial-sum oracle") {
    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto a = random_spectrum(rng, 6), b = random_spectrum(rng, 6);
        CHECK(locc_convertible(SchmidtSpectrum(a), SchmidtSpectrum(b)) ==
              majorizes_oracle(a, b));
    }
    // exact ties count as satisfied
    CHECK(locc_convertible(SchmidtSpectrum({0.5, 0.5}), SchmidtSpectrum({0.5, 0.5})));
    CHECK(locc_convertible(SchmidtSpectrum(uniform_spectrum(4)),
                           SchmidtSpectrum(uniform_spectrum(4))));
}

TEST_CASE("stochastic conversion between finite spectra is rank comparison") {
    CHECK(slocc_convertible_finite(SchmidtSpectrum({0.5, 0.3, 0.2}), SchmidtSpectrum({0.6, 0.4})));
    CHECK_FALSE(
        slocc_convertible_finite(SchmidtSpectrum({0.6, 0.4}), SchmidtSpectrum({0.5, 0.3, 0.2})));

    // oracle: existence of a positive lower bound for the tail ratio over the
    // target's support
    std::mt19937_64 rng(6);
    for (int trial = 0; trial < 2000; ++trial) {
        const SchmidtSpectrum psi(random_spectrum(rng, 9)), phi(random_spectrum(rng, 9));
        const bool ratio_bounded = psi.rank() >= phi.rank();  // zero hits otherwise
        CHECK(slocc_convertible_finite(psi, phi) == ratio_bounded);
    }
}

TEST_CASE("maximum conversion probability") {
    const SchmidtSpectrum bell({0.5, 0.5});
    const SchmidtSpectrum product({1.0});
    const SchmidtSpectrum tilted({0.8, 0.2});

    CHECK(max_conversion_probability(bell, bell) == 1.0);
    CHECK(max_conversion_probability(product, bell) == 0.0);  // rank deficit
    // known value: converting a tilted pair up to a Bell pair succeeds with 2(1-l0)
    CHECK(max_conversion_probability(tilted, bell) == doctest::Approx(0.4).epsilon(1e-12));
    CHECK(max_conversion_probability(bell, tilted) == 1.0);

    // rank surplus on the source must not truncate its tails
    const SchmidtSpectrum skewed({0.95, 0.03, 0.02});
    CHECK(max_conversion_probability(skewed, bell) == doctest::Approx(0.1).epsilon(1e-12));
}

TEST_CASE("conversion probability equals the tail-ratio infimum") {
    // oracle: partial sums computed directly in the test
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 2000; ++trial) {
        const auto a = random_spectrum(rng, 9), b = random_spectrum(rng, 9);
        const SchmidtSpectrum psi(a), phi(b);
        double oracle;
        if (a.size() < b.size()) {
            oracle = 0.0;
        } else if (majorizes_oracle(a, b)) {
            oracle = 1.0;
        } else {
            oracle = 1.0;
            for (std::size_t k = 0; k < b.size(); ++k) {
                double gp = 0.0, gq = 0.0;
                for (std::size_t i = k; i < a.size(); ++i) gp += a[i];
                for (std::size_t i = k; i < b.size(); ++i) gq += b[i];
                oracle = std::min(oracle, gp / gq);
            }
        }
        CHECK(max_conversion_probability(psi, phi) == doctest::Approx(oracle).epsilon(1e-12));
    }
}

TEST_CASE("probability one exactly characterizes deterministic conversion") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 2000; ++trial) {
        const SchmidtSpectrum psi(random_spectrum(rng, 8)), phi(random_spectrum(rng, 8));
        const double p = max_conversion_probability(psi, phi);
        CHECK((p == 1.0) == locc_convertible(psi, phi));
        CHECK(p >= 0.0);
        CHECK(p <= 1.0);
        // deterministic conversion implies stochastic conversion
        if (locc_convertible(psi, phi)) CHECK(slocc_convertible_finite(psi, phi));
    }
}

TEST_CASE("locc order is reflexive and transitive") {
    std::mt19937_64 rng(8);
    for (int trial = 0; trial < 500; ++trial) {
        const SchmidtSpectrum a(random_spectrum(rng, 6));
        const SchmidtSpectrum b(random_spectrum(rng, 6));
        const SchmidtSpectrum c(random_spectrum(rng, 6));
        CHECK(locc_convertible(a, a));
        if (locc_convertible(a, b) && locc_convertible(b, c)) CHECK(locc_convertible(a, c));
    }
}

TEST_CASE("bounds against the maximally entangled chain") {
    for (std::size_t k : {1, 2, 3, 5, 8}) {
        const auto b = me_bounds(SchmidtSpectrum(uniform_spectrum(k)));
        CHECK(b.k_minus == k);
        CHECK(b.k_plus == k);
    }
    const auto b1 = me_bounds(SchmidtSpectrum({0.4, 0.3, 0.3}));
    CHECK(b1.k_minus == 2);
    CHECK(b1.k_plus == 3);
    const auto b2 = me_bounds(SchmidtSpectrum({0.5, 0.25, 0.25}));
    CHECK(b2.k_minus == 2);
    CHECK(b2.k_plus == 3);
}

TEST_CASE("chain bounds match brute-force majorization against every dimension") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 500; ++trial) {
        const auto lam = random_spectrum(rng, 10);
        const SchmidtSpectrum psi(lam);
        const auto b = me_bounds(psi);

        std::size_t brute_minus = 0, brute_plus = 0;
        for (std::size_t k = 1; k <= 12; ++k) {
            if (majorizes_oracle(lam, uniform_spectrum(k))) brute_minus = k;
            if (brute_plus == 0 && majorizes_oracle(uniform_spectrum(k), lam)) brute_plus = k;
        }
        CHECK(b.k_minus == brute_minus);
        CHECK(b.k_plus == brute_plus);
        CHECK(b.k_minus <= b.k_plus);

        // equality only for maximally entangled spectra
        if (b.k_minus == b.k_plus) {
            for (double v : lam) CHECK(v == doctest::Approx(lam[0]).epsilon(1e-9));
        }
    }
}

TEST_CASE("trend verdicts on closed-form tails") {
    SampleSchedule s;
    s.decades = 48.0;

    // identical tails: log ratio identically zero
    const auto equal = ratio_trend(geometric_tail(1.0), geometric_tail(1.0), s);
    CHECK(equal.verdict == Verdict::convertible);
    CHECK(equal.evidence.record_min_log == doctest::Approx(0.0));
    CHECK(equal.evidence.record_max_log == doctest::Approx(0.0));

    // e^{-2n} against e^{-n}: ratio e^{-n} collapses
    const auto down = ratio_trend(geometric_tail(2.0), geometric_tail(1.0), s);
    CHECK(down.verdict == Verdict::not_convertible);
    CHECK(down.evidence.floor_crossed);
    // the reverse ratio grows without bound and stays bounded below
    const auto up = ratio_trend(geometric_tail(1.0), geometric_tail(2.0), s);
    CHECK(up.verdict == Verdict::convertible);

    // short horizons refuse to decide
    SampleSchedule tiny;
    tiny.decades = 3.0;
    CHECK(ratio_trend(geometric_tail(2.0), geometric_tail(1.0), tiny).verdict ==
          Verdict::inconclusive);
}

TEST_CASE("trend on finite spectra reduces to rank comparison") {
    std::mt19937_64 rng(10);
    SampleSchedule s;
    for (int trial = 0; trial < 500; ++trial) {
        const SchmidtSpectrum psi(random_spectrum(rng, 9)), phi(random_spectrum(rng, 9));
        const auto rep = ratio_trend(tail_sums(psi), tail_sums(phi), s);
        CHECK(rep.evidence.exact);
        CHECK((rep.verdict == Verdict::convertible) == slocc_convertible_finite(psi, phi));
    }
}

TEST_CASE("mixed tail kinds are rejected") {
    SampleSchedule s;
    CHECK_THROWS_AS(
        ratio_trend(tail_sums(SchmidtSpectrum({0.5, 0.5})), geometric_tail(1.0), s),
        std::invalid_argument);
}

TEST_CASE("incomparability certificates require both directions blocked") {
    SampleSchedule s;
    s.decades = 48.0;
    const auto self = certify_incomparable(geometric_tail(1.0), geometric_tail(1.0), s);
    CHECK_FALSE(self.certified);
    const auto oneway = certify_incomparable(geometric_tail(2.0), geometric_tail(1.0), s);
    CHECK_FALSE(oneway.certified);
    CHECK(oneway.forward.verdict == Verdict::not_convertible);
    CHECK(oneway.backward.verdict == Verdict::convertible);
}

TEST_CASE("the two certificate directions mirror each other exactly") {
    // both directions sample the same positions, so the log ratios negate
    SampleSchedule s;
    s.decades = 48.0;
    const auto cert = certify_incomparable(power_law_tail(1.5, 1.0), power_law_tail(1.0, 1.0), s);
    REQUIRE(cert.forward.windows.size() == cert.backward.windows.size());
    CHECK(cert.forward.evidence.record_min_log == -cert.backward.evidence.record_max_log);
    CHECK(cert.forward.evidence.record_max_log == -cert.backward.evidence.record_min_log);
    for (std::size_t w = 0; w < cert.forward.windows.size(); ++w) {
        CHECK(cert.forward.windows[w].min_log_ratio == -cert.backward.windows[w].max_log_ratio);
        CHECK(cert.forward.windows[w].max_log_ratio == -cert.backward.windows[w].min_log_ratio);
    }
}

TEST_CASE("power-law ratios classify by their exponent") {
    SampleSchedule s;
    s.decades = 60.0;
    // ratio (n+1)^{-0.5}: sinks, crosses the floor near n ~ 10^6
    const auto sink = ratio_trend(power_law_tail(1.5, 1.0), power_law_tail(1.0, 1.0), s);
    CHECK(sink.verdict == Verdict::not_convertible);
    // ratio (n+1)^{+0.5}: grows, minima settle at the early record
    const auto grow = ratio_trend(power_law_tail(1.0, 1.0), power_law_tail(1.5, 1.0), s);
    CHECK(grow.verdict == Verdict::convertible);
}
