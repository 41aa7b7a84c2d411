// Schmidt spectra, tail sums, and the four validity conditions.
//
// Expected values tagged "oracle" are computed in the test itself by an
// independent route (direct summation, differencing, closed forms).

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "entorder/spectra.hpp"

using namespace entorder;

namespace {

// independent oracle: naive forward summation of the tail in linear space
std::vector<double> naive_tails(const std::vector<double>& lambdas) {
    std::vector<double> g(lambdas.size() + 1, 0.0);
    for (std::size_t n = 0; n < lambdas.size(); ++n) {
        double sum = 0.0;
        for (std::size_t i = n; i < lambdas.size(); ++i) sum += lambdas[i];
        g[n] = sum;
    }
    return g;
}

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

}  // namespace

TEST_CASE("tail sums of small spectra") {
    const auto t = tail_sums(SchmidtSpectrum({0.5, 0.3, 0.2}));
    CHECK(t.finite());
    CHECK(t.rank() == 3);
    CHECK(std::exp(t.log_g(0)) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(std::exp(t.log_g(1)) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(std::exp(t.log_g(2)) == doctest::Approx(0.2).epsilon(1e-12));
    CHECK(std::isinf(t.log_g(3)));
    CHECK(std::isinf(t.log_g(17)));

    const auto product = tail_sums(SchmidtSpectrum({1.0}));
    CHECK(std::exp(product.log_g(0)) == doctest::Approx(1.0));
    CHECK(std::isinf(product.log_g(1)));
}

TEST_CASE("squeezed spectrum tail matches the geometric closed form") {
    // oracle: direct summation vs g(n) = q^{2n}
    const auto s = squeezed_state_spectrum(0.5, 60);
    const auto t = tail_sums(s);
    const auto naive = naive_tails({s.lambdas().begin(), s.lambdas().end()});
    for (std::size_t n = 0; n <= 40; ++n) {
        const double closed = std::pow(0.25, static_cast<double>(n));
        CHECK(std::exp(t.log_g(n)) == doctest::Approx(closed).epsilon(1e-12));
        CHECK(std::exp(t.log_g(n)) == doctest::Approx(naive[n]).epsilon(1e-12));
    }
}

TEST_CASE("squeezed spectrum values and entropy") {
    const auto s = squeezed_state_spectrum(0.5, 60);
    CHECK(s[0] == doctest::Approx(0.75).epsilon(1e-15));
    CHECK(s[1] == doctest::Approx(0.1875).epsilon(1e-15));

    // oracle: brute-force sum, plus the geometric-distribution closed form
    double brute = 0.0;
    for (double v : s.lambdas()) brute -= v * std::log2(v);
    CHECK(entropy(s) == doctest::Approx(brute).epsilon(1e-13));
    const double q2 = 0.25;
    const double closed = (-q2 * std::log2(q2) - (1 - q2) * std::log2(1 - q2)) / (1 - q2);
    CHECK(entropy(s) == doctest::Approx(closed).epsilon(1e-12));

    // q -> 0 limit approaches a product state
    const auto nearly_product = squeezed_state_spectrum(1e-6, 5);
    CHECK(nearly_product[0] == doctest::Approx(1.0).epsilon(1e-11));
}

TEST_CASE("rank and entropy basics") {
    CHECK(schmidt_rank(SchmidtSpectrum({0.5, 0.5})) == 2);
    CHECK(entropy(SchmidtSpectrum({0.5, 0.5})) == doctest::Approx(1.0));
    CHECK(schmidt_rank(SchmidtSpectrum({1.0})) == 1);
    CHECK(entropy(SchmidtSpectrum({1.0})) == doctest::Approx(0.0));
    for (std::size_t k : {2, 3, 7, 12}) {
        const std::vector<double> uniform(k, 1.0 / static_cast<double>(k));
        const SchmidtSpectrum me(uniform);
        CHECK(schmidt_rank(me) == k);
        CHECK(entropy(me) == doctest::Approx(std::log2(static_cast<double>(k))).epsilon(1e-12));
    }
}

TEST_CASE("spectrum construction rejects bad input") {
    CHECK_THROWS_AS(SchmidtSpectrum({0.3, 0.5, 0.2}), std::invalid_argument);  // increasing
    CHECK_THROWS_AS(SchmidtSpectrum({0.9, -0.1, 0.2}), std::invalid_argument);
    CHECK_THROWS_AS(SchmidtSpectrum({0.5, 0.3}), std::invalid_argument);  // sum != 1
    CHECK_THROWS_AS(SchmidtSpectrum(std::vector<double>{}), std::invalid_argument);
    CHECK_THROWS_AS(squeezed_state_spectrum(1.0, 5), std::invalid_argument);
    CHECK_THROWS_AS(squeezed_state_spectrum(0.0, 5), std::invalid_argument);

    // trailing zeros are trimmed, not rejected
    CHECK(SchmidtSpectrum({0.6, 0.4, 0.0, 0.0}).rank() == 2);
}

TEST_CASE("spectrum_from_tail inverts tail_sums") {
    const auto s = spectrum_from_tail(TailSequence::from_values({1.0, 0.5, 0.2, 0.0}), 3);
    REQUIRE(s.rank() == 3);
    CHECK(s[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK(s[1] == doctest::Approx(0.3).epsilon(1e-14));
    CHECK(s[2] == doctest::Approx(0.2).epsilon(1e-14));

    // oracle: differencing the geometric tail gives lambda_n = (3/4) 4^{-n}
    const auto geo = spectrum_from_tail(squeezed_tail(0.5), 30, true);
    for (std::size_t n = 0; n < 30; ++n)
        CHECK(geo[n] ==
              doctest::Approx(0.75 * std::pow(0.25, static_cast<double>(n))).epsilon(1e-10));

    CHECK_THROWS_AS(spectrum_from_tail(TailSequence::from_values({1.0, 0.5, 0.5}), 3),
                    TailValidityError);
    try {
        spectrum_from_tail(TailSequence::from_values({1.0, 0.5, 0.5}), 3);
    } catch (const TailValidityError& e) {
        CHECK_FALSE(e.report().monotonicity_ok);
        REQUIRE(e.report().first_violation.has_value());
        CHECK(*e.report().first_violation == 1.0);
    }
}

TEST_CASE("roundtrip spectrum -> tail -> spectrum") {
    std::mt19937_64 rng(42);
    for (int trial = 0; trial < 200; ++trial) {
        const SchmidtSpectrum s(random_spectrum(rng, 12));
        const auto back = spectrum_from_tail(tail_sums(s), s.rank());
        REQUIRE(back.rank() == s.rank());
        for (std::size_t i = 0; i < s.rank(); ++i)
            CHECK(back[i] == doctest::Approx(s[i]).epsilon(tol::roundtrip));
    }
}

TEST_CASE("validate_tail on closed-form tails") {
    // e^{-n} is already normalized and satisfies everything
    CHECK(validate_tail(geometric_tail(1.0), {0.0, 1e6}).all_ok());

    // harmonic tail g(n) = 1/(n+1): valid, and differencing gives 1/((n+1)(n+2))
    const auto harmonic = power_law_tail(1.0, 0.0);
    CHECK(validate_tail(harmonic, {0.0, 1e6}).all_ok());
    const auto lam = spectrum_from_tail(harmonic, 40, true);
    const double trunc = 1.0 - 1.0 / 41.0;  // renormalization over 40 terms
    for (std::size_t n = 0; n < 8; ++n) {
        const double expect = 1.0 / ((n + 1.0) * (n + 2.0));
        CHECK(lam[n] == doctest::Approx(expect / trunc).epsilon(1e-10));
    }

    // flat step: monotonicity violation at its index
    std::vector<double> g{1.0, 0.7, 0.5, 0.35, 0.25, 0.2, 0.2, 0.1, 0.05};
    const auto rep = validate_tail(TailSequence::from_values(g), {0.0, 9.0});
    CHECK_FALSE(rep.monotonicity_ok);
    REQUIRE(rep.first_violation.has_value());
    CHECK(*rep.first_violation == 5.0);
}

TEST_CASE("validity conditions mirror spectrum invariants") {
    // positive coefficients <-> strict monotonicity; nonincreasing <-> convexity;
    // unit sum <-> normalization
    const auto good = validate_tail(tail_sums_raw(std::vector<double>{0.5, 0.3, 0.2}), {0.0, 4.0});
    CHECK(good.all_ok());

    const auto zero_mid =
        validate_tail(tail_sums_raw(std::vector<double>{0.5, 0.0, 0.5}), {0.0, 4.0});
    CHECK_FALSE(zero_mid.monotonicity_ok);

    const auto increasing =
        validate_tail(tail_sums_raw(std::vector<double>{0.2, 0.3, 0.5}), {0.0, 4.0});
    CHECK_FALSE(increasing.convexity_ok);

    const auto unnormalized =
        validate_tail(tail_sums_raw(std::vector<double>{0.5, 0.3}), {0.0, 3.0});
    CHECK_FALSE(unnormalized.normalization_ok);
}

TEST_CASE("log-domain tails survive deep underflow") {
    // naive linear summation underflows near n ~ 500 for q = 0.5
    const auto t = squeezed_tail(0.5);
    const double expected = 2.0 * 2000.0 * std::log(0.5);
    CHECK(t.log_g(2000.0) == doctest::Approx(expected).epsilon(1e-13));
    CHECK(std::isfinite(t.log_g(1e9)));

    // summed finite tails agree with the generator while representable; a log
    // difference below 1e-12 is a relative difference below 1e-12 on g itself
    const auto s = squeezed_state_spectrum(0.5, 400);
    const auto summed = tail_sums(s);
    for (std::size_t n = 0; n <= 200; n += 7) {
        const double expect = 2.0 * static_cast<double>(n) * std::log(0.5);
        CHECK(std::abs(summed.log_g(static_cast<double>(n)) - expect) <= 1e-12);
    }
}

TEST_CASE("squeezed tail generator stays on the closed form") {
    for (double q : {0.3, 0.5, 0.8}) {
        const auto t = squeezed_tail(q);
        for (std::size_t n = 0; n <= 1000; n += 13) {
            const double expect = 2.0 * static_cast<double>(n) * std::log(q);
            CHECK(std::abs(t.log_g(static_cast<double>(n)) - expect) <= 1e-10);
        }
    }
}
