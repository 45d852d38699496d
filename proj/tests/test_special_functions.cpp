#include <catch_amalgamated.hpp>

#include <cmath>
#include <numbers>
#include <random>

#include <infomeasures/special_functions.hpp>

using namespace infomeasures;
using Catch::Matchers::WithinAbs;

namespace {

// Mixed tolerance: relative for large values, absolute near zeros.
bool close(double got, double want, double tol) {
    return std::abs(got - want) <= tol * std::max(1.0, std::abs(want));
}

}  // namespace

TEST_CASE("log_gamma exact points") {
    CHECK(log_gamma(1.0) == 0.0);
    CHECK(log_gamma(2.0) == 0.0);
    // mpmath: log of ∫ t^{-1/2} e^{-t} dt
    CHECK(close(log_gamma(0.5), 0.57236494292470008707, 1e-13));
    CHECK(close(log_gamma(0.001), 6.9071788853838536825, 1e-13));
    CHECK(close(log_gamma(123.456), 469.60554712992946873, 1e-13));
}

TEST_CASE("log_gamma agrees with lgammal over [1e-6, 1e6]") {
    double worst = 0;
    for (double x = 1e-6; x <= 1e6; x *= 1.0137) {
        const long double ref = std::lgamma(static_cast<long double>(x));
        const double err = std::abs(log_gamma(x) - static_cast<double>(ref)) /
                           std::max(1.0, std::abs(static_cast<double>(ref)));
        worst = std::max(worst, err);
    }
    CHECK(worst < 1e-13);
}

TEST_CASE("digamma values") {
    constexpr double euler = 0.57721566490153286061;
    CHECK_THAT(digamma(1.0), WithinAbs(-euler, 1e-12));
    CHECK_THAT(digamma(2.0), WithinAbs(1 - euler, 1e-12));
    CHECK_THAT(digamma(7.5), WithinAbs(1.9467574842460867881, 1e-12));
    CHECK_THAT(digamma(7.5), WithinAbs(digamma(6.5) + 1 / 6.5, 1e-12));
    // ψ(x) ≈ −1/x − γ near 0
    CHECK(close(digamma(1e-6), -1e6 - euler + 1.6449340668482264 * 1e-6, 1e-12));
}

TEST_CASE("trigamma values") {
    const double z2 = std::numbers::pi * std::numbers::pi / 6;
    CHECK_THAT(trigamma(1.0), WithinAbs(1.6449340668482264365, 1e-12));
    CHECK_THAT(trigamma(2.0), WithinAbs(z2 - 1, 1e-12));
    CHECK_THAT(trigamma(3.7), WithinAbs(0.3100378576700383191, 1e-12));
    CHECK(trigamma(3.7) > 1 / 3.7);
    CHECK(trigamma(3.7) < 1 / 3.7 + 1 / (3.7 * 3.7));
}

TEST_CASE("recurrences on random arguments") {
    std::mt19937_64 rng(42);
    std::uniform_real_distribution<double> u(1e-3, 100.0);
    for (int i = 0; i < 10000; ++i) {
        const double x = u(rng);
        INFO("x = " << x);
        // measured against the largest term, since the step cancels near 0
        auto holds = [](double lhs, double f, double step) {
            const double scale = std::max({1.0, std::abs(f), std::abs(step)});
            return std::abs(lhs - (f + step)) <= 1e-12 * scale;
        };
        REQUIRE(holds(log_gamma(x + 1), log_gamma(x), std::log(x)));
        REQUIRE(holds(digamma(x + 1), digamma(x), 1 / x));
        REQUIRE(holds(trigamma(x + 1), trigamma(x), -1 / (x * x)));
    }
}

TEST_CASE("inequalities and monotonicity") {
    double prev_psi = -INFINITY, prev_tri = INFINITY;
    for (double x = 0.01; x < 1000; x *= 1.05) {
        const double psi = digamma(x), tri = trigamma(x);
        INFO("x = " << x);
        REQUIRE(tri > 1 / x);
        REQUIRE(tri < 1 / x + 1 / (x * x));
        REQUIRE(psi < std::log(x));
        REQUIRE(psi > prev_psi);
        REQUIRE(tri < prev_tri);
        prev_psi = psi;
        prev_tri = tri;
    }
}

TEST_CASE("domain errors") {
    CHECK_THROWS_AS(log_gamma(0.0), DomainError);
    CHECK_THROWS_AS(log_gamma(-1.0), DomainError);
    CHECK_THROWS_AS(digamma(-2.5), DomainError);
    CHECK_THROWS_AS(trigamma(std::nan("")), DomainError);
    CHECK_THROWS_AS(log_gamma(INFINITY), DomainError);
}
