#pragma once

// Randomized cross-check of every closed form against the numerical oracle,
// plus monotonicity sweeps, summarized per family.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "distributions.hpp"
#include "entropy.hpp"
#include "entropy_spec.hpp"
#include "oracle.hpp"

namespace infomeasures {

inline constexpr Family kCoreFamilies[] = {Family::Gamma, Family::Exponential, Family::ChiSquared,
                                           Family::Laplace, Family::LogNormal};
inline constexpr Family kContinuousFamilies[] = {Family::Gamma,     Family::Exponential,
                                                 Family::ChiSquared, Family::Laplace,
                                                 Family::LogNormal, Family::Normal,
                                                 Family::Uniform};
inline constexpr Measure kOrderMeasures[] = {Measure::Shannon,           Measure::Renyi,
                                             Measure::GeneralizedRenyi1, Measure::Tsallis,
                                             Measure::GeneralizedRenyi2, Measure::SharmaMittal};

inline Family parse_family(std::string_view name) {
    for (int i = 0; i <= static_cast<int>(Family::Logarithmic); ++i) {
        if (family_name(static_cast<Family>(i)) == name) return static_cast<Family>(i);
    }
    throw ParseError("unknown family '" + std::string(name) + "'");
}

inline double relative_gap(double closed, double oracle) {
    return std::abs(closed - oracle) / (1 + std::abs(closed));
}

namespace selftest_detail {

inline double log_uniform(std::mt19937_64& rng, double lo, double hi) {
    std::uniform_real_distribution<double> u(std::log(lo), std::log(hi));
    return std::exp(u(rng));
}

inline double uniform(std::mt19937_64& rng, double lo, double hi) {
    return std::uniform_real_distribution<double>(lo, hi)(rng);
}

// Orders kept at least 0.1 away from 1 and from each other, so the
// closed forms are not compared in a cancellation-dominated regime.
inline double random_order(std::mt19937_64& rng) {
    for (;;) {
        const double a = log_uniform(rng, 0.2, 5.0);
        if (std::abs(a - 1) >= 0.1) return a;
    }
}

// Keeps α(μ−1) >= −0.8 so escort integrands stay integrable with margin.
inline bool gamma_order_ok(double order, double mu) { return order * (mu - 1) >= -0.8; }

inline double gamma_mu_of(const Distribution& d) {
    if (const auto* g = d.get_if<GammaParams>()) return g->mu;
    if (const auto* c = d.get_if<ChiSquaredParams>()) return 0.5 * c->nu;
    return 1;
}

}  // namespace selftest_detail

/// A random member of the family. With `bounded_density`, gamma and
/// chi-squared are restricted to bounded densities.
inline Distribution random_distribution(Family f, std::mt19937_64& rng,
                                        bool bounded_density = false) {
    using namespace selftest_detail;
    switch (f) {
        case Family::Gamma:
            return Distribution::gamma(log_uniform(rng, 0.1, 10),
                                       bounded_density ? uniform(rng, 1, 10)
                                                       : log_uniform(rng, 0.2, 10));
        case Family::Exponential:
            return Distribution::exponential(log_uniform(rng, 0.1, 10));
        case Family::ChiSquared: {
            std::uniform_int_distribution<unsigned> nu(bounded_density ? 2 : 1, 20);
            return Distribution::chi_squared(nu(rng));
        }
        case Family::Laplace:
            return Distribution::laplace(uniform(rng, -5, 5), log_uniform(rng, 0.1, 10));
        case Family::LogNormal:
            return Distribution::lognormal(uniform(rng, -2, 2), log_uniform(rng, 0.05, 4));
        case Family::Normal:
            return Distribution::normal(uniform(rng, -5, 5), log_uniform(rng, 0.01, 100));
        case Family::Uniform: {
            const double a = uniform(rng, -5, 5);
            return Distribution::uniform(a, a + log_uniform(rng, 0.01, 100));
        }
        default:
            throw UnsupportedFamily("random_distribution: only continuous families are drawn");
    }
}

struct Draw {
    Distribution dist;
    EntropySpec spec;
};

/// A random admissible (distribution, orders) pair for the measure.
inline Draw random_admissible_draw(Family f, Measure m, std::mt19937_64& rng) {
    using namespace selftest_detail;
    if (m == Measure::ModifiedShannon) {
        return {random_distribution(f, rng, true), EntropySpec::modified_shannon()};
    }
    for (;;) {
        EntropySpec spec{m};
        if (spec.uses_alpha()) spec.alpha = random_order(rng);
        if (spec.uses_beta()) {
            do spec.beta = random_order(rng);
            while (std::abs(spec.beta - spec.alpha) < 0.1);
        }
        Distribution d = random_distribution(f, rng);
        const double mu = gamma_mu_of(d);
        if (spec.uses_alpha() && !gamma_order_ok(spec.alpha, mu)) continue;
        if (spec.uses_beta() && !gamma_order_ok(spec.beta, mu)) continue;
        return {d, spec};
    }
}

struct SelftestRow {
    std::string check;  // "oracle" or a sweep name
    Family family;
    std::string measure;
    std::size_t cases = 0;
    double max_error = 0;
    bool pass = true;
};

struct SelftestOptions {
    std::vector<Family> families{std::begin(kContinuousFamilies), std::end(kContinuousFamilies)};
    double tol = 1e-8;
    std::uint64_t seed = 42;
    std::size_t draws = 200;
    OracleConfig oracle{};
};

struct SelftestReport {
    std::vector<SelftestRow> rows;
    bool all_pass() const {
        return std::all_of(rows.begin(), rows.end(), [](const SelftestRow& r) { return r.pass; });
    }
};

namespace selftest_detail {

inline SelftestRow oracle_row(Family f, Measure m, const SelftestOptions& opt,
                              std::mt19937_64& rng) {
    SelftestRow row{"oracle", f, std::string(measure_name(m))};
    for (std::size_t i = 0; i < opt.draws; ++i) {
        const Draw draw = random_admissible_draw(f, m, rng);
        double gap;
        try {
            gap = relative_gap(evaluate(draw.spec, draw.dist),
                               oracle_entropy(draw.spec, draw.dist, opt.oracle));
        } catch (const NonConvergence&) {
            gap = std::numeric_limits<double>::infinity();
        }
        if (!(gap <= row.max_error)) row.max_error = std::isnan(gap) ? INFINITY : gap;
        ++row.cases;
    }
    row.pass = row.max_error <= opt.tol;
    return row;
}

inline std::vector<double> log_grid(double lo, double hi, std::size_t steps) {
    std::vector<double> g(steps);
    for (std::size_t i = 0; i < steps; ++i) {
        g[i] = lo * std::pow(hi / lo, static_cast<double>(i) / static_cast<double>(steps - 1));
    }
    return g;
}

// Every order-dependent measure of Exp(λ) strictly decreases in λ.
inline SelftestRow exponential_sweep() {
    SelftestRow row{"decreasing-in-lambda", Family::Exponential, "all"};
    const auto grid = log_grid(0.1, 10, 50);
    const EntropySpec specs[] = {
        EntropySpec::shannon(),
        EntropySpec::renyi(0.5),
        EntropySpec::renyi(2),
        EntropySpec::generalized_renyi1(3),
        EntropySpec::tsallis(0.5),
        EntropySpec::tsallis(2),
        EntropySpec::generalized_renyi2(2, 4),
        EntropySpec::sharma_mittal(2, 3),
        EntropySpec::sharma_mittal(0.5, 0.3),
    };
    for (const auto& spec : specs) {
        double prev = INFINITY;
        for (double l : grid) {
            const double v = evaluate(spec, Distribution::exponential(l));
            if (!(v < prev)) row.pass = false;
            prev = v;
            ++row.cases;
        }
    }
    return row;
}

// Gamma Shannon entropy decreases in λ and increases in μ.
inline SelftestRow gamma_sweep() {
    SelftestRow row{"gamma-shannon-monotone", Family::Gamma, "shannon"};
    const auto grid = log_grid(0.1, 10, 30);
    for (double mu : grid) {
        double prev = INFINITY;
        for (double l : grid) {
            const double v = shannon(Distribution::gamma(l, mu));
            if (!(v < prev)) row.pass = false;
            prev = v;
            ++row.cases;
        }
    }
    for (double l : grid) {
        double prev = -INFINITY;
        for (double mu : grid) {
            const double v = shannon(Distribution::gamma(l, mu));
            if (!(v > prev)) row.pass = false;
            prev = v;
            ++row.cases;
        }
    }
    return row;
}

}  // namespace selftest_detail

inline SelftestReport run_selftest(const SelftestOptions& opt) {
    SelftestReport report;
    std::mt19937_64 rng(opt.seed);
    for (Family f : opt.families) {
        if (std::find(std::begin(kContinuousFamilies), std::end(kContinuousFamilies), f) ==
            std::end(kContinuousFamilies)) {
            throw UnsupportedFamily("selftest covers continuous families only, got " +
                                    std::string(family_name(f)));
        }
        for (Measure m : kOrderMeasures) {
            report.rows.push_back(selftest_detail::oracle_row(f, m, opt, rng));
        }
        report.rows.push_back(
            selftest_detail::oracle_row(f, Measure::ModifiedShannon, opt, rng));
        if (f == Family::Exponential) report.rows.push_back(selftest_detail::exponential_sweep());
        if (f == Family::Gamma) report.rows.push_back(selftest_detail::gamma_sweep());
    }
    return report;
}

}  // namespace infomeasures
