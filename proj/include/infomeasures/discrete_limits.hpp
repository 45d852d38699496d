#pragma once

// Poisson entropy as a function of its rate, and the two discrete limit
// experiments: binomial toward Poisson, and the zero-truncated negative
// binomial toward the logarithmic law.

#include <cmath>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "distributions.hpp"
#include "entropy.hpp"
#include "errors.hpp"
#include "oracle.hpp"

namespace infomeasures {

namespace limits_detail {

/// e^{-λ} Σ_{k>=k0} λ^k w(k) / k! for a positive weight w whose ratio
/// w(k+1)/w(k) is non-increasing. `log_w` returns log w(k).
///
/// Terms are built in log space with the e^{-λ} factor folded in. Once
/// ρ_k = λ/(k+1) · w(k+1)/w(k) <= 1/2 every later ratio is at most ρ_k,
/// so the remaining tail is below t_k ρ_k / (1 - ρ_k) <= t_k.
template <class LogWeight>
OracleValue weighted_poisson_series(double lambda, std::uint64_t k0, LogWeight log_w,
                                    const OracleConfig& cfg) {
    if (!(lambda > 0) || !std::isfinite(lambda)) {
        throw DomainError("poisson series: lambda must be finite and > 0");
    }
    const long double log_lambda = std::log(static_cast<long double>(lambda));
    oracle_detail::CompensatedSum acc;
    std::uint64_t k = k0;
    long double tail = 0;
    for (;; ++k) {
        if (k - k0 >= cfg.max_terms) {
            throw NonConvergence("poisson series: " + std::to_string(cfg.max_terms) +
                                 " terms summed without certifying the tail");
        }
        const long double lw = log_w(k);
        const long double lt =
            -lambda + static_cast<long double>(k) * log_lambda - log_factorial(k) + lw;
        const long double term = std::exp(lt);
        acc.add(term);
        const long double rho = lambda / (k + 1.0L) * std::exp(log_w(k + 1) - lw);
        if (rho > 0.5L) continue;
        const long double bound = term * rho / (1 - rho);
        if (bound <= cfg.series_tail_tol) {
            tail = bound;
            break;
        }
    }
    return {static_cast<double>(acc.value()), static_cast<double>(tail), k - k0 + 1};
}

}  // namespace limits_detail

/// −λ log(λ/e) + e^{-λ} Σ_{k>=2} λ^k log k! / k!.
inline double poisson_entropy(double lambda, const OracleConfig& cfg = {}) {
    auto log_log_factorial = [](std::uint64_t k) { return std::log(log_factorial(k)); };
    const double series =
        limits_detail::weighted_poisson_series(lambda, 2, log_log_factorial, cfg).value;
    return -lambda * (std::log(lambda) - 1) + series;
}

/// e^{-λ} Σ_{i>=1} λ^i log(i+1) / i!.
inline double poisson_log_shift_series(double lambda, const OracleConfig& cfg = {}) {
    auto log_log_next = [](std::uint64_t i) {
        return std::log(std::log1p(static_cast<double>(i)));
    };
    return limits_detail::weighted_poisson_series(lambda, 1, log_log_next, cfg).value;
}

/// d/dλ of poisson_entropy.
inline double poisson_entropy_derivative(double lambda, const OracleConfig& cfg = {}) {
    return poisson_log_shift_series(lambda, cfg) - std::log(lambda);
}

struct SeriesGrowthRow {
    double lambda;
    double value;
};

inline std::vector<SeriesGrowthRow> appendix_series_growth(std::span<const double> lambdas,
                                                           const OracleConfig& cfg = {}) {
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        if (!(lambdas[i] > 0) || (i > 0 && !(lambdas[i] > lambdas[i - 1]))) {
            throw InvalidGrid("series growth: λ-grid must be positive and increasing");
        }
    }
    std::vector<SeriesGrowthRow> rows;
    rows.reserve(lambdas.size());
    for (double l : lambdas) rows.push_back({l, poisson_log_shift_series(l, cfg)});
    return rows;
}

// ---------------------------------------------------------------------------
// Convergence experiments

struct ExperimentRow {
    double driver;
    double approx;
    double limit;
    double abs_error;
};

struct ConvergenceTable {
    std::string driver_name;
    std::vector<ExperimentRow> rows;

    /// Whether the error strictly decreases across the last `count` rows.
    bool errors_decrease_over_last(std::size_t count) const {
        if (count > rows.size()) return false;
        for (std::size_t i = rows.size() - count + 1; i < rows.size(); ++i) {
            if (!(rows[i].abs_error < rows[i - 1].abs_error)) return false;
        }
        return true;
    }
};

inline ExperimentRow make_row(double driver, double approx, double limit) {
    return {driver, approx, limit, std::abs(approx - limit)};
}

/// Binomial(n, p_n) entropies against Poisson(λ), with p_n = (λ/n)(1 + c/n).
inline ConvergenceTable binomial_to_poisson(double lambda, std::span<const std::uint64_t> n_grid,
                                            double perturbation = 0,
                                            const OracleConfig& cfg = {}) {
    if (!(lambda > 0) || !std::isfinite(lambda)) {
        throw InvalidParameter("binomial_to_poisson: lambda must be finite and > 0");
    }
    if (n_grid.empty()) throw InvalidGrid("binomial_to_poisson: empty n-grid");
    for (std::size_t i = 0; i < n_grid.size(); ++i) {
        const double n = static_cast<double>(n_grid[i]);
        if (i > 0 && !(n_grid[i] > n_grid[i - 1])) {
            throw InvalidGrid("binomial_to_poisson: n-grid must be strictly increasing");
        }
        if (n < lambda) throw InvalidGrid("binomial_to_poisson: n < λ at n = " + std::to_string(n_grid[i]));
        const double p = lambda / n * (1 + perturbation / n);
        if (!(p > 0 && p < 1)) {
            throw InvalidGrid("binomial_to_poisson: p_n outside (0, 1) at n = " +
                              std::to_string(n_grid[i]));
        }
    }
    const double limit = poisson_entropy(lambda, cfg);
    ConvergenceTable table{"n", {}};
    for (std::uint64_t n : n_grid) {
        const double nd = static_cast<double>(n);
        const double p = lambda / nd * (1 + perturbation / nd);
        const double h =
            -discrete_entropy_sum(Distribution::binomial(n, p), SeriesTransform::PLogP, 1, cfg)
                 .value;
        table.rows.push_back(make_row(nd, h, limit));
    }
    return table;
}

/// Zero-truncated negative binomial(p, r) entropies against Logarithmic(p)
/// as r decreases toward 0. Rows follow the grid order.
inline ConvergenceTable nb_to_logarithmic(double p, std::span<const double> r_grid,
                                          const OracleConfig& cfg = {}) {
    if (!(p > 0 && p < 1)) throw InvalidParameter("nb_to_logarithmic: p must lie in (0, 1)");
    if (r_grid.empty()) throw InvalidGrid("nb_to_logarithmic: empty r-grid");
    for (std::size_t i = 0; i < r_grid.size(); ++i) {
        if (!(r_grid[i] > 0 && r_grid[i] < 0.5)) {
            throw InvalidGrid("nb_to_logarithmic: r must lie in (0, 1/2)");
        }
        if (i > 0 && !(r_grid[i] < r_grid[i - 1])) {
            throw InvalidGrid("nb_to_logarithmic: r-grid must be strictly decreasing");
        }
    }
    const double limit = -discrete_entropy_sum(Distribution::logarithmic(p),
                                               SeriesTransform::PLogP, 1, cfg)
                              .value;
    ConvergenceTable table{"r", {}};
    for (double r : r_grid) {
        const double h = -discrete_entropy_sum(Distribution::nb_conditional(p, r),
                                               SeriesTransform::PLogP, 1, cfg)
                              .value;
        table.rows.push_back(make_row(r, h, limit));
    }
    return table;
}

}  // namespace infomeasures
