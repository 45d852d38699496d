#pragma once

// Numerical ground truth for the closed forms.
//
// Continuous functionals are integrated with adaptive Gauss-Kronrod
// quadrature in a coordinate chosen per support type:
//   (0,∞) families   x = t/(1-t) half-line map, graded mesh at 0 when μ < 1
//   log-normal       s = log x, whole line split at the integrand mode
//   ℝ families       whole line split at the mode (and at KL kinks)
//   uniform          the finite interval
// Discrete functionals are summed term by term with a certified tail bound.
// Nothing here calls a closed-form entropy.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include "distributions.hpp"
#include "entropy_spec.hpp"
#include "errors.hpp"
#include "quadrature.hpp"

namespace infomeasures {

struct OracleConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    int max_subdivisions = 2000;
    double series_tail_tol = 1e-14;
    std::uint64_t max_terms = 10'000'000;

    void validate() const {
        if (!(abs_tol > 0) || !(rel_tol > 0) || !(series_tail_tol > 0)) {
            throw InvalidParameter("oracle tolerances must be > 0");
        }
        if (max_subdivisions < 1 || max_terms < 1) {
            throw InvalidParameter("oracle budgets must be >= 1");
        }
    }

    quad::Options quadrature() const { return {abs_tol, rel_tol, max_subdivisions}; }
};

/// A numerical value with its error estimate (quadrature) or tail bound (series).
struct OracleValue {
    double value = 0;
    double abs_error = 0;
    std::uint64_t evaluations = 0;  // panels or series terms
};

namespace oracle_detail {

inline OracleValue from_quad(const quad::Result& r) {
    return {static_cast<double>(r.value), static_cast<double>(r.abs_error),
            static_cast<std::uint64_t>(r.panels)};
}

inline long double power_term(bool with_log, long double alpha, long double log_p) {
    if (log_p == -std::numeric_limits<long double>::infinity()) return 0;
    const long double power = std::exp(alpha * log_p);
    return with_log ? power * log_p : power;
}

// log p(e^s) for the log-normal density; callers multiply by the Jacobian e^s.
inline long double lognormal_log_density_at_log(const LogNormalParams& l, long double s) {
    const long double z = s - l.m;
    return -s - 0.5L * std::log(2 * std::numbers::pi_v<long double> * l.sigma2) -
           z * z / (2 * l.sigma2);
}

// ∫ h(log p(x)) dx, where h(-inf) must be 0. `alpha` only shapes the
// coordinate map (the integrand decays like p^alpha).
template <class H>
OracleValue continuous_functional(const Distribution& d, double alpha, H&& h,
                                  const OracleConfig& cfg) {
    if (!d.is_continuous()) throw FamilyMismatch("oracle: continuous functional of discrete law");
    cfg.validate();
    const auto opt = cfg.quadrature();
    const long double a = alpha;
    auto apply = [&](long double lp) -> long double {
        if (lp == -std::numeric_limits<long double>::infinity()) return 0;
        return h(lp);
    };

    switch (d.family()) {
        case Family::Gamma:
        case Family::Exponential:
        case Family::ChiSquared: {
            double lambda = 0, mu = 0;
            if (const auto* g = d.get_if<GammaParams>()) {
                lambda = g->lambda;
                mu = g->mu;
            } else if (const auto* e = d.get_if<ExponentialParams>()) {
                lambda = e->lambda;
                mu = 1;
            } else {
                lambda = 0.5;
                mu = 0.5 * d.get<ChiSquaredParams>().nu;
            }
            const long double scale =
                std::max(1.0L, a * (mu - 1) + 1) / (a * static_cast<long double>(lambda));
            auto f = [&](long double x) { return apply(log_pdf(d, static_cast<double>(x))); };
            return from_quad(quad::integrate_half_line(f, 0.0L, scale, opt, mu < 1));
        }
        case Family::LogNormal: {
            const auto& l = d.get<LogNormalParams>();
            auto f = [&](long double s) {
                return apply(lognormal_log_density_at_log(l, s)) * std::exp(s);
            };
            const long double mode = l.m + (1 - a) * l.sigma2 / a;
            const long double split[1] = {mode};
            return from_quad(quad::integrate_real_line(f, split, std::sqrt(l.sigma2 / a), opt));
        }
        case Family::Laplace:
        case Family::Normal: {
            long double centre = 0, scale = 1;
            if (const auto* l = d.get_if<LaplaceParams>()) {
                centre = l->mu;
                scale = 1 / (a * l->lambda);
            } else {
                const auto& n = d.get<NormalParams>();
                centre = n.mean;
                scale = std::sqrt(n.sigma2 / a);
            }
            auto f = [&](long double x) { return apply(log_pdf(d, static_cast<double>(x))); };
            const long double split[1] = {centre};
            return from_quad(quad::integrate_real_line(f, split, scale, opt));
        }
        case Family::Uniform: {
            const auto& u = d.get<UniformParams>();
            const double lp = log_pdf(d, 0.5 * (u.a + u.b));
            auto f = [&](long double) { return apply(lp); };
            return from_quad(quad::integrate(f, u.a, u.b, opt));
        }
        default:
            throw FamilyMismatch("oracle: unexpected family");
    }
}

}  // namespace oracle_detail

/// ∫ p^α dx.
inline OracleValue integral_p_alpha(const Distribution& d, double alpha,
                                    const OracleConfig& cfg = {}) {
    const long double a = alpha;
    return oracle_detail::continuous_functional(
        d, alpha, [a](long double lp) { return std::exp(a * lp); }, cfg);
}

/// ∫ p^α log p dx.
inline OracleValue integral_p_alpha_log_p(const Distribution& d, double alpha,
                                          const OracleConfig& cfg = {}) {
    const long double a = alpha;
    return oracle_detail::continuous_functional(
        d, alpha, [a](long double lp) { return std::exp(a * lp) * lp; }, cfg);
}

/// ∫ p log(p/q) dx for two continuous laws on the same support.
inline OracleValue kl_integral(const Distribution& p, const Distribution& q,
                               const OracleConfig& cfg = {}) {
    if (!p.is_continuous() || !q.is_continuous()) {
        throw FamilyMismatch("kl_integral: both laws must be continuous");
    }
    cfg.validate();
    auto support = [](const Distribution& d) {
        switch (d.family()) {
            case Family::Gamma:
            case Family::Exponential:
            case Family::ChiSquared:
            case Family::LogNormal:
                return 0;
            case Family::Laplace:
            case Family::Normal:
                return 1;
            default:
                return 2;
        }
    };
    if (support(p) != support(q) || support(p) == 2) {
        throw UnsupportedFamily("kl_integral: laws must share a half-line or whole-line support");
    }
    const auto opt = cfg.quadrature();
    auto term = [](long double lp, long double lq) -> long double {
        const long double density = std::exp(lp);
        if (density == 0) return 0;
        return density * (lp - lq);
    };

    if (const auto* l = p.get_if<LogNormalParams>()) {
        auto f = [&](long double s) {
            const long double lp = oracle_detail::lognormal_log_density_at_log(*l, s);
            const auto* ql = q.get_if<LogNormalParams>();
            const long double lq = ql ? oracle_detail::lognormal_log_density_at_log(*ql, s)
                                      : log_pdf(q, static_cast<double>(std::exp(s)));
            return term(lp, lq) * std::exp(s);
        };
        const long double split[1] = {l->m};
        return oracle_detail::from_quad(
            quad::integrate_real_line(f, split, std::sqrt(l->sigma2), opt));
    }
    auto f = [&](long double x) {
        const double xd = static_cast<double>(x);
        return term(log_pdf(p, xd), log_pdf(q, xd));
    };
    if (support(p) == 0) {
        double lambda = 0.5, mu = 0.5;
        if (const auto* g = p.get_if<GammaParams>()) {
            lambda = g->lambda;
            mu = g->mu;
        } else if (const auto* e = p.get_if<ExponentialParams>()) {
            lambda = e->lambda;
            mu = 1;
        } else {
            mu = 0.5 * p.get<ChiSquaredParams>().nu;
        }
        const bool singular = mu < 1 || (q.family() == Family::Gamma && q.get<GammaParams>().mu < 1) ||
                              (q.family() == Family::ChiSquared && q.get<ChiSquaredParams>().nu == 1);
        return oracle_detail::from_quad(
            quad::integrate_half_line(f, 0.0L, std::max(1.0, mu) / lambda, opt, singular));
    }
    // Whole line: split at both modes so Laplace kinks sit on panel edges.
    auto centre = [](const Distribution& d) {
        if (const auto* l = d.get_if<LaplaceParams>()) return l->mu;
        return d.get<NormalParams>().mean;
    };
    auto spread = [](const Distribution& d) {
        if (const auto* l = d.get_if<LaplaceParams>()) return 1 / l->lambda;
        return std::sqrt(d.get<NormalParams>().sigma2);
    };
    std::vector<long double> splits = {centre(p), centre(q)};
    std::sort(splits.begin(), splits.end());
    if (splits[0] == splits[1]) splits.pop_back();
    return oracle_detail::from_quad(quad::integrate_real_line(f, splits, spread(p), opt));
}

// ---------------------------------------------------------------------------
// Discrete series

enum class SeriesTransform {
    PLogP,        // Σ p log p
    PAlpha,       // Σ p^α
    PAlphaLogP,   // Σ p^α log p
};

namespace oracle_detail {

// sup_{j >= k} p_{j+1} / p_j, or +inf when no bound below 1 is available yet.
inline double ratio_bound_from(const Distribution& d, std::uint64_t k) {
    const double kd = static_cast<double>(k);
    switch (d.family()) {
        case Family::Poisson:
            return d.get<PoissonParams>().lambda / (kd + 1);
        case Family::NegBinomialConditional: {
            const auto& nb = d.get<NegBinomialConditionalParams>();
            if (nb.r <= 1) return 1 - nb.p;
            return (kd + nb.r) / (kd + 1) * (1 - nb.p);
        }
        case Family::Logarithmic:
            return 1 - d.get<LogarithmicParams>().p;
        default:
            return std::numeric_limits<double>::infinity();
    }
}

// Neumaier compensated summation in long double.
struct CompensatedSum {
    long double sum = 0, carry = 0;
    void add(long double v) {
        const long double t = sum + v;
        if (std::abs(sum) >= std::abs(v)) carry += (sum - t) + v;
        else carry += (v - t) + sum;
        sum = t;
    }
    long double value() const { return sum + carry; }
};

}  // namespace oracle_detail

/// Σ_k f(p_k) over the support, truncated once a rigorous bound on the
/// remaining tail drops below `series_tail_tol`.
///
/// With ρ >= p_{j+1}/p_j for all j >= k and q = ρ^α, the tail after term k is
/// at most p_k^α q/(1-q) for Σ p^α, and, once p_k < e^{-1/α} so that
/// x^α|log x| is increasing below p_k,
///   p_k^α (|log p_k| q/(1-q) + |log ρ| q/(1-q)^2)
/// for the logarithmic transforms. Poisson tails are only certified once
/// λ/(k+1) <= 1/2.
inline OracleValue discrete_entropy_sum(const Distribution& d, SeriesTransform transform,
                                        double alpha = 1, const OracleConfig& cfg = {}) {
    if (!d.is_discrete()) throw FamilyMismatch("discrete_entropy_sum: continuous family");
    cfg.validate();
    if (transform == SeriesTransform::PLogP) alpha = 1;
    if (!(alpha > 0)) throw DomainError("discrete_entropy_sum: alpha must be > 0");
    const bool with_log = transform != SeriesTransform::PAlpha;

    const std::uint64_t first = support_min(d);
    const auto last = support_max(d);
    oracle_detail::CompensatedSum acc;
    std::uint64_t k = first;
    double tail = 0;
    for (;; ++k) {
        if (k - first >= cfg.max_terms) {
            throw NonConvergence("discrete_entropy_sum: " + std::to_string(cfg.max_terms) +
                                 " terms summed without certifying the tail");
        }
        const long double lp = log_pmf(d, k);
        const long double term = oracle_detail::power_term(with_log, alpha, lp);
        acc.add(term);
        if (last && k == *last) {
            tail = 0;
            break;
        }
        const double rho = oracle_detail::ratio_bound_from(d, k);
        const bool ratio_ok =
            d.family() == Family::Poisson ? rho <= 0.5 : rho < 1;
        if (!ratio_ok) continue;
        const long double q = std::pow(static_cast<long double>(rho), alpha);
        const long double pk_alpha = std::exp(alpha * lp);
        long double bound = 0;
        if (!with_log) {
            bound = pk_alpha * q / (1 - q);
        } else {
            if (!(lp < -1.0L / alpha)) continue;
            bound = pk_alpha * (-lp * q / (1 - q) - std::log(static_cast<long double>(rho)) * q /
                                                      ((1 - q) * (1 - q)));
        }
        if (bound <= cfg.series_tail_tol) {
            tail = static_cast<double>(bound);
            break;
        }
    }
    return {static_cast<double>(acc.value()), tail, k - first + 1};
}

// ---------------------------------------------------------------------------
// Measures assembled from the numerical functionals, straight from their
// definitions. Used to cross-check every closed form.

namespace oracle_detail {

struct Functionals {
    OracleValue power;      // ∫p^α or Σp^α
    OracleValue power_log;  // ∫p^α log p or Σp^α log p
};

inline OracleValue power_of(const Distribution& d, double alpha, const OracleConfig& cfg) {
    if (d.is_discrete()) return discrete_entropy_sum(d, SeriesTransform::PAlpha, alpha, cfg);
    return integral_p_alpha(d, alpha, cfg);
}

inline OracleValue power_log_of(const Distribution& d, double alpha, const OracleConfig& cfg) {
    if (d.is_discrete()) return discrete_entropy_sum(d, SeriesTransform::PAlphaLogP, alpha, cfg);
    return integral_p_alpha_log_p(d, alpha, cfg);
}

}  // namespace oracle_detail

/// Any measure evaluated from numerical integrals or sums of the density.
/// Modified Shannon rescales by the supremum of the density, which is taken
/// from density_sup.
inline double oracle_entropy(const EntropySpec& spec, const Distribution& d,
                             const OracleConfig& cfg = {}) {
    using namespace oracle_detail;
    spec.validate();
    const double a = spec.alpha, b = spec.beta;
    switch (spec.measure) {
        case Measure::Shannon:
            return -power_log_of(d, 1, cfg).value;
        case Measure::Renyi:
            return std::log(power_of(d, a, cfg).value) / (1 - a);
        case Measure::GeneralizedRenyi1:
            return -power_log_of(d, a, cfg).value / power_of(d, a, cfg).value;
        case Measure::Tsallis:
            return (power_of(d, a, cfg).value - 1) / (1 - a);
        case Measure::GeneralizedRenyi2:
            return std::log(power_of(d, a, cfg).value / power_of(d, b, cfg).value) / (b - a);
        case Measure::SharmaMittal:
            return (std::pow(power_of(d, a, cfg).value, (1 - b) / (1 - a)) - 1) / (1 - b);
        case Measure::ModifiedShannon: {
            if (d.is_discrete()) throw FamilyMismatch("modified Shannon needs a density");
            const long double log_m = std::log(density_sup(d).sup);
            auto scaled = [log_m](long double lp) {
                const long double lq = lp - log_m;
                return -std::exp(lq) * lq;
            };
            return continuous_functional(d, 1, scaled, cfg).value;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace infomeasures
