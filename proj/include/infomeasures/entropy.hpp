#pragma once

// Closed-form entropies, divergences and modified entropies.
//
// For every continuous family the power integral J(α) = ∫p^α has a closed
// form; Rényi, Tsallis, the two-parameter generalized Rényi and Sharma-Mittal
// entropies are all functions of log J, and are evaluated from it with
// expm1 where the definition subtracts 1. Shannon and the one-parameter
// generalized Rényi entropy have their own closed forms.
//
// Discrete families have no closed forms; their measures are direct sums
// through discrete_entropy_sum with a certified tail.

#include <cmath>
#include <numbers>
#include <sstream>
#include <string>

#include "distributions.hpp"
#include "entropy_spec.hpp"
#include "errors.hpp"
#include "oracle.hpp"
#include "special_functions.hpp"

namespace infomeasures {

namespace closed_form_detail {

inline constexpr double kLog2Pi = 1.8378770664093454835606594728112352797;

struct GammaShape {
    double lambda;
    double mu;
    bool from_chi_squared;
};

inline std::optional<GammaShape> gamma_shape(const Distribution& d) {
    if (const auto* g = d.get_if<GammaParams>()) return GammaShape{g->lambda, g->mu, false};
    if (const auto* c = d.get_if<ChiSquaredParams>()) return GammaShape{0.5, 0.5 * c->nu, true};
    return std::nullopt;
}

inline std::string describe(const Distribution& d, const char* measure, double alpha) {
    std::ostringstream os;
    os.precision(17);
    os << measure << " of " << d.to_string() << " with α=" << alpha;
    return os.str();
}

/// Gamma-type escort integrals are finite iff order·(μ−1) > −1.
inline void require_gamma_order(const Distribution& d, double order, const char* symbol,
                                const char* measure) {
    const auto g = gamma_shape(d);
    if (!g) return;
    if (!(order * (g->mu - 1) > -1)) {
        std::string ineq = std::string(symbol) + "(μ−1) ≤ −1";
        if (g->from_chi_squared) ineq += " (μ = ν/2)";
        throw ValidityDomainError(ineq, describe(d, measure, order));
    }
}

/// log ∫ p^α dx, closed form. Caller has checked the validity domain.
inline double log_power_integral(const Distribution& d, double a) {
    if (const auto g = gamma_shape(d)) {
        const double shape = a * (g->mu - 1) + 1;
        return (a - 1) * std::log(g->lambda) - shape * std::log(a) + log_gamma(shape) -
               a * log_gamma(g->mu);
    }
    switch (d.family()) {
        case Family::Exponential:
            return (a - 1) * std::log(d.get<ExponentialParams>().lambda) - std::log(a);
        case Family::Laplace:
            return (a - 1) * std::log(0.5 * d.get<LaplaceParams>().lambda) - std::log(a);
        case Family::LogNormal: {
            const auto& l = d.get<LogNormalParams>();
            const double b = 1 - a;
            return b * (0.5 * std::log(l.sigma2) + 0.5 * kLog2Pi) - 0.5 * std::log(a) + l.m * b +
                   l.sigma2 * b * b / (2 * a);
        }
        case Family::Normal: {
            const auto& n = d.get<NormalParams>();
            return 0.5 * (1 - a) * (kLog2Pi + std::log(n.sigma2)) - 0.5 * std::log(a);
        }
        case Family::Uniform: {
            const auto& u = d.get<UniformParams>();
            return (1 - a) * std::log(u.b - u.a);
        }
        default:
            throw FamilyMismatch("log_power_integral: discrete family");
    }
}

inline double log_power_sum(const Distribution& d, double a) {
    return std::log(discrete_entropy_sum(d, SeriesTransform::PAlpha, a).value);
}

inline double log_power(const Distribution& d, double a) {
    return d.is_continuous() ? log_power_integral(d, a) : log_power_sum(d, a);
}

}  // namespace closed_form_detail

inline double shannon(const Distribution& d) {
    using namespace closed_form_detail;
    if (const auto g = gamma_shape(d)) {
        return -std::log(g->lambda) + log_gamma(g->mu) + g->mu - digamma(g->mu) * (g->mu - 1);
    }
    switch (d.family()) {
        case Family::Exponential:
            return 1 - std::log(d.get<ExponentialParams>().lambda);
        case Family::Laplace:
            return 1 - std::log(0.5 * d.get<LaplaceParams>().lambda);
        case Family::LogNormal: {
            const auto& l = d.get<LogNormalParams>();
            return 0.5 * std::log(l.sigma2) + 0.5 * kLog2Pi + l.m + 0.5;
        }
        case Family::Normal:
            return 0.5 * (1 + kLog2Pi) + 0.5 * std::log(d.get<NormalParams>().sigma2);
        case Family::Uniform: {
            const auto& u = d.get<UniformParams>();
            return std::log(u.b - u.a);
        }
        default:
            return -discrete_entropy_sum(d, SeriesTransform::PLogP).value;
    }
}

inline double renyi(double alpha, const Distribution& d) {
    EntropySpec::renyi(alpha).validate();
    closed_form_detail::require_gamma_order(d, alpha, "α", "renyi");
    return closed_form_detail::log_power(d, alpha) / (1 - alpha);
}

/// One-parameter generalized Rényi entropy −∫p^α log p / ∫p^α.
inline double generalized_renyi1(double alpha, const Distribution& d) {
    using namespace closed_form_detail;
    EntropySpec::generalized_renyi1(alpha).validate();
    require_gamma_order(d, alpha, "α", "gr1");
    const double a = alpha;
    if (const auto g = gamma_shape(d)) {
        const double mu = g->mu;
        return -std::log(g->lambda) + log_gamma(mu) + (mu - 1) * std::log(a) -
               (mu - 1) * digamma(a * (mu - 1) + 1) + mu - 1 + 1 / a;
    }
    switch (d.family()) {
        case Family::Exponential:
            return -std::log(d.get<ExponentialParams>().lambda) + 1 / a;
        case Family::Laplace:
            return -std::log(0.5 * d.get<LaplaceParams>().lambda) + 1 / a;
        case Family::LogNormal: {
            const auto& l = d.get<LogNormalParams>();
            return 0.5 * std::log(l.sigma2) + 0.5 * kLog2Pi + l.m + 1 / (2 * a) +
                   l.sigma2 * (1 - a * a) / (2 * a * a);
        }
        case Family::Normal:
            return 0.5 * (kLog2Pi + std::log(d.get<NormalParams>().sigma2)) + 1 / (2 * a);
        case Family::Uniform: {
            const auto& u = d.get<UniformParams>();
            return std::log(u.b - u.a);
        }
        default: {
            const double num = discrete_entropy_sum(d, SeriesTransform::PAlphaLogP, a).value;
            const double den = discrete_entropy_sum(d, SeriesTransform::PAlpha, a).value;
            return -num / den;
        }
    }
}

inline double tsallis(double alpha, const Distribution& d) {
    EntropySpec::tsallis(alpha).validate();
    closed_form_detail::require_gamma_order(d, alpha, "α", "tsallis");
    return std::expm1(closed_form_detail::log_power(d, alpha)) / (1 - alpha) + 0.0;
}

/// Two-parameter generalized Rényi entropy; symmetric in (α, β).
inline double generalized_renyi2(double alpha, double beta, const Distribution& d) {
    EntropySpec::generalized_renyi2(alpha, beta).validate();
    closed_form_detail::require_gamma_order(d, alpha, "α", "gr2");
    closed_form_detail::require_gamma_order(d, beta, "β", "gr2");
    return (closed_form_detail::log_power(d, alpha) - closed_form_detail::log_power(d, beta)) /
           (beta - alpha);
}

inline double sharma_mittal(double alpha, double beta, const Distribution& d) {
    EntropySpec::sharma_mittal(alpha, beta).validate();
    closed_form_detail::require_gamma_order(d, alpha, "α", "sm");
    const double exponent = (1 - beta) / (1 - alpha);
    return std::expm1(exponent * closed_form_detail::log_power(d, alpha)) / (1 - beta) + 0.0;
}

/// Shannon entropy of p/M, with M the supremum of the density:
/// (1/M)·H + log(M)/M.
inline double modified_shannon(const Distribution& d) {
    if (d.is_discrete()) throw FamilyMismatch("modified Shannon entropy needs a density");
    const double m = density_sup(d).sup;
    return (shannon(d) + std::log(m)) / m;
}

inline double evaluate(const EntropySpec& spec, const Distribution& d) {
    spec.validate();
    switch (spec.measure) {
        case Measure::Shannon: return shannon(d);
        case Measure::Renyi: return renyi(spec.alpha, d);
        case Measure::GeneralizedRenyi1: return generalized_renyi1(spec.alpha, d);
        case Measure::Tsallis: return tsallis(spec.alpha, d);
        case Measure::GeneralizedRenyi2: return generalized_renyi2(spec.alpha, spec.beta, d);
        case Measure::SharmaMittal: return sharma_mittal(spec.alpha, spec.beta, d);
        case Measure::ModifiedShannon: return modified_shannon(d);
    }
    return std::numeric_limits<double>::quiet_NaN();
}

// ---------------------------------------------------------------------------
// Kullback-Leibler divergence

/// Two laws of the same family with a closed-form divergence.
class KLPair {
public:
    KLPair(Distribution p, Distribution q) : p_(std::move(p)), q_(std::move(q)) {
        if (p_.family() != q_.family()) {
            throw UnsupportedFamily("KL divergence across families (" +
                                    std::string(family_name(p_.family())) + " vs " +
                                    std::string(family_name(q_.family())) + ")");
        }
        switch (p_.family()) {
            case Family::Gamma:
            case Family::Exponential:
            case Family::ChiSquared:
            case Family::Laplace:
            case Family::LogNormal:
                break;
            default:
                throw UnsupportedFamily("no closed-form KL divergence for " +
                                        std::string(family_name(p_.family())));
        }
    }
    const Distribution& p() const noexcept { return p_; }
    const Distribution& q() const noexcept { return q_; }

private:
    Distribution p_, q_;
};

/// ∫ p log(p/q).
inline double kl_divergence(const KLPair& pair) {
    const Distribution& p = pair.p();
    const Distribution& q = pair.q();
    switch (p.family()) {
        case Family::Exponential: {
            const double l = p.get<ExponentialParams>().lambda;
            const double l1 = q.get<ExponentialParams>().lambda;
            return std::log(l / l1) + l1 / l - 1;
        }
        case Family::Gamma:
        case Family::ChiSquared: {
            const auto g = *closed_form_detail::gamma_shape(p);
            const auto g1 = *closed_form_detail::gamma_shape(q);
            return g1.mu * std::log(g.lambda / g1.lambda) + g.mu * (g1.lambda / g.lambda - 1) +
                   log_gamma(g1.mu) - log_gamma(g.mu) + (g.mu - g1.mu) * digamma(g.mu);
        }
        case Family::Laplace: {
            const auto& a = p.get<LaplaceParams>();
            const auto& b = q.get<LaplaceParams>();
            const double shift = a.lambda * std::abs(a.mu - b.mu);
            return std::log(a.lambda / b.lambda) + b.lambda / a.lambda * (shift + std::exp(-shift)) -
                   1;
        }
        case Family::LogNormal: {
            const auto& a = p.get<LogNormalParams>();
            const auto& b = q.get<LogNormalParams>();
            const double dm = a.m - b.m;
            return 0.5 * std::log(b.sigma2 / a.sigma2) +
                   (a.sigma2 - b.sigma2 + dm * dm) / (2 * b.sigma2);
        }
        default:
            throw UnsupportedFamily("kl_divergence: unsupported family");
    }
}

inline double kl_divergence(const Distribution& p, const Distribution& q) {
    return kl_divergence(KLPair(p, q));
}

// ---------------------------------------------------------------------------

enum class LogNormalMoment {
    Plain,          // E X^p
    TimesLog,       // E[X^p log X]
    TimesCenteredSq // E[X^p (log X − m)^2]
};

/// Moments of a log-normal X with log X ~ N(m, σ²), for any real p.
inline double lognormal_moment(double p, double m, double sigma2, LogNormalMoment kind) {
    if (!(sigma2 > 0)) throw DomainError("lognormal_moment: sigma2 must be > 0");
    const double base = std::exp(m * p + sigma2 * p * p / 2);
    switch (kind) {
        case LogNormalMoment::Plain: return base;
        case LogNormalMoment::TimesLog: return (sigma2 * p + m) * base;
        case LogNormalMoment::TimesCenteredSq: return sigma2 * (sigma2 * p * p + 1) * base;
    }
    return std::numeric_limits<double>::quiet_NaN();
}

}  // namespace infomeasures
