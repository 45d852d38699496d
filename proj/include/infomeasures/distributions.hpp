#pragma once

// Parameter records, densities and pmfs for the supported families.
//
// A Distribution is an immutable tagged union. Construction goes through the
// named factories, which reject parameters outside the family's space, so
// every Distribution value in the program is valid.

#include <array>
#include <charconv>
#include <cmath>
#include <cstdint>
#include <limits>
#include <map>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "errors.hpp"
#include "special_functions.hpp"

namespace infomeasures {

enum class Family {
    Gamma,
    Exponential,
    ChiSquared,
    Laplace,
    LogNormal,
    Normal,
    Uniform,
    Poisson,
    Binomial,
    NegBinomialConditional,
    Logarithmic,
};

struct GammaParams {
    double lambda;  // rate
    double mu;      // shape
};
struct ExponentialParams {
    double lambda;
};
struct ChiSquaredParams {
    unsigned nu;
};
struct LaplaceParams {
    double mu;  // location
    double lambda;
};
struct LogNormalParams {
    double m;
    double sigma2;
};
struct NormalParams {
    double mean;
    double sigma2;
};
struct UniformParams {
    double a;
    double b;
};
struct PoissonParams {
    double lambda;
};
struct BinomialParams {
    std::uint64_t n;
    double p;
};
/// Negative binomial conditioned on X > 0; the unconditional law is not exposed.
struct NegBinomialConditionalParams {
    double p;
    double r;
};
struct LogarithmicParams {
    double p;
};

class Distribution {
public:
    using Params = std::variant<GammaParams, ExponentialParams, ChiSquaredParams, LaplaceParams,
                                LogNormalParams, NormalParams, UniformParams, PoissonParams,
                                BinomialParams, NegBinomialConditionalParams, LogarithmicParams>;

    static Distribution gamma(double lambda, double mu) {
        require(lambda > 0, "gamma: lambda must be > 0");
        require(mu > 0, "gamma: mu must be > 0");
        return Distribution(GammaParams{lambda, mu});
    }
    static Distribution exponential(double lambda) {
        require(lambda > 0, "exp: lambda must be > 0");
        return Distribution(ExponentialParams{lambda});
    }
    static Distribution chi_squared(unsigned nu) {
        require(nu >= 1, "chisq: nu must be an integer >= 1");
        return Distribution(ChiSquaredParams{nu});
    }
    static Distribution laplace(double mu, double lambda) {
        require(std::isfinite(mu), "laplace: mu must be finite");
        require(lambda > 0, "laplace: lambda must be > 0");
        return Distribution(LaplaceParams{mu, lambda});
    }
    static Distribution lognormal(double m, double sigma2) {
        require(std::isfinite(m), "lognormal: m must be finite");
        require(sigma2 > 0, "lognormal: sigma2 must be > 0");
        return Distribution(LogNormalParams{m, sigma2});
    }
    static Distribution normal(double mean, double sigma2) {
        require(std::isfinite(mean), "normal: mean must be finite");
        require(sigma2 > 0, "normal: sigma2 must be > 0");
        return Distribution(NormalParams{mean, sigma2});
    }
    static Distribution uniform(double a, double b) {
        require(std::isfinite(a) && std::isfinite(b) && a < b, "uniform: need finite a < b");
        return Distribution(UniformParams{a, b});
    }
    static Distribution poisson(double lambda) {
        require(lambda > 0, "poisson: lambda must be > 0");
        return Distribution(PoissonParams{lambda});
    }
    static Distribution binomial(std::uint64_t n, double p) {
        require(n >= 1, "binomial: n must be >= 1");
        require(p > 0 && p < 1, "binomial: p must be in (0,1)");
        return Distribution(BinomialParams{n, p});
    }
    static Distribution nb_conditional(double p, double r) {
        require(p > 0 && p < 1, "nbcond: p must be in (0,1)");
        require(r > 0, "nbcond: r must be > 0");
        return Distribution(NegBinomialConditionalParams{p, r});
    }
    static Distribution logarithmic(double p) {
        require(p > 0 && p < 1, "logarithmic: p must be in (0,1)");
        return Distribution(LogarithmicParams{p});
    }

    Family family() const noexcept { return static_cast<Family>(params_.index()); }
    const Params& params() const noexcept { return params_; }

    bool is_continuous() const noexcept {
        switch (family()) {
            case Family::Poisson:
            case Family::Binomial:
            case Family::NegBinomialConditional:
            case Family::Logarithmic:
                return false;
            default:
                return true;
        }
    }
    bool is_discrete() const noexcept { return !is_continuous(); }

    template <class P>
    const P* get_if() const noexcept {
        return std::get_if<P>(&params_);
    }

    template <class P>
    const P& get() const {
        if (const P* p = get_if<P>()) return *p;
        throw FamilyMismatch("distribution holds a different family");
    }

    std::string to_string() const;

private:
    explicit Distribution(Params p) : params_(p) {}

    static void require(bool ok, const char* what) {
        if (!ok) throw InvalidParameter(what);
    }

    Params params_;
};

inline std::string_view family_name(Family f) {
    static constexpr std::array<std::string_view, 11> kNames = {
        "gamma",    "exp",     "chisq",    "laplace", "lognormal",  "normal",
        "uniform",  "poisson", "binomial", "nbcond",  "logarithmic",
    };
    return kNames[static_cast<std::size_t>(f)];
}

/// ChiSquared(ν) as Gamma(λ = 1/2, μ = ν/2).
inline Distribution chi_squared_as_gamma(const Distribution& d) {
    const auto& c = d.get<ChiSquaredParams>();
    return Distribution::gamma(0.5, 0.5 * c.nu);
}

/// log k!, exact cumulative sums for k <= 20 and log_gamma(k + 1) above.
inline double log_factorial(std::uint64_t k) {
    static const std::array<double, 21> kTable = [] {
        std::array<double, 21> t{};
        long double acc = 0.0L;
        t[0] = 0.0;
        for (int i = 1; i <= 20; ++i) {
            acc += std::log(static_cast<long double>(i));
            t[i] = static_cast<double>(acc);
        }
        return t;
    }();
    if (k <= 20) return kTable[k];
    return log_gamma(static_cast<double>(k) + 1.0);
}

namespace detail {

inline constexpr double kLog2Pi = 1.8378770664093454835606594728112352797;

inline double log_binomial_coefficient(std::uint64_t n, std::uint64_t k) {
    const std::uint64_t j = std::min(k, n - k);
    if (j <= 64) {
        long double acc = 0.0L;
        for (std::uint64_t i = 0; i < j; ++i) {
            acc += std::log(static_cast<long double>(n - i) / static_cast<long double>(i + 1));
        }
        return static_cast<double>(acc);
    }
    return log_factorial(n) - log_factorial(k) - log_factorial(n - k);
}

inline double gamma_log_pdf(double lambda, double mu, double x) {
    if (x < 0) return -std::numeric_limits<double>::infinity();
    if (x == 0) {
        if (mu < 1) return std::numeric_limits<double>::infinity();
        if (mu > 1) return -std::numeric_limits<double>::infinity();
        return std::log(lambda);
    }
    return mu * std::log(lambda) - log_gamma(mu) + (mu - 1) * std::log(x) - lambda * x;
}

}  // namespace detail

/// Natural log of the density; -inf outside the support.
inline double log_pdf(const Distribution& d, double x) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    using namespace detail;
    switch (d.family()) {
        case Family::Gamma: {
            const auto& g = d.get<GammaParams>();
            return gamma_log_pdf(g.lambda, g.mu, x);
        }
        case Family::Exponential: {
            const auto& e = d.get<ExponentialParams>();
            return x < 0 ? kNegInf : std::log(e.lambda) - e.lambda * x;
        }
        case Family::ChiSquared:
            return gamma_log_pdf(0.5, 0.5 * d.get<ChiSquaredParams>().nu, x);
        case Family::Laplace: {
            const auto& l = d.get<LaplaceParams>();
            return std::log(0.5 * l.lambda) - l.lambda * std::abs(x - l.mu);
        }
        case Family::LogNormal: {
            const auto& l = d.get<LogNormalParams>();
            if (x <= 0) return kNegInf;
            const double z = std::log(x) - l.m;
            return -std::log(x) - 0.5 * (kLog2Pi + std::log(l.sigma2)) - z * z / (2 * l.sigma2);
        }
        case Family::Normal: {
            const auto& n = d.get<NormalParams>();
            const double z = x - n.mean;
            return -0.5 * (kLog2Pi + std::log(n.sigma2)) - z * z / (2 * n.sigma2);
        }
        case Family::Uniform: {
            const auto& u = d.get<UniformParams>();
            return (x < u.a || x > u.b) ? kNegInf : -std::log(u.b - u.a);
        }
        default:
            throw FamilyMismatch("pdf: " + std::string(family_name(d.family())) +
                                 " is a discrete family");
    }
}

inline double pdf(const Distribution& d, double x) { return std::exp(log_pdf(d, x)); }

/// Smallest support point of a discrete family.
inline std::uint64_t support_min(const Distribution& d) {
    switch (d.family()) {
        case Family::NegBinomialConditional:
        case Family::Logarithmic:
            return 1;
        case Family::Poisson:
        case Family::Binomial:
            return 0;
        default:
            throw FamilyMismatch("support_min: continuous family");
    }
}

/// Largest support point; std::nullopt for unbounded support.
inline std::optional<std::uint64_t> support_max(const Distribution& d) {
    if (d.is_continuous()) throw FamilyMismatch("support_max: continuous family");
    if (const auto* b = d.get_if<BinomialParams>()) return b->n;
    return std::nullopt;
}

/// Natural log of the pmf, computed in log space; -inf off the support.
inline double log_pmf(const Distribution& d, std::uint64_t k) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const double kd = static_cast<double>(k);
    switch (d.family()) {
        case Family::Poisson: {
            const double lam = d.get<PoissonParams>().lambda;
            return kd * std::log(lam) - lam - log_factorial(k);
        }
        case Family::Binomial: {
            const auto& b = d.get<BinomialParams>();
            if (k > b.n) return kNegInf;
            return detail::log_binomial_coefficient(b.n, k) + kd * std::log(b.p) +
                   static_cast<double>(b.n - k) * std::log1p(-b.p);
        }
        case Family::NegBinomialConditional: {
            const auto& nb = d.get<NegBinomialConditionalParams>();
            if (k == 0) return kNegInf;
            const double log_p = std::log(nb.p);
            return log_gamma(kd + nb.r) - log_gamma(nb.r) - log_factorial(k) +
                   kd * std::log1p(-nb.p) + nb.r * log_p - std::log(-std::expm1(nb.r * log_p));
        }
        case Family::Logarithmic: {
            const double p = d.get<LogarithmicParams>().p;
            if (k == 0) return kNegInf;
            return kd * std::log1p(-p) - std::log(kd) - std::log(-std::log(p));
        }
        default:
            throw FamilyMismatch("pmf: " + std::string(family_name(d.family())) +
                                 " is a continuous family");
    }
}

inline double pmf(const Distribution& d, std::uint64_t k) { return std::exp(log_pmf(d, k)); }

struct DensityBound {
    double sup;
    std::optional<double> attained_at;  // empty when the maximum is not a single point
};

/// Exact supremum of a bounded continuous density and where it is attained.
inline DensityBound density_sup(const Distribution& d) {
    using detail::kLog2Pi;
    switch (d.family()) {
        case Family::Normal: {
            const auto& n = d.get<NormalParams>();
            return {std::exp(-0.5 * (kLog2Pi + std::log(n.sigma2))), n.mean};
        }
        case Family::Exponential:
            return {d.get<ExponentialParams>().lambda, 0.0};
        case Family::ChiSquared:
            if (d.get<ChiSquaredParams>().nu == 1) {
                throw UnboundedDensity("chisq with nu = 1 has an unbounded density");
            }
            return density_sup(chi_squared_as_gamma(d));
        case Family::Gamma: {
            const auto& g = d.get<GammaParams>();
            if (g.mu < 1) throw UnboundedDensity("gamma with mu < 1 has an unbounded density");
            if (g.mu == 1) return {g.lambda, 0.0};
            const double mode = (g.mu - 1) / g.lambda;
            return {std::exp(detail::gamma_log_pdf(g.lambda, g.mu, mode)), mode};
        }
        case Family::Laplace: {
            const auto& l = d.get<LaplaceParams>();
            return {0.5 * l.lambda, l.mu};
        }
        case Family::LogNormal: {
            const auto& l = d.get<LogNormalParams>();
            const double log_m = 0.5 * l.sigma2 - l.m - 0.5 * (kLog2Pi + std::log(l.sigma2));
            return {std::exp(log_m), std::exp(l.m - l.sigma2)};
        }
        case Family::Uniform: {
            const auto& u = d.get<UniformParams>();
            return {1.0 / (u.b - u.a), std::nullopt};
        }
        default:
            throw FamilyMismatch("density_sup: discrete family");
    }
}

// ---------------------------------------------------------------------------
// Textual syntax: family:key=value,key=value   e.g. "gamma:lambda=1,mu=2"

namespace detail {

inline double parse_real(std::string_view text, std::string_view key) {
    double v = 0;
    const auto* first = text.data();
    const auto* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || text.empty()) {
        throw ParseError("cannot parse value '" + std::string(text) + "' for key '" +
                         std::string(key) + "'");
    }
    return v;
}

inline std::uint64_t parse_count(std::string_view text, std::string_view key) {
    const double v = parse_real(text, key);
    if (!(v >= 0) || v != std::floor(v) || v > 1e18) {
        throw ParseError("key '" + std::string(key) + "' needs a nonnegative integer, got '" +
                         std::string(text) + "'");
    }
    return static_cast<std::uint64_t>(v);
}

inline std::string format_real(double v) {
    std::ostringstream os;
    os.precision(17);
    os << v;
    return os.str();
}

}  // namespace detail

inline Distribution parse_distribution(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw ParseError("distribution spec '" + std::string(spec) +
                         "' must look like family:key=value,...");
    }
    const std::string_view family = spec.substr(0, colon);
    std::map<std::string, std::string, std::less<>> kv;
    std::string_view rest = spec.substr(colon + 1);
    while (!rest.empty()) {
        const auto comma = rest.find(',');
        const std::string_view item = rest.substr(0, comma);
        const auto eq = item.find('=');
        if (eq == std::string_view::npos || eq == 0) {
            throw ParseError("malformed parameter '" + std::string(item) + "'");
        }
        if (!kv.emplace(std::string(item.substr(0, eq)), std::string(item.substr(eq + 1))).second) {
            throw ParseError("duplicate parameter '" + std::string(item.substr(0, eq)) + "'");
        }
        if (comma == std::string_view::npos) break;
        rest.remove_prefix(comma + 1);
    }

    auto take = [&](std::string_view key) -> std::string {
        auto it = kv.find(key);
        if (it == kv.end()) {
            throw ParseError(std::string(family) + ": missing parameter '" + std::string(key) + "'");
        }
        std::string v = it->second;
        kv.erase(it);
        return v;
    };
    auto real = [&](std::string_view key) { return detail::parse_real(take(key), key); };
    auto count = [&](std::string_view key) { return detail::parse_count(take(key), key); };

    auto build = [&]() -> Distribution {
        if (family == "gamma") {
            const double lambda = real("lambda");
            return Distribution::gamma(lambda, real("mu"));
        }
        if (family == "exp") return Distribution::exponential(real("lambda"));
        if (family == "chisq") {
            const auto nu = count("nu");
            if (nu > std::numeric_limits<unsigned>::max()) throw ParseError("chisq: nu too large");
            return Distribution::chi_squared(static_cast<unsigned>(nu));
        }
        if (family == "laplace") {
            const double mu = real("mu");
            return Distribution::laplace(mu, real("lambda"));
        }
        if (family == "lognormal") {
            const double m = real("m");
            return Distribution::lognormal(m, real("sigma2"));
        }
        if (family == "normal") {
            const double mean = real("mean");
            return Distribution::normal(mean, real("sigma2"));
        }
        if (family == "uniform") {
            const double a = real("a");
            return Distribution::uniform(a, real("b"));
        }
        if (family == "poisson") return Distribution::poisson(real("lambda"));
        if (family == "binomial") {
            const auto n = count("n");
            return Distribution::binomial(n, real("p"));
        }
        if (family == "nbcond") {
            const double p = real("p");
            return Distribution::nb_conditional(p, real("r"));
        }
        if (family == "logarithmic") return Distribution::logarithmic(real("p"));
        throw ParseError("unknown family '" + std::string(family) + "'");
    };

    Distribution d = build();
    if (!kv.empty()) {
        throw ParseError(std::string(family) + ": unknown parameter '" + kv.begin()->first + "'");
    }
    return d;
}

inline std::string Distribution::to_string() const {
    using detail::format_real;
    std::string head(family_name(family()));
    return std::visit(
        [&](const auto& p) -> std::string {
            using P = std::decay_t<decltype(p)>;
            if constexpr (std::is_same_v<P, GammaParams>)
                return head + ":lambda=" + format_real(p.lambda) + ",mu=" + format_real(p.mu);
            else if constexpr (std::is_same_v<P, ExponentialParams>)
                return head + ":lambda=" + format_real(p.lambda);
            else if constexpr (std::is_same_v<P, ChiSquaredParams>)
                return head + ":nu=" + std::to_string(p.nu);
            else if constexpr (std::is_same_v<P, LaplaceParams>)
                return head + ":mu=" + format_real(p.mu) + ",lambda=" + format_real(p.lambda);
            else if constexpr (std::is_same_v<P, LogNormalParams>)
                return head + ":m=" + format_real(p.m) + ",sigma2=" + format_real(p.sigma2);
            else if constexpr (std::is_same_v<P, NormalParams>)
                return head + ":mean=" + format_real(p.mean) + ",sigma2=" + format_real(p.sigma2);
            else if constexpr (std::is_same_v<P, UniformParams>)
                return head + ":a=" + format_real(p.a) + ",b=" + format_real(p.b);
            else if constexpr (std::is_same_v<P, PoissonParams>)
                return head + ":lambda=" + format_real(p.lambda);
            else if constexpr (std::is_same_v<P, BinomialParams>)
                return head + ":n=" + std::to_string(p.n) + ",p=" + format_real(p.p);
            else if constexpr (std::is_same_v<P, NegBinomialConditionalParams>)
                return head + ":p=" + format_real(p.p) + ",r=" + format_real(p.r);
            else
                return head + ":p=" + format_real(p.p);
        },
        params_);
}

}  // namespace infomeasures
