// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit on any failure.

#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <infomeasures/infomeasures.hpp>

using namespace infomeasures;

namespace {

struct Verdict {
    bool pass;
    std::string detail;
};

std::string sci(double v) {
    std::ostringstream os;
    os << std::scientific << std::setprecision(2) << v;
    return os.str();
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::vector<double> linspace(double lo, double hi, int n) {
    std::vector<double> v(n);
    for (int i = 0; i < n; ++i) v[i] = lo + (hi - lo) * i / (n - 1);
    return v;
}

Verdict oracle_equivalence() {
    const auto t0 = std::chrono::steady_clock::now();
    std::mt19937_64 rng(42);
    double worst = 0;
    std::string where;
    int cases = 0;
    for (Family f : kCoreFamilies) {
        for (Measure m : kOrderMeasures) {
            for (int i = 0; i < 200; ++i) {
                const Draw d = random_admissible_draw(f, m, rng);
                const double closed = evaluate(d.spec, d.dist);
                const double oracle = oracle_entropy(d.spec, d.dist);
                const double err = std::abs(closed - oracle) / (1 + std::abs(closed));
                if (!(err <= worst)) {
                    worst = std::isnan(err) ? INFINITY : err;
                    where = std::string(measure_name(m)) + " of " + d.dist.to_string();
                }
                ++cases;
            }
        }
    }
    const double secs = seconds_since(t0);
    return {worst <= 1e-8 && secs < 60,
            std::to_string(cases) + " draws, max |closed-oracle|/(1+|closed|) = " + sci(worst) +
                " (" + where + "), " + sci(secs) + " s"};
}

Verdict formula_pins() {
    const double pi = std::numbers::pi;
    struct Pin {
        const char* name;
        double got, want, tol;
    };
    const Pin pins[] = {
        {"shannon exp(e)", shannon(Distribution::exponential(std::numbers::e)), 0, 1e-12},
        {"modified normal(σ=1)", modified_shannon(Distribution::normal(0, 1)), std::sqrt(pi / 2), 1e-10},
        {"modified exp(λ=4)", modified_shannon(Distribution::exponential(4)), 0.25, 1e-10},
        {"modified exp(λ=0.3)", modified_shannon(Distribution::exponential(0.3)), 1 / 0.3, 1e-10},
        {"modified laplace(λ=3)", modified_shannon(Distribution::laplace(0, 3)), 2.0 / 3, 1e-10},
        {"modified laplace(λ=0.5)", modified_shannon(Distribution::laplace(2, 0.5)), 4, 1e-10},
        {"modified chisq(ν=2)", modified_shannon(Distribution::chi_squared(2)), 2, 1e-10},
        {"modified uniform(0,1)", modified_shannon(Distribution::uniform(0, 1)), 0, 1e-10},
        {"modified uniform(-2,5)", modified_shannon(Distribution::uniform(-2, 5)), 0, 1e-10},
    };
    double worst = 0;
    bool ok = true;
    std::string failed;
    for (const auto& p : pins) {
        const double err = std::abs(p.got - p.want);
        worst = std::max(worst, err);
        if (!(err <= p.tol)) {
            ok = false;
            failed += std::string(" ") + p.name;
        }
    }
    return {ok, std::to_string(std::size(pins)) + " pins, max abs error " + sci(worst) +
                    (ok ? "" : ", failed:" + failed)};
}

Verdict kl_nonnegativity() {
    std::mt19937_64 rng(42);
    int pairs = 0, equal_pairs = 0, bad = 0;
    double lowest = INFINITY;
    for (Family f : kCoreFamilies) {
        for (int i = 0; i < 200; ++i) {
            const Distribution p = random_distribution(f, rng);
            const Distribution q = i % 10 == 0 ? p : random_distribution(f, rng);
            const bool same = p.to_string() == q.to_string();
            const double v = kl_divergence(p, q);
            lowest = std::min(lowest, v);
            if (!(v >= -1e-12) || (v < 1e-12) != same) ++bad;
            equal_pairs += same;
            ++pairs;
        }
    }
    return {bad == 0, std::to_string(pairs) + " pairs (" + std::to_string(equal_pairs) +
                          " identical), min KL " + sci(lowest) + ", violations " +
                          std::to_string(bad)};
}

Verdict poisson_monotonicity() {
    double prev_h = -INFINITY, prev_d = INFINITY;
    int bad = 0;
    for (int i = 0; i < 100; ++i) {
        const double l = 0.01 * std::pow(1e4, i / 99.0);
        const double h = poisson_entropy(l), d = poisson_entropy_derivative(l);
        if (!(h > prev_h) || !(d > 0) || !(d < prev_d)) ++bad;
        prev_h = h;
        prev_d = d;
    }
    const double far = poisson_entropy_derivative(1000);
    return {bad == 0 && far < 5e-3, "100-point grid violations " + std::to_string(bad) +
                                        ", H'(1000) = " + sci(far)};
}

Verdict gamma_monotonicity() {
    const auto grid = linspace(0.1, 10, 50);
    int bad = 0;
    for (double mu : grid) {
        double prev = INFINITY;
        for (double l : grid) {
            const double v = shannon(Distribution::gamma(l, mu));
            if (!(v < prev)) ++bad;
            prev = v;
        }
    }
    for (double l : grid) {
        double prev = -INFINITY;
        for (double mu : grid) {
            const double v = shannon(Distribution::gamma(l, mu));
            if (!(v > prev)) ++bad;
            prev = v;
        }
    }
    return {bad == 0, "50x50 grid, violations " + std::to_string(bad)};
}

Verdict convergence() {
    const auto t0 = std::chrono::steady_clock::now();
    const std::uint64_t ns[] = {10, 100, 1000, 10000};
    const auto bin = binomial_to_poisson(2, ns);
    const double rs[] = {0.4, 0.1, 0.01, 0.001};
    const auto nb = nb_to_logarithmic(0.5, rs);
    const double secs = seconds_since(t0);
    const bool ok = bin.errors_decrease_over_last(3) && bin.rows.back().abs_error < 1e-3 &&
                    nb.errors_decrease_over_last(nb.rows.size()) && secs < 30;
    return {ok, "binomial final error " + sci(bin.rows.back().abs_error) + ", nb final error " +
                    sci(nb.rows.back().abs_error) + ", " + sci(secs) + " s"};
}

Verdict gaussian_vectors() {
    std::mt19937_64 rng(42);
    std::normal_distribution<double> z;
    std::uniform_real_distribution<double> pos(0.1, 10);
    int bad = 0;
    for (int t = 0; t < 1000; ++t) {
        const std::size_t n = 2 + t % 5;
        std::vector<double> a(n * n, 0.0);
        const bool diagonal = t % 10 == 0;
        if (diagonal) {
            for (std::size_t i = 0; i < n; ++i) a[i * n + i] = pos(rng);
        } else {
            std::vector<double> b(n * n);
            for (auto& v : b) v = z(rng);
            for (std::size_t i = 0; i < n; ++i)
                for (std::size_t j = 0; j <= i; ++j) {
                    double s = 0;
                    for (std::size_t k = 0; k < n; ++k) s += b[k * n + i] * b[k * n + j];
                    a[i * n + j] = a[j * n + i] = s;
                }
        }
        const CovMatrix m(n, a);
        const double scale = m.diagonal_product();
        const double gap = hadamard_gap(m);
        const bool equal = std::abs(gap) <= 1e-10 * scale;
        if (!(gap >= -1e-10 * scale) || equal != m.is_diagonal()) ++bad;
    }
    const auto sweep = fgn_det_sweep(5, linspace(0, 1, 11));
    bool in_range = true;
    for (const auto& r : sweep) in_range = in_range && r.det >= 0 && r.det <= 1;
    const double det_half = sweep[5].det;
    const bool ok = bad == 0 && in_range && std::abs(det_half - 1) <= 1e-12 &&
                    sweep[10].det == 0 && sweep[10].singular;
    return {ok, "Hadamard violations " + std::to_string(bad) + ", det(H=0.5) - 1 = " +
                    sci(det_half - 1) + ", det(H=1) = " + sci(sweep[10].det) +
                    (sweep[10].singular ? " (singular)" : "")};
}

Verdict renyi_limit() {
    const Distribution reps[] = {
        Distribution::gamma(1.5, 2.5),     Distribution::exponential(0.7),
        Distribution::chi_squared(3),      Distribution::laplace(1, 2),
        Distribution::lognormal(0.3, 0.8), Distribution::normal(-1, 2.5),
        Distribution::uniform(0, 3),
    };
    double worst = 0;
    for (const auto& d : reps) {
        const double h = shannon(d);
        for (double a : {1 - 1e-4, 1 + 1e-4}) worst = std::max(worst, std::abs(renyi(a, d) - h));
    }
    return {worst <= 1e-3, "max |renyi(1±1e-4) - shannon| = " + sci(worst)};
}

}  // namespace

int main() {
    const std::pair<const char*, std::function<Verdict()>> criteria[] = {
        {"AC1 oracle equivalence", oracle_equivalence},
        {"AC2 formula pins", formula_pins},
        {"AC3 KL non-negativity", kl_nonnegativity},
        {"AC4 Poisson monotonicity", poisson_monotonicity},
        {"AC5 gamma monotonicity", gamma_monotonicity},
        {"AC6 convergence experiments", convergence},
        {"AC7 Gaussian vectors", gaussian_vectors},
        {"AC8 Renyi to Shannon limit", renyi_limit},
    };
    int failures = 0;
    for (const auto& [name, check] : criteria) {
        Verdict v;
        try {
            v = check();
        } catch (const std::exception& e) {
            v = {false, std::string("exception: ") + e.what()};
        }
        failures += !v.pass;
        std::cout << (v.pass ? "PASS " : "FAIL ") << name << ": " << v.detail << std::endl;
    }
    return failures == 0 ? 0 : 1;
}
