#pragma once

// Command-line front end. run() never exits the process, so tests can drive
// it with captured streams.
//
// Exit codes: 0 success, 1 malformed input, 2 validity-domain violation or
// unbounded density, 3 numerical failure or failed selftest.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <infomeasures/infomeasures.hpp>

namespace infomeasures::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitDomain = 2;
inline constexpr int kExitNumerical = 3;

inline std::string fmt(double v) { return detail::format_real(v); }

/// "start:stop:steps[:log]" or a comma-separated list of values.
inline std::vector<double> parse_grid(const std::string& text) {
    auto number = [](const std::string& s) { return detail::parse_real(s, "grid"); };
    std::vector<std::string> parts;
    const char sep = text.find(':') != std::string::npos ? ':' : ',';
    std::stringstream ss(text);
    for (std::string item; std::getline(ss, item, sep);) parts.push_back(item);
    if (sep == ',') {
        std::vector<double> values;
        for (const auto& p : parts) values.push_back(number(p));
        if (values.empty()) throw ParseError("empty grid");
        return values;
    }
    if (parts.size() != 3 && !(parts.size() == 4 && parts[3] == "log")) {
        throw ParseError("grid must be start:stop:steps[:log], got '" + text + "'");
    }
    const double start = number(parts[0]), stop = number(parts[1]);
    const auto steps = detail::parse_count(parts[2], "grid steps");
    if (steps < 1) throw ParseError("grid needs at least one step");
    const bool log_scale = parts.size() == 4;
    if (log_scale && !(start > 0 && stop > 0)) throw ParseError("log grid needs positive ends");
    std::vector<double> grid(steps);
    for (std::uint64_t i = 0; i < steps; ++i) {
        const double t = steps == 1 ? 0.0 : static_cast<double>(i) / static_cast<double>(steps - 1);
        grid[i] = log_scale ? start * std::pow(stop / start, t) : start + (stop - start) * t;
    }
    grid.back() = steps == 1 ? start : stop;
    return grid;
}

/// Replaces or appends `key=value` in a distribution spec.
inline std::string with_param(const std::string& spec, const std::string& key, double value) {
    const auto colon = spec.find(':');
    const std::string family = spec.substr(0, colon);
    std::vector<std::string> pairs;
    if (colon != std::string::npos) {
        std::stringstream ss(spec.substr(colon + 1));
        for (std::string item; std::getline(ss, item, ',');) {
            if (item.substr(0, item.find('=')) != key) pairs.push_back(item);
        }
    }
    pairs.push_back(key + "=" + fmt(value));
    std::string out = family + ":";
    for (std::size_t i = 0; i < pairs.size(); ++i) out += (i ? "," : "") + pairs[i];
    return out;
}

class Output {
public:
    Output(const std::string& path, std::ostream& fallback) : stream_(&fallback) {
        if (!path.empty()) {
            file_ = std::make_unique<std::ofstream>(path);
            if (!*file_) throw ParseError("cannot open output file '" + path + "'");
            stream_ = file_.get();
        }
    }
    std::ostream& operator*() { return *stream_; }

private:
    std::unique_ptr<std::ofstream> file_;
    std::ostream* stream_;
};

struct Args {
    std::string dist, p_spec, q_spec, measure, grid, out, param, kind = "binomial";
    std::string families, hurst_grid = "0:1:11", r_grid = "0.4,0.1,0.01,0.001";
    std::string n_list = "10,100,1000,10000";
    double alpha = 2, beta = 3, lambda = 2, prob = 0.5, perturbation = 0, tol = 1e-8;
    std::uint64_t seed = 42, draws = 200, dim = 5;
    bool verify = false;
};

inline EntropySpec make_spec(const Args& a) {
    EntropySpec s{parse_measure(a.measure), a.alpha, a.beta};
    s.validate();
    return s;
}

inline void print_verified(std::ostream& os, double closed, double oracle) {
    os << "closed_form,oracle,abs_diff\n"
       << fmt(closed) << ',' << fmt(oracle) << ',' << fmt(std::abs(closed - oracle)) << '\n';
}

inline void cmd_entropy(const Args& a, std::ostream& os) {
    const EntropySpec spec = make_spec(a);
    const Distribution d = parse_distribution(a.dist);
    const double v = evaluate(spec, d);
    if (a.verify) print_verified(os, v, oracle_entropy(spec, d));
    else os << fmt(v) << '\n';
}

inline void cmd_kl(const Args& a, std::ostream& os) {
    const KLPair pair(parse_distribution(a.p_spec), parse_distribution(a.q_spec));
    const double v = kl_divergence(pair);
    if (a.verify) print_verified(os, v, kl_integral(pair.p(), pair.q()).value);
    else os << fmt(v) << '\n';
}

inline void cmd_modified(const Args& a, std::ostream& os) {
    const Distribution d = parse_distribution(a.dist);
    const double v = modified_shannon(d);
    if (a.verify) print_verified(os, v, oracle_entropy(EntropySpec::modified_shannon(), d));
    else os << fmt(v) << '\n';
}

inline void cmd_sweep(const Args& a, std::ostream& console) {
    const auto grid = parse_grid(a.grid);
    Output out(a.out, console);
    *out << a.param << ",value" << (a.verify ? ",oracle,abs_diff" : "") << '\n';
    for (double x : grid) {
        Args point = a;
        std::string spec_text = a.dist;
        if (a.param == "alpha") point.alpha = x;
        else if (a.param == "beta") point.beta = x;
        else spec_text = with_param(a.dist, a.param, x);
        const EntropySpec spec = make_spec(point);
        const Distribution d = parse_distribution(spec_text);
        const double v = evaluate(spec, d);
        *out << fmt(x) << ',' << fmt(v);
        if (a.verify) {
            const double o = oracle_entropy(spec, d);
            *out << ',' << fmt(o) << ',' << fmt(std::abs(v - o));
        }
        *out << '\n';
    }
}

inline void write_table(std::ostream& os, const ConvergenceTable& t) {
    os << t.driver_name << ",approx,limit,abs_error\n";
    for (const auto& r : t.rows) {
        os << fmt(r.driver) << ',' << fmt(r.approx) << ',' << fmt(r.limit) << ','
           << fmt(r.abs_error) << '\n';
    }
}

inline void cmd_converge(const Args& a, std::ostream& console) {
    Output out(a.out, console);
    if (a.kind == "binomial") {
        std::vector<std::uint64_t> ns;
        for (double n : parse_grid(a.n_list)) {
            if (!(n >= 1) || n != std::floor(n)) throw ParseError("--n values must be positive integers");
            ns.push_back(static_cast<std::uint64_t>(n));
        }
        write_table(*out, binomial_to_poisson(a.lambda, ns, a.perturbation));
    } else if (a.kind == "nb") {
        write_table(*out, nb_to_logarithmic(a.prob, parse_grid(a.r_grid)));
    } else if (a.kind == "poisson") {
        const auto grid = parse_grid(a.grid.empty() ? "0.01:100:100:log" : a.grid);
        *out << "lambda,entropy,derivative,series\n";
        for (double l : grid) {
            const double series = poisson_log_shift_series(l);
            *out << fmt(l) << ',' << fmt(poisson_entropy(l)) << ',' << fmt(series - std::log(l))
                 << ',' << fmt(series) << '\n';
        }
    } else {
        throw ParseError("--kind must be binomial, nb or poisson");
    }
}

inline void cmd_gauss(const Args& a, std::ostream& console) {
    Output out(a.out, console);
    const auto grid = parse_grid(a.hurst_grid);
    *out << "H,det,log_det,singular,entropy\n";
    for (const auto& r : fgn_det_sweep(a.dim, grid)) {
        *out << fmt(r.hurst) << ',' << fmt(r.det) << ',' << fmt(r.log_det) << ','
             << (r.singular ? 1 : 0) << ',' << (r.entropy ? fmt(*r.entropy) : "") << '\n';
    }
}

inline int cmd_selftest(const Args& a, std::ostream& console) {
    SelftestOptions opt;
    opt.tol = a.tol;
    opt.seed = a.seed;
    opt.draws = a.draws;
    if (!a.families.empty()) {
        opt.families.clear();
        std::stringstream ss(a.families);
        for (std::string f; std::getline(ss, f, ',');) opt.families.push_back(parse_family(f));
    }
    const SelftestReport report = run_selftest(opt);
    Output out(a.out, console);
    *out << "family,check,measure,cases,max_error,pass\n";
    for (const auto& r : report.rows) {
        *out << family_name(r.family) << ',' << r.check << ',' << r.measure << ',' << r.cases
             << ',' << fmt(r.max_error) << ',' << (r.pass ? "PASS" : "FAIL") << '\n';
    }
    return report.all_pass() ? kExitOk : kExitNumerical;
}

inline int run(int argc, const char* const* argv, std::ostream& os = std::cout,
               std::ostream& err = std::cerr) {
    CLI::App app{"Entropies, divergences and limit experiments for classical distributions",
                 "infomeasures"};
    app.require_subcommand(1);
    Args a;

    auto add_orders = [&](CLI::App* s) {
        s->add_option("--measure", a.measure, "shannon|renyi|gr1|tsallis|gr2|sm|modified")
            ->required();
        s->add_option("--alpha", a.alpha, "Order α")->capture_default_str();
        s->add_option("--beta", a.beta, "Order β")->capture_default_str();
    };

    auto* entropy = app.add_subcommand("entropy", "Closed-form entropy of one distribution");
    entropy->add_option("--dist", a.dist, "family:key=value,...")->required();
    add_orders(entropy);
    entropy->add_flag("--verify", a.verify, "Also evaluate the numerical oracle");

    auto* kl = app.add_subcommand("kl", "Kullback-Leibler divergence of two laws of one family");
    kl->add_option("--p", a.p_spec, "First distribution")->required();
    kl->add_option("--q", a.q_spec, "Second distribution")->required();
    kl->add_flag("--verify", a.verify, "Also evaluate the numerical oracle");

    auto* modified = app.add_subcommand("modified", "Shannon entropy of the density over its supremum");
    modified->add_option("--dist", a.dist, "family:key=value,...")->required();
    modified->add_flag("--verify", a.verify, "Also evaluate the numerical oracle");

    auto* sweep = app.add_subcommand("sweep", "Evaluate a measure along a parameter grid");
    sweep->add_option("--dist", a.dist, "family:key=value,...")->required();
    add_orders(sweep);
    sweep->add_option("--param", a.param, "Swept key: a distribution parameter, alpha or beta")
        ->required();
    sweep->add_option("--grid", a.grid, "start:stop:steps[:log] or v1,v2,...")->required();
    sweep->add_option("--out", a.out, "CSV path (default stdout)");
    sweep->add_flag("--verify", a.verify, "Add oracle and difference columns");

    auto* converge = app.add_subcommand("converge", "Discrete limit experiments");
    converge->add_option("--kind", a.kind, "binomial|nb|poisson")->capture_default_str();
    converge->add_option("--lambda", a.lambda, "Poisson rate")->capture_default_str();
    converge->add_option("--n", a.n_list, "Binomial n values")->capture_default_str();
    converge->add_option("--perturbation", a.perturbation, "c in p_n = (λ/n)(1 + c/n)")
        ->capture_default_str();
    converge->add_option("--p", a.prob, "Logarithmic parameter p")->capture_default_str();
    converge->add_option("--r-grid", a.r_grid, "Decreasing r values in (0, 1/2)")
        ->capture_default_str();
    converge->add_option("--grid", a.grid, "λ-grid for --kind poisson");
    converge->add_option("--out", a.out, "CSV path (default stdout)");

    auto* gauss = app.add_subcommand("gauss", "fGn covariance determinant sweep over H");
    gauss->add_option("--n", a.dim, "Dimension")->capture_default_str()->check(CLI::PositiveNumber);
    gauss->add_option("--hurst-grid", a.hurst_grid, "H values in [0, 1]")->capture_default_str();
    gauss->add_option("--out", a.out, "CSV path (default stdout)");

    auto* selftest = app.add_subcommand("selftest", "Closed forms against the oracle, per family");
    selftest->add_option("--families", a.families, "Comma-separated families (default all continuous)");
    selftest->add_option("--tol", a.tol, "Relative tolerance")->capture_default_str();
    selftest->add_option("--seed", a.seed, "Random seed")->capture_default_str();
    selftest->add_option("--draws", a.draws, "Draws per family and measure")->capture_default_str();
    selftest->add_option("--out", a.out, "CSV path (default stdout)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e, os, err);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e, os, err);
    } catch (const CLI::ParseError& e) {
        app.exit(e, os, err);
        return kExitUsage;
    }

    try {
        if (*entropy) cmd_entropy(a, os);
        else if (*kl) cmd_kl(a, os);
        else if (*modified) cmd_modified(a, os);
        else if (*sweep) cmd_sweep(a, os);
        else if (*converge) cmd_converge(a, os);
        else if (*gauss) cmd_gauss(a, os);
        else if (*selftest) return cmd_selftest(a, os);
        return kExitOk;
    } catch (const ValidityDomainError& e) {
        err << "error: validity domain violated: " << e.what() << '\n';
        return kExitDomain;
    } catch (const UnboundedDensity& e) {
        err << "error: " << e.what() << '\n';
        return kExitDomain;
    } catch (const NonConvergence& e) {
        err << "error: " << e.what() << '\n';
        return kExitNumerical;
    } catch (const Error& e) {
        err << "error: " << e.what() << '\n';
        return kExitUsage;
    }
}

}  // namespace infomeasures::cli
