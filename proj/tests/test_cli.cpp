#include <catch_amalgamated.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "cli.hpp"

namespace {

struct Outcome {
    int code;
    std::string out;
    std::string err;
};

Outcome run(std::vector<std::string> args) {
    args.insert(args.begin(), "infomeasures");
    std::vector<const char*> argv;
    for (const auto& a : args) argv.push_back(a.c_str());
    std::ostringstream out, err;
    const int code = infomeasures::cli::run(static_cast<int>(argv.size()), argv.data(), out, err);
    return {code, out.str(), err.str()};
}

std::vector<std::string> lines(const std::string& text) {
    std::vector<std::string> v;
    std::istringstream ss(text);
    for (std::string l; std::getline(ss, l);) v.push_back(l);
    return v;
}

}  // namespace

TEST_CASE("entropy verb") {
    auto r = run({"entropy", "--dist", "exp:lambda=2.718281828", "--measure", "shannon"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(std::stod(r.out)) < 1e-9);

    r = run({"entropy", "--dist", "exp:lambda=1", "--measure", "sm", "--alpha", "2", "--beta", "3"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "0.375\n");
}

TEST_CASE("validity-domain violations exit with 2 and name the inequality") {
    auto r = run({"entropy", "--dist", "gamma:lambda=1,mu=0.5", "--measure", "renyi", "--alpha", "3"});
    CHECK(r.code == 2);
    CHECK(r.err.find("α(μ−1) ≤ −1") != std::string::npos);
    r = run({"entropy", "--dist", "exp:lambda=1", "--measure", "renyi", "--alpha", "1"});
    CHECK(r.code == 2);
    r = run({"modified", "--dist", "chisq:nu=1"});
    CHECK(r.code == 2);
}

TEST_CASE("malformed input exits with 1") {
    CHECK(run({"entropy", "--dist", "exp:lambda=1"}).code == 1);
    CHECK(run({"entropy", "--dist", "exp:rate=1", "--measure", "shannon"}).code == 1);
    CHECK(run({"entropy", "--dist", "exp:lambda=-1", "--measure", "shannon"}).code == 1);
    CHECK(run({"entropy", "--dist", "exp:lambda=1", "--measure", "entropy"}).code == 1);
    CHECK(run({"kl", "--p", "exp:lambda=1", "--q", "gamma:lambda=1,mu=2"}).code == 1);
    CHECK(run({"frobnicate"}).code == 1);
    CHECK(run({}).code == 1);
    CHECK(run({"sweep", "--dist", "exp:lambda=1", "--measure", "shannon", "--param", "lambda",
               "--grid", "1:2"}).code == 1);
}

TEST_CASE("kl and modified verbs") {
    auto r = run({"kl", "--p", "exp:lambda=3", "--q", "exp:lambda=3"});
    REQUIRE(r.code == 0);
    CHECK(r.out == "0\n");
    r = run({"kl", "--p", "exp:lambda=2", "--q", "exp:lambda=1", "--verify"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 2);
    CHECK(l[0] == "closed_form,oracle,abs_diff");
    r = run({"modified", "--dist", "normal:mean=0,sigma2=1"});
    REQUIRE(r.code == 0);
    CHECK(std::abs(std::stod(r.out) - std::sqrt(M_PI / 2)) < 1e-12);
}

TEST_CASE("sweep writes a CSV with full precision") {
    auto r = run({"sweep", "--dist", "gamma:lambda=1,mu=2", "--measure", "renyi", "--alpha", "2",
                  "--param", "lambda", "--grid", "0.5:4:8:log", "--verify"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 9);
    CHECK(l[0] == "lambda,value,oracle,abs_diff");
    CHECK(l[1].rfind("0.5,", 0) == 0);
    CHECK(l[8].rfind("4,", 0) == 0);
    double prev = INFINITY;
    for (std::size_t i = 1; i < l.size(); ++i) {
        std::istringstream ss(l[i]);
        std::string x, v, o, d;
        std::getline(ss, x, ',');
        std::getline(ss, v, ',');
        std::getline(ss, o, ',');
        std::getline(ss, d, ',');
        CHECK(std::stod(d) < 1e-9);
        CHECK(std::stod(v) < prev);
        prev = std::stod(v);
    }

    r = run({"sweep", "--dist", "exp:lambda=1", "--measure", "tsallis", "--param", "alpha",
             "--grid", "0.5,2,3"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out)[2] == "2,0.5");

    // the order grid may cross into the invalid region
    r = run({"sweep", "--dist", "gamma:lambda=1,mu=0.5", "--measure", "renyi", "--param", "alpha",
             "--grid", "1.5:2.5:3"});
    CHECK(r.code == 2);
}

TEST_CASE("sweep output file and determinism") {
    const std::string path = "cli_sweep_test.csv";
    auto a = run({"sweep", "--dist", "lognormal:m=0,sigma2=1", "--measure", "gr2", "--alpha", "0.5",
                  "--beta", "2", "--param", "sigma2", "--grid", "0.1:3:5", "--out", path});
    REQUIRE(a.code == 0);
    CHECK(a.out.empty());
    std::ifstream in(path);
    std::stringstream first;
    first << in.rdbuf();
    auto b = run({"sweep", "--dist", "lognormal:m=0,sigma2=1", "--measure", "gr2", "--alpha", "0.5",
                  "--beta", "2", "--param", "sigma2", "--grid", "0.1:3:5"});
    CHECK(first.str() == b.out);
    std::remove(path.c_str());
}

TEST_CASE("converge verb") {
    auto r = run({"converge", "--kind", "binomial", "--lambda", "2"});
    REQUIRE(r.code == 0);
    auto l = lines(r.out);
    REQUIRE(l.size() == 5);
    CHECK(l[0] == "n,approx,limit,abs_error");
    r = run({"converge", "--kind", "nb", "--p", "0.5", "--r-grid", "0.4,0.1,0.01,0.001"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out).size() == 5);
    r = run({"converge", "--kind", "poisson", "--grid", "1,10,100"});
    REQUIRE(r.code == 0);
    CHECK(lines(r.out)[0] == "lambda,entropy,derivative,series");
    CHECK(run({"converge", "--kind", "nb", "--r-grid", "0.1,0.4"}).code == 1);
    CHECK(run({"converge", "--kind", "binomial", "--n", "1,10"}).code == 1);
    CHECK(run({"converge", "--kind", "other"}).code == 1);
}

TEST_CASE("gauss verb") {
    auto r = run({"gauss", "--n", "5", "--hurst-grid", "0:1:11"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() == 12);
    CHECK(l[0] == "H,det,log_det,singular,entropy");
    CHECK(l[6].rfind("0.5,1,", 0) == 0);
    CHECK(l[11].rfind("1,0,-inf,1,", 0) == 0);
}

TEST_CASE("selftest verb") {
    auto r = run({"selftest", "--families", "exp", "--draws", "20"});
    REQUIRE(r.code == 0);
    const auto l = lines(r.out);
    REQUIRE(l.size() > 1);
    for (std::size_t i = 1; i < l.size(); ++i) {
        CHECK(l[i].rfind("exp,", 0) == 0);
        CHECK(l[i].find("PASS") != std::string::npos);
    }
    r = run({"selftest", "--families", "gamma", "--draws", "20", "--tol", "1e-15"});
    CHECK(r.code == 3);
    CHECK(r.out.find("FAIL") != std::string::npos);
    CHECK(run({"selftest", "--families", "poisson"}).code == 1);
    CHECK(run({"selftest", "--families", "nope"}).code == 1);
}
