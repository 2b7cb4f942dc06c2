#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "hsplus/rng.hpp"
#include "hsplus/specialfn.hpp"
#include "hsplus/testing.hpp"

using namespace hsplus;

TEST_SUITE_BEGIN("testing");

TEST_CASE("half-threshold rule is strict") {
    const auto rej = half_threshold_rule(std::vector<double>{0.5, 0.5 + 1e-12, 0.49, 0.99});
    CHECK_FALSE(rej[0]);  // exact tie accepts
    CHECK(rej[1]);
    CHECK_FALSE(rej[2]);
    CHECK(rej[3]);
}

TEST_CASE("oracle threshold") {
    // u = 1, v = 1 (mu = 1/2, psi^2 = 1): C^2 = 2 log 2
    OracleParams p{0.5, 1.0};
    CHECK(p.v() == doctest::Approx(1.0));
    const auto thr = oracle_threshold(p);
    CHECK_FALSE(thr.degenerate);
    CHECK(thr.c_squared == doctest::Approx(2.0 * std::log(2.0)).epsilon(1e-12));
    // u -> infinity limit: C^2 -> log v; at u = 1e6, v = e^2
    const double f = std::sqrt(std::exp(2.0) / 1e6);
    OracleParams big{1.0 / (1.0 + f), 1e6};
    CHECK(big.v() == doctest::Approx(std::exp(2.0)).epsilon(1e-9));
    CHECK(oracle_threshold(big).c_squared == doctest::Approx(2.0).epsilon(1e-5));
    // equivalence of the two threshold parameterizations at mu=0.1, psi^2=10
    OracleParams q{0.1, 10.0};
    CHECK(oracle_threshold(q).c_squared ==
          doctest::Approx(oracle_threshold_psi_f(10.0, 9.0)).epsilon(1e-12));
    // degenerate when the formula gives no positive threshold
    OracleParams tiny{0.9, 0.05};  // v(1+1/u) = 0.013, well below 1
    CHECK(oracle_threshold(tiny).degenerate);
    CHECK_THROWS_AS(oracle_error_rates(tiny), std::domain_error);
}

TEST_CASE("oracle error rates at assumption constant C = 1") {
    // pick (mu, psi^2) with log(v)/u = 1: u = 6, v = e^6 => f = sqrt(e^6/6)
    const double u = 6.0;
    const double f = std::sqrt(std::exp(u) / u);
    OracleParams p{1.0 / (1.0 + f), u};
    CHECK(p.assumption_constant() == doctest::Approx(1.0).epsilon(1e-12));
    const auto r = oracle_error_rates(p);
    CHECK(r.t2 == doctest::Approx(0.6826894921370859).epsilon(1e-10));
    CHECK(r.risk_per_test == doctest::Approx(p.mu * 0.6826894921370859).epsilon(1e-10));
    CHECK(r.t1 == doctest::Approx(std::exp(-0.5) *
                                  std::sqrt(2.0 / (constants::pi * p.v() * std::log(p.v()))))
                      .epsilon(1e-12));
}

TEST_CASE("oracle rule Monte Carlo: empirical MP matches the leading-order formula") {
    const double mu = 0.1, psi_sq = 2.0 * std::log(200.0);
    OracleParams p{mu, psi_sq};
    const double c = std::sqrt(oracle_threshold(p).c_squared);
    Rng rng(1234);
    const int N = 1000000;
    long errs = 0;
    const double psi = std::sqrt(psi_sq);
    for (int i = 0; i < N; ++i) {
        const bool signal = rng.uniform() < mu;
        const double theta = signal ? psi * rng.normal() : 0.0;
        const double y = theta + rng.normal();
        const bool rej = std::abs(y) > c;
        if (rej != signal) ++errs;
    }
    const double mp_emp = static_cast<double>(errs) / N;
    const auto rates = oracle_error_rates(p);
    const double mp_formula = (1.0 - mu) * rates.t1 + mu * rates.t2;
    CHECK(mp_emp == doctest::Approx(mp_formula).epsilon(0.05));
}

TEST_CASE("benjamini-hochberg") {
    // hand step-up: 0.01 <= 0.05, 0.02 <= 0.10, 0.9 > 0.15
    const auto rej = benjamini_hochberg({0.01, 0.02, 0.9}, 0.15);
    CHECK(rej == std::vector<bool>{true, true, false});
    // default alpha for n = 200
    CHECK(1.0 / std::log(200.0) == doctest::Approx(0.18873898).epsilon(1e-6));
    // all ones -> reject none
    const auto none = benjamini_hochberg(std::vector<double>(9, 1.0), 0.1);
    CHECK(std::none_of(none.begin(), none.end(), [](bool b) { return b; }));
    // empty input -> empty output
    CHECK(benjamini_hochberg({}, 0.1).empty());
    // permutation equivariance
    std::vector<double> p{0.001, 0.2, 0.03, 0.77, 0.04, 0.5, 0.0101};
    const auto base = benjamini_hochberg(p, 0.2);
    std::vector<size_t> perm{3, 0, 6, 2, 5, 1, 4};
    std::vector<double> shuffled(p.size());
    for (size_t i = 0; i < p.size(); ++i) shuffled[i] = p[perm[i]];
    const auto shuffled_rej = benjamini_hochberg(shuffled, 0.2);
    for (size_t i = 0; i < p.size(); ++i) CHECK(shuffled_rej[i] == base[perm[i]]);
    CHECK_THROWS_AS(benjamini_hochberg({0.5}, 1.5), std::domain_error);
    CHECK_THROWS_AS(benjamini_hochberg({-0.1}, 0.1), std::domain_error);
}

TEST_CASE("analytic error bounds") {
    OracleParams p{0.1, 6.0};
    // t1 bound at tau = 0.05
    const auto b = analytic_error_bounds({Family::HorseshoePlus, 0.05}, p, 0.25, 1.0 / 9.0);
    CHECK(b.t1_bound ==
          doctest::Approx(std::sqrt(2.0 / constants::pi) * 0.0025 / std::sqrt(std::log(10.0)))
              .epsilon(1e-12));
    CHECK(b.t1_bound == doctest::Approx(0.001314535).epsilon(1e-5));
    // t2 bound when the assumption constant is 1: 2 Phi(3) - 1
    {
        const double u = 6.0;
        const double f = std::sqrt(std::exp(u) / u);
        OracleParams pc{1.0 / (1.0 + f), u};
        const auto bc = analytic_error_bounds({Family::HorseshoePlus, 0.05}, pc, 0.25, 1.0 / 9.0);
        CHECK(bc.t2_bound == doctest::Approx(2.0 * std_normal_cdf(3.0) - 1.0).epsilon(1e-12));
        CHECK(bc.t2_bound == doctest::Approx(0.9973002).epsilon(1e-6));
    }
    // t1 bound increases in tau over (0, 0.2)
    double prev = 0.0;
    for (double tau = 0.01; tau <= 0.2; tau += 0.01) {
        const double t1 = analytic_error_bounds({Family::HorseshoePlus, tau}, p, 0.25, 1.0 / 9.0).t1_bound;
        CHECK(t1 > prev);
        prev = t1;
    }
    CHECK_THROWS_AS(analytic_error_bounds({Family::HorseshoePlus, 0.5}, p, 0.25, 1.0 / 9.0),
                    std::domain_error);
}

TEST_CASE("scoring") {
    // perfect decisions
    const auto perfect = score({true, false, false}, {true, false, false});
    CHECK(perfect.mp == doctest::Approx(0.0));
    CHECK(*perfect.t1 == doctest::Approx(0.0));
    CHECK(*perfect.t2 == doctest::Approx(0.0));
    // always-accept has mp = signal fraction
    const auto lazy = score(std::vector<bool>(10, false),
                            {true, true, false, false, false, false, false, false, false, false});
    CHECK(lazy.mp == doctest::Approx(0.2));
    CHECK(lazy.risk == doctest::Approx(2.0));
    // hand-counted mixed case
    const auto mixed = score({true, true, false, false}, {true, false, false, true});
    CHECK(*mixed.t1 == doctest::Approx(0.5));
    CHECK(*mixed.t2 == doctest::Approx(0.5));
    CHECK(mixed.mp == doctest::Approx(0.5));
    // undefined markers
    const auto nonulls = score({true, false}, {true, true});
    CHECK_FALSE(nonulls.t1.has_value());
    CHECK(nonulls.t2.has_value());
    CHECK_THROWS_AS(score({true}, {true, false}), std::invalid_argument);
}

TEST_CASE("decisions csv serialization") {
    const std::string with_truth = decisions_csv(
        {1.0, -2.0}, {0.3, 0.8}, {false, true},
        std::optional<std::vector<bool>>{std::vector<bool>{false, true}});
    CHECK(with_truth ==
          "index,y,omega_hat,reject,truth\n0,1,0.3,0,0\n1,-2,0.8,1,1\n");
    const std::string no_truth = decisions_csv({1.0}, {0.6}, {true}, std::nullopt);
    CHECK(no_truth == "index,y,omega_hat,reject,truth\n0,1,0.6,1,\n");
}

TEST_CASE("z to p-value") {
    CHECK(z_to_pvalue(0.0) == doctest::Approx(1.0));
    CHECK(z_to_pvalue(1.959963985) == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(z_to_pvalue(-1.959963985) == doctest::Approx(0.05).epsilon(1e-8));
    CHECK(z_to_pvalue(37.0) > 0.0);  // no cancellation to zero until the true underflow
}

TEST_SUITE_END();
