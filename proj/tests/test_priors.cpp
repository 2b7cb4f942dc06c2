#include <doctest.h>

#include <cmath>

#include "hsplus/priors.hpp"
#include "hsplus/rng.hpp"
#include "hsplus/specialfn.hpp"

using namespace hsplus;

namespace {
const PriorSpec kHsp{Family::HorseshoePlus, 1.0};
const PriorSpec kHs{Family::Horseshoe, 1.0};
const double kPi = constants::pi;
}  // namespace

TEST_SUITE_BEGIN("priors");

TEST_CASE("lambda density: values and limits") {
    // horseshoe at the origin approaches 2/(pi tau)
    CHECK(lambda_density(kHs, 1e-12) == doctest::Approx(2.0 / kPi).epsilon(1e-10));
    // horseshoe+ removable point at lambda = tau: 4/(pi^2 tau) * 1/2
    CHECK(lambda_density(kHsp, 1.0) == doctest::Approx(2.0 / (kPi * kPi)).epsilon(1e-12));
    const PriorSpec hsp_tau{Family::HorseshoePlus, 0.37};
    CHECK(lambda_density(hsp_tau, 0.37) ==
          doctest::Approx(2.0 / (kPi * kPi * 0.37)).epsilon(1e-12));
    // continuity through the removable point
    const double l = lambda_density(kHsp, 1.0 - 1e-9);
    const double r = lambda_density(kHsp, 1.0 + 1e-9);
    CHECK(l == doctest::Approx(r).epsilon(1e-7));
    CHECK_THROWS_AS(lambda_density(kHs, 0.0), std::domain_error);
    CHECK_THROWS_AS(lambda_density(kHsp, -1.0), std::domain_error);
}

TEST_CASE("lambda density integrates to one (both families, tau=1)") {
    for (const auto& spec : {kHs, kHsp}) {
        const auto f = [&](double x) {
            const double lam = std::exp(x);
            return lambda_density(spec, lam) * lam;
        };
        const std::vector<double> knots{-40.0, -10.0, -2.0, 0.0, 2.0, 10.0, 40.0};
        CHECK(integrate_segments(f, knots).value == doctest::Approx(1.0).epsilon(1e-8));
    }
}

TEST_CASE("lambda density scale equivariance in tau") {
    for (const auto fam : {Family::Horseshoe, Family::HorseshoePlus})
        for (double tau : {0.25, 3.0})
            for (double lam : {0.01, 0.5, 2.0, 50.0}) {
                const double lhs = lambda_density({fam, tau}, lam);
                const double rhs = lambda_density({fam, 1.0}, lam / tau) / tau;
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-13));
            }
}

TEST_CASE("kappa prior: jacobian limit and shapes") {
    // horseshoe+ jacobian factor at kappa* = 1/(1+tau^2) has limit (1+tau^2)/tau^2
    CHECK(kappa_jacobian_factor(kHsp, 0.5) == doctest::Approx(2.0).epsilon(1e-12));
    const PriorSpec hsp_half{Family::HorseshoePlus, 0.5};
    const double kstar = 1.0 / 1.25;
    CHECK(kappa_jacobian_factor(hsp_half, kstar) == doctest::Approx(1.25 / 0.25).epsilon(1e-12));
    // continuity through kappa*
    CHECK(kappa_jacobian_factor(hsp_half, kstar - 1e-8) ==
          doctest::Approx(kappa_jacobian_factor(hsp_half, kstar + 1e-8)).epsilon(1e-6));
    // horseshoe at tau=1 is Beta(1/2,1/2); normalized density at 1/2 is 2/pi
    CHECK(kappa_prior_density(kHs, 0.5) == doctest::Approx(2.0 / kPi).epsilon(1e-12));
    // unbounded but integrable at both ends for horseshoe+
    CHECK(kappa_prior_density(kHsp, 1e-8) > kappa_prior_density(kHsp, 1e-4));
    CHECK(kappa_prior_density(kHsp, 1.0 - 1e-8) > kappa_prior_density(kHsp, 1.0 - 1e-4));
    CHECK_THROWS_AS(kappa_prior_density(kHs, 0.0), std::domain_error);
    CHECK_THROWS_AS(kappa_prior_density(kHs, 1.0), std::domain_error);
}

TEST_CASE("kappa prior integrates to one") {
    for (const auto fam : {Family::Horseshoe, Family::HorseshoePlus})
        for (double tau : {1.0, 0.5}) {
            const PriorSpec spec{fam, tau};
            const double left =
                integrate_segments([&](double k) { return kappa_prior_density(spec, k); },
                                   log_knots(0.0, 0.5))
                    .value;
            // right half under u = sqrt(1-k); below u ~ 1e-8 the argument
            // would round to 1, so pin it one ulp inside (the remaining
            // log-divergent sliver contributes O(1e-11))
            const auto right_f = [&](double u) {
                const double k = std::min(1.0 - u * u, 1.0 - 1e-16);
                return kappa_prior_density(spec, k) * 2.0 * u;
            };
            const double right =
                integrate_segments(right_f, log_knots(0.0, std::sqrt(0.5))).value;
            CHECK(left + right == doctest::Approx(1.0).epsilon(1e-6));
        }
}

TEST_CASE("marginal density: frozen quadrature oracles and closed-form route") {
    // frozen from an independent high-precision evaluation of the zeta integral
    CHECK(marginal_theta_density(kHsp, 1.0) == doctest::Approx(0.08627982578773671).epsilon(1e-9));
    CHECK(marginal_theta_density(kHsp, 2.0) == doctest::Approx(0.037721399073891639).epsilon(1e-9));
    CHECK(marginal_theta_density(kHs, 2.0) == doctest::Approx(0.045884135306647276).epsilon(1e-9));
    // the horseshoe marginal has the closed form e^{s} E1(s) / (pi sqrt(2 pi))
    for (double th : {0.2, 1.0, 3.0, 12.0}) {
        const double s = th * th / 2.0;
        const double closed = std::exp(s) * exp_integral_e1(s) / (kPi * constants::sqrt_two_pi);
        CHECK(marginal_theta_density(kHs, th) == doctest::Approx(closed).epsilon(1e-9));
    }
    CHECK_THROWS_AS(marginal_theta_density(kHsp, 0.0), PoleAtOrigin);
    CHECK_THROWS_AS(marginal_theta_density(kHs, 0.0), PoleAtOrigin);
}

TEST_CASE("marginal scale family in tau") {
    const PriorSpec hsp_tau{Family::HorseshoePlus, 0.4};
    for (double th : {0.1, 1.0, 5.0})
        CHECK(marginal_theta_density(hsp_tau, th) ==
              doctest::Approx(marginal_theta_density(kHsp, th / 0.4) / 0.4).epsilon(1e-10));
}

TEST_CASE("marginal bounds: formulas and containment") {
    const auto b2 = marginal_bounds(kHsp, 2.0);
    CHECK(b2.lower == doctest::Approx(std::log(2.0) / (kPi * kPi * constants::sqrt_two_pi))
                          .epsilon(1e-13));
    CHECK(b2.upper == doctest::Approx(1.0 / (2.0 * kPi * kPi)).epsilon(1e-13));
    // horseshoe bracket at theta = 2 with K = (2 pi^3)^{-1/2}
    const auto h2 = marginal_bounds(kHs, 2.0);
    const double K = 1.0 / std::sqrt(2.0 * kPi * kPi * kPi);
    CHECK(h2.lower == doctest::Approx(0.5 * K * std::log(2.0)).epsilon(1e-13));
    CHECK(h2.upper == doctest::Approx(K * std::log(1.5)).epsilon(1e-13));
    CHECK(h2.lower == doctest::Approx(0.04401043473131876).epsilon(1e-10));
    CHECK(h2.upper == doctest::Approx(0.05148890791651489).epsilon(1e-10));
    // containment at a few points (the full 200-point sweep lives in verify)
    for (double th : {0.01, 0.5, 2.0, 9.0}) {
        for (const auto& spec : {kHs, kHsp}) {
            const auto b = marginal_bounds(spec, th);
            const double p = marginal_theta_density(spec, th);
            CHECK(b.lower < p);
            CHECK(p <= b.upper);
        }
    }
    // lower bound diverges at the origin
    CHECK(marginal_bounds(kHsp, 1e-9).lower > marginal_bounds(kHsp, 1e-3).lower);
    CHECK_THROWS_AS(marginal_bounds(kHsp, 0.0), std::domain_error);
    CHECK_THROWS_AS(marginal_bounds({Family::HorseshoePlus, 0.5}, 1.0), std::domain_error);
}

TEST_CASE("sharpened product lower bound") {
    // printed lower < basic-product bound <= sharper truncation < density
    for (double th : {0.1, 1.0, 4.0}) {
        const double base = marginal_bounds(kHsp, th).lower;
        const double s1 = marginal_lower_bound_sharpened(kHsp, th, 1);
        const double s2 = marginal_lower_bound_sharpened(kHsp, th, 2);
        const double p = marginal_theta_density(kHsp, th);
        CHECK(base < s1);
        CHECK(s1 <= s2);
        CHECK(s2 < p);
    }
    CHECK_THROWS_AS(marginal_lower_bound_sharpened(kHs, 1.0, 2), std::domain_error);
    CHECK_THROWS_AS(marginal_lower_bound_sharpened(kHsp, 0.0, 2), std::domain_error);
}

TEST_CASE("asymptotic expansions") {
    // horseshoe tail value at theta = 10
    CHECK(asymptotic_expansion(kHs, 10.0, ExpansionPoint::Infinity) ==
          doctest::Approx(std::sqrt(2.0) / (std::pow(kPi, 1.5) * 100.0)).epsilon(1e-13));
    // expansion-to-quadrature ratios approach 1 at the extremes
    CHECK(marginal_theta_density(kHsp, 1e3) /
              asymptotic_expansion(kHsp, 1e3, ExpansionPoint::Infinity) ==
          doctest::Approx(1.0).epsilon(0.01));
    CHECK(marginal_theta_density(kHsp, 1e-6) /
              asymptotic_expansion(kHsp, 1e-6, ExpansionPoint::Origin) ==
          doctest::Approx(1.0).epsilon(0.01));
    CHECK(marginal_theta_density(kHs, 1e-6) /
              asymptotic_expansion(kHs, 1e-6, ExpansionPoint::Origin) ==
          doctest::Approx(1.0).epsilon(0.01));
}

TEST_CASE("origin mass: closed form matches the expansion integral and the marginal") {
    // closed form is the exact integral of the origin expansion
    for (const auto& spec : {kHs, kHsp}) {
        for (double n : {1e4, 1e8}) {
            const auto f = [&](double x) {
                const double th = std::exp(x);
                return asymptotic_expansion(spec, th, ExpansionPoint::Origin) * th;
            };
            const std::vector<double> knots{-200.0, -100.0, -50.0, -25.0, -12.0,
                                            std::log(1.0 / std::sqrt(n))};
            const double expansion_integral = integrate_segments(f, knots).value;
            CHECK(origin_mass(spec, n) == doctest::Approx(expansion_integral).epsilon(1e-9));
        }
    }
    // and agrees with the mass of the true marginal to expansion accuracy
    for (const auto& spec : {kHs, kHsp}) {
        for (double n : {1e4, 1e8}) {
            const double cf = origin_mass(spec, n);
            const double q = origin_mass_quadrature(spec, n);
            CHECK(cf == doctest::Approx(q).epsilon(0.02));
        }
    }
    // leading-term form at log n = 4 for the horseshoe: 2 / (sqrt(2) pi^{3/2} sqrt(n))
    const double n_e4 = std::exp(4.0);
    CHECK(origin_mass_leading(kHs, n_e4) ==
          doctest::Approx(2.0 / (std::sqrt(2.0) * std::pow(kPi, 1.5) * std::sqrt(n_e4)))
              .epsilon(1e-12));
    // the extra log n factor: horseshoe+ mass exceeds horseshoe mass for n >= 1e6
    for (double n : {1e6, 1e8, 1e10})
        CHECK(origin_mass(kHsp, n) > origin_mass(kHs, n));
    CHECK_THROWS_AS(origin_mass(kHs, 1.0), std::domain_error);
}

TEST_CASE("slowly varying components") {
    CHECK(slowly_varying_component(kHsp, 1.0) == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(slowly_varying_component(kHsp, 1e6) > 13.0);
    // horseshoe factor is bounded by 1
    double sup = 0.0;
    for (double l2 = 1.0; l2 <= 1e9; l2 *= 10.0)
        sup = std::max(sup, slowly_varying_component(kHs, l2));
    CHECK(sup <= 1.0);
    // continuity at the removable point
    CHECK(slowly_varying_component(kHsp, 1.0 + 1e-9) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(slowly_varying_component(kHs, 0.0), std::domain_error);
}

TEST_CASE("cauchy product densities") {
    // k=1 collapses to the standard Cauchy
    CHECK(cauchy_product_density(1, 0.0) == doctest::Approx(1.0 / kPi).epsilon(1e-14));
    CHECK(cauchy_product_density(1, 2.0) == doctest::Approx(1.0 / (5.0 * kPi)).epsilon(1e-14));
    // k=2 removable point at |x| = 1: (2/pi^2) * 1/2
    CHECK(cauchy_product_density(2, 1.0) == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-12));
    CHECK(cauchy_product_density(2, -1.0) == doctest::Approx(1.0 / (kPi * kPi)).epsilon(1e-12));
    // symmetry
    for (int k : {1, 2, 3, 4})
        for (double x : {0.3, 1.7})
            CHECK(cauchy_product_density(k, x) == doctest::Approx(cauchy_product_density(k, -x)));
    // normalization for k = 2, 3 by quadrature
    for (int k : {2, 3}) {
        const auto f = [&](double s) {
            const double t = std::exp(s);
            return cauchy_product_density(k, t) * t;
        };
        const std::vector<double> knots{-60.0, -20.0, -5.0, 0.0, 5.0, 20.0, 60.0};
        const double total = 2.0 * integrate_segments(f, knots).value;
        CHECK(total == doctest::Approx(1.0).epsilon(1e-7));
    }
    CHECK_THROWS_AS(cauchy_product_density(0, 1.0), std::domain_error);
    CHECK_THROWS_AS(cauchy_product_density(2, 0.0), PoleAtOrigin);
}

TEST_CASE("cauchy product two: cdf properties and Monte Carlo agreement") {
    CHECK(cauchy_product2_cdf(0.0) == doctest::Approx(0.5));
    CHECK(cauchy_product2_cdf(1.0) == doctest::Approx(0.75).epsilon(1e-12));
    CHECK(cauchy_product2_cdf(-1.0) == doctest::Approx(0.25).epsilon(1e-12));
    // inversion symmetry: X and 1/X share the law, so m(x) + m(1/x) = 1/2
    for (double x : {0.2, 0.9, 3.7})
        CHECK((cauchy_product2_cdf(x) - 0.5) + (cauchy_product2_cdf(1.0 / x) - 0.5) ==
              doctest::Approx(0.5).epsilon(1e-12));
    // cdf matches quadrature of the density
    for (double x : {0.4, 1.0, 2.5}) {
        const double mass =
            integrate_segments([&](double t) { return cauchy_product_density(2, t); },
                               log_knots(0.0, x))
                .value;
        CHECK(cauchy_product2_cdf(x) == doctest::Approx(0.5 + mass).epsilon(1e-8));
    }
    // quick Monte Carlo sanity (the full KS gate lives in the acceptance suite)
    Rng rng(91);
    const int N = 200000;
    int below1 = 0;
    for (int i = 0; i < N; ++i) {
        const double c1 = std::tan(kPi * (rng.uniform() - 0.5));
        const double c2 = std::tan(kPi * (rng.uniform() - 0.5));
        if (c1 * c2 <= 1.0) ++below1;
    }
    CHECK(static_cast<double>(below1) / N == doctest::Approx(0.75).epsilon(0.01));
}

TEST_CASE("universal prior") {
    CHECK(log2_star(1.0) == doctest::Approx(0.0));
    CHECK(log2_star(2.0) == doctest::Approx(1.0));
    CHECK(log2_star(16.0) == doctest::Approx(4.0 + 2.0 + 1.0).epsilon(1e-12));
    CHECK(universal_prior_mass(1) == doctest::Approx(1.0 / universal_prior_c).epsilon(1e-12));
    CHECK(universal_prior_mass(2) == doctest::Approx(0.5 / universal_prior_c).epsilon(1e-12));
    // strictly decreasing over 2..100
    for (long long i = 2; i < 100; ++i)
        CHECK(universal_prior_mass(i + 1) < universal_prior_mass(i));
    // the log-star series converges very slowly: frozen partial sum at 1e6
    double partial = 0.0;
    for (long long i = 1; i <= 1000000; ++i) partial += universal_prior_mass(i);
    CHECK(partial == doctest::Approx(0.8240150106).epsilon(1e-6));
    CHECK(partial < 1.0);
    // still increasing toward 1
    double partial10 = partial;
    for (long long i = 1000001; i <= 10000000; ++i) partial10 += universal_prior_mass(i);
    CHECK(partial10 > partial);
    CHECK(partial10 < 1.0);
    CHECK_THROWS_AS(universal_prior_mass(0), std::domain_error);
}

TEST_SUITE_END();
