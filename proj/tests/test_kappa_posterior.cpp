#include <doctest.h>

#include <cmath>

#include "hsplus/kappa_posterior.hpp"
#include "hsplus/specialfn.hpp"

using namespace hsplus;

namespace {
const PriorSpec kHsp{Family::HorseshoePlus, 1.0};
const PriorSpec kHs{Family::Horseshoe, 1.0};
}  // namespace

TEST_SUITE_BEGIN("kappa_posterior");

TEST_CASE("posterior at y=0, tau=1, horseshoe has a closed form") {
    // prior Beta(1/2,1/2) times the kappa^{1/2} likelihood factor gives the
    // normalized posterior (1/2)(1-kappa)^{-1/2}
    const KappaPosterior kp(0.0, kHs);
    CHECK(kp.density(0.5) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
    CHECK(kp.density(0.75) == doctest::Approx(0.5 / std::sqrt(0.25)).epsilon(1e-10));
    // E(kappa | y=0, tau=1) = 2/3 exactly
    CHECK(kp.mean_kappa() == doctest::Approx(2.0 / 3.0).epsilon(1e-10));
}

TEST_CASE("density normalizes over (0,1) for a (y, tau) grid") {
    for (const auto fam : {Family::Horseshoe, Family::HorseshoePlus})
        for (double y : {0.0, 2.0, 5.0})
            for (double tau : {1.0, 0.1}) {
                const KappaPosterior kp(y, {fam, tau});
                const double left =
                    integrate_segments([&](double k) { return kp.density(k); },
                                       log_knots(0.0, 0.5))
                        .value;
                const auto right_f = [&](double u) {
                    const double k = std::min(1.0 - u * u, 1.0 - 1e-16);
                    return kp.density(k) * 2.0 * u;
                };
                const double right =
                    integrate_segments(right_f, log_knots(0.0, std::sqrt(0.5))).value;
                CHECK(left + right == doctest::Approx(1.0).epsilon(1e-6));
            }
}

TEST_CASE("horseshoe+ density is continuous at kappa*") {
    const PriorSpec spec{Family::HorseshoePlus, 0.5};
    const KappaPosterior kp(1.0, spec);
    const double kstar = 1.0 / 1.25;
    CHECK(kp.density(kstar - 1e-9) == doctest::Approx(kp.density(kstar + 1e-9)).epsilon(1e-6));
    CHECK(std::isfinite(kp.density(kstar)));
}

TEST_CASE("posterior mean of kappa: frozen oracle grid") {
    // frozen from an independent high-precision quadrature
    struct Row { bool plus; double y, tau, ek; };
    const Row rows[] = {
        {false, 0.0, 1.0, 2.0 / 3.0},
        {false, 0.0, 0.1, 0.941760328682},
        {false, 2.0, 1.0, 0.468735442313},
        {false, 2.0, 0.1, 0.874074511792},
        {false, 5.0, 1.0, 0.0841861155007},
        {false, 5.0, 0.1, 0.0956016584521},
        {true, 0.0, 1.0, 0.73085311311},
        {true, 0.0, 0.1, 0.917529439937},
        {true, 2.0, 1.0, 0.494144615241},
        {true, 2.0, 0.1, 0.800055919113},
        {true, 5.0, 1.0, 0.0653598689877},
        {true, 5.0, 0.1, 0.0804570446913},
    };
    for (const auto& r : rows) {
        const KappaPosterior kp(r.y, {r.plus ? Family::HorseshoePlus : Family::Horseshoe, r.tau});
        CHECK(kp.mean_kappa() == doctest::Approx(r.ek).epsilon(1e-8));
    }
}

TEST_CASE("posterior mean monotonicity and limits") {
    // strictly decreasing in |y| for fixed tau
    double prev = 1.0;
    for (double y : {0.0, 1.0, 2.0, 4.0, 8.0}) {
        const KappaPosterior kp(y, kHsp);
        const double ek = kp.mean_kappa();
        CHECK(ek < prev);
        CHECK(ek > 0.0);
        CHECK(ek < 1.0);
        prev = ek;
    }
    // symmetric in y
    CHECK(KappaPosterior(3.0, kHsp).mean_kappa() ==
          doctest::Approx(KappaPosterior(-3.0, kHsp).mean_kappa()).epsilon(1e-12));
    // posterior mean of theta at y=0 is exactly 0
    CHECK(KappaPosterior(0.0, kHsp).posterior_mean_theta() == doctest::Approx(0.0));
    // small tau forces shrinkage toward kappa = 1
    CHECK(KappaPosterior(1.0, {Family::HorseshoePlus, 0.01}).mean_kappa() ==
          doctest::Approx(0.9799038885).epsilon(1e-7));
    CHECK(KappaPosterior(1.0, {Family::HorseshoePlus, 0.01}).mean_kappa() > 0.95);
    // large |y| frees the signal
    const double om10 = KappaPosterior(10.0, kHsp).omega_hat();
    CHECK(om10 == doctest::Approx(0.983761474).epsilon(1e-7));
    CHECK(om10 > 0.98);
}

TEST_CASE("tail probabilities are complementary") {
    const KappaPosterior kp(2.0, {Family::HorseshoePlus, 0.5});
    CHECK(kp.tail_below(0.3) + kp.tail_above(0.3) == doctest::Approx(1.0).epsilon(1e-8));
    CHECK_THROWS_AS(kp.tail_below(0.0), std::domain_error);
    CHECK_THROWS_AS(kp.tail_above(1.0), std::domain_error);
}

TEST_CASE("concentration bound right-hand sides") {
    // left bound at y=0, tau=0.1, eps=0.5 -> 0.01 * 0.5 * 4 = 0.02
    CHECK(concentration_bound(BoundKind::KappaBelow, 0.0, {Family::HorseshoePlus, 0.1},
                              {0.5, 1.0 / 9.0}) == doctest::Approx(0.02).epsilon(1e-12));
    // C(1/4, 1/9), frozen from direct evaluation of the formula
    CHECK(concentration_constant(0.25, 1.0 / 9.0) ==
          doctest::Approx(153.89263575784451).epsilon(1e-10));
    // right bound assembles the pieces
    const double b = concentration_bound(BoundKind::KappaAbove, 6.0, {Family::HorseshoePlus, 0.5},
                                         {0.25, 1.0 / 9.0});
    CHECK(b == doctest::Approx(std::exp(-0.25 * (8.0 / 9.0) * 18.0) * 4.0 *
                               153.89263575784451).epsilon(1e-10));
    // delta domain guard: delta must stay below 1/(eta (1+tau^2))
    CHECK_THROWS_AS(concentration_bound(BoundKind::KappaAbove, 1.0, {Family::HorseshoePlus, 1.0},
                                        {0.9, 0.9}),
                    std::domain_error);
}

TEST_CASE("upper-tail bound holds on the acceptance grid (lower-tail bound does not)") {
    // The upper-tail bound is satisfied everywhere we test; the lower-tail
    // bound fails for small tau (its jacobian inequality flips below
    // kappa*), e.g. the (y=1, tau=0.1, eps=0.5) cell:
    const KappaPosterior kp(1.0, {Family::HorseshoePlus, 0.1});
    const double tail = kp.tail_below(0.5);
    CHECK(tail == doctest::Approx(0.07447942).epsilon(1e-6));  // frozen quadrature+MC value
    const double stated =
        concentration_bound(BoundKind::KappaBelow, 1.0, {Family::HorseshoePlus, 0.1},
                            {0.5, 1.0 / 9.0});
    CHECK(stated == doctest::Approx(std::exp(0.5) * 0.01 * 2.0).epsilon(1e-12));
    CHECK(tail > stated);  // documented violation of the stated bound
    // upper tail at the same cell
    const double above = kp.tail_above(0.25);
    CHECK(above <= concentration_bound(BoundKind::KappaAbove, 1.0,
                                       {Family::HorseshoePlus, 0.1}, {0.25, 1.0 / 9.0}));
}

TEST_CASE("marginal data density and Tweedie identities") {
    for (const auto fam : {Family::Horseshoe, Family::HorseshoePlus})
        for (double tau : {1.0, 0.1}) {
            const PriorSpec spec{fam, tau};
            for (double y : {0.5, 2.0, 5.0}) {
                const KappaPosterior kp(y, spec);
                const double lhs = kp.posterior_mean_theta();
                const double rhs = y + log_marginal_derivatives(y, spec).first;
                CHECK(lhs == doctest::Approx(rhs).epsilon(1e-8));
            }
        }
    // symmetry: first log-derivative vanishes at the origin
    CHECK(std::abs(log_marginal_derivatives(0.0, kHsp).first) < 1e-12);
    // variance positivity
    for (double y : {0.0, 1.0, 3.0, 8.0})
        CHECK(1.0 + log_marginal_derivatives(y, kHsp).second > 0.0);
    // m is symmetric and positive
    CHECK(marginal_data_density(2.0, kHsp) ==
          doctest::Approx(marginal_data_density(-2.0, kHsp)).epsilon(1e-12));
    CHECK(marginal_data_density(30.0, kHs) > 0.0);
}

TEST_CASE("posterior mse: origin value and tail direction") {
    // at y=0 the bias vanishes: mse equals the posterior variance
    const auto d0 = log_marginal_derivatives(0.0, kHs);
    CHECK(posterior_mse(0.0, kHs) == doctest::Approx(1.0 + d0.second).epsilon(1e-12));
    // 1 - E(kappa|0) at tau=1 for the horseshoe is 1/3, matching the variance route
    CHECK(1.0 + d0.second == doctest::Approx(1.0 / 3.0).epsilon(1e-8));
    // direction for large signals (gap magnitudes are asserted in the verify suite)
    for (double y : {8.0, 20.0})
        CHECK(posterior_mse(y, kHsp) < posterior_mse(y, kHs));
}

TEST_CASE("rejection threshold matches the half-threshold rule") {
    const PriorSpec spec{Family::HorseshoePlus, 0.1};
    const double ystar = rejection_threshold(spec);
    CHECK(KappaPosterior(ystar + 1e-3, spec).omega_hat() > 0.5);
    CHECK(KappaPosterior(ystar - 1e-3, spec).omega_hat() < 0.5);
}

TEST_CASE("posterior theta cdf is a proper monotone cdf") {
    const KappaPosterior kp(2.0, kHsp);
    double prev = 0.0;
    for (double t : {-3.0, -1.0, 0.0, 1.0, 2.0, 4.0, 8.0}) {
        const double c = posterior_theta_cdf(kp, t);
        CHECK(c >= prev);
        CHECK(c >= 0.0);
        CHECK(c <= 1.0);
        prev = c;
    }
    CHECK(posterior_theta_cdf(kp, 60.0) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_SUITE_END();
