#pragma once

// Deterministic one-dimensional analytics for the shrinkage weight kappa
// given a single observation: posterior density/moments/tails by adaptive
// quadrature, the analytic concentration-bound right-hand sides, and the
// Tweedie-formula moments of theta derived from the marginal data density.
// This module is the oracle the Gibbs sampler is validated against.

#include "hsplus/priors.hpp"

namespace hsplus {

// Immutable after construction; safe to share across threads.
class KappaPosterior {
public:
    KappaPosterior(double y, const PriorSpec& spec);

    double y() const { return y_; }
    const PriorSpec& spec() const { return spec_; }
    double normalizing_constant() const { return norm_; }

    // Normalized posterior density at kappa in (0,1).
    double density(double kappa) const;

    // E(kappa | y, tau).
    double mean_kappa() const;
    // Pseudo-inclusion probability 1 - E(kappa | y, tau).
    double omega_hat() const { return 1.0 - mean_kappa(); }
    // Posterior mean of theta, (1 - E(kappa)) * y.
    double posterior_mean_theta() const { return omega_hat() * y_; }

    // P(kappa < eps | y, tau) and P(kappa > eta | y, tau).
    double tail_below(double eps) const;
    double tail_above(double eta) const;

    // Integral of f(kappa) against the normalized posterior over (lo, hi).
    double expect(const Integrand& f, double lo = 0.0, double hi = 1.0) const;

private:
    double raw_integral(const Integrand& f, double lo, double hi) const;

    double y_;
    PriorSpec spec_;
    double norm_;
};

enum class BoundKind { KappaBelow, KappaAbove };

struct ConcentrationBound {
    double epsilon_or_eta = 0.25;
    double delta = 1.0 / 9.0;  // used by the upper-tail bound only
};

// Appendix constant C(eta, delta) of the upper-tail bound.
double concentration_constant(double eta, double delta);

// Analytic right-hand sides: KappaBelow -> e^{y^2/2} tau^2 eps (1-eps)^{-2};
// KappaAbove -> e^{-eta(1-delta) y^2/2} tau^{-2} C(eta, delta).
double concentration_bound(BoundKind kind, double y, const PriorSpec& spec,
                           const ConcentrationBound& params);

// Marginal data density m(y | tau) = int sqrt(k/2pi) e^{-k y^2/2} p(k|tau) dk
// and log-derivatives obtained by differentiating under the integral.
double marginal_data_density(double y, const PriorSpec& spec);
struct LogMarginalDerivatives {
    double first;
    double second;
};
LogMarginalDerivatives log_marginal_derivatives(double y, const PriorSpec& spec);

// Posterior MSE = bias^2 + variance, bias = dlog m/dy, var = 1 + d2log m/dy2.
double posterior_mse(double y, const PriorSpec& spec);

// Smallest |y| with omega_hat(y) > 1/2 (the plug-in rejection threshold);
// omega_hat is strictly increasing in |y|.
double rejection_threshold(const PriorSpec& spec);

// Posterior CDF of theta given y: P(theta <= t | y) integrated over the
// kappa posterior (theta | y, kappa ~ N((1-kappa) y, 1-kappa)).
double posterior_theta_cdf(const KappaPosterior& kp, double t);

}  // namespace hsplus
