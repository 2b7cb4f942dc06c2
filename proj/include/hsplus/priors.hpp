#pragma once

// Density evaluators for the horseshoe and horseshoe+ priors on the theta,
// lambda and kappa scales, analytic marginal bounds, power-log expansions at
// the origin and infinity, origin-mass integrals, Cauchy-product densities
// and the universal prior over product order.

#include <stdexcept>

#include "hsplus/quadrature.hpp"

namespace hsplus {

enum class Family { Horseshoe, HorseshoePlus };

struct PriorSpec {
    Family family = Family::HorseshoePlus;
    double tau = 1.0;
};

struct DensityBounds {
    double lower = 0.0;
    double upper = 0.0;
};

// Signalled where a density is genuinely unbounded (theta = 0 for both
// marginals; x = 0 for even-order Cauchy products).
class PoleAtOrigin : public std::domain_error {
public:
    explicit PoleAtOrigin(const std::string& what) : std::domain_error(what) {}
};

// Stable evaluation of log(x)/(x^2-1) with the removable point at x=1 filled.
double log_ratio_sq(double x);
// Stable evaluation of log1p(w)/w (= 1 at w = 0).
double log1p_over(double w);

// p(lambda | tau): half-Cauchy C+(0,tau) for the horseshoe, the Eq.-style
// product-mixture density for horseshoe+. lambda > 0.
double lambda_density(const PriorSpec& spec, double lambda);

// Jacobian factor of the horseshoe+ kappa prior,
// log{(1-k)/(k tau^2)} / (1 - k(1+tau^2)), removable point filled with
// (1+tau^2)/tau^2; 1/(1+k(tau^2-1)) for the horseshoe.
double kappa_jacobian_factor(const PriorSpec& spec, double kappa);

// Normalized prior density of the shrinkage weight kappa in (0,1).
double kappa_prior_density(const PriorSpec& spec, double kappa);

// Marginal prior density of theta by adaptive quadrature of the scale
// mixture; throws PoleAtOrigin at theta = 0 (density unbounded).
double marginal_theta_density(const PriorSpec& spec, double theta);

// Analytic lower/upper envelope for the marginal at tau = 1 (theta != 0).
DensityBounds marginal_bounds(const PriorSpec& spec, double theta);

// Tighter horseshoe+ lower bound from the truncated product representation
// log(z)/(z-1) = prod_i 2/(1+z^{1/2^i}), with the remainder closed by the
// basic two-point bound; `terms` = 2 by default. Evaluated by quadrature,
// so it is a numerical (not closed-form) envelope.
double marginal_lower_bound_sharpened(const PriorSpec& spec, double theta, int terms = 2);

enum class ExpansionPoint { Origin, Infinity };

// Power-logarithmic series expansion of the tau=1 marginal.
double asymptotic_expansion(const PriorSpec& spec, double theta, ExpansionPoint at);

// One-sided origin mass int_0^{1/sqrt(n)} p0(theta) dtheta, tau = 1.
// Closed form = exact integral of the origin expansion.
double origin_mass(const PriorSpec& spec, double n);
// Same integral by adaptive quadrature of the origin expansion.
double origin_mass_quadrature(const PriorSpec& spec, double n);
// Leading-order truncations (log^2 n / 4 style for HS+, log n / 2 for HS).
double origin_mass_leading(const PriorSpec& spec, double n);

// Slowly varying component of the prior in the lambda^2 parameterization,
// tau = 1. HS+: log(l2)/(1-1/l2); HS: l2/(1+l2).
double slowly_varying_component(const PriorSpec& spec, double lambda_sq);

// Density of the product of k independent standard Cauchy variables.
double cauchy_product_density(int k, double x);
// CDF of the two-Cauchy product (series + inversion symmetry), used by the
// simulation cross-check.
double cauchy_product2_cdf(double x);

// Rissanen universal prior Q(i) = 2^{-log2*(i)} / c, logs base 2.
// The normalizer c is the standard constant for this series; partial
// sums of Q approach 1 from below (the log-star series converges extremely
// slowly: sum_{i<=1e6} Q(i) is only ~0.824).
double log2_star(double x);
double universal_prior_mass(long long i);

inline constexpr double universal_prior_c = 2.865064;

}  // namespace hsplus
