#include "hsplus/priors.hpp"

#include <algorithm>
#include <cmath>

#include "hsplus/specialfn.hpp"

namespace hsplus {

namespace {
using constants::euler_gamma;
using constants::pi;
using constants::sqrt_two_pi;

const double kPi2 = pi * pi;
const double kSqrt2Pi15 = std::sqrt(2.0) * std::pow(pi, 1.5);   // sqrt(2) pi^{3/2}
const double kSqrt2Pi25 = std::sqrt(2.0) * std::pow(pi, 2.5);   // sqrt(2) pi^{5/2}

void require_unit_tau(const PriorSpec& spec, const char* where) {
    if (spec.tau != 1.0)
        throw std::domain_error(std::string(where) + ": stated only for tau = 1");
}
}  // namespace

double log1p_over(double w) {
    if (std::abs(w) < 1e-8) return 1.0 - 0.5 * w + w * w / 3.0;
    return std::log1p(w) / w;
}

double log_ratio_sq(double x) {
    // log(x)/(x^2-1); removable point at x=1 has value 1/2
    const double d = x - 1.0;
    if (std::abs(d) < 0.5) return log1p_over(d) / (x + 1.0);
    return std::log(x) / (x * x - 1.0);
}

double lambda_density(const PriorSpec& spec, double lambda) {
    if (!(lambda > 0.0))
        throw std::domain_error("lambda_density: requires lambda > 0");
    const double u = lambda / spec.tau;
    if (spec.family == Family::Horseshoe)
        return 2.0 / (pi * spec.tau * (1.0 + u * u));
    return 4.0 / (kPi2 * spec.tau) * log_ratio_sq(u);
}

double kappa_jacobian_factor(const PriorSpec& spec, double kappa) {
    if (!(kappa > 0.0 && kappa < 1.0))
        throw std::domain_error("kappa_jacobian_factor: kappa outside (0,1)");
    const double t2 = spec.tau * spec.tau;
    if (spec.family == Family::Horseshoe)
        return 1.0 / (1.0 + kappa * (t2 - 1.0));
    // log{(1-k)/(k tau^2)} / (1 - k(1+tau^2)) = log1p(w)/w * 1/(k tau^2),
    // w = (1 - k(1+tau^2)) / (k tau^2); exact through the removable point
    const double w = (1.0 - kappa * (1.0 + t2)) / (kappa * t2);
    return log1p_over(w) / (kappa * t2);
}

double kappa_prior_density(const PriorSpec& spec, double kappa) {
    if (!(kappa > 0.0 && kappa < 1.0))
        throw std::domain_error("kappa_prior_density: kappa outside (0,1)");
    const double base = spec.tau / std::sqrt(kappa * (1.0 - kappa));
    const double norm = (spec.family == Family::Horseshoe) ? pi : kPi2;
    return base * kappa_jacobian_factor(spec, kappa) / norm;
}

namespace {

// Unit-tau marginal via the zeta = 1/lambda^2 representation mapped to
// s = log(zeta); both integrands are smooth on the whole line.
double unit_marginal(Family family, double theta) {
    const double t2 = theta * theta;
    const auto w = [&](double s) {
        if (family == Family::HorseshoePlus) {
            // s / (1 - e^{-s}), removable at s = 0
            if (std::abs(s) < 1e-9) return 1.0 + 0.5 * s;
            return s / (-std::expm1(-s));
        }
        return 1.0 / (1.0 + std::exp(-s));
    };
    const double s_hi = std::log(1500.0 / t2);
    std::vector<double> knots{-60.0, -30.0, -15.0, -8.0, -4.0, -2.0, 0.0};
    for (double s = 2.0; s < s_hi; s *= 2.0) knots.push_back(s);
    knots.push_back(std::max(s_hi, 1.0));
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    const auto f = [&](double s) { return w(s) * std::exp(-std::exp(s) * t2 / 2.0); };
    const double integral = integrate_segments(f, knots).value;
    if (family == Family::HorseshoePlus) return integral / (kPi2 * sqrt_two_pi);
    return integral / (pi * sqrt_two_pi);
}

}  // namespace

double marginal_theta_density(const PriorSpec& spec, double theta) {
    if (theta == 0.0)
        throw PoleAtOrigin("marginal_theta_density: density unbounded at theta = 0");
    const double t = std::abs(theta) / spec.tau;
    return unit_marginal(spec.family, t) / spec.tau;
}

DensityBounds marginal_bounds(const PriorSpec& spec, double theta) {
    require_unit_tau(spec, "marginal_bounds");
    if (theta == 0.0)
        throw std::domain_error("marginal_bounds: theta must be nonzero");
    const double t2 = theta * theta;
    if (spec.family == Family::HorseshoePlus) {
        return DensityBounds{std::log1p(4.0 / t2) / (kPi2 * sqrt_two_pi),
                             1.0 / (kPi2 * std::abs(theta))};
    }
    const double K = 1.0 / std::sqrt(2.0 * pi * pi * pi);
    return DensityBounds{0.5 * K * std::log1p(4.0 / t2), K * std::log1p(2.0 / t2)};
}

double marginal_lower_bound_sharpened(const PriorSpec& spec, double theta, int terms) {
    require_unit_tau(spec, "marginal_lower_bound_sharpened");
    if (spec.family != Family::HorseshoePlus)
        throw std::domain_error("marginal_lower_bound_sharpened: horseshoe+ only");
    if (theta == 0.0)
        throw std::domain_error("marginal_lower_bound_sharpened: theta must be nonzero");
    if (terms < 1) throw std::domain_error("marginal_lower_bound_sharpened: terms >= 1");
    const double t2 = theta * theta;
    // product factors 2/(1+zeta^{1/2^i}) for i = 1..terms, remainder closed
    // with one more copy of the last factor (the two-point bound applied to
    // zeta^{1/2^terms})
    const auto bound = [&](double s) {
        const double zeta = std::exp(s);
        double prod = 1.0;
        double root = zeta;
        for (int i = 1; i <= terms; ++i) {
            root = std::sqrt(root);
            prod *= 2.0 / (1.0 + root);
        }
        prod *= 2.0 / (1.0 + root);
        return prod * zeta;  // jacobian of zeta = e^s
    };
    const double s_hi = std::log(1500.0 / t2);
    std::vector<double> knots{-60.0, -30.0, -15.0, -8.0, -4.0, -2.0, 0.0};
    for (double s = 2.0; s < s_hi; s *= 2.0) knots.push_back(s);
    knots.push_back(std::max(s_hi, 1.0));
    std::sort(knots.begin(), knots.end());
    knots.erase(std::unique(knots.begin(), knots.end()), knots.end());
    const auto f = [&](double s) { return bound(s) * std::exp(-std::exp(s) * t2 / 2.0); };
    return integrate_segments(f, knots).value / (kPi2 * sqrt_two_pi);
}

double asymptotic_expansion(const PriorSpec& spec, double theta, ExpansionPoint at) {
    require_unit_tau(spec, "asymptotic_expansion");
    const double a = std::abs(theta);
    const double log2c = std::log(2.0);
    if (spec.family == Family::HorseshoePlus) {
        // prefactor 2/(sqrt(2) pi^{5/2}): the bracketed series sits under a
        // doubled constant (Laplace-method tail p ~ (2 log th + g - log 2)
        // * 2/(pi^2 sqrt(2 pi) th^2); quadrature/expansion -> 1 both ways)
        if (at == ExpansionPoint::Infinity)
            return 2.0 * (2.0 * std::log(a) + euler_gamma - log2c) / (kSqrt2Pi25 * a * a);
        const double L = std::log(1.0 / a);
        return 2.0 * (24.0 * L * L + 24.0 * log2c * L - 24.0 * euler_gamma * L +
                      6.0 * euler_gamma * euler_gamma + 5.0 * kPi2 + 6.0 * log2c * log2c -
                      12.0 * euler_gamma * log2c) /
               (24.0 * kSqrt2Pi25);
    }
    if (at == ExpansionPoint::Infinity) return std::sqrt(2.0) / (std::pow(pi, 1.5) * a * a);
    return (2.0 * std::log(1.0 / a) - euler_gamma + log2c) / kSqrt2Pi15;
}

double origin_mass(const PriorSpec& spec, double n) {
    require_unit_tau(spec, "origin_mass");
    if (!(n >= 2.0)) throw std::domain_error("origin_mass: requires n >= 2");
    const double ln = std::log(n);
    const double g = euler_gamma;
    const double l2 = std::log(2.0);
    if (spec.family == Family::HorseshoePlus) {
        // exact integral of the origin expansion over (0, 1/sqrt(n))
        const double bracket = 6.0 * ln * (ln - 2.0 * g + 4.0 + std::log(4.0)) +
                               6.0 * g * g + 5.0 * kPi2 +
                               6.0 * (8.0 + l2 * l2 + std::log(16.0)) -
                               12.0 * g * (2.0 + l2);
        return 2.0 * bracket / (24.0 * kSqrt2Pi25 * std::sqrt(n));
    }
    return (ln + 2.0 - g + l2) / (kSqrt2Pi15 * std::sqrt(n));
}

double origin_mass_quadrature(const PriorSpec& spec, double n) {
    require_unit_tau(spec, "origin_mass_quadrature");
    if (!(n >= 2.0)) throw std::domain_error("origin_mass_quadrature: requires n >= 2");
    const double x_hi = std::log(1.0 / std::sqrt(n));
    const auto f = [&](double x) {
        const double th = std::exp(x);
        return marginal_theta_density(spec, th) * th;
    };
    std::vector<double> knots{-200.0, -100.0, -50.0, -25.0, -12.0, x_hi};
    knots.erase(std::remove_if(knots.begin(), knots.end(),
                               [&](double k) { return k > x_hi; }),
                knots.end());
    if (knots.back() != x_hi) knots.push_back(x_hi);
    std::sort(knots.begin(), knots.end());
    return integrate_segments(f, knots).value;
}

double origin_mass_leading(const PriorSpec& spec, double n) {
    require_unit_tau(spec, "origin_mass_leading");
    if (!(n >= 2.0)) throw std::domain_error("origin_mass_leading: requires n >= 2");
    const double ln = std::log(n);
    if (spec.family == Family::HorseshoePlus) {
        return 2.0 * (ln * ln / 4.0 + (1.0 - 0.5 * euler_gamma + std::log(4.0) / 4.0) * ln) /
               (kSqrt2Pi25 * std::sqrt(n));
    }
    return (ln / 2.0) / (kSqrt2Pi15 * std::sqrt(n));
}

double slowly_varying_component(const PriorSpec& spec, double lambda_sq) {
    require_unit_tau(spec, "slowly_varying_component");
    if (!(lambda_sq > 0.0))
        throw std::domain_error("slowly_varying_component: requires lambda_sq > 0");
    if (spec.family == Family::HorseshoePlus) {
        // log(x)/(1 - 1/x) = x log(x)/(x-1); limit 1 at x = 1
        return lambda_sq * log1p_over(lambda_sq - 1.0);
    }
    return lambda_sq / (1.0 + lambda_sq);
}

double cauchy_product_density(int k, double x) {
    if (k <= 0) throw std::domain_error("cauchy_product_density: requires k >= 1");
    const double a = std::abs(x);
    if (k == 1) return 1.0 / (pi * (1.0 + x * x));
    if (a == 0.0) throw PoleAtOrigin("cauchy_product_density: pole at x = 0 for k >= 2");
    const double lg = std::log(a);
    const double lg_pi2 = lg * lg / kPi2;
    if (k % 2 == 1) {
        const int i = (k - 1) / 2;
        double prod = 1.0;
        for (int j = 1; j <= i; ++j) prod *= (j - 0.5) * (j - 0.5) + lg_pi2;
        double fact = 1.0;
        for (int m = 2; m <= 2 * i; ++m) fact *= m;
        return std::pow(2.0, 2 * i) / (pi * fact) * prod / (1.0 + x * x);
    }
    const int i = k / 2;
    double prod = 1.0;
    for (int j = 1; j <= i - 1; ++j) prod *= static_cast<double>(j) * j + lg_pi2;
    double fact = 1.0;
    for (int m = 2; m <= 2 * i - 1; ++m) fact *= m;
    return std::pow(2.0, 2 * i - 1) / (kPi2 * fact) * prod * log_ratio_sq(a);
}

namespace {
// one-sided mass P(0 < X < a) of the two-Cauchy product for 0 < a <= 1:
// (2/pi^2) * int_0^a log(1/t)/(1-t^2) dt, series below 1/2, quadrature above.
double psi2_mass01(double a) {
    const double s = std::min(a, 0.5);
    double series = 0.0;
    const double L = std::log(1.0 / s);
    double spow = s;
    for (int m = 0; m < 60; ++m) {
        const double odd = 2.0 * m + 1.0;
        series += spow * (L / odd + 1.0 / (odd * odd));
        spow *= s * s;
        if (spow < 1e-18) break;
    }
    double mass = series;
    if (a > 0.5) mass += integrate([](double t) { return log_ratio_sq(t); }, 0.5, a).value;
    return 2.0 / kPi2 * mass;
}
}  // namespace

double cauchy_product2_cdf(double x) {
    if (x == 0.0) return 0.5;
    const double a = std::abs(x);
    const double m = (a <= 1.0) ? psi2_mass01(a) : 0.5 - psi2_mass01(1.0 / a);
    return 0.5 + ((x > 0.0) ? m : -m);
}

double log2_star(double x) {
    double s = 0.0;
    while (true) {
        x = std::log2(x);
        if (!(x > 0.0)) break;
        s += x;
    }
    return s;
}

double universal_prior_mass(long long i) {
    if (i <= 0) throw std::domain_error("universal_prior_mass: requires i >= 1");
    return std::exp2(-log2_star(static_cast<double>(i))) / universal_prior_c;
}

}  // namespace hsplus
