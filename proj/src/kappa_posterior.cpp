#include "hsplus/kappa_posterior.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "hsplus/specialfn.hpp"

namespace hsplus {

namespace {
using constants::sqrt_two_pi;

// Jacobian factor with 1-k carried explicitly, so the u = sqrt(1-k)
// substitution stays exact all the way into the k -> 1 corner.
double jacobian_stable(const PriorSpec& spec, double k, double one_minus_k) {
    const double t2 = spec.tau * spec.tau;
    if (spec.family == Family::Horseshoe) return 1.0 / (1.0 + k * (t2 - 1.0));
    const double d = one_minus_k * (1.0 + t2) - t2;  // = 1 - k(1+tau^2)
    const double w = d / (k * t2);
    if (std::abs(w) <= 0.5) return log1p_over(w) / (k * t2);
    return (std::log(one_minus_k) - std::log(k * t2)) / d;
}

// Unnormalized posterior with the (1-k)^{-1/2} factor evaluated through
// one_minus_k.
double unnorm_post(double k, double one_minus_k, double y, const PriorSpec& spec) {
    const double base = std::exp(-0.5 * k * y * y) / std::sqrt(one_minus_k);
    return base * jacobian_stable(spec, k, one_minus_k);
}

// Panel knots resolving the log endpoint at 0, the removable point kappa*,
// and the e^{-k y^2/2} boundary layer at large |y|.
std::vector<double> kappa_knots(double lo, double hi, double y, const PriorSpec& spec) {
    std::vector<double> ks{lo, hi};
    const double kstar = 1.0 / (1.0 + spec.tau * spec.tau);
    auto add = [&](double k) {
        if (k > lo && k < hi) ks.push_back(k);
    };
    for (double e : {1e-12, 1e-9, 1e-6, 1e-3}) add(lo + e * (hi - lo));
    add(kstar);
    const double y2 = y * y;
    if (y2 > 4.0)
        for (double c : {1.0, 4.0, 16.0}) add(c / y2);
    add(0.9);
    std::sort(ks.begin(), ks.end());
    ks.erase(std::unique(ks.begin(), ks.end()), ks.end());
    return ks;
}

// integral of f(k) * unnorm_post over (lo,hi) with the right-endpoint
// substitution u = sqrt(1-k) applied to panels above 0.9
double weighted_integral(const Integrand& f, double lo, double hi, double y,
                         const PriorSpec& spec, const QuadOptions& opt) {
    const auto knots = kappa_knots(lo, hi, y, spec);
    double total = 0.0;
    std::vector<double> plain{knots.front()};
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        const double a = knots[i], b = knots[i + 1];
        if (a >= 0.9) {
            const auto g = [&](double u) {
                const double k = 1.0 - u * u;
                return f(k) * unnorm_post(k, u * u, y, spec) * 2.0 * u;
            };
            total += integrate(g, std::sqrt(1.0 - b), std::sqrt(1.0 - a), opt).value;
        } else {
            const auto g = [&](double k) { return f(k) * unnorm_post(k, 1.0 - k, y, spec); };
            total += integrate(g, a, b, opt).value;
        }
    }
    return total;
}

const QuadOptions kNormOpt{1e-300, 1e-11, 4000};
}  // namespace

KappaPosterior::KappaPosterior(double y, const PriorSpec& spec) : y_(y), spec_(spec) {
    if (!std::isfinite(y)) throw std::domain_error("KappaPosterior: y must be finite");
    if (!(spec.tau > 0.0)) throw std::domain_error("KappaPosterior: tau must be positive");
    norm_ = raw_integral([](double) { return 1.0; }, 0.0, 1.0);
    if (!(norm_ > 0.0) || !std::isfinite(norm_))
        throw std::runtime_error("KappaPosterior: normalizing constant not finite/positive");
}

double KappaPosterior::raw_integral(const Integrand& f, double lo, double hi) const {
    return weighted_integral(f, lo, hi, y_, spec_, kNormOpt);
}

double KappaPosterior::density(double kappa) const {
    if (!(kappa > 0.0 && kappa < 1.0))
        throw std::domain_error("KappaPosterior::density: kappa outside (0,1)");
    return unnorm_post(kappa, 1.0 - kappa, y_, spec_) / norm_;
}

double KappaPosterior::expect(const Integrand& f, double lo, double hi) const {
    return raw_integral(f, lo, hi) / norm_;
}

double KappaPosterior::mean_kappa() const {
    return expect([](double k) { return k; });
}

double KappaPosterior::tail_below(double eps) const {
    if (!(eps > 0.0 && eps < 1.0))
        throw std::domain_error("tail_below: threshold outside (0,1)");
    return expect([](double) { return 1.0; }, 0.0, eps);
}

double KappaPosterior::tail_above(double eta) const {
    if (!(eta > 0.0 && eta < 1.0))
        throw std::domain_error("tail_above: threshold outside (0,1)");
    return expect([](double) { return 1.0; }, eta, 1.0);
}

double concentration_constant(double eta, double delta) {
    const double r = std::sqrt(1.0 - eta);
    return (r + std::atanh(r)) / (1.0 / std::sqrt(1.0 - eta * delta) - 1.0);
}

double concentration_bound(BoundKind kind, double y, const PriorSpec& spec,
                           const ConcentrationBound& params) {
    const double t2 = spec.tau * spec.tau;
    const double e = params.epsilon_or_eta;
    if (!(e > 0.0 && e < 1.0))
        throw std::domain_error("concentration_bound: threshold outside (0,1)");
    if (kind == BoundKind::KappaBelow)
        return std::exp(0.5 * y * y) * t2 * e / ((1.0 - e) * (1.0 - e));
    const double dmax = 1.0 / (e * (1.0 + t2));
    if (!(params.delta > 0.0 && params.delta < dmax))
        throw std::domain_error("concentration_bound: delta outside (0, 1/(eta(1+tau^2)))");
    return std::exp(-e * (1.0 - params.delta) * 0.5 * y * y) / t2 *
           concentration_constant(e, params.delta);
}

namespace {
// Weighted integrals of the normalized kappa prior behind m, m', m''.
double prior_weighted(const Integrand& f, double y, const PriorSpec& spec,
                      const QuadOptions& opt) {
    const auto knots = kappa_knots(0.0, 1.0, y, spec);
    double total = 0.0;
    for (size_t i = 0; i + 1 < knots.size(); ++i) {
        const double a = knots[i], b = knots[i + 1];
        if (a >= 0.9) {
            const auto g = [&](double u) {
                const double k = 1.0 - u * u;
                const double p = spec.tau / std::sqrt(k) / u *
                                 jacobian_stable(spec, k, u * u) /
                                 ((spec.family == Family::Horseshoe) ? constants::pi
                                                                     : constants::pi * constants::pi);
                return f(k) * p * 2.0 * u;
            };
            total += integrate(g, std::sqrt(1.0 - b), std::sqrt(1.0 - a), opt).value;
        } else {
            const auto g = [&](double k) { return f(k) * kappa_prior_density(spec, k); };
            total += integrate(g, a, b, opt).value;
        }
    }
    return total;
}
}  // namespace

double marginal_data_density(double y, const PriorSpec& spec) {
    const double y2 = y * y;
    return prior_weighted(
        [&](double k) { return std::sqrt(k) / sqrt_two_pi * std::exp(-0.5 * k * y2); }, y, spec,
        kNormOpt);
}

LogMarginalDerivatives log_marginal_derivatives(double y, const PriorSpec& spec) {
    const double y2 = y * y;
    const auto lik = [&](double k) { return std::sqrt(k) / sqrt_two_pi * std::exp(-0.5 * k * y2); };
    const double m = prior_weighted(lik, y, spec, kNormOpt);
    // sign-changing weights need an absolute floor tied to the scale of m
    QuadOptions dopt = kNormOpt;
    dopt.abs_tol = std::max(1e-300, 1e-13 * m * (1.0 + std::abs(y)) * (1.0 + y2));
    const double m1 = prior_weighted([&](double k) { return lik(k) * (-k * y); }, y, spec, dopt);
    const double m2 = prior_weighted([&](double k) { return lik(k) * (k * k * y2 - k); }, y, spec, dopt);
    const double d1 = m1 / m;
    return LogMarginalDerivatives{d1, m2 / m - d1 * d1};
}

double posterior_mse(double y, const PriorSpec& spec) {
    const auto d = log_marginal_derivatives(y, spec);
    const double bias = d.first;
    const double var = 1.0 + d.second;
    return bias * bias + var;
}

double rejection_threshold(const PriorSpec& spec) {
    double lo = 0.0, hi = 80.0;
    for (int it = 0; it < 200; ++it) {
        const double mid = 0.5 * (lo + hi);
        const KappaPosterior kp(mid, spec);
        if (kp.omega_hat() > 0.5) hi = mid; else lo = mid;
        if (hi - lo < 1e-12 * (1.0 + hi)) break;
    }
    return 0.5 * (lo + hi);
}

double posterior_theta_cdf(const KappaPosterior& kp, double t) {
    const double y = kp.y();
    return kp.expect([&](double k) {
        const double mu = (1.0 - k) * y;
        const double sd = std::sqrt(1.0 - k);
        if (sd == 0.0) return (t >= mu) ? 1.0 : 0.0;
        return std_normal_cdf((t - mu) / sd);
    });
}

}  // namespace hsplus
