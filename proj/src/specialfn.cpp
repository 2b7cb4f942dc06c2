#include "hsplus/specialfn.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>

namespace hsplus {

double std_normal_pdf(double x) {
    return std::exp(-0.5 * x * x) / constants::sqrt_two_pi;
}

double std_normal_cdf(double x) {
    return 0.5 * std::erfc(-x / std::sqrt(2.0));
}

double erfc(double x) {
    return std::erfc(x);
}

double std_normal_quantile(double p) {
    if (!(p > 0.0 && p < 1.0))
        throw std::domain_error("std_normal_quantile: p must lie strictly in (0,1)");
    if (p == 0.5) return 0.0;

    // initial guess: central rational approximation, Hastings in the tails
    const double q = std::min(p, 1.0 - p);
    double x;
    if (q > 0.02425) {
        const double t = p - 0.5;
        const double s = 0.180625 - t * t;
        x = t * (3.387132872796366608 + s * (133.14166789178437745 + s * 1971.5909503065514427)) /
            (1.0 + s * (42.313330701600911252 + s * 687.1870074920579083));
    } else {
        const double t = std::sqrt(-2.0 * std::log(q));
        x = t - (2.515517 + 0.802853 * t + 0.010328 * t * t) /
                    (1.0 + 1.432788 * t + 0.189269 * t * t + 0.001308 * t * t * t);
        if (p < 0.5) x = -x;
    }

    // safeguarded Newton on the cdf; bracket maintained for robustness
    double lo = -40.0, hi = 40.0;
    for (int it = 0; it < 60; ++it) {
        const double f = std_normal_cdf(x) - p;
        if (f > 0.0) hi = x; else lo = x;
        const double d = std_normal_pdf(x);
        double step = (d > 0.0) ? f / d : 0.0;
        double xn = x - step;
        if (!(xn > lo && xn < hi)) xn = 0.5 * (lo + hi);
        if (std::abs(xn - x) <= 1e-15 * (1.0 + std::abs(x))) { x = xn; break; }
        x = xn;
    }
    return x;
}

double exp_integral_e1(double x) {
    if (!(x > 0.0))
        throw std::domain_error("exp_integral_e1: requires x > 0");
    if (x < 1.0) {
        // E1(x) = -gamma - log x + sum_{k>=1} (-1)^{k+1} x^k / (k * k!)
        double sum = 0.0, term = 1.0;
        for (int k = 1; k <= 40; ++k) {
            term *= x / k;
            const double add = term / k;
            sum += (k % 2 == 1) ? add : -add;
            if (add < 1e-18 * (std::abs(sum) + 1e-300)) break;
        }
        return -constants::euler_gamma - std::log(x) + sum;
    }
    // continued fraction: E1(x) = e^{-x} * 1/(x+1- 1/(x+3- 4/(x+5- 9/(...))))
    // evaluated by modified Lentz
    const double tiny = 1e-300;
    double b = x + 1.0;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int k = 1; k <= 200; ++k) {
        const double a = -static_cast<double>(k) * k;
        b += 2.0;
        d = 1.0 / (a * d + b);
        c = b + a / c;
        const double del = c * d;
        h *= del;
        if (std::abs(del - 1.0) < 1e-16) break;
    }
    return h * std::exp(-x);
}

namespace {
// Lentz continued fraction for the regularized incomplete beta; valid for
// x < (a+1)/(a+b+2)
double beta_cf(double a, double b, double x) {
    const double tiny = 1e-300;
    double c = 1.0;
    double d = 1.0 - (a + b) * x / (a + 1.0);
    if (std::abs(d) < tiny) d = tiny;
    d = 1.0 / d;
    double h = d;
    for (int m = 1; m <= 400; ++m) {
        const double m2 = 2.0 * m;
        double num = m * (b - m) * x / ((a + m2 - 1.0) * (a + m2));
        d = 1.0 + num * d; if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + num / c; if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        h *= d * c;
        num = -(a + m) * (a + b + m) * x / ((a + m2) * (a + m2 + 1.0));
        d = 1.0 + num * d; if (std::abs(d) < tiny) d = tiny;
        c = 1.0 + num / c; if (std::abs(c) < tiny) c = tiny;
        d = 1.0 / d;
        const double del = d * c;
        h *= del;
        if (std::abs(del - 1.0) < 3e-16) break;
    }
    return h;
}
}  // namespace

double inc_beta(double a, double b, double x) {
    if (x < 0.0 || x > 1.0)
        throw std::domain_error("inc_beta: x outside [0,1]");
    if (x == 0.0) return 0.0;
    if (x == 1.0) return 1.0;
    const double ln_front = std::lgamma(a + b) - std::lgamma(a) - std::lgamma(b) +
                            a * std::log(x) + b * std::log1p(-x);
    const double front = std::exp(ln_front);
    if (x < (a + 1.0) / (a + b + 2.0)) return front * beta_cf(a, b, x) / a;
    return 1.0 - front * beta_cf(b, a, 1.0 - x) / b;
}

double student_t_sf(double t, int df) {
    if (df < 1)
        throw std::domain_error("student_t_sf: df must be >= 1");
    const double v = static_cast<double>(df);
    const double x = v / (v + t * t);
    const double half_tail = 0.5 * inc_beta(0.5 * v, 0.5, x);
    return (t >= 0.0) ? half_tail : 1.0 - half_tail;
}

double student_t_cdf(double t, int df) {
    if (df < 1)
        throw std::domain_error("student_t_cdf: df must be >= 1");
    if (t == 0.0) return 0.5;
    return 1.0 - student_t_sf(t, df);
}

}  // namespace hsplus
