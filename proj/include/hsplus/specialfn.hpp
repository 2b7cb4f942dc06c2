#pragma once

// Scalar special functions used throughout: standard normal pdf/cdf/quantile,
// complementary error function, exponential integral E1, Student-t CDF.
// All functions are pure and thread-safe.

namespace hsplus {

namespace constants {
// Euler-Mascheroni constant, 20 digits
inline constexpr double euler_gamma = 0.57721566490153286061;
inline constexpr double pi = 3.14159265358979323846;
inline constexpr double sqrt_two_pi = 2.50662827463100050242;
}  // namespace constants

double std_normal_pdf(double x);
double std_normal_cdf(double x);

// Inverse of std_normal_cdf on (0,1). Safeguarded Newton iteration on the cdf;
// throws std::domain_error at p <= 0 or p >= 1.
double std_normal_quantile(double p);

double erfc(double x);

// Exponential integral E1(x) = int_x^inf e^{-t}/t dt, x > 0.
// Power series for x < 1, modified-Lentz continued fraction for x >= 1.
double exp_integral_e1(double x);

// Student-t CDF with integer degrees of freedom (df >= 1), via the
// regularized incomplete beta function.
double student_t_cdf(double t, int df);
// Upper tail P(T > t); computed directly (no 1-F cancellation for large t).
double student_t_sf(double t, int df);

// Regularized incomplete beta I_x(a,b), continued fraction (Lentz).
double inc_beta(double a, double b, double x);

}  // namespace hsplus
