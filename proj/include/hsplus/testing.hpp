#pragma once

// Multiple-testing machinery: the half-threshold rule, the Bayes oracle under
// the two-groups model, Benjamini-Hochberg, analytic error-rate bounds, and
// 0-1 loss scoring.

#include <cmath>
#include <optional>
#include <vector>

#include "hsplus/mcmc.hpp"
#include "hsplus/priors.hpp"

namespace hsplus {

struct OracleParams {
    double mu;       // sparsity fraction in (0,1)
    double psi_sq;   // non-centrality psi^2 > 0

    double u() const { return psi_sq; }
    double f() const { return (1.0 - mu) / mu; }
    double v() const { return u() * f() * f(); }
    // Assumption-style constant, the finite-n plug-in log(v)/u.
    double assumption_constant() const { return std::log(v()) / u(); }

    void validate() const;
};

// Reject H0i iff omega_hat_i > 1/2 (strict).
std::vector<bool> half_threshold_rule(const PosteriorSummary& summary);
std::vector<bool> half_threshold_rule(const std::vector<double>& omega_hat);

struct OracleThreshold {
    double c_squared = 0.0;
    bool degenerate = false;  // v <= 1: no positive threshold exists
};

// C^2 = (1 + 1/u)(log v + log(1 + 1/u)); the rule is |y| > C.
OracleThreshold oracle_threshold(const OracleParams& p);
// Same threshold through the (psi, f) parameterization.
double oracle_threshold_psi_f(double psi_sq, double f);

struct OracleErrorRates {
    double t1;              // e^{-C/2} sqrt(2/(pi v log v))
    double t2;              // 2 Phi(sqrt(C)) - 1
    double risk_per_test;   // mu (2 Phi(sqrt(C)) - 1)
};
OracleErrorRates oracle_error_rates(const OracleParams& p);

std::vector<bool> benjamini_hochberg(const std::vector<double>& pvalues, double alpha);

// Leading-order bounds: t1 for tau < 1/2, t2 from the upper-tail
// concentration constant route.
struct ErrorBounds {
    double t1_bound;
    double t2_bound;
};
ErrorBounds analytic_error_bounds(const PriorSpec& spec, const OracleParams& p, double eta,
                                  double delta);

struct DecisionReport {
    std::vector<bool> reject;
    std::optional<double> t1;  // undefined when there are no true nulls
    std::optional<double> t2;  // undefined when there are no signals
    double mp = 0.0;
    double risk = 0.0;         // n * mp
};

DecisionReport score(const std::vector<bool>& decisions, const std::vector<bool>& truth_nonzero);

// Two-sided p-value from a z-score.
double z_to_pvalue(double z);

// Per-coordinate decision serialization: index,y,omega_hat,reject,truth
// (the truth cell is left empty when labels are unknown).
std::string decisions_csv(const std::vector<double>& y, const std::vector<double>& omega_hat,
                          const std::vector<bool>& reject,
                          const std::optional<std::vector<bool>>& truth_nonzero);

}  // namespace hsplus
