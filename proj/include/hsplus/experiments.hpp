#pragma once

// Data generators and batch harnesses: sparse-means and two-groups
// simulation, the SSE and misclassification-probability studies, the
// James-Stein risk demonstration and the K-L risk bound.

#include <cstdint>
#include <string>
#include <vector>

#include "hsplus/mcmc.hpp"
#include "hsplus/testing.hpp"

namespace hsplus {

struct SseConfig {
    int n = 200;
    double q = 0.2;      // signal fraction
    double A = 7.0;      // signal magnitude
    int replicates = 20;
    McmcConfig sampler;

    void validate() const;
};

struct MpConfig {
    int n = 200;
    std::vector<double> mu_grid{0.05, 0.1, 0.2};
    double psi = 3.26;   // sqrt(2 log n) by default
    int replicates = 200;
    std::uint64_t seed = 20150405ULL;
};

// First floor(q n) coordinates carry theta = A, the rest are zero.
NormalMeansData gen_sparse_means(const SseConfig& cfg, std::uint64_t seed);

NormalMeansData gen_two_groups(int n, double mu, double psi_sq, std::uint64_t seed);

struct SseMethod {
    std::string name;
    Family family;
    TauPolicy tau_policy;
};

struct SseRow {
    std::string method;
    double q, A;
    double avg_sse;
    double mc_se;
    int replicates;
};

// Average SSE about the posterior median per method; data is shared across
// methods within a replicate, replicate seeds derived from the master seed.
std::vector<SseRow> run_sse_experiment(const SseConfig& cfg, const std::vector<SseMethod>& methods);

enum class MpMode { PluginQuadrature, FullBayes };

struct MpRow {
    double mu;
    std::string method;
    double mp;
    double mc_se;
};

// Methods: bayes_oracle, hs_plus, hs, bh (alpha = 1/log n), mu_ref.
// PluginQuadrature applies the half-threshold rule with tau = mu through the
// quadrature rejection threshold; FullBayes runs the Gibbs sampler with
// tau ~ C+(0,1).
std::vector<MpRow> run_mp_experiment(const MpConfig& cfg, MpMode mode = MpMode::PluginQuadrature);

// Monte Carlo MSE risk of the James-Stein estimator at a fixed theta.
double james_stein_risk(const std::vector<double>& theta, int replicates, std::uint64_t seed);

// Cesaro-average K-L risk bound eps - (1/n) log nu(A_eps), with
// nu(A_eps) = 2 int_0^{sqrt(2 eps)} p(theta) dtheta at tau = 1, theta0 = 0.
double kl_risk_bound(const PriorSpec& spec, double n, double epsilon);
// Displayed asymptotic form log n/(2n) + 1/n - m loglog n / n with the
// log-log multiplier m = 1 (horseshoe) or 2 (horseshoe+), constants dropped.
double kl_risk_bound_displayed(Family family, double n);

}  // namespace hsplus
