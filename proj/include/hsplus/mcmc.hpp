#pragma once

// Gibbs sampler for the horseshoe and horseshoe+ hierarchies on the normal
// means model, via inverse-gamma augmentation of every half-Cauchy layer.
// Every full conditional is a standard draw; the Uniform(0,1) tau policy
// uses stepping-out slice sampling on log(tau).

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "hsplus/priors.hpp"

namespace hsplus {

struct TauPolicy {
    enum class Kind { Fixed, HalfCauchy, Uniform01 };
    Kind kind = Kind::HalfCauchy;
    double value = 1.0;  // fixed tau, or the half-Cauchy scale s

    static TauPolicy fixed(double tau) { return {Kind::Fixed, tau}; }
    static TauPolicy half_cauchy(double s) { return {Kind::HalfCauchy, s}; }
    static TauPolicy uniform01() { return {Kind::Uniform01, 0.0}; }
};

struct McmcConfig {
    int iterations = 10000;
    int burn_in = 5000;
    std::uint64_t seed = 20150405ULL;
    TauPolicy tau_policy = TauPolicy::half_cauchy(1.0);
    int chains = 1;
    bool keep_kappa_draws = false;  // per-draw 1/(1+lambda_i^2), for oracle checks

    void validate() const;
};

struct NormalMeansData {
    std::vector<double> y;
    std::optional<std::vector<double>> truth;

    int n() const { return static_cast<int>(y.size()); }
    void validate() const;
};

struct PosteriorSummary {
    std::vector<double> mean;
    std::vector<double> median;
    std::vector<double> ci_lower;   // central 95% interval
    std::vector<double> ci_upper;
    std::vector<double> mean_kappa; // E(1/(1+lambda_i^2) | y)
    std::vector<double> omega_hat;  // 1 - mean_kappa
    double tau_mean = 0.0;
};

struct GibbsResult {
    // retained draws, chains concatenated in chain order; row-major
    // (draw index) x (n coordinates)
    std::vector<std::vector<double>> theta_draws;
    std::vector<double> tau_draws;
    std::vector<std::vector<double>> kappa_draws;  // filled when keep_kappa_draws
    // per-chain kappa means, combined
    PosteriorSummary summary;
    long scale_clamps = 0;  // underflow guard hits (see diagnostics)
    int chains = 1;
    int retained_per_chain = 0;
};

GibbsResult run_gibbs(const NormalMeansData& data, Family family, const McmcConfig& config);

// Empirical quantiles with midpoint interpolation (q*n integer -> average of
// the two adjacent order statistics). Requires >= 100 retained draws.
PosteriorSummary summarize(const std::vector<std::vector<double>>& theta_draws,
                           const std::vector<double>& tau_draws,
                           const std::vector<double>& mean_kappa);

double quantile_midpoint(std::vector<double> sorted_or_not, double q);

struct DiagnosticsReport {
    std::vector<double> rhat;        // potential scale reduction per coordinate
    std::vector<double> mcse;        // batch-means MC standard error per coordinate
    std::vector<int> flagged;        // coordinates with rhat > 1.1
    long scale_clamps = 0;
};

// Potential scale reduction sqrt((W + var(chain means))/W) across whole
// chains (identical chains give exactly 1), batch-means MCSE per coordinate.
DiagnosticsReport diagnostics(const GibbsResult& result);

}  // namespace hsplus
