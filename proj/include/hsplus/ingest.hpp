#pragma once

// Ingestion of test-statistic files: t-to-z transform and the effect-size
// analysis/report around the Gibbs sampler.

#include <optional>
#include <string>
#include <vector>

#include "hsplus/mcmc.hpp"

namespace hsplus {

struct TestStatisticsFile {
    struct Row {
        std::string id;
        double statistic;
        int df;
    };
    std::vector<Row> rows;
    std::vector<std::string> rejected;  // ids (or line tags) of dropped rows
};

// CSV with header id,stat[,df]; a file-level df overrides the column.
TestStatisticsFile read_tstats_csv(const std::string& path, std::optional<int> df_override);

// z_i = Phi^{-1}(F_t(t_i; df)); monotone and sign-preserving, with the CDF
// tail clamped at 1e-300 so z stays finite.
std::vector<double> t_to_z(const TestStatisticsFile& stats);
double t_to_z_single(double t, int df);

struct EffectSizeReport {
    std::vector<std::string> id;
    std::vector<double> y;
    std::vector<double> theta_hat;   // posterior mean
    std::vector<double> omega_hat;
    std::vector<bool> reject;
    double prediction_mse = 0.0;     // (1/n) sum (theta_hat_i - y_i)^2
    long shrinkage_violations = 0;   // coordinates with |theta_hat| > |y|
};

// Defaults for this pathway: 15,000 draws with 3,000 burn-in.
McmcConfig analyze_default_config();

EffectSizeReport analyze(const std::vector<std::string>& ids, const std::vector<double>& z,
                         Family family, const McmcConfig& config);

// Output CSV id,y,theta_hat,omega_hat,reject plus an MSE sidecar line.
void write_report_csv(const EffectSizeReport& report, const std::string& path,
                      const std::string& stats_sidecar_path);

}  // namespace hsplus
