#include "hsplus/ingest.hpp"

#include <cmath>
#include <stdexcept>

#include "hsplus/csv.hpp"
#include "hsplus/specialfn.hpp"
#include "hsplus/testing.hpp"

namespace hsplus {

TestStatisticsFile read_tstats_csv(const std::string& path, std::optional<int> df_override) {
    const CsvTable table = read_csv(path);
    if (table.header.size() < 2 || table.header[0] != "id" || table.header[1] != "stat")
        throw std::runtime_error("tstats file: expected header id,stat[,df]");
    const bool has_df_col = table.header.size() >= 3 && table.header[2] == "df";
    if (!has_df_col && !df_override)
        throw std::runtime_error("tstats file: no df column and no file-level df given");
    TestStatisticsFile out;
    for (const auto& r : table.rows) {
        if (r.size() < 2) { out.rejected.push_back(r.empty() ? "<empty>" : r[0]); continue; }
        char* end = nullptr;
        const double stat = std::strtod(r[1].c_str(), &end);
        int df = df_override.value_or(0);
        if (!df_override && has_df_col && r.size() >= 3) df = std::atoi(r[2].c_str());
        if (end == r[1].c_str() || !std::isfinite(stat) || df < 1) {
            out.rejected.push_back(r[0]);
            continue;
        }
        out.rows.push_back({r[0], stat, df});
    }
    return out;
}

double t_to_z_single(double t, int df) {
    if (!std::isfinite(t)) throw std::domain_error("t_to_z: non-finite statistic");
    if (t == 0.0) return 0.0;
    // work on the short tail so the quantile argument never rounds to 1
    double tail = student_t_sf(std::abs(t), df);
    tail = std::max(tail, 1e-300);
    if (tail >= 0.5) {
        const double p = student_t_cdf(t, df);
        return std_normal_quantile(std::min(std::max(p, 1e-300), 1.0 - 1e-16));
    }
    const double z = -std_normal_quantile(tail);
    return t > 0.0 ? z : -z;
}

std::vector<double> t_to_z(const TestStatisticsFile& stats) {
    std::vector<double> z;
    z.reserve(stats.rows.size());
    for (const auto& r : stats.rows) z.push_back(t_to_z_single(r.statistic, r.df));
    return z;
}

McmcConfig analyze_default_config() {
    McmcConfig cfg;
    cfg.iterations = 15000;
    cfg.burn_in = 3000;
    cfg.tau_policy = TauPolicy::half_cauchy(1.0);
    return cfg;
}

EffectSizeReport analyze(const std::vector<std::string>& ids, const std::vector<double>& z,
                         Family family, const McmcConfig& config) {
    if (ids.size() != z.size()) throw std::invalid_argument("analyze: id/z length mismatch");
    NormalMeansData data;
    data.y = z;
    const auto res = run_gibbs(data, family, config);

    EffectSizeReport rep;
    rep.id = ids;
    rep.y = z;
    rep.theta_hat = res.summary.mean;
    rep.omega_hat = res.summary.omega_hat;
    rep.reject = half_threshold_rule(res.summary);
    double acc = 0.0;
    for (size_t i = 0; i < z.size(); ++i) {
        const double d = rep.theta_hat[i] - z[i];
        acc += d * d;
        if (std::abs(rep.theta_hat[i]) > std::abs(z[i])) ++rep.shrinkage_violations;
    }
    rep.prediction_mse = z.empty() ? 0.0 : acc / static_cast<double>(z.size());
    return rep;
}

void write_report_csv(const EffectSizeReport& report, const std::string& path,
                      const std::string& stats_sidecar_path) {
    CsvWriter w("id,y,theta_hat,omega_hat,reject");
    for (size_t i = 0; i < report.id.size(); ++i)
        w.row(report.id[i], report.y[i], report.theta_hat[i], report.omega_hat[i],
              static_cast<bool>(report.reject[i]));
    w.write_file(path);
    CsvWriter s("metric,value");
    s.row("prediction_mse", report.prediction_mse);
    s.row("shrinkage_violations", report.shrinkage_violations);
    s.write_file(stats_sidecar_path);
}

}  // namespace hsplus
