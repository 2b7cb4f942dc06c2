#include "hsplus/experiments.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>

#include "hsplus/kappa_posterior.hpp"
#include "hsplus/rng.hpp"
#include "hsplus/threading.hpp"

namespace hsplus {

namespace {
// seed stream 0 is data generation; streams 16+m are the sampler per method
constexpr std::uint64_t kDataStream = 0;
}  // namespace

void SseConfig::validate() const {
    if (n <= 0) throw std::invalid_argument("SseConfig: n must be positive");
    if (!(q > 0.0 && q < 1.0)) throw std::invalid_argument("SseConfig: q outside (0,1)");
    if (static_cast<int>(q * n) < 1)
        throw std::invalid_argument("SseConfig: floor(q n) must be at least 1");
    if (replicates <= 0) throw std::invalid_argument("SseConfig: replicates must be positive");
}

NormalMeansData gen_sparse_means(const SseConfig& cfg, std::uint64_t seed) {
    cfg.validate();
    Rng rng(seed);
    NormalMeansData data;
    const int k = static_cast<int>(cfg.q * cfg.n);
    std::vector<double> truth(cfg.n, 0.0);
    std::fill(truth.begin(), truth.begin() + k, cfg.A);
    data.y.resize(cfg.n);
    for (int i = 0; i < cfg.n; ++i) data.y[i] = truth[i] + rng.normal();
    data.truth = std::move(truth);
    return data;
}

NormalMeansData gen_two_groups(int n, double mu, double psi_sq, std::uint64_t seed) {
    if (!(mu >= 0.0 && mu < 1.0)) throw std::domain_error("gen_two_groups: mu outside [0,1)");
    if (!(psi_sq > 0.0)) throw std::domain_error("gen_two_groups: psi_sq must be positive");
    Rng rng(seed);
    NormalMeansData data;
    std::vector<double> truth(n, 0.0);
    data.y.resize(n);
    const double psi = std::sqrt(psi_sq);
    for (int i = 0; i < n; ++i) {
        if (rng.uniform() < mu) truth[i] = psi * rng.normal();
        data.y[i] = truth[i] + rng.normal();
    }
    data.truth = std::move(truth);
    return data;
}

std::vector<SseRow> run_sse_experiment(const SseConfig& cfg,
                                       const std::vector<SseMethod>& methods) {
    cfg.validate();
    const int R = cfg.replicates;
    // sse[m][r]
    std::vector<std::vector<double>> sse(methods.size(), std::vector<double>(R, 0.0));
    std::vector<char> ok(static_cast<size_t>(R), 1);

    parallel_for(R, [&](int r) {
        const auto data =
            gen_sparse_means(cfg, derive_seed(cfg.sampler.seed, kDataStream, r));
        for (size_t m = 0; m < methods.size(); ++m) {
            McmcConfig mc = cfg.sampler;
            mc.tau_policy = methods[m].tau_policy;
            mc.seed = derive_seed(cfg.sampler.seed, 16 + m, r);
            try {
                const auto res = run_gibbs(data, methods[m].family, mc);
                double s = 0.0;
                for (int i = 0; i < cfg.n; ++i) {
                    const double d = res.summary.median[i] - (*data.truth)[i];
                    s += d * d;
                }
                sse[m][r] = s;
            } catch (const std::exception&) {
                ok[r] = 0;
            }
        }
    });

    std::vector<SseRow> rows;
    for (size_t m = 0; m < methods.size(); ++m) {
        double acc = 0.0;
        int used = 0;
        for (int r = 0; r < R; ++r)
            if (ok[r]) { acc += sse[m][r]; ++used; }
        const double mean = acc / std::max(1, used);
        double var = 0.0;
        for (int r = 0; r < R; ++r)
            if (ok[r]) var += (sse[m][r] - mean) * (sse[m][r] - mean);
        var = used > 1 ? var / (used - 1) : 0.0;
        rows.push_back(SseRow{methods[m].name, cfg.q, cfg.A, mean,
                              std::sqrt(var / std::max(1, used)), used});
    }
    return rows;
}

namespace {
struct MpAccumulator {
    std::vector<double> mp;  // per replicate
    double mean() const {
        double a = 0.0;
        for (double v : mp) a += v;
        return a / static_cast<double>(mp.size());
    }
    double se() const {
        const double m = mean();
        double v = 0.0;
        for (double x : mp) v += (x - m) * (x - m);
        v /= static_cast<double>(mp.size() - 1);
        return std::sqrt(v / static_cast<double>(mp.size()));
    }
};
}  // namespace

std::vector<MpRow> run_mp_experiment(const MpConfig& cfg, MpMode mode) {
    const double psi_sq = cfg.psi * cfg.psi;
    const double alpha = 1.0 / std::log(static_cast<double>(cfg.n));
    std::vector<MpRow> rows;
    const std::vector<std::string> names{"bayes_oracle", "hs_plus", "hs", "bh"};

    for (size_t mi = 0; mi < cfg.mu_grid.size(); ++mi) {
        const double mu = cfg.mu_grid[mi];
        OracleParams op{mu, psi_sq};
        const auto thr = oracle_threshold(op);
        if (thr.degenerate) throw std::runtime_error("run_mp_experiment: degenerate oracle");
        const double c_oracle = std::sqrt(thr.c_squared);

        double y_hsp = 0.0, y_hs = 0.0;
        if (mode == MpMode::PluginQuadrature) {
            y_hsp = rejection_threshold(PriorSpec{Family::HorseshoePlus, mu});
            y_hs = rejection_threshold(PriorSpec{Family::Horseshoe, mu});
        }

        std::vector<std::array<double, 4>> per_rep(cfg.replicates);
        parallel_for(cfg.replicates, [&](int r) {
            const auto data = gen_two_groups(
                cfg.n, mu, psi_sq, derive_seed(cfg.seed, 100 + mi, r));
            std::vector<bool> truth(cfg.n);
            for (int i = 0; i < cfg.n; ++i) truth[i] = (*data.truth)[i] != 0.0;

            auto mp_of_threshold = [&](double t) {
                std::vector<bool> rej(cfg.n);
                for (int i = 0; i < cfg.n; ++i) rej[i] = std::abs(data.y[i]) > t;
                return score(rej, truth).mp;
            };
            per_rep[r][0] = mp_of_threshold(c_oracle);
            if (mode == MpMode::PluginQuadrature) {
                per_rep[r][1] = mp_of_threshold(y_hsp);
                per_rep[r][2] = mp_of_threshold(y_hs);
            } else {
                McmcConfig mc;
                mc.tau_policy = TauPolicy::half_cauchy(1.0);
                for (int f = 0; f < 2; ++f) {
                    mc.seed = derive_seed(cfg.seed, 200 + mi * 2 + f, r);
                    const auto res = run_gibbs(
                        data, f == 0 ? Family::HorseshoePlus : Family::Horseshoe, mc);
                    per_rep[r][1 + f] = score(half_threshold_rule(res.summary), truth).mp;
                }
            }
            std::vector<double> pv(cfg.n);
            for (int i = 0; i < cfg.n; ++i) pv[i] = z_to_pvalue(data.y[i]);
            per_rep[r][3] = score(benjamini_hochberg(pv, alpha), truth).mp;
        });

        for (size_t k = 0; k < names.size(); ++k) {
            MpAccumulator acc;
            acc.mp.resize(cfg.replicates);
            for (int r = 0; r < cfg.replicates; ++r) acc.mp[r] = per_rep[r][k];
            rows.push_back(MpRow{mu, names[k], acc.mean(), acc.se()});
        }
        rows.push_back(MpRow{mu, "mu_ref", mu, 0.0});
    }
    return rows;
}

double james_stein_risk(const std::vector<double>& theta, int replicates, std::uint64_t seed) {
    const int n = static_cast<int>(theta.size());
    if (n <= 2) throw std::domain_error("james_stein_risk: requires n > 2");
    std::vector<double> losses(replicates, 0.0);
    parallel_for(replicates, [&](int r) {
        Rng rng(derive_seed(seed, 7, r));
        double ss = 0.0;
        std::vector<double> y(n);
        for (int i = 0; i < n; ++i) {
            y[i] = theta[i] + rng.normal();
            ss += y[i] * y[i];
        }
        const double shrink = 1.0 - (n - 2.0) / ss;
        double loss = 0.0;
        for (int i = 0; i < n; ++i) {
            const double d = shrink * y[i] - theta[i];
            loss += d * d;
        }
        losses[r] = loss;
    });
    double acc = 0.0;
    for (double l : losses) acc += l;
    return acc / static_cast<double>(replicates);
}

double kl_risk_bound(const PriorSpec& spec, double n, double epsilon) {
    if (!(epsilon > 0.0)) throw std::domain_error("kl_risk_bound: epsilon must be positive");
    if (spec.tau != 1.0) throw std::domain_error("kl_risk_bound: stated for tau = 1");
    // K(q_0, q_theta) = theta^2/2 for the unit-variance shift, so
    // A_eps = {|theta| <= sqrt(2 eps)}
    const double half_width = std::sqrt(2.0 * epsilon);
    const double x_hi = std::log(half_width);
    const auto f = [&](double x) {
        const double th = std::exp(x);
        return marginal_theta_density(spec, th) * th;
    };
    std::vector<double> knots{-90.0, -45.0, -20.0, -10.0, -5.0};
    knots.erase(std::remove_if(knots.begin(), knots.end(), [&](double k) { return k >= x_hi; }),
                knots.end());
    knots.push_back(x_hi);
    const double nu = 2.0 * integrate_segments(f, knots, QuadOptions{1e-14, 1e-9, 4000}).value;
    return epsilon - std::log(nu) / n;
}

double kl_risk_bound_displayed(Family family, double n) {
    const double m = (family == Family::HorseshoePlus) ? 2.0 : 1.0;
    return std::log(n) / (2.0 * n) + 1.0 / n - m * std::log(std::log(n)) / n;
}

}  // namespace hsplus
