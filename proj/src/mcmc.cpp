#include "hsplus/mcmc.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "hsplus/rng.hpp"
#include "hsplus/threading.hpp"

namespace hsplus {

void McmcConfig::validate() const {
    if (iterations <= 0) throw std::invalid_argument("McmcConfig: iterations must be positive");
    if (burn_in < 0 || burn_in >= iterations)
        throw std::invalid_argument("McmcConfig: burn_in must lie in [0, iterations)");
    if (chains <= 0) throw std::invalid_argument("McmcConfig: chains must be positive");
    if (tau_policy.kind == TauPolicy::Kind::Fixed && !(tau_policy.value > 0.0))
        throw std::invalid_argument("McmcConfig: fixed tau must be positive");
    if (tau_policy.kind == TauPolicy::Kind::HalfCauchy && !(tau_policy.value > 0.0))
        throw std::invalid_argument("McmcConfig: half-Cauchy scale must be positive");
}

void NormalMeansData::validate() const {
    if (y.empty()) throw std::invalid_argument("NormalMeansData: empty observation vector");
    for (double v : y)
        if (!std::isfinite(v)) throw std::invalid_argument("NormalMeansData: non-finite observation");
    if (truth && truth->size() != y.size())
        throw std::invalid_argument("NormalMeansData: truth length mismatch");
}

namespace {

constexpr double kScaleFloor = 1e-300;

double clamp_scale(double v, long& clamps) {
    if (v < kScaleFloor) { ++clamps; return kScaleFloor; }
    return v;
}

struct ChainOutput {
    std::vector<std::vector<double>> theta;
    std::vector<double> tau;
    std::vector<std::vector<double>> kappa;
    std::vector<double> kappa_sum;  // sum over retained draws of 1/(1+lambda^2)
    long clamps = 0;
};

ChainOutput run_chain(const NormalMeansData& data, Family family, const McmcConfig& cfg,
                      int chain_index) {
    const int n = data.n();
    Rng rng(derive_seed(cfg.seed, 1 + static_cast<std::uint64_t>(chain_index), 0));

    std::vector<double> lam2(n, 1.0), nu(n, 1.0), eta2(n, 1.0), xi(n, 1.0);
    double tau2 = 1.0, phi = 1.0;
    if (cfg.tau_policy.kind == TauPolicy::Kind::Fixed)
        tau2 = cfg.tau_policy.value * cfg.tau_policy.value;
    else if (cfg.tau_policy.kind == TauPolicy::Kind::HalfCauchy)
        tau2 = cfg.tau_policy.value * cfg.tau_policy.value;

    const int retained = cfg.iterations - cfg.burn_in;
    ChainOutput out;
    out.theta.reserve(retained);
    out.tau.reserve(retained);
    out.kappa_sum.assign(n, 0.0);

    std::vector<double> theta(n, 0.0);
    for (int it = 0; it < cfg.iterations; ++it) {
        // theta_i | rest ~ N(y_i v_i, v_i), v_i = lam2_i/(1+lam2_i)
        for (int i = 0; i < n; ++i) {
            const double v = lam2[i] / (1.0 + lam2[i]);
            theta[i] = v * data.y[i] + std::sqrt(v) * rng.normal();
        }
        // lam2_i | nu_i, theta_i ~ IG(1, 1/nu_i + theta_i^2/2)
        for (int i = 0; i < n; ++i)
            lam2[i] = clamp_scale(rng.inverse_gamma(1.0, 1.0 / nu[i] + 0.5 * theta[i] * theta[i]),
                                  out.clamps);
        double S = 0.0;  // sum of 1/(eta2_i nu_i)  (HS: sum of 1/nu_i)
        if (family == Family::HorseshoePlus) {
            for (int i = 0; i < n; ++i) {
                nu[i] = clamp_scale(
                    rng.inverse_gamma(1.0, 1.0 / lam2[i] + 1.0 / (tau2 * eta2[i])), out.clamps);
                eta2[i] = clamp_scale(
                    rng.inverse_gamma(1.0, 1.0 / (tau2 * nu[i]) + 1.0 / xi[i]), out.clamps);
                xi[i] = clamp_scale(rng.inverse_gamma(1.0, 1.0 + 1.0 / eta2[i]), out.clamps);
                S += 1.0 / (eta2[i] * nu[i]);
            }
        } else {
            for (int i = 0; i < n; ++i) {
                nu[i] = clamp_scale(rng.inverse_gamma(1.0, 1.0 / lam2[i] + 1.0 / tau2), out.clamps);
                S += 1.0 / nu[i];
            }
        }
        switch (cfg.tau_policy.kind) {
            case TauPolicy::Kind::Fixed:
                break;
            case TauPolicy::Kind::HalfCauchy: {
                tau2 = clamp_scale(
                    rng.inverse_gamma(0.5 * (n + 1), 1.0 / phi + S), out.clamps);
                const double s = cfg.tau_policy.value;
                phi = clamp_scale(rng.inverse_gamma(1.0, 1.0 / (s * s) + 1.0 / tau2), out.clamps);
                break;
            }
            case TauPolicy::Kind::Uniform01: {
                // stepping-out slice sampler on t = log(tau), width 1:
                // log p(t) = -(n-1) t - S e^{-2t} on t < 0
                const auto logp = [&](double t) {
                    if (t >= 0.0) return -std::numeric_limits<double>::infinity();
                    return -(n - 1.0) * t - S * std::exp(-2.0 * t);
                };
                double t = 0.5 * std::log(tau2);
                if (t >= 0.0) t = -1e-3;
                const double level = logp(t) + std::log(rng.uniform());
                const double w = 1.0;
                double lo = t - w * rng.uniform();
                double hi = lo + w;
                while (lo > -700.0 && logp(lo) > level) lo -= w;
                while (hi < 0.0 && logp(hi) > level) hi += w;
                hi = std::min(hi, 0.0);
                while (true) {
                    const double cand = lo + (hi - lo) * rng.uniform();
                    if (logp(cand) > level) { t = cand; break; }
                    if (cand < t) lo = cand; else hi = cand;
                }
                tau2 = clamp_scale(std::exp(2.0 * t), out.clamps);
                break;
            }
        }
        if (it >= cfg.burn_in) {
            out.theta.push_back(theta);
            out.tau.push_back(std::sqrt(tau2));
            for (int i = 0; i < n; ++i) out.kappa_sum[i] += 1.0 / (1.0 + lam2[i]);
            if (cfg.keep_kappa_draws) {
                std::vector<double> krow(n);
                for (int i = 0; i < n; ++i) krow[i] = 1.0 / (1.0 + lam2[i]);
                out.kappa.push_back(std::move(krow));
            }
        }
    }
    return out;
}

}  // namespace

double quantile_midpoint(std::vector<double> v, double q) {
    if (v.empty()) throw std::invalid_argument("quantile_midpoint: empty sample");
    std::sort(v.begin(), v.end());
    const double p = q * static_cast<double>(v.size());
    const double pr = std::round(p);
    const auto nsz = static_cast<long>(v.size());
    if (std::abs(p - pr) < 1e-9 && pr >= 1.0 && pr <= nsz - 1) {
        const long j = static_cast<long>(pr);
        return 0.5 * (v[j - 1] + v[j]);
    }
    long j = static_cast<long>(std::ceil(p)) - 1;
    j = std::clamp(j, 0L, nsz - 1);
    return v[j];
}

PosteriorSummary summarize(const std::vector<std::vector<double>>& theta_draws,
                           const std::vector<double>& tau_draws,
                           const std::vector<double>& mean_kappa) {
    if (theta_draws.size() < 100)
        throw std::invalid_argument("summarize: needs at least 100 retained draws");
    const size_t n = theta_draws.front().size();
    PosteriorSummary s;
    s.mean.assign(n, 0.0);
    s.median.resize(n);
    s.ci_lower.resize(n);
    s.ci_upper.resize(n);
    s.mean_kappa = mean_kappa;
    s.omega_hat.resize(n);
    std::vector<double> col(theta_draws.size());
    for (size_t i = 0; i < n; ++i) {
        double acc = 0.0;
        for (size_t d = 0; d < theta_draws.size(); ++d) {
            col[d] = theta_draws[d][i];
            acc += col[d];
        }
        s.mean[i] = acc / static_cast<double>(col.size());
        std::sort(col.begin(), col.end());
        auto sorted_q = [&](double q) {
            const double p = q * static_cast<double>(col.size());
            const double pr = std::round(p);
            const auto nsz = static_cast<long>(col.size());
            if (std::abs(p - pr) < 1e-9 && pr >= 1.0 && pr <= nsz - 1) {
                const long j = static_cast<long>(pr);
                return 0.5 * (col[j - 1] + col[j]);
            }
            long j = static_cast<long>(std::ceil(p)) - 1;
            j = std::clamp(j, 0L, nsz - 1);
            return col[j];
        };
        s.median[i] = sorted_q(0.5);
        s.ci_lower[i] = sorted_q(0.025);
        s.ci_upper[i] = sorted_q(0.975);
        s.omega_hat[i] = 1.0 - mean_kappa[i];
    }
    double tacc = 0.0;
    for (double t : tau_draws) tacc += t;
    s.tau_mean = tau_draws.empty() ? 0.0 : tacc / static_cast<double>(tau_draws.size());
    return s;
}

GibbsResult run_gibbs(const NormalMeansData& data, Family family, const McmcConfig& cfg) {
    data.validate();
    cfg.validate();
    const int n = data.n();
    std::vector<ChainOutput> chains(cfg.chains);
    parallel_for(cfg.chains, [&](int c) { chains[c] = run_chain(data, family, cfg, c); });

    GibbsResult res;
    res.chains = cfg.chains;
    res.retained_per_chain = cfg.iterations - cfg.burn_in;
    long total_retained = 0;
    for (auto& c : chains) total_retained += static_cast<long>(c.theta.size());
    res.theta_draws.reserve(total_retained);
    res.tau_draws.reserve(total_retained);
    std::vector<double> kmean(n, 0.0);
    for (auto& c : chains) {
        res.scale_clamps += c.clamps;
        for (auto& row : c.theta) res.theta_draws.push_back(std::move(row));
        for (auto& row : c.kappa) res.kappa_draws.push_back(std::move(row));
        res.tau_draws.insert(res.tau_draws.end(), c.tau.begin(), c.tau.end());
        for (int i = 0; i < n; ++i) kmean[i] += c.kappa_sum[i];
    }
    for (int i = 0; i < n; ++i) kmean[i] /= static_cast<double>(total_retained);
    res.summary = summarize(res.theta_draws, res.tau_draws, kmean);
    return res;
}

DiagnosticsReport diagnostics(const GibbsResult& result) {
    const int m = result.chains;
    const int len = result.retained_per_chain;
    const size_t n = result.theta_draws.front().size();
    DiagnosticsReport rep;
    rep.scale_clamps = result.scale_clamps;
    rep.rhat.assign(n, 1.0);
    rep.mcse.assign(n, 0.0);

    for (size_t i = 0; i < n; ++i) {
        // per-chain means/variances
        double w = 0.0;
        std::vector<double> means(m, 0.0);
        for (int c = 0; c < m; ++c) {
            double acc = 0.0, acc2 = 0.0;
            for (int d = 0; d < len; ++d) {
                const double v = result.theta_draws[static_cast<size_t>(c) * len + d][i];
                acc += v;
                acc2 += v * v;
            }
            means[c] = acc / len;
            w += (acc2 - len * means[c] * means[c]) / (len - 1);
        }
        w /= m;
        if (m >= 2) {
            double grand = 0.0;
            for (double mu : means) grand += mu;
            grand /= m;
            double b = 0.0;
            for (double mu : means) b += (mu - grand) * (mu - grand);
            b /= (m - 1);
            rep.rhat[i] = (w > 0.0) ? std::sqrt((w + b) / w) : 1.0;
        }
        if (rep.rhat[i] > 1.1) rep.flagged.push_back(static_cast<int>(i));

        // batch means over the pooled chains (per chain, then pooled)
        const int nb = std::max(2, static_cast<int>(std::floor(std::sqrt(double(len)))));
        const int bl = len / nb;
        std::vector<double> bm;
        bm.reserve(static_cast<size_t>(nb) * m);
        for (int c = 0; c < m; ++c) {
            for (int bidx = 0; bidx < nb; ++bidx) {
                double acc = 0.0;
                for (int d = bidx * bl; d < (bidx + 1) * bl; ++d)
                    acc += result.theta_draws[static_cast<size_t>(c) * len + d][i];
                bm.push_back(acc / bl);
            }
        }
        double gm = 0.0;
        for (double v : bm) gm += v;
        gm /= static_cast<double>(bm.size());
        double bv = 0.0;
        for (double v : bm) bv += (v - gm) * (v - gm);
        bv /= static_cast<double>(bm.size() - 1);
        // var(theta_bar) ~ sigma_asym^2 / N with sigma_asym^2 ~ bl * var(batch means)
        rep.mcse[i] = std::sqrt(bv * bl / (double(len) * m));
    }
    return rep;
}

}  // namespace hsplus
