#include "hsplus/testing.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

#include "hsplus/csv.hpp"
#include "hsplus/specialfn.hpp"

namespace hsplus {

void OracleParams::validate() const {
    if (!(mu > 0.0 && mu < 1.0)) throw std::domain_error("OracleParams: mu outside (0,1)");
    if (!(psi_sq > 0.0)) throw std::domain_error("OracleParams: psi_sq must be positive");
}

std::vector<bool> half_threshold_rule(const std::vector<double>& omega_hat) {
    std::vector<bool> reject(omega_hat.size());
    for (size_t i = 0; i < omega_hat.size(); ++i) reject[i] = omega_hat[i] > 0.5;
    return reject;
}

std::vector<bool> half_threshold_rule(const PosteriorSummary& summary) {
    return half_threshold_rule(summary.omega_hat);
}

OracleThreshold oracle_threshold(const OracleParams& p) {
    p.validate();
    const double u = p.u(), v = p.v();
    const double c2 = (1.0 + 1.0 / u) * (std::log(v) + std::log1p(1.0 / u));
    // no positive threshold exists when v(1 + 1/u) <= 1
    if (!(c2 > 0.0)) return OracleThreshold{0.0, true};
    return OracleThreshold{c2, false};
}

double oracle_threshold_psi_f(double psi_sq, double f) {
    return (1.0 + psi_sq) / psi_sq * (std::log(psi_sq + 1.0) + 2.0 * std::log(f));
}

OracleErrorRates oracle_error_rates(const OracleParams& p) {
    const auto thr = oracle_threshold(p);
    if (thr.degenerate) throw std::domain_error("oracle_error_rates: degenerate oracle (v <= 1)");
    const double C = p.assumption_constant();
    const double v = p.v();
    const double t1 = std::exp(-0.5 * C) * std::sqrt(2.0 / (constants::pi * v * std::log(v)));
    const double t2 = 2.0 * std_normal_cdf(std::sqrt(C)) - 1.0;
    return OracleErrorRates{t1, t2, p.mu * t2};
}

std::vector<bool> benjamini_hochberg(const std::vector<double>& pvalues, double alpha) {
    const size_t n = pvalues.size();
    std::vector<bool> reject(n, false);
    if (n == 0) return reject;
    if (!(alpha > 0.0 && alpha < 1.0))
        throw std::domain_error("benjamini_hochberg: alpha outside (0,1)");
    for (double p : pvalues)
        if (!(p >= 0.0 && p <= 1.0))
            throw std::domain_error("benjamini_hochberg: p-value outside [0,1]");
    std::vector<size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](size_t a, size_t b) { return pvalues[a] < pvalues[b]; });
    size_t kmax = 0;  // 1-based count of rejections
    for (size_t k = 1; k <= n; ++k) {
        if (pvalues[order[k - 1]] <= alpha * static_cast<double>(k) / static_cast<double>(n))
            kmax = k;
    }
    for (size_t k = 0; k < kmax; ++k) reject[order[k]] = true;
    return reject;
}

ErrorBounds analytic_error_bounds(const PriorSpec& spec, const OracleParams& p, double eta,
                                  double delta) {
    const double tau = spec.tau;
    if (!(tau > 0.0 && tau < 0.5))
        throw std::domain_error("analytic_error_bounds: t1 bound requires tau in (0, 1/2)");
    if (!(eta > 0.0 && eta < 1.0) || !(delta > 0.0 && delta < 1.0 / (eta * (1.0 + tau * tau))))
        throw std::domain_error("analytic_error_bounds: (eta, delta) outside the stated range");
    const double t1 =
        std::sqrt(2.0 / constants::pi) * tau * tau / std::sqrt(std::log(1.0 / (2.0 * tau)));
    const double C = p.assumption_constant();
    const double t2 =
        2.0 * std_normal_cdf(std::sqrt(2.0 / (eta * (1.0 - delta))) * std::sqrt(C)) - 1.0;
    return ErrorBounds{t1, t2};
}

DecisionReport score(const std::vector<bool>& decisions, const std::vector<bool>& truth_nonzero) {
    if (decisions.size() != truth_nonzero.size())
        throw std::invalid_argument("score: length mismatch");
    const size_t n = decisions.size();
    long nulls = 0, signals = 0, false_rej = 0, misses = 0;
    for (size_t i = 0; i < n; ++i) {
        if (truth_nonzero[i]) {
            ++signals;
            if (!decisions[i]) ++misses;
        } else {
            ++nulls;
            if (decisions[i]) ++false_rej;
        }
    }
    DecisionReport rep;
    rep.reject = decisions;
    if (nulls > 0) rep.t1 = static_cast<double>(false_rej) / nulls;
    if (signals > 0) rep.t2 = static_cast<double>(misses) / signals;
    rep.mp = n == 0 ? 0.0 : static_cast<double>(false_rej + misses) / static_cast<double>(n);
    rep.risk = rep.mp * static_cast<double>(n);
    return rep;
}

std::string decisions_csv(const std::vector<double>& y, const std::vector<double>& omega_hat,
                          const std::vector<bool>& reject,
                          const std::optional<std::vector<bool>>& truth_nonzero) {
    CsvWriter w("index,y,omega_hat,reject,truth");
    for (size_t i = 0; i < reject.size(); ++i) {
        const std::string truth =
            truth_nonzero ? ((*truth_nonzero)[i] ? "1" : "0") : std::string();
        w.row(static_cast<int>(i), y[i], omega_hat[i], static_cast<bool>(reject[i]), truth);
    }
    return w.str();
}

double z_to_pvalue(double z) {
    // 2(1 - Phi(|z|)) without cancellation
    return std::erfc(std::abs(z) / std::sqrt(2.0));
}

}  // namespace hsplus
