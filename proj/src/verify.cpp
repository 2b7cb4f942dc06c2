#include "hsplus/verify.hpp"

#include <cmath>
#include <cstdio>
#include <sstream>

#include "hsplus/csv.hpp"
#include "hsplus/kappa_posterior.hpp"
#include "hsplus/priors.hpp"
#include "hsplus/rng.hpp"
#include "hsplus/specialfn.hpp"

namespace hsplus {

namespace {

std::string fmt(double v) { return format_double(v); }

void add(std::vector<CheckResult>& out, const std::string& name, bool pass,
         const std::string& detail) {
    out.push_back(CheckResult{name, pass, detail});
}

std::vector<double> log_grid(double lo, double hi, int points) {
    std::vector<double> g(points);
    const double la = std::log(lo), lb = std::log(hi);
    for (int i = 0; i < points; ++i)
        g[i] = std::exp(la + (lb - la) * i / static_cast<double>(points - 1));
    return g;
}

}  // namespace

std::vector<CheckResult> verify_bounds() {
    std::vector<CheckResult> out;
    const PriorSpec hsp{Family::HorseshoePlus, 1.0};
    const PriorSpec hs{Family::Horseshoe, 1.0};

    // bracket containment on a 200-point log grid, both families
    for (const auto& spec : {hsp, hs}) {
        const bool plus = spec.family == Family::HorseshoePlus;
        int violations = 0;
        double worst_gap = 1e9;
        for (double th : log_grid(1e-3, 10.0, 200)) {
            const auto b = marginal_bounds(spec, th);
            const double p = marginal_theta_density(spec, th);
            if (!(b.lower < p && p <= b.upper)) ++violations;
            worst_gap = std::min(worst_gap, std::min(p - b.lower, b.upper - p));
        }
        add(out, std::string(plus ? "hs+" : "hs") + "_marginal_bracket_200pt",
            violations == 0,
            "violations=" + std::to_string(violations) + " min_margin=" + fmt(worst_gap));
    }

    // the lower bound diverges toward the origin
    {
        const double l1 = marginal_bounds(hsp, 1e-4).lower;
        const double l2 = marginal_bounds(hsp, 1e-8).lower;
        const double l3 = marginal_bounds(hsp, 1e-12).lower;
        add(out, "hs+_lower_bound_diverges_at_origin", l3 > l2 && l2 > l1 && l3 > 2.0,
            "lower(1e-4)=" + fmt(l1) + " lower(1e-8)=" + fmt(l2) + " lower(1e-12)=" + fmt(l3));
    }

    // symmetry
    {
        bool sym = true;
        for (double th : {0.3, 1.7, 9.0})
            sym = sym && marginal_theta_density(hsp, th) == marginal_theta_density(hsp, -th) &&
                  marginal_theta_density(hs, th) == marginal_theta_density(hs, -th);
        add(out, "marginal_symmetry_exact", sym, "evaluated at |theta| in {0.3,1.7,9}");
    }

    // horseshoe+ dominates near the origin
    {
        bool dom = true;
        double ratio_at_ms = 0.0;
        for (double th : log_grid(1e-6, 1e-3, 25)) {
            const double r = marginal_theta_density(hsp, th) / marginal_theta_density(hs, th);
            dom = dom && r > 1.0;
            ratio_at_ms = r;
        }
        add(out, "hs+_dominates_hs_near_origin", dom, "ratio at 1e-3: " + fmt(ratio_at_ms));
    }

    // tail ratio increases (log-factor tail robustness)
    {
        bool inc = true;
        double prev = 0.0;
        for (double th : log_grid(10.0, 1e4, 30)) {
            const double r = marginal_theta_density(hsp, th) / marginal_theta_density(hs, th);
            if (prev > 0.0 && r <= prev) inc = false;
            prev = r;
        }
        add(out, "hs+_over_hs_tail_ratio_increasing", inc, "ratio at 1e4: " + fmt(prev));
    }

    // expansion agreement at the extremes
    {
        const double r_inf_hsp = marginal_theta_density(hsp, 1e3) /
                                 asymptotic_expansion(hsp, 1e3, ExpansionPoint::Infinity);
        const double r0_hsp = marginal_theta_density(hsp, 1e-6) /
                              asymptotic_expansion(hsp, 1e-6, ExpansionPoint::Origin);
        const double r_inf_hs = marginal_theta_density(hs, 1e3) /
                                asymptotic_expansion(hs, 1e3, ExpansionPoint::Infinity);
        const double r0_hs = marginal_theta_density(hs, 1e-6) /
                             asymptotic_expansion(hs, 1e-6, ExpansionPoint::Origin);
        const bool ok = std::abs(r_inf_hsp - 1.0) < 0.01 && std::abs(r0_hsp - 1.0) < 0.01 &&
                        std::abs(r_inf_hs - 1.0) < 0.01 && std::abs(r0_hs - 1.0) < 0.01;
        add(out, "expansion_ratio_to_quadrature_within_1pct", ok,
            "hs+:inf=" + fmt(r_inf_hsp) + " origin=" + fmt(r0_hsp) + " hs:inf=" + fmt(r_inf_hs) +
                " origin=" + fmt(r0_hs));
    }

    // scale equivariance of the lambda density in tau
    {
        bool ok = true;
        for (double tau : {0.3, 2.0})
            for (double lam : {0.05, 0.7, 4.0}) {
                for (const auto fam : {Family::Horseshoe, Family::HorseshoePlus}) {
                    const PriorSpec unit{fam, 1.0};
                    const PriorSpec scaled{fam, tau};
                    const double lhs = lambda_density(scaled, lam);
                    const double rhs = lambda_density(unit, lam / tau) / tau;
                    ok = ok && std::abs(lhs - rhs) <= 1e-14 * std::max(1.0, std::abs(rhs));
                }
            }
        add(out, "lambda_density_scale_equivariance", ok, "tau in {0.3,2}, pointwise");
    }
    return out;
}

std::vector<CheckResult> verify_concentration() {
    std::vector<CheckResult> out;
    const double eps = 0.25, eta = 0.25, delta = 1.0 / 9.0;
    for (double tau : {0.5, 0.1, 0.01}) {
        const PriorSpec spec{Family::HorseshoePlus, tau};
        for (double y : {0.0, 1.0, 2.0, 4.0, 6.0}) {
            const KappaPosterior kp(y, spec);
            const double pb = kp.tail_below(eps);
            const double bb = concentration_bound(BoundKind::KappaBelow, y, spec, {eps, delta});
            std::ostringstream tag;
            tag << "y=" << y << ",tau=" << tau;
            add(out, "lower_tail_bound[" + tag.str() + "]", pb <= bb,
                "P(k<1/4)=" + fmt(pb) + " bound=" + fmt(bb));
            const double pa = kp.tail_above(eta);
            const double ba = concentration_bound(BoundKind::KappaAbove, y, spec, {eta, delta});
            add(out, "upper_tail_bound[" + tag.str() + "]", pa <= ba,
                "P(k>1/4)=" + fmt(pa) + " bound=" + fmt(ba));
        }
    }

    // plug-in type-I frequency against the analytic envelope with slack 3
    for (double tau : {0.05, 0.02}) {
        const PriorSpec spec{Family::HorseshoePlus, tau};
        const double ystar = rejection_threshold(spec);
        Rng rng(derive_seed(20150405ULL, 42, static_cast<std::uint64_t>(tau * 1e4)));
        const int draws = 100000;
        long rejections = 0;
        for (int i = 0; i < draws; ++i)
            if (std::abs(rng.normal()) > ystar) ++rejections;
        const double freq = static_cast<double>(rejections) / draws;
        const double envelope = std::sqrt(2.0 / constants::pi) * tau * tau /
                                std::sqrt(std::log(1.0 / (2.0 * tau)));
        add(out, "type1_envelope_slack3[tau=" + fmt(tau) + "]", freq <= 3.0 * envelope,
            "freq=" + fmt(freq) + " 3*envelope=" + fmt(3.0 * envelope) + " y*=" + fmt(ystar));
    }
    return out;
}

std::vector<CheckResult> verify_tweedie() {
    std::vector<CheckResult> out;
    for (const auto fam : {Family::Horseshoe, Family::HorseshoePlus}) {
        for (double tau : {1.0, 0.1}) {
            const PriorSpec spec{fam, tau};
            double worst = 0.0;
            for (double y : {0.5, 2.0, 5.0}) {
                const KappaPosterior kp(y, spec);
                const double via_kappa = kp.posterior_mean_theta();
                const double via_tweedie = y + log_marginal_derivatives(y, spec).first;
                worst = std::max(worst, std::abs(via_kappa - via_tweedie));
            }
            const std::string name =
                std::string(fam == Family::HorseshoePlus ? "hs+" : "hs") + "_tau=" + fmt(tau);
            add(out, "tweedie_identity[" + name + "]", worst < 1e-6,
                "max |(1-E(k))y - (y+dlogm)| = " + fmt(worst));
        }
    }
    // first log-derivative vanishes at y=0; posterior variance positive
    {
        const PriorSpec spec{Family::HorseshoePlus, 1.0};
        const double d0 = log_marginal_derivatives(0.0, spec).first;
        add(out, "dlogm_zero_at_origin", std::abs(d0) < 1e-12, "value=" + fmt(d0));
        bool pos = true;
        std::string vals;
        for (double y : {0.0, 1.0, 3.0, 8.0}) {
            const double v = 1.0 + log_marginal_derivatives(y, spec).second;
            pos = pos && v > 0.0;
            vals += fmt(v) + " ";
        }
        add(out, "posterior_variance_positive", pos, "1+d2logm at y in {0,1,3,8}: " + vals);
    }
    return out;
}

std::vector<CheckResult> verify_mass() {
    std::vector<CheckResult> out;
    const PriorSpec hsp{Family::HorseshoePlus, 1.0};
    const PriorSpec hs{Family::Horseshoe, 1.0};

    // marginal normalization via the exp-substitution integral
    for (const auto& spec : {hs, hsp}) {
        const auto f = [&](double x) {
            const double th = std::exp(x);
            return marginal_theta_density(spec, th) * th;
        };
        const std::vector<double> knots{-45.0, -20.0, -8.0, -2.0, 0.0, 2.0, 8.0, 20.0, 45.0};
        const double total = 2.0 * integrate_segments(f, knots, QuadOptions{1e-12, 1e-9, 6000}).value;
        const bool plus = spec.family == Family::HorseshoePlus;
        add(out, std::string(plus ? "hs+" : "hs") + "_marginal_integrates_to_1",
            std::abs(total - 1.0) < 1e-6, "integral=" + fmt(total));
    }

    // lambda and kappa densities integrate to 1 (tau != 1 included)
    for (const auto fam : {Family::Horseshoe, Family::HorseshoePlus}) {
        const PriorSpec spec{fam, 0.7};
        const auto fl = [&](double x) {
            const double lam = std::exp(x);
            return lambda_density(spec, lam) * lam;
        };
        const std::vector<double> knots{-40.0, -10.0, -2.0, 0.0, 2.0, 10.0, 40.0};
        const double lam_total = integrate_segments(fl, knots, QuadOptions{1e-12, 1e-9, 6000}).value;
        const double kap_left =
            integrate_segments([&](double k) { return kappa_prior_density(spec, k); },
                               log_knots(0.0, 0.5), QuadOptions{1e-12, 1e-9, 6000})
                .value;
        const auto kap_right_f = [&](double u) {
            const double k = std::min(1.0 - u * u, 1.0 - 1e-16);
            return kappa_prior_density(spec, k) * 2.0 * u;
        };
        const double kap_total =
            kap_left + integrate_segments(kap_right_f, log_knots(0.0, std::sqrt(0.5)),
                                          QuadOptions{1e-12, 1e-9, 6000})
                           .value;
        const std::string nm = fam == Family::HorseshoePlus ? "hs+" : "hs";
        add(out, nm + "_lambda_density_normalized_tau0.7", std::abs(lam_total - 1.0) < 1e-6,
            "integral=" + fmt(lam_total));
        add(out, nm + "_kappa_prior_normalized_tau0.7", std::abs(kap_total - 1.0) < 1e-6,
            "integral=" + fmt(kap_total));
    }

    // origin mass: closed form vs quadrature of the expansion at n = 1e8
    for (const auto& spec : {hsp, hs}) {
        const double cf = origin_mass(spec, 1e8);
        const double q = origin_mass_quadrature(spec, 1e8);
        const bool plus = spec.family == Family::HorseshoePlus;
        add(out, std::string(plus ? "hs+" : "hs") + "_origin_mass_closed_vs_quadrature",
            std::abs(cf - q) / q < 0.05, "closed=" + fmt(cf) + " quad=" + fmt(q));
    }
    {
        bool grows = true;
        double prev = 0.0;
        for (double n : {1e6, 1e8, 1e10}) {
            const double r = origin_mass(hsp, n) / origin_mass(hs, n);
            grows = grows && r > prev;
            prev = r;
        }
        const double rl =
            origin_mass_leading(hsp, 1e8) / origin_mass_leading(hs, 1e8);
        add(out, "hs+_over_hs_origin_mass_ratio_grows", grows && prev > 1.0,
            "ratio(1e10)=" + fmt(prev) + " leading_ratio(1e8)=" + fmt(rl));
    }

    // two-Cauchy product density normalization and CDF endpoints
    {
        const auto f = [](double x) {
            const double t = std::exp(x);
            return cauchy_product_density(2, t) * t;
        };
        const std::vector<double> knots{-40.0, -10.0, -2.0, 0.0, 2.0, 10.0, 40.0};
        const double total = 2.0 * integrate_segments(f, knots, QuadOptions{1e-12, 1e-9, 6000}).value;
        add(out, "cauchy_product2_integrates_to_1", std::abs(total - 1.0) < 1e-6,
            "integral=" + fmt(total));
        const double qtr = cauchy_product2_cdf(1.0);
        add(out, "cauchy_product2_cdf_at_1_is_3/4", std::abs(qtr - 0.75) < 1e-10,
            "F(1)=" + fmt(qtr));
    }

    // universal prior behavior
    {
        bool dec = true;
        for (long long i = 2; i < 100; ++i)
            dec = dec && universal_prior_mass(i + 1) < universal_prior_mass(i);
        double partial = 0.0;
        for (long long i = 1; i <= 1000000; ++i) partial += universal_prior_mass(i);
        add(out, "universal_prior_decreasing_2_100", dec, "");
        add(out, "universal_prior_partial_sum_below_1", partial < 1.0 && partial > 0.8,
            "sum_{i<=1e6} Q(i)=" + fmt(partial));
    }
    return out;
}

std::vector<CheckResult> verify_mse() {
    std::vector<CheckResult> out;
    const PriorSpec hsp{Family::HorseshoePlus, 1.0};
    const PriorSpec hs{Family::Horseshoe, 1.0};
    bool direction = true;
    double gap30 = 0.0;
    std::string details;
    for (double y : {8.0, 12.0, 20.0, 30.0}) {
        const double mh = posterior_mse(y, hs);
        const double mp = posterior_mse(y, hsp);
        direction = direction && (mp < mh);
        if (y == 30.0) gap30 = y * y * std::log(y) * (mh - mp);
        details += "y=" + fmt(y) + ":" + fmt(mh - mp) + " ";
    }
    add(out, "mse_direction_hs+_below_hs", direction, details);
    add(out, "mse_gap_scaling_in_(0.3,3)_at_y30", gap30 > 0.3 && gap30 < 3.0,
        "y^2 log(y) gap = " + fmt(gap30));
    // bias vanishes at the origin: MSE(0) equals the posterior variance
    {
        const auto d = log_marginal_derivatives(0.0, hsp);
        const double mse0 = posterior_mse(0.0, hsp);
        add(out, "mse_at_origin_is_variance", std::abs(mse0 - (1.0 + d.second)) < 1e-12,
            "bias=" + fmt(d.first));
    }
    return out;
}

std::vector<CheckResult> verify_all() {
    std::vector<CheckResult> all;
    for (auto* fn : {verify_bounds, verify_concentration, verify_tweedie, verify_mass, verify_mse}) {
        auto part = fn();
        all.insert(all.end(), part.begin(), part.end());
    }
    return all;
}

int print_checks(const std::vector<CheckResult>& checks) {
    int failures = 0;
    for (const auto& c : checks) {
        if (!c.pass) ++failures;
        std::printf("%s %s%s%s\n", c.pass ? "PASS" : "FAIL", c.name.c_str(),
                    c.detail.empty() ? "" : " - ", c.detail.c_str());
    }
    std::printf("%d checks, %d failures\n", static_cast<int>(checks.size()), failures);
    return failures;
}

}  // namespace hsplus
