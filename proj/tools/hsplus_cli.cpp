// hsplus command line: density curves, Gibbs fitting, the half-threshold
// testing rule, simulation harnesses, verification suites, and t-statistic
// ingestion. All outputs are byte-stable given identical flags and seed.

#include <CLI11.hpp>

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "hsplus/csv.hpp"
#include "hsplus/experiments.hpp"
#include "hsplus/ingest.hpp"
#include "hsplus/kappa_posterior.hpp"
#include "hsplus/mcmc.hpp"
#include "hsplus/priors.hpp"
#include "hsplus/testing.hpp"
#include "hsplus/threading.hpp"
#include "hsplus/verify.hpp"

namespace {

using namespace hsplus;

constexpr std::uint64_t kDefaultSeed = 20150405ULL;  // fixed: bare runs reproduce

Family parse_family(const std::string& s) {
    if (s == "hs") return Family::Horseshoe;
    if (s == "hs+" || s == "hsplus") return Family::HorseshoePlus;
    throw CLI::ValidationError("--family", "expected hs or hs+");
}

TauPolicy parse_tau_policy(const std::string& s) {
    if (s == "uniform") return TauPolicy::uniform01();
    const auto colon = s.find(':');
    if (colon != std::string::npos) {
        const std::string kind = s.substr(0, colon);
        const double value = std::stod(s.substr(colon + 1));
        if (kind == "fixed") return TauPolicy::fixed(value);
        if (kind == "half-cauchy") return TauPolicy::half_cauchy(value);
    }
    throw CLI::ValidationError("--tau-policy", "expected fixed:R, half-cauchy:S or uniform");
}

// key = value lines, '#' comments; unknown keys are a hard error listing the
// valid keys for the active subcommand. Flags given on the command line win.
std::vector<std::string> load_config_tokens(const std::string& path, CLI::App* sub) {
    std::ifstream in(path);
    if (!in) throw CLI::ValidationError("--config", "cannot open " + path);
    std::vector<std::string> tokens;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t");
            const auto e = s.find_last_not_of(" \t");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        line = trim(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", "line " + std::to_string(lineno) +
                                                       ": expected key = value");
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const CLI::Option* opt = nullptr;
        for (const auto* o : sub->get_options())
            for (const auto& lname : o->get_lnames())
                if (lname == key) opt = o;
        if (!opt) {
            std::string valid;
            for (const auto* o : sub->get_options())
                for (const auto& lname : o->get_lnames())
                    if (lname != "help" && lname != "config") valid += " " + lname;
            throw CLI::ValidationError(
                "--config", "unknown key '" + key + "'; valid keys:" + valid);
        }
        tokens.push_back("--" + key + "=" + value);
    }
    return tokens;
}

std::vector<double> read_observations(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open input: " + path);
    std::vector<double> y;
    std::string line;
    bool first = true;
    int ycol = -1;
    while (std::getline(in, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::vector<std::string> fields;
        std::stringstream ss(line);
        std::string f;
        while (std::getline(ss, f, ',')) fields.push_back(f);
        if (first) {
            first = false;
            for (size_t i = 0; i < fields.size(); ++i)
                if (fields[i] == "y" || fields[i] == "z") ycol = static_cast<int>(i);
            if (ycol >= 0) continue;  // header line consumed
            ycol = fields.size() > 1 ? 1 : 0;  // headerless: value column
        }
        const auto& cell = fields.at(static_cast<size_t>(ycol));
        y.push_back(std::stod(cell));
    }
    return y;
}

std::string summary_csv(const PosteriorSummary& s, const std::vector<double>& y) {
    CsvWriter w("index,y,mean,median,ci_lower,ci_upper,mean_kappa,omega_hat,tau_mean");
    for (size_t i = 0; i < s.mean.size(); ++i)
        w.row(static_cast<int>(i), y[i], s.mean[i], s.median[i], s.ci_lower[i], s.ci_upper[i],
              s.mean_kappa[i], s.omega_hat[i], s.tau_mean);
    return w.str();
}

std::string samples_csv(const GibbsResult& r) {
    std::string header;
    const size_t n = r.theta_draws.front().size();
    for (size_t i = 1; i <= n; ++i) header += "theta_" + std::to_string(i) + ",";
    header += "tau";
    CsvWriter w(std::move(header));
    for (size_t d = 0; d < r.theta_draws.size(); ++d) {
        std::string line;
        for (size_t i = 0; i < n; ++i) line += format_double(r.theta_draws[d][i]) + ",";
        line += format_double(r.tau_draws[d]);
        w.row(line);
    }
    return w.str();
}

void write_text(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot open for writing: " + path);
    out << content;
}

int run(int argc, char** argv) {
    CLI::App app{"horseshoe / horseshoe+ shrinkage toolkit"};
    app.option_defaults()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);
    int threads = 0;
    app.add_option("--threads", threads, "worker threads (0 = logical cores)");

    // density
    auto* density = app.add_subcommand("density", "evaluate a density curve as CSV");
    std::string d_family = "hs+", d_grid = "0.001:10:0.001", d_scale = "theta", d_out;
    double d_tau = 1.0;
    std::string d_config;
    density->add_option("--family", d_family, "hs or hs+");
    density->add_option("--tau", d_tau, "global scale tau");
    density->add_option("--grid", d_grid, "LO:HI:STEP");
    density->add_option("--scale", d_scale, "theta | lambda | kappa");
    density->add_option("--output", d_out, "output file (default stdout)");
    density->add_option("--config", d_config, "key = value config file");

    // fit
    auto* fit = app.add_subcommand("fit", "Gibbs-sample the posterior for a data file");
    std::string f_input, f_family = "hs+", f_tau_policy = "half-cauchy:1", f_config;
    std::string f_samples_out = "posterior.csv", f_summary_out = "summary.csv";
    int f_iters = 10000, f_burn = 5000, f_chains = 1;
    std::uint64_t f_seed = kDefaultSeed;
    bool f_seed_random = false;
    fit->add_option("--input", f_input, "observations (CSV with y/z column, or one per line)")
        ->required();
    fit->add_option("--family", f_family, "hs or hs+");
    fit->add_option("--tau-policy", f_tau_policy, "fixed:R | half-cauchy:S | uniform");
    fit->add_option("--iters", f_iters, "total iterations");
    fit->add_option("--burn", f_burn, "burn-in iterations");
    fit->add_option("--seed", f_seed, "master seed");
    fit->add_flag("--seed-random", f_seed_random, "draw the master seed from entropy");
    fit->add_option("--chains", f_chains, "independent chains");
    fit->add_option("--output-samples", f_samples_out, "retained draws CSV");
    fit->add_option("--output-summary", f_summary_out, "posterior summary CSV");
    fit->add_option("--config", f_config, "key = value config file");

    // test
    auto* test = app.add_subcommand("test", "apply the half-threshold rule to a summary CSV");
    std::string t_summary, t_out = "decisions.csv", t_truth, t_config;
    test->add_option("--summary", t_summary, "summary CSV from fit")->required();
    test->add_option("--output", t_out, "decisions CSV");
    test->add_option("--truth", t_truth, "optional truth file (nonzero = signal)");
    test->add_option("--config", t_config, "key = value config file");

    // sim-sse
    auto* sse = app.add_subcommand("sim-sse", "average SSE about the posterior median");
    int s_n = 200, s_reps = 20, s_iters = 10000;
    double s_q = 0.2, s_A = 7.0;
    bool s_full = false;
    std::uint64_t s_seed = kDefaultSeed;
    std::string s_out = "sse.csv", s_config;
    sse->add_option("--n", s_n, "dimension");
    sse->add_option("--q", s_q, "signal fraction");
    sse->add_option("--A", s_A, "signal magnitude");
    sse->add_option("--replicates", s_reps, "replicates (desk default 20)");
    sse->add_flag("--full", s_full, "use 100 replicates");
    sse->add_option("--iters", s_iters, "sampler iterations (half burn-in)");
    sse->add_option("--seed", s_seed, "master seed");
    sse->add_option("--output", s_out, "output CSV");
    sse->add_option("--config", s_config, "key = value config file");

    // sim-mp
    auto* mp = app.add_subcommand("sim-mp", "misclassification probability per method");
    int m_n = 200, m_reps = 200;
    double m_psi = 0.0;
    std::string m_grid = "", m_mode = "plugin", m_out = "mp.csv", m_config;
    std::uint64_t m_seed = kDefaultSeed;
    mp->add_option("--n", m_n, "dimension");
    mp->add_option("--psi", m_psi, "signal sd (default sqrt(2 log n))");
    mp->add_option("--replicates", m_reps, "replicates");
    mp->add_option("--mu-grid", m_grid, "comma list (default 10 equispaced in [0.01,0.5])");
    mp->add_option("--mp-mode", m_mode, "plugin | full-bayes");
    mp->add_option("--seed", m_seed, "master seed");
    mp->add_option("--output", m_out, "output CSV");
    mp->add_option("--config", m_config, "key = value config file");

    // verify
    auto* verify = app.add_subcommand("verify", "run the numerical verification suites");
    std::string v_suite = "all", v_config;
    verify->add_option("--suite", v_suite, "bounds|concentration|tweedie|mass|mse|all");
    verify->add_option("--config", v_config, "key = value config file");

    // ingest
    auto* ingest = app.add_subcommand("ingest", "t-statistics to z-scores");
    std::string i_tstats, i_out = "zscores.csv", i_config;
    int i_df = 0;
    ingest->add_option("--tstats", i_tstats, "CSV id,stat[,df]")->required();
    ingest->add_option("--df", i_df, "file-level degrees of freedom (overrides df column)");
    ingest->add_option("--output", i_out, "z-score CSV");
    ingest->add_option("--config", i_config, "key = value config file");

    // two-pass parse so config-file values are applied first, flags override
    std::vector<std::string> args(argv + 1, argv + argc);
    try {
        app.parse(std::vector<std::string>(args.rbegin(), args.rend()));
        CLI::App* active = app.get_subcommands().front();
        std::string config_path;
        if (active->count("--config"))
            config_path = active->get_option("--config")->as<std::string>();
        if (!config_path.empty()) {
            auto config_tokens = load_config_tokens(config_path, active);
            std::vector<std::string> merged{active->get_name()};
            merged.insert(merged.end(), config_tokens.begin(), config_tokens.end());
            for (const auto& a : args)
                if (a != active->get_name()) merged.push_back(a);
            app.clear();
            app.parse(std::vector<std::string>(merged.rbegin(), merged.rend()));
        }
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    if (threads > 0) set_thread_count(threads);

    if (*density) {
        const Family fam = parse_family(d_family);
        double lo, hi, step;
        if (std::sscanf(d_grid.c_str(), "%lf:%lf:%lf", &lo, &hi, &step) != 3 || step <= 0.0)
            throw CLI::ValidationError("--grid", "expected LO:HI:STEP");
        const PriorSpec spec{fam, d_tau};
        CsvWriter w("x,density");
        for (long i = 0;; ++i) {
            const double x = lo + static_cast<double>(i) * step;
            if (x > hi + 1e-9 * step) break;
            double v;
            if (d_scale == "theta") v = marginal_theta_density(spec, x);
            else if (d_scale == "lambda") v = lambda_density(spec, x);
            else if (d_scale == "kappa") v = kappa_prior_density(spec, x);
            else throw CLI::ValidationError("--scale", "expected theta, lambda or kappa");
            w.row(x, v);
        }
        if (d_out.empty()) std::fputs(w.str().c_str(), stdout);
        else write_text(d_out, w.str());
        return 0;
    }

    if (*fit) {
        McmcConfig cfg;
        cfg.iterations = f_iters;
        cfg.burn_in = f_burn;
        cfg.chains = f_chains;
        cfg.tau_policy = parse_tau_policy(f_tau_policy);
        if (f_seed_random) {
            std::random_device rd;
            cfg.seed = (static_cast<std::uint64_t>(rd()) << 32) ^ rd();
        } else {
            cfg.seed = f_seed;
        }
        NormalMeansData data;
        data.y = read_observations(f_input);
        const auto res = run_gibbs(data, parse_family(f_family), cfg);
        write_text(f_samples_out, samples_csv(res));
        write_text(f_summary_out, summary_csv(res.summary, data.y));
        return 0;
    }

    if (*test) {
        const CsvTable table = read_csv(t_summary);
        int ycol = -1, ocol = -1;
        for (size_t i = 0; i < table.header.size(); ++i) {
            if (table.header[i] == "y") ycol = static_cast<int>(i);
            if (table.header[i] == "omega_hat") ocol = static_cast<int>(i);
        }
        if (ocol < 0) throw std::runtime_error("test: summary CSV lacks omega_hat column");
        std::vector<double> yv(table.rows.size(), 0.0);
        std::vector<double> omega(table.rows.size());
        for (size_t r = 0; r < table.rows.size(); ++r) {
            omega[r] = std::stod(table.rows[r][ocol]);
            if (ycol >= 0) yv[r] = std::stod(table.rows[r][ycol]);
        }
        std::optional<std::vector<bool>> truth;
        if (!t_truth.empty()) {
            const auto tvals = read_observations(t_truth);
            if (tvals.size() != omega.size())
                throw std::runtime_error("test: truth length does not match the summary");
            truth.emplace(tvals.size());
            for (size_t i = 0; i < tvals.size(); ++i) (*truth)[i] = tvals[i] != 0.0;
        }
        write_text(t_out, decisions_csv(yv, omega, half_threshold_rule(omega), truth));
        return 0;
    }

    if (*sse) {
        SseConfig cfg;
        cfg.n = s_n;
        cfg.q = s_q;
        cfg.A = s_A;
        cfg.replicates = s_full ? 100 : s_reps;
        cfg.sampler.iterations = s_iters;
        cfg.sampler.burn_in = s_iters / 2;
        cfg.sampler.seed = s_seed;
        const std::vector<SseMethod> methods{
            {"hs+_cauchy", Family::HorseshoePlus, TauPolicy::half_cauchy(1.0 / cfg.n)},
            {"hs_cauchy", Family::Horseshoe, TauPolicy::half_cauchy(1.0 / cfg.n)},
            {"hs+_unif", Family::HorseshoePlus, TauPolicy::uniform01()},
            {"hs_unif", Family::Horseshoe, TauPolicy::uniform01()},
        };
        CsvWriter w("method,q,A,avg_sse,mc_se,replicates");
        for (const auto& row : run_sse_experiment(cfg, methods))
            w.row(row.method, row.q, row.A, row.avg_sse, row.mc_se, row.replicates);
        write_text(s_out, w.str());
        return 0;
    }

    if (*mp) {
        MpConfig cfg;
        cfg.n = m_n;
        cfg.replicates = m_reps;
        cfg.seed = m_seed;
        cfg.psi = m_psi > 0.0 ? m_psi : std::sqrt(2.0 * std::log(static_cast<double>(m_n)));
        if (!m_grid.empty()) {
            cfg.mu_grid.clear();
            std::stringstream ss(m_grid);
            std::string tok;
            while (std::getline(ss, tok, ',')) cfg.mu_grid.push_back(std::stod(tok));
        } else {
            cfg.mu_grid.clear();
            for (int i = 0; i < 10; ++i) cfg.mu_grid.push_back(0.01 + (0.5 - 0.01) * i / 9.0);
        }
        const MpMode mode = (m_mode == "full-bayes") ? MpMode::FullBayes : MpMode::PluginQuadrature;
        CsvWriter w("mu,method,mp,mc_se");
        for (const auto& row : run_mp_experiment(cfg, mode))
            w.row(row.mu, row.method, row.mp, row.mc_se);
        write_text(m_out, w.str());
        return 0;
    }

    if (*verify) {
        std::vector<CheckResult> checks;
        if (v_suite == "bounds") checks = verify_bounds();
        else if (v_suite == "concentration") checks = verify_concentration();
        else if (v_suite == "tweedie") checks = verify_tweedie();
        else if (v_suite == "mass") checks = verify_mass();
        else if (v_suite == "mse") checks = verify_mse();
        else if (v_suite == "all") checks = verify_all();
        else throw CLI::ValidationError("--suite", "expected bounds|concentration|tweedie|mass|mse|all");
        return print_checks(checks) == 0 ? 0 : 1;
    }

    if (*ingest) {
        std::optional<int> df;
        if (i_df > 0) df = i_df;
        const auto stats = read_tstats_csv(i_tstats, df);
        const auto z = t_to_z(stats);
        CsvWriter w("id,z");
        for (size_t i = 0; i < z.size(); ++i) w.row(stats.rows[i].id, z[i]);
        write_text(i_out, w.str());
        for (const auto& id : stats.rejected)
            std::fprintf(stderr, "rejected row: %s\n", id.c_str());
        return 0;
    }
    return 2;
}

}  // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const CLI::ParseError&) {
        return 2;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
