// llrel command line: point estimation, confidence intervals, goodness of
// fit and Monte Carlo coverage studies for log-logistic reliability data.
//
// Exit codes: 0 success, 2 usage error, 3 data error, 4 numerical failure.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <random>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "llrel/classical.hpp"
#include "llrel/datasets.hpp"
#include "llrel/errors.hpp"
#include "llrel/estimation.hpp"
#include "llrel/gof.hpp"
#include "llrel/gpq.hpp"
#include "llrel/io.hpp"
#include "llrel/study.hpp"
#include "llrel/version.hpp"

namespace {

using nlohmann::json;

constexpr int kExitUsage = 2;
constexpr int kExitData = 3;
constexpr int kExitNumeric = 4;

llrel::Seed resolve_seed(std::optional<std::uint64_t> seed_opt) {
    if (seed_opt)
        return llrel::Seed{*seed_opt};
    std::random_device rd;
    const std::uint64_t v =
        (static_cast<std::uint64_t>(rd()) << 32) ^ static_cast<std::uint64_t>(rd());
    std::cout << "seed: " << v << " (generated; pass --seed " << v << " to rerun)\n";
    return llrel::Seed{v};
}

unsigned default_workers() {
    const unsigned hw = std::thread::hardware_concurrency();
    return hw == 0 ? 1 : hw;
}

llrel::Sample load_data(const std::string& path) {
    return llrel::io::load_dataset(std::filesystem::path(path));
}

void write_json_report(const std::optional<std::string>& out_path, const json& doc) {
    if (!out_path)
        return;
    std::ofstream out(*out_path, std::ios::binary);
    if (!out)
        throw llrel::data_error("cannot write report file " + *out_path);
    out << doc.dump(2) << '\n';
}

struct Range {
    double lo = 0.0;
    double hi = 0.0;
};

Range parse_range(const std::string& text) {
    const auto sep = text.find(':');
    if (sep == std::string::npos)
        throw CLI::ValidationError("range must look like LO:HI, got '" + text + "'");
    Range r;
    try {
        r.lo = std::stod(text.substr(0, sep));
        r.hi = std::stod(text.substr(sep + 1));
    } catch (const std::exception&) {
        throw CLI::ValidationError("range must look like LO:HI, got '" + text + "'");
    }
    if (!(r.lo > 0.0) || !(r.hi > r.lo))
        throw CLI::ValidationError("range endpoints must satisfy 0 < LO < HI");
    return r;
}

int cmd_fit(const std::string& data_path, const std::string& method,
            const std::optional<std::string>& out_path) {
    const auto sample = load_data(data_path);
    const std::string name = std::filesystem::path(data_path).filename().string();

    json doc{{"llrel_version", LLREL_VERSION},
             {"command", "fit"},
             {"dataset", {{"name", name},
                          {"n", sample.size()},
                          {"censored", sample.censored_count()}}}};
    doc["summary"] = llrel::io::summary_json(llrel::io::summarize(sample));

    std::cout << "dataset " << name << " (n=" << sample.size() << ", censored "
              << sample.censored_count() << ")\n";
    std::cout << "summary: " << llrel::io::render_summary(llrel::io::summarize(sample)) << "\n";

    json fits = json::object();
    if (method == "lse" || method == "all") {
        const auto design = sample.has_censoring() ? llrel::plotting_design_censored(sample)
                                                   : llrel::plotting_design_complete(sample);
        const auto lse = llrel::lse_fit(design);
        const double ll = llrel::loglik(lse.params, sample);
        fits["lse"] = llrel::io::fit_json(lse, ll);
        std::cout << llrel::io::render_fit("LSE", lse, ll) << "\n";
    }
    if (method == "mle" || method == "all") {
        const auto mle = llrel::mle_fit(sample);
        const double ll = llrel::loglik(mle.params, sample);
        fits["mle"] = llrel::io::fit_json(mle, ll);
        std::cout << llrel::io::render_fit("MLE", mle, ll) << "\n";
    }
    doc["fits"] = fits;
    write_json_report(out_path, doc);
    return 0;
}

int cmd_ci(const std::string& data_path, std::vector<double> ts, double level,
           const std::string& method, std::size_t gpq_draws, std::size_t boot_reps,
           std::optional<std::uint64_t> seed_opt, unsigned workers,
           const std::optional<std::string>& out_path) {
    const auto sample = load_data(data_path);
    const std::string name = std::filesystem::path(data_path).filename().string();

    const bool want_gpq = method == "gpq" || method == "all";
    const bool want_boot = method == "boot" || method == "all";
    const bool want_wald = method == "wald" || method == "all";
    const bool stochastic = want_gpq || want_boot;
    const llrel::Seed seed =
        stochastic ? resolve_seed(seed_opt) : llrel::Seed{seed_opt.value_or(0)};

    json doc{{"llrel_version", LLREL_VERSION},
             {"command", "ci"},
             {"dataset", {{"name", name},
                          {"n", sample.size()},
                          {"censored", sample.censored_count()}}},
             {"provenance", {{"level", level},
                             {"gpq_draws", gpq_draws},
                             {"bootstrap_reps", boot_reps},
                             {"method", method}}}};
    if (stochastic)
        doc["provenance"]["seed"] = seed.value;
    doc["summary"] = llrel::io::summary_json(llrel::io::summarize(sample));

    json fits = json::object();
    std::optional<llrel::FitResult> lse;
    if (want_gpq) {
        const auto design = sample.has_censoring() ? llrel::plotting_design_censored(sample)
                                                   : llrel::plotting_design_complete(sample);
        lse = llrel::lse_fit(design);
        fits["lse"] = llrel::io::fit_json(*lse, llrel::loglik(lse->params, sample));
    }
    std::optional<llrel::FitResult> mle;
    std::optional<llrel::ObservedInformation> info;
    if (want_boot || want_wald) {
        mle = llrel::mle_fit(sample);
        fits["mle"] = llrel::io::fit_json(*mle, llrel::loglik(mle->params, sample));
        info = llrel::observed_information(mle->params, sample);
    }
    doc["fits"] = fits;

    if (!sample.has_censoring()) {
        json gof_rows = json::array();
        if (lse)
            gof_rows.push_back(llrel::io::gof_json(llrel::ks_test(sample, *lse)));
        if (mle)
            gof_rows.push_back(llrel::io::gof_json(llrel::ks_test(sample, *mle)));
        if (!gof_rows.empty())
            doc["gof"] = gof_rows;
    }

    std::optional<llrel::GpqDraws> draws;
    if (want_gpq)
        draws = llrel::gpq_draws(*lse, gpq_draws, seed.derive(1), workers);

    std::vector<llrel::IntervalEstimate> intervals;
    std::vector<double> empirical;
    json interval_rows = json::array();
    for (std::size_t i = 0; i < ts.size(); ++i) {
        const double t = ts[i];
        const double emp = llrel::io::empirical_reliability(sample, t);
        auto push = [&](const llrel::IntervalEstimate& est, const json& extra = json::object()) {
            intervals.push_back(est);
            empirical.push_back(emp);
            json row = llrel::io::interval_json(est);
            row["empirical_reliability"] = emp;
            for (const auto& [k, v] : extra.items())
                row[k] = v;
            interval_rows.push_back(row);
        };
        if (want_gpq) {
            const auto rel = llrel::gpq_transform(*draws, llrel::CiTarget::reliability, t);
            push(llrel::gpq_interval(rel, level, llrel::CiTarget::reliability, t),
                 json{{"estimate", llrel::ll_reliability(t, lse->params)},
                      {"gpq_rejections", draws->rejections}});
        }
        if (want_boot) {
            const auto run =
                llrel::bootstrap_reliability(t, sample, boot_reps, seed.derive(2).derive(i),
                                             workers);
            push(llrel::percentile_interval(run, level),
                 json{{"estimate", llrel::ll_reliability(t, mle->params)},
                      {"refit_failures", run.failures}});
        }
        if (want_wald)
            push(llrel::wald_interval_reliability(t, *mle, *info, level),
                 json{{"estimate", llrel::ll_reliability(t, mle->params)}});
    }
    doc["intervals"] = interval_rows;

    std::cout << "dataset " << name << " (n=" << sample.size() << ", censored "
              << sample.censored_count() << "), level " << level << "\n";
    std::cout << llrel::io::render_interval_table(intervals, empirical);
    write_json_report(out_path, doc);
    return 0;
}

int cmd_gof(const std::string& data_path, const std::string& fit_kind,
            const std::optional<std::string>& out_path) {
    const auto sample = load_data(data_path);
    const std::string name = std::filesystem::path(data_path).filename().string();

    json doc{{"llrel_version", LLREL_VERSION},
             {"command", "gof"},
             {"dataset", {{"name", name}, {"n", sample.size()}}}};
    json reports = json::array();

    auto run_one = [&](const llrel::FitResult& fit) {
        const auto rep = llrel::ks_test(sample, fit);
        reports.push_back(llrel::io::gof_json(rep));
        std::cout << llrel::io::render_gof(rep) << "\n";
    };
    if (fit_kind == "lse" || fit_kind == "all")
        run_one(llrel::lse_fit(llrel::plotting_design_complete(sample)));
    if (fit_kind == "mle" || fit_kind == "all")
        run_one(llrel::mle_fit(sample));

    doc["gof"] = reports;
    write_json_report(out_path, doc);
    return 0;
}

int cmd_simulate(const std::optional<std::string>& scenarios_path,
                 const std::optional<std::string>& preset,
                 std::optional<std::uint64_t> seed_opt, unsigned workers,
                 const std::optional<std::string>& out_path) {
    const llrel::Seed seed = resolve_seed(seed_opt);
    std::vector<llrel::ScenarioConfig> configs;
    if (scenarios_path)
        configs = llrel::io::load_scenarios(*scenarios_path, seed);
    else if (preset)
        configs = llrel::preset_scenarios(*preset, seed);

    const auto rows = llrel::run_table(configs, workers);

    json doc{{"llrel_version", LLREL_VERSION},
             {"command", "simulate"},
             {"provenance", {{"seed", seed.value},
                             {"preset", preset ? json(*preset) : json(nullptr)},
                             {"scenarios_file",
                              scenarios_path ? json(*scenarios_path) : json(nullptr)}}}};
    doc["rows"] = llrel::io::coverage_table_json(rows);

    std::cout << llrel::io::render_coverage_table(rows);
    write_json_report(out_path, doc);
    return 0;
}

int cmd_relgrid(std::vector<double> ts, const std::string& alpha_range,
                const std::string& beta_range, std::size_t steps,
                const std::optional<std::string>& out_path) {
    if (ts.empty())
        ts = {1.0, 5.0, 10.0};
    const Range ar = parse_range(alpha_range);
    const Range br = parse_range(beta_range);
    if (steps < 2)
        throw CLI::ValidationError("--steps must be at least 2");

    auto grid_value = [&](const Range& r, std::size_t i) {
        return r.lo + (r.hi - r.lo) * static_cast<double>(i) / static_cast<double>(steps - 1);
    };

    json rows = json::array();
    std::ostream& os = std::cout;
    if (!out_path)
        os << "t,alpha,beta,reliability\n";
    for (double t : ts)
        for (std::size_t i = 0; i < steps; ++i)
            for (std::size_t j = 0; j < steps; ++j) {
                const double a = grid_value(ar, i);
                const double b = grid_value(br, j);
                const double r = llrel::ll_reliability(t, llrel::LogLogisticParams(a, b));
                if (out_path)
                    rows.push_back(json{{"t", t}, {"alpha", a}, {"beta", b}, {"reliability", r}});
                else
                    os << t << ',' << a << ',' << b << ',' << r << '\n';
            }

    if (out_path) {
        json doc{{"llrel_version", LLREL_VERSION},
                 {"command", "relgrid"},
                 {"t", ts},
                 {"alpha_range", {{"lo", ar.lo}, {"hi", ar.hi}}},
                 {"beta_range", {{"lo", br.lo}, {"hi", br.hi}}},
                 {"steps", steps},
                 {"rows", rows}};
        write_json_report(out_path, doc);
        std::cout << "wrote " << rows.size() << " grid rows to " << *out_path << "\n";
    }
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"log-logistic reliability inference (LSE-GPQ, bootstrap and Wald intervals)"};
    app.require_subcommand(1);
    app.set_version_flag("--version", LLREL_VERSION);

    std::string data_path;
    std::string fit_method = "all";
    std::vector<double> ts;
    double level = 0.95;
    std::string ci_method = "all";
    std::size_t gpq_draws = 2000;
    std::size_t boot_reps = 2000;
    std::optional<std::uint64_t> seed_opt;
    unsigned workers = default_workers();
    std::optional<std::string> out_path;
    std::string gof_fit = "all";
    std::optional<std::string> scenarios_path;
    std::optional<std::string> preset;
    std::string alpha_range = "0.5:5";
    std::string beta_range = "0.5:5";
    std::size_t steps = 41;

    auto* fit = app.add_subcommand("fit", "point estimation (LSE and MLE)");
    fit->add_option("--data", data_path, "dataset file, time[,status] per line")->required();
    fit->add_option("--method", fit_method, "lse|mle|all")
        ->check(CLI::IsMember({"lse", "mle", "all"}));
    fit->add_option("--out", out_path, "write the JSON report here");

    auto* ci = app.add_subcommand("ci", "confidence intervals for R(t)");
    ci->add_option("--data", data_path, "dataset file")->required();
    ci->add_option("--t", ts, "evaluation time(s), repeatable")->required();
    ci->add_option("--level", level, "confidence level (default 0.95)");
    ci->add_option("--method", ci_method, "gpq|boot|wald|all")
        ->check(CLI::IsMember({"gpq", "boot", "wald", "all"}));
    ci->add_option("--gpq-draws", gpq_draws, "pivotal draws M (default 2000)");
    ci->add_option("--boot-reps", boot_reps, "bootstrap resamples B (default 2000)");
    ci->add_option("--seed", seed_opt, "RNG seed (generated and printed when omitted)");
    ci->add_option("--workers", workers, "worker threads");
    ci->add_option("--out", out_path, "write the JSON report here");

    auto* gof = app.add_subcommand("gof", "Kolmogorov-Smirnov goodness of fit");
    gof->add_option("--data", data_path, "dataset file (complete data only)")->required();
    gof->add_option("--fit", gof_fit, "lse|mle|all")->check(CLI::IsMember({"lse", "mle", "all"}));
    gof->add_option("--out", out_path, "write the JSON report here");

    auto* sim = app.add_subcommand("simulate", "Monte Carlo coverage study");
    auto* sopt = sim->add_option("--scenarios", scenarios_path, "scenario file (JSON array)");
    auto* popt = sim->add_option("--preset", preset,
                                 "table1|table2|table3 or the *-desk variants")
                     ->check(CLI::IsMember({"table1", "table2", "table3", "table1-desk",
                                            "table2-desk", "table3-desk"}));
    sopt->excludes(popt);
    sim->add_option("--seed", seed_opt, "RNG seed (generated and printed when omitted)");
    sim->add_option("--workers", workers, "worker threads");
    sim->add_option("--out", out_path, "write the JSON report here");

    auto* grid = app.add_subcommand("relgrid", "reliability values on a parameter grid");
    grid->add_option("--t", ts, "evaluation time(s), repeatable (default 1 5 10)");
    grid->add_option("--alpha-range", alpha_range, "shape range LO:HI (default 0.5:5)");
    grid->add_option("--beta-range", beta_range, "scale range LO:HI (default 0.5:5)");
    grid->add_option("--steps", steps, "grid points per axis (default 41)");
    grid->add_option("--out", out_path, "write the JSON report here");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        if (e.get_exit_code() == 0)
            return app.exit(e); // --help / --version
        app.exit(e);
        return kExitUsage;
    }

    try {
        if (fit->parsed())
            return cmd_fit(data_path, fit_method, out_path);
        if (ci->parsed())
            return cmd_ci(data_path, ts, level, ci_method, gpq_draws, boot_reps, seed_opt,
                          workers, out_path);
        if (gof->parsed())
            return cmd_gof(data_path, gof_fit, out_path);
        if (sim->parsed()) {
            if (!scenarios_path && !preset) {
                std::cerr << "simulate needs --scenarios or --preset\n";
                return kExitUsage;
            }
            return cmd_simulate(scenarios_path, preset, seed_opt, workers, out_path);
        }
        if (grid->parsed())
            return cmd_relgrid(ts, alpha_range, beta_range, steps, out_path);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const llrel::data_error& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const llrel::fit_error& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    } catch (const std::invalid_argument& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumeric;
    }
    return kExitUsage;
}
