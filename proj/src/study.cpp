#include "llrel/study.hpp"

#include <cmath>
#include <future>
#include <stdexcept>

#include "llrel/classical.hpp"
#include "llrel/errors.hpp"
#include "llrel/estimation.hpp"
#include "llrel/gpq.hpp"
#include "llrel/sample.hpp"
#include "llrel/stats_util.hpp"

namespace llrel {

void ScenarioConfig::validate() const {
    if (n < 3)
        throw std::invalid_argument("scenario needs n >= 3");
    if (!(t > 0.0))
        throw std::invalid_argument("scenario needs t > 0");
    LogLogisticParams check(alpha, beta); // validates positivity
    (void)check;
    if (!(level > 0.0 && level < 1.0))
        throw std::invalid_argument("scenario level must lie strictly inside (0, 1)");
    if (!(censoring_prop >= 0.0 && censoring_prop < 1.0))
        throw std::invalid_argument("censoring proportion must lie in [0, 1)");
    if (replicates < 1 || gpq_draws < 1 || bootstrap_reps < 1)
        throw std::invalid_argument("replicates, gpq_draws and bootstrap_reps must be >= 1");
}

double censoring_threshold(const ScenarioConfig& config) {
    if (!(config.censoring_prop > 0.0))
        throw std::invalid_argument("censoring threshold is undefined for complete data");
    return ll_quantile(1.0 - config.censoring_prop, config.true_params());
}

namespace {

Sample simulate_sample(const ScenarioConfig& config, Seed data_seed) {
    const auto lifetimes = sample_loglogistic(config.n, config.true_params(), data_seed);
    if (config.censoring_prop == 0.0)
        return Sample::complete(lifetimes);
    const double c = censoring_threshold(config);
    std::vector<double> times(config.n);
    std::vector<bool> censored(config.n);
    for (std::size_t i = 0; i < config.n; ++i) {
        censored[i] = lifetimes[i] > c;
        times[i] = censored[i] ? c : lifetimes[i];
    }
    return Sample(std::move(times), std::move(censored), c);
}

} // namespace

ReplicateOutcome run_replicate(const ScenarioConfig& config, std::size_t replicate_index) {
    config.validate();
    const Seed rep_seed = config.seed.derive(replicate_index);
    const Sample sample = simulate_sample(config, rep_seed.derive(0));
    const double true_r = ll_reliability(config.t, config.true_params());

    ReplicateOutcome out;

    // LSE-GPQ
    try {
        const auto design = sample.has_censoring() ? plotting_design_censored(sample)
                                                   : plotting_design_complete(sample);
        const auto lse = lse_fit(design);
        const auto draws = gpq_draws(lse, config.gpq_draws, rep_seed.derive(1));
        const auto rel = gpq_transform(draws, CiTarget::reliability, config.t);
        out.gpq.interval = gpq_interval(rel, config.level, CiTarget::reliability, config.t);
        out.gpq.covered = out.gpq.interval->contains(true_r);
    } catch (const fit_error&) {
        out.gpq.failed = true;
    }

    // Asymptotic (delta-method Wald)
    std::optional<FitResult> mle;
    try {
        mle = mle_fit(sample);
        const auto info = observed_information(mle->params, sample);
        out.ai.interval = wald_interval_reliability(config.t, *mle, info, config.level);
        out.ai.covered = out.ai.interval->contains(true_r);
    } catch (const fit_error&) {
        out.ai.failed = true;
    }

    // Parametric bootstrap
    try {
        if (!mle)
            throw fit_error("bootstrap skipped: no MLE for the replicate");
        const auto run =
            bootstrap_reliability(config.t, sample, config.bootstrap_reps, rep_seed.derive(2));
        out.pb.interval = percentile_interval(run, config.level);
        out.pb.covered = out.pb.interval->contains(true_r);
    } catch (const fit_error&) {
        out.pb.failed = true;
    }

    return out;
}

CoverageResult run_scenario(const ScenarioConfig& config, unsigned workers) {
    config.validate();

    std::vector<ReplicateOutcome> slots(config.replicates);
    const unsigned lanes = std::max(1u, workers);
    if (lanes <= 1 || config.replicates < 2 * lanes) {
        for (std::size_t i = 0; i < config.replicates; ++i)
            slots[i] = run_replicate(config, i);
    } else {
        const std::size_t chunk = (config.replicates + lanes - 1) / lanes;
        std::vector<std::future<void>> futs;
        for (unsigned w = 0; w < lanes; ++w) {
            const std::size_t begin =
                std::min<std::size_t>(config.replicates, static_cast<std::size_t>(w) * chunk);
            const std::size_t end = std::min<std::size_t>(config.replicates, begin + chunk);
            if (begin == end)
                continue;
            futs.push_back(std::async(std::launch::async, [&, begin, end] {
                for (std::size_t i = begin; i < end; ++i)
                    slots[i] = run_replicate(config, i);
            }));
        }
        for (auto& f : futs)
            f.get();
    }

    CoverageResult result;
    result.config = config;
    result.true_reliability = ll_reliability(config.t, config.true_params());
    if (config.censoring_prop > 0.0)
        result.censor_threshold = censoring_threshold(config);

    auto reduce = [&](MethodTally& tally, auto member) {
        NeumaierSum lengths;
        std::size_t successes = 0;
        for (const auto& slot : slots) {
            const auto& m = slot.*member;
            if (m.failed) {
                ++tally.failures;
                continue;
            }
            ++successes;
            if (m.covered)
                ++tally.covered;
            lengths.add(m.interval->length());
        }
        tally.mean_length = successes == 0 ? 0.0 : lengths.value() / static_cast<double>(successes);
    };
    reduce(result.gpq, &ReplicateOutcome::gpq);
    reduce(result.pb, &ReplicateOutcome::pb);
    reduce(result.ai, &ReplicateOutcome::ai);

    const std::size_t limit = config.replicates / 10;
    result.flagged = result.gpq.failures > limit || result.pb.failures > limit ||
                     result.ai.failures > limit;
    return result;
}

std::vector<CoverageResult> run_table(const std::vector<ScenarioConfig>& configs,
                                      unsigned workers) {
    if (configs.empty())
        throw std::invalid_argument("run_table requires at least one scenario");
    std::vector<CoverageResult> rows;
    rows.reserve(configs.size());
    for (const auto& config : configs)
        rows.push_back(run_scenario(config, workers));
    return rows;
}

std::vector<ScenarioConfig> preset_scenarios(const std::string& name, Seed base_seed) {
    const bool desk = name.size() > 5 && name.substr(name.size() - 5) == "-desk";
    const std::string table = desk ? name.substr(0, name.size() - 5) : name;

    ScenarioConfig proto;
    proto.replicates = desk ? 500 : 1000;
    proto.gpq_draws = desk ? 1000 : 2000;
    proto.bootstrap_reps = desk ? 500 : 2000;

    const std::array<std::pair<double, double>, 4> shapes{{{2, 1}, {2, 2}, {5, 1}, {5, 2}}};
    std::vector<ScenarioConfig> cells;
    if (table == "table1" || table == "table2") {
        proto.level = table == "table1" ? 0.90 : 0.95;
        proto.censoring_prop = 0.0;
        for (std::size_t n : {std::size_t{10}, std::size_t{20}})
            for (double t : {1.0, 2.0})
                for (const auto& [a, b] : shapes) {
                    ScenarioConfig c = proto;
                    c.n = n;
                    c.t = t;
                    c.alpha = a;
                    c.beta = b;
                    cells.push_back(c);
                }
    } else if (table == "table3") {
        proto.level = 0.95;
        proto.n = 10;
        for (double t : {1.0, 2.0})
            for (const auto& [a, b] : shapes)
                for (double prop : {0.2, 0.5}) {
                    ScenarioConfig c = proto;
                    c.t = t;
                    c.alpha = a;
                    c.beta = b;
                    c.censoring_prop = prop;
                    cells.push_back(c);
                }
    } else {
        throw std::invalid_argument("unknown preset '" + name + "'");
    }
    for (std::size_t i = 0; i < cells.size(); ++i)
        cells[i].seed = base_seed.derive(i);
    return cells;
}

} // namespace llrel
