#ifndef LLREL_STUDY_HPP
#define LLREL_STUDY_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "llrel/distribution.hpp"
#include "llrel/interval.hpp"
#include "llrel/random.hpp"

namespace llrel {

// One cell of a coverage study: sample from log-logistic(alpha, beta),
// optionally type-I censor, build all three intervals for R(t) at the
// nominal level, and count which ones cover the true value.
struct ScenarioConfig {
    std::size_t n = 10;
    double t = 1.0;
    double alpha = 2.0;
    double beta = 1.0;
    double level = 0.90;
    double censoring_prop = 0.0; // 0 means complete data
    std::size_t replicates = 1000;
    std::size_t gpq_draws = 2000;
    std::size_t bootstrap_reps = 2000;
    Seed seed{0};

    void validate() const;
    LogLogisticParams true_params() const { return LogLogisticParams(alpha, beta); }
};

// Type-I censoring threshold placed at the (1 - censoring_prop) quantile of
// the true distribution, so the expected censored fraction matches the label.
double censoring_threshold(const ScenarioConfig& config);

struct MethodTally {
    std::size_t covered = 0;
    std::size_t failures = 0; // replicates where the method could not produce an interval
    double mean_length = 0.0; // over successful replicates

    std::size_t successes(std::size_t replicates) const { return replicates - failures; }
    double coverage(std::size_t replicates) const {
        const std::size_t denom = successes(replicates);
        return denom == 0 ? 0.0 : static_cast<double>(covered) / static_cast<double>(denom);
    }
};

struct CoverageResult {
    ScenarioConfig config;
    double true_reliability = 0.0;
    std::optional<double> censor_threshold;
    MethodTally gpq;
    MethodTally pb;
    MethodTally ai;
    bool flagged = false; // some method failed on more than 10% of replicates
};

struct ReplicateOutcome {
    struct MethodOutcome {
        std::optional<IntervalEstimate> interval;
        bool covered = false;
        bool failed = false;
    };
    MethodOutcome gpq;
    MethodOutcome pb;
    MethodOutcome ai;
};

// One replicate, a pure function of (config, replicate_index).  The data,
// GPQ and bootstrap substreams derive from config.seed.derive(index) with
// sub-indices 0, 1 and 2.  Method failures (too few failures after
// censoring, non-convergence, singular information) are recorded, never
// thrown.
ReplicateOutcome run_replicate(const ScenarioConfig& config, std::size_t replicate_index);

// Aggregate `replicates` replicates.  Deterministic in config.seed and
// independent of the worker count: per-replicate results land in indexed
// slots and are reduced sequentially.
CoverageResult run_scenario(const ScenarioConfig& config, unsigned workers = 1);

std::vector<CoverageResult> run_table(const std::vector<ScenarioConfig>& configs,
                                      unsigned workers = 1);

// Scenario grids for the bundled simulation presets.  table1 and table2 are
// the 16-cell complete-data grids at nominal levels 0.90 and 0.95; table3 is
// the 16-cell type-I censored grid (n = 10, 20%/50% censoring, level 0.95).
// The "-desk" variants shrink the workload from r=1000, M=2000, B=2000 to
// r=500, M=1000, B=500.  Per-cell seeds derive from base_seed by cell index.
std::vector<ScenarioConfig> preset_scenarios(const std::string& name, Seed base_seed);

} // namespace llrel

#endif
