#ifndef LLREL_IO_HPP
#define LLREL_IO_HPP

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "json.hpp"

#include "llrel/classical.hpp"
#include "llrel/estimation.hpp"
#include "llrel/gof.hpp"
#include "llrel/interval.hpp"
#include "llrel/sample.hpp"
#include "llrel/study.hpp"

namespace llrel::io {

// Dataset format: one observation per line, `time[,status]` with status
// 1 = failure and 0 = censored; the status column may be omitted entirely
// (all failures).  Comma or whitespace separated, optional header line,
// LF or CRLF.  Parse problems carry the offending line number.
Sample parse_dataset(std::istream& in, const std::string& name = "");
Sample load_dataset(const std::filesystem::path& path);
void write_dataset(std::ostream& out, const Sample& sample);

struct SummaryStats {
    double min;
    double q1;
    double median;
    double mean;
    double q3;
    double max;
};

// Six-number summary of the observed times under the shared project
// quantile convention.
SummaryStats summarize(const Sample& sample);

// Fraction of observed times strictly greater than t (1 - ECDF).
double empirical_reliability(const Sample& sample, double t);

// Scenario file: a JSON array of objects mirroring ScenarioConfig.
// Required keys: n, t, alpha, beta, level.  Optional: censoring_prop,
// replicates, gpq_draws, bootstrap_reps, seed (defaults derive from
// default_base by array index).  Unknown keys are rejected.
std::vector<ScenarioConfig> parse_scenarios(std::istream& in, Seed default_base);
std::vector<ScenarioConfig> load_scenarios(const std::filesystem::path& path, Seed default_base);

// JSON fragments shared by the report documents; the machine-readable form
// is the stable surface, the text renderings are for the terminal.
nlohmann::json summary_json(const SummaryStats& s);
nlohmann::json fit_json(const FitResult& fit, double loglik_value);
nlohmann::json interval_json(const IntervalEstimate& est);
nlohmann::json gof_json(const GofReport& report);
nlohmann::json coverage_row_json(const CoverageResult& row);
nlohmann::json coverage_table_json(const std::vector<CoverageResult>& rows);

std::string render_summary(const SummaryStats& s);
std::string render_fit(const std::string& label, const FitResult& fit, double loglik_value);
std::string render_gof(const GofReport& report);
std::string render_interval_table(const std::vector<IntervalEstimate>& intervals,
                                  const std::vector<double>& empirical);
std::string render_coverage_table(const std::vector<CoverageResult>& rows);

} // namespace llrel::io

#endif
