#include "llrel/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <sstream>

#include "llrel/errors.hpp"
#include "llrel/stats_util.hpp"

namespace llrel::io {

namespace {

std::string location(const std::string& name, std::size_t line) {
    return (name.empty() ? std::string("dataset") : name) + ", line " + std::to_string(line);
}

bool parse_double(std::string_view token, double& out) {
    const char* begin = token.data();
    const char* end = begin + token.size();
    const auto res = std::from_chars(begin, end, out);
    return res.ec == std::errc() && res.ptr == end;
}

std::vector<std::string_view> split_fields(std::string_view line) {
    std::vector<std::string_view> fields;
    std::size_t i = 0;
    while (i < line.size()) {
        while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == ','))
            ++i;
        std::size_t start = i;
        while (i < line.size() && line[i] != ' ' && line[i] != '\t' && line[i] != ',')
            ++i;
        if (i > start)
            fields.push_back(line.substr(start, i - start));
    }
    return fields;
}

} // namespace

Sample parse_dataset(std::istream& in, const std::string& name) {
    std::vector<double> times;
    std::vector<bool> censored;
    std::string raw;
    std::size_t line_no = 0;
    bool first_content_line = true;

    while (std::getline(in, raw)) {
        ++line_no;
        if (!raw.empty() && raw.back() == '\r')
            raw.pop_back();
        const auto fields = split_fields(raw);
        if (fields.empty())
            continue;

        double time = 0.0;
        if (!parse_double(fields[0], time)) {
            if (first_content_line) { // header row
                first_content_line = false;
                continue;
            }
            throw data_error(location(name, line_no) + ": cannot parse time '" +
                             std::string(fields[0]) + "'");
        }
        first_content_line = false;

        if (!(std::isfinite(time) && time > 0.0))
            throw data_error(location(name, line_no) + ": time must be positive, got " +
                             std::string(fields[0]));
        bool is_censored = false;
        if (fields.size() >= 2) {
            if (fields[1] == "0")
                is_censored = true;
            else if (fields[1] == "1")
                is_censored = false;
            else
                throw data_error(location(name, line_no) + ": status must be 0 (censored) or 1 "
                                 "(failure), got '" + std::string(fields[1]) + "'");
        }
        if (fields.size() > 2)
            throw data_error(location(name, line_no) + ": expected at most two columns");
        times.push_back(time);
        censored.push_back(is_censored);
    }
    if (times.empty())
        throw data_error((name.empty() ? std::string("dataset") : name) +
                         ": no observations found");
    try {
        return Sample(std::move(times), std::move(censored));
    } catch (const std::invalid_argument& e) {
        throw data_error((name.empty() ? std::string("dataset") : name) + ": " + e.what());
    }
}

Sample load_dataset(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cannot open dataset file " + path.string());
    return parse_dataset(in, path.filename().string());
}

void write_dataset(std::ostream& out, const Sample& sample) {
    out << "time,status\n";
    char buf[32];
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const auto res = std::to_chars(buf, buf + sizeof(buf), sample.time(i));
        out.write(buf, res.ptr - buf);
        out << (sample.is_censored(i) ? ",0" : ",1") << '\n';
    }
}

SummaryStats summarize(const Sample& sample) {
    std::vector<double> sorted(sample.times());
    std::sort(sorted.begin(), sorted.end());
    return SummaryStats{sorted.front(),
                        empirical_quantile_sorted(sorted, 0.25),
                        empirical_quantile_sorted(sorted, 0.50),
                        mean(sorted),
                        empirical_quantile_sorted(sorted, 0.75),
                        sorted.back()};
}

double empirical_reliability(const Sample& sample, double t) {
    std::size_t above = 0;
    for (double v : sample.times())
        if (v > t)
            ++above;
    return static_cast<double>(above) / static_cast<double>(sample.size());
}

namespace {

const char* kScenarioKeys[] = {"n",          "t",         "alpha",          "beta",
                               "level",      "censoring_prop",
                               "replicates", "gpq_draws", "bootstrap_reps", "seed"};

ScenarioConfig scenario_from_json(const nlohmann::json& obj, Seed default_seed,
                                  std::size_t index) {
    if (!obj.is_object())
        throw data_error("scenario " + std::to_string(index + 1) + " must be a JSON object");
    for (const auto& [key, value] : obj.items()) {
        (void)value;
        if (std::find_if(std::begin(kScenarioKeys), std::end(kScenarioKeys),
                         [&](const char* k) { return key == k; }) == std::end(kScenarioKeys))
            throw data_error("scenario " + std::to_string(index + 1) + ": unknown key '" + key +
                             "'");
    }
    for (const char* required : {"n", "t", "alpha", "beta", "level"})
        if (!obj.contains(required))
            throw data_error("scenario " + std::to_string(index + 1) + ": missing key '" +
                             std::string(required) + "'");

    ScenarioConfig c;
    c.n = obj.at("n").get<std::size_t>();
    c.t = obj.at("t").get<double>();
    c.alpha = obj.at("alpha").get<double>();
    c.beta = obj.at("beta").get<double>();
    c.level = obj.at("level").get<double>();
    c.censoring_prop = obj.value("censoring_prop", 0.0);
    c.replicates = obj.value("replicates", std::size_t{1000});
    c.gpq_draws = obj.value("gpq_draws", std::size_t{2000});
    c.bootstrap_reps = obj.value("bootstrap_reps", std::size_t{2000});
    c.seed = obj.contains("seed") ? Seed{obj.at("seed").get<std::uint64_t>()}
                                  : default_seed.derive(index);
    try {
        c.validate();
    } catch (const std::invalid_argument& e) {
        throw data_error("scenario " + std::to_string(index + 1) + ": " + e.what());
    }
    return c;
}

} // namespace

std::vector<ScenarioConfig> parse_scenarios(std::istream& in, Seed default_base) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(in);
    } catch (const nlohmann::json::parse_error& e) {
        throw data_error(std::string("scenario file is not valid JSON: ") + e.what());
    }
    if (!doc.is_array() || doc.empty())
        throw data_error("scenario file must be a non-empty JSON array of scenario objects");
    std::vector<ScenarioConfig> out;
    out.reserve(doc.size());
    for (std::size_t i = 0; i < doc.size(); ++i)
        out.push_back(scenario_from_json(doc[i], default_base, i));
    return out;
}

std::vector<ScenarioConfig> load_scenarios(const std::filesystem::path& path, Seed default_base) {
    std::ifstream in(path);
    if (!in)
        throw data_error("cannot open scenario file " + path.string());
    return parse_scenarios(in, default_base);
}

nlohmann::json summary_json(const SummaryStats& s) {
    return nlohmann::json{{"min", s.min}, {"q1", s.q1},       {"median", s.median},
                          {"mean", s.mean}, {"q3", s.q3},     {"max", s.max}};
}

nlohmann::json fit_json(const FitResult& fit, double loglik_value) {
    return nlohmann::json{{"method", fit.method == FitMethod::lse ? "lse" : "mle"},
                          {"alpha", fit.params.alpha},
                          {"beta", fit.params.beta},
                          {"mu", fit.loc_scale.mu},
                          {"s", fit.loc_scale.s},
                          {"loglik", loglik_value}};
}

nlohmann::json interval_json(const IntervalEstimate& est) {
    nlohmann::json j{{"method", to_string(est.method)}, {"target", to_string(est.target)},
                     {"lower", est.lower},              {"upper", est.upper},
                     {"length", est.length()},          {"level", est.level},
                     {"clamped", est.clamped}};
    if (est.t)
        j["t"] = *est.t;
    return j;
}

nlohmann::json gof_json(const GofReport& report) {
    return nlohmann::json{{"fit", report.fit_method == FitMethod::lse ? "lse" : "mle"},
                          {"statistic", report.statistic},
                          {"p_value", report.p_value},
                          {"n", report.n}};
}

nlohmann::json coverage_row_json(const CoverageResult& row) {
    auto method = [&](const MethodTally& m) {
        return nlohmann::json{{"covered", m.covered},
                              {"failures", m.failures},
                              {"coverage", m.coverage(row.config.replicates)},
                              {"mean_length", m.mean_length}};
    };
    nlohmann::json j{{"n", row.config.n},
                     {"t", row.config.t},
                     {"alpha", row.config.alpha},
                     {"beta", row.config.beta},
                     {"level", row.config.level},
                     {"censoring_prop", row.config.censoring_prop},
                     {"replicates", row.config.replicates},
                     {"gpq_draws", row.config.gpq_draws},
                     {"bootstrap_reps", row.config.bootstrap_reps},
                     {"seed", row.config.seed.value},
                     {"true_reliability", row.true_reliability},
                     {"flagged", row.flagged},
                     {"methods",
                      {{"lse-gpq", method(row.gpq)}, {"pb", method(row.pb)}, {"ai", method(row.ai)}}}};
    if (row.censor_threshold)
        j["censor_threshold"] = *row.censor_threshold;
    return j;
}

nlohmann::json coverage_table_json(const std::vector<CoverageResult>& rows) {
    nlohmann::json arr = nlohmann::json::array();
    for (const auto& row : rows)
        arr.push_back(coverage_row_json(row));
    return arr;
}

namespace {

std::string fixed(double v, int digits) {
    std::ostringstream os;
    os << std::fixed << std::setprecision(digits) << v;
    return os.str();
}

} // namespace

std::string render_summary(const SummaryStats& s) {
    std::ostringstream os;
    os << "min " << fixed(s.min, 3) << "  q1 " << fixed(s.q1, 3) << "  median "
       << fixed(s.median, 3) << "  mean " << fixed(s.mean, 3) << "  q3 " << fixed(s.q3, 3)
       << "  max " << fixed(s.max, 3);
    return os.str();
}

std::string render_fit(const std::string& label, const FitResult& fit, double loglik_value) {
    std::ostringstream os;
    os << label << ": alpha=" << fixed(fit.params.alpha, 4) << " beta=" << fixed(fit.params.beta, 4)
       << "  (mu=" << fixed(fit.loc_scale.mu, 4) << ", s=" << fixed(fit.loc_scale.s, 4)
       << ")  loglik=" << fixed(loglik_value, 4);
    return os.str();
}

std::string render_gof(const GofReport& report) {
    std::ostringstream os;
    os << (report.fit_method == FitMethod::lse ? "LSE" : "MLE") << ": D = "
       << fixed(report.statistic, 4) << ", p-value = " << fixed(report.p_value, 4)
       << " (n = " << report.n << ")";
    return os.str();
}

std::string render_interval_table(const std::vector<IntervalEstimate>& intervals,
                                  const std::vector<double>& empirical) {
    std::ostringstream os;
    os << "      t    empirical   method     " << std::setw(6) << "level"
       << "   interval            length\n";
    for (std::size_t i = 0; i < intervals.size(); ++i) {
        const auto& est = intervals[i];
        os << std::setw(11) << fixed(est.t.value_or(0.0), 3) << "   " << std::setw(6)
           << (i < empirical.size() ? fixed(empirical[i], 3) : std::string(6, ' ')) << "   "
           << std::setw(8) << to_string(est.method) << "   " << std::setw(5) << fixed(est.level, 2)
           << "   (" << fixed(est.lower, 3) << ", " << fixed(est.upper, 3) << ")      "
           << fixed(est.length(), 3) << (est.clamped ? "  [clamped]" : "") << '\n';
    }
    return os.str();
}

std::string render_coverage_table(const std::vector<CoverageResult>& rows) {
    std::ostringstream os;
    os << "  n      t  shape  scale   cens  level    LSE-GPQ       PB       AI\n";
    for (const auto& row : rows) {
        const auto& c = row.config;
        os << std::setw(3) << c.n << "  " << std::setw(5) << fixed(c.t, 2) << "  " << std::setw(5)
           << fixed(c.alpha, 1) << "  " << std::setw(5) << fixed(c.beta, 1) << "  " << std::setw(4)
           << fixed(100.0 * c.censoring_prop, 0) << "%  " << std::setw(5) << fixed(c.level, 2)
           << "    " << fixed(row.gpq.coverage(c.replicates), 3) << "    " << std::setw(5)
           << fixed(row.pb.coverage(c.replicates), 3) << "    " << std::setw(5)
           << fixed(row.ai.coverage(c.replicates), 3);
        if (row.gpq.failures || row.pb.failures || row.ai.failures)
            os << "   [failures " << row.gpq.failures << "/" << row.pb.failures << "/"
               << row.ai.failures << "]";
        if (row.flagged)
            os << " [flagged]";
        os << '\n';
    }
    return os.str();
}

} // namespace llrel::io
