#ifndef LLREL_ERRORS_HPP
#define LLREL_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace llrel {

// Base class for every failure of a fitting or resampling procedure.
// Harness code catches this to tally per-method failures without
// swallowing programming errors.
class fit_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

class too_few_failures : public fit_error {
public:
    too_few_failures(std::size_t got, std::size_t need, const std::string& what_for)
        : fit_error(what_for + " needs at least " + std::to_string(need) +
                    " failure observations, got " + std::to_string(got)) {}
};

class degenerate_design : public fit_error {
public:
    using fit_error::fit_error;
};

// The least-squares slope came out non-positive: the data are inconsistent
// with any log-logistic model under this design.
class non_positive_slope : public fit_error {
public:
    explicit non_positive_slope(double slope)
        : fit_error("least-squares slope " + std::to_string(slope) + " is not positive"),
          slope_(slope) {}
    double slope() const { return slope_; }

private:
    double slope_;
};

class non_convergence : public fit_error {
public:
    non_convergence(const std::string& msg, double last_alpha, double last_beta)
        : fit_error(msg + " (last iterate alpha=" + std::to_string(last_alpha) +
                    ", beta=" + std::to_string(last_beta) + ")"),
          last_alpha_(last_alpha), last_beta_(last_beta) {}
    double last_alpha() const { return last_alpha_; }
    double last_beta() const { return last_beta_; }

private:
    double last_alpha_;
    double last_beta_;
};

class singular_information : public fit_error {
public:
    using fit_error::fit_error;
};

class excessive_rejections : public fit_error {
public:
    using fit_error::fit_error;
};

// Dataset / scenario-file problems; the CLI maps these to exit code 3.
class data_error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

} // namespace llrel

#endif
