#include "llrel/sample.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace llrel {

Sample::Sample(std::vector<double> times, std::vector<bool> censored,
               std::optional<double> censor_threshold)
    : times_(std::move(times)), censored_(std::move(censored)),
      censor_threshold_(censor_threshold) {
    if (times_.empty())
        throw std::invalid_argument("Sample must contain at least one observation");
    if (times_.size() != censored_.size())
        throw std::invalid_argument("times and censoring indicators differ in length");
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!std::isfinite(times_[i]) || times_[i] <= 0.0)
            throw std::invalid_argument("observation " + std::to_string(i + 1) +
                                        " is not a positive finite time");
        if (!censored_[i])
            ++failures_;
    }
}

Sample Sample::complete(std::vector<double> times) {
    std::vector<bool> censored(times.size(), false);
    return Sample(std::move(times), std::move(censored));
}

std::optional<double> Sample::infer_type1_threshold() const {
    if (censor_threshold_)
        return censor_threshold_;
    if (!has_censoring())
        return std::nullopt;
    double common = -1.0;
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!censored_[i])
            continue;
        if (common < 0.0)
            common = times_[i];
        else if (times_[i] != common)
            return std::nullopt;
    }
    return common;
}

std::vector<double> Sample::sorted_failure_times() const {
    std::vector<double> out;
    out.reserve(failures_);
    for (std::size_t i = 0; i < times_.size(); ++i)
        if (!censored_[i])
            out.push_back(times_[i]);
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace llrel
