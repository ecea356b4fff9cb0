#ifndef LLREL_SAMPLE_HPP
#define LLREL_SAMPLE_HPP

#include <cstddef>
#include <optional>
#include <vector>

namespace llrel {

// Observed lifetimes with per-observation right-censoring indicators.
// Times must be positive; how many failures an operation needs is enforced
// by the operation itself (regression wants 3, the MLE 2, Kaplan-Meier 1).
//
// For samples produced by type-I censoring the threshold can be recorded so
// the parametric bootstrap can re-apply it.
class Sample {
public:
    explicit Sample(std::vector<double> times, std::vector<bool> censored,
                    std::optional<double> censor_threshold = std::nullopt);

    static Sample complete(std::vector<double> times);

    std::size_t size() const { return times_.size(); }
    std::size_t failure_count() const { return failures_; }
    std::size_t censored_count() const { return times_.size() - failures_; }
    bool has_censoring() const { return failures_ != times_.size(); }

    double time(std::size_t i) const { return times_[i]; }
    bool is_censored(std::size_t i) const { return censored_[i]; }
    const std::vector<double>& times() const { return times_; }
    const std::vector<bool>& censored() const { return censored_; }

    std::optional<double> censor_threshold() const { return censor_threshold_; }

    // Recorded threshold if present, otherwise the common value of all
    // censored observations (the type-I pattern); nullopt when the censored
    // times disagree or there is no censoring.
    std::optional<double> infer_type1_threshold() const;

    std::vector<double> sorted_failure_times() const;

private:
    std::vector<double> times_;
    std::vector<bool> censored_;
    std::optional<double> censor_threshold_;
    std::size_t failures_ = 0;
};

} // namespace llrel

#endif
