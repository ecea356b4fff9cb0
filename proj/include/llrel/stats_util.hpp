#ifndef LLREL_STATS_UTIL_HPP
#define LLREL_STATS_UTIL_HPP

#include <vector>

namespace llrel {

// Project-wide empirical quantile convention: linear interpolation between
// order statistics at position p*(m-1)+1 (one-based).  Used for GPQ and
// bootstrap intervals and for dataset summaries alike, so results from the
// different interval methods are directly comparable.
double empirical_quantile_sorted(const std::vector<double>& sorted, double p);
double empirical_quantile(std::vector<double> values, double p);

double mean(const std::vector<double>& values);

// Inverse standard normal CDF.  Acklam's rational approximation polished
// with one Halley step against erfc, accurate to ~1e-15.
double normal_quantile(double p);

// Order-independent accumulator (Neumaier variant of Kahan summation);
// the study harness uses it so aggregated interval lengths do not depend
// on how replicates were partitioned across workers.
class NeumaierSum {
public:
    void add(double v);
    double value() const { return sum_ + compensation_; }

private:
    double sum_ = 0.0;
    double compensation_ = 0.0;
};

} // namespace llrel

#endif
