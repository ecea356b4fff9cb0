#ifndef LLREL_GOF_HPP
#define LLREL_GOF_HPP

#include <cstddef>

#include "llrel/estimation.hpp"
#include "llrel/sample.hpp"

namespace llrel {

// One-sample Kolmogorov-Smirnov statistic against the fitted log-logistic
// CDF, D = max_i max(i/n - F(t_(i)), F(t_(i)) - (i-1)/n).  Defined for
// complete samples only.
double ks_statistic(const Sample& sample, const LogLogisticParams& params);

// Asymptotic p-value: the complementary Kolmogorov CDF
//   Q(lambda) = 2 sum_{k>=1} (-1)^{k-1} exp(-2 k^2 lambda^2)
// at lambda = (sqrt(n) + 0.12 + 0.11/sqrt(n)) * d  (Stephens' small-sample
// correction), clipped to [0, 1].
double ks_pvalue(double d, std::size_t n);

// Exact p-value P(D_n >= d) from the Durbin matrix representation
// (Marsaglia-Tsang-Wang evaluation).  Preferred for small n, where the
// asymptotic series is off by a percent or two.
double ks_pvalue_exact(double d, std::size_t n);

struct GofReport {
    double statistic;
    double p_value;
    FitMethod fit_method;
    std::size_t n;
};

// KS test of the fitted model: exact p-value for n <= 100, asymptotic
// beyond.  Note the usual caveat: with parameters estimated from the same
// data the test is conservative.
GofReport ks_test(const Sample& sample, const FitResult& fit);

} // namespace llrel

#endif
