#ifndef LLREL_CLASSICAL_HPP
#define LLREL_CLASSICAL_HPP

#include <array>
#include <cstddef>
#include <vector>

#include "llrel/estimation.hpp"
#include "llrel/interval.hpp"
#include "llrel/random.hpp"

namespace llrel {

// Analytic gradient of the reliability function with respect to
// (alpha, beta):  with w = (t/beta)^alpha,
//   dR/dalpha = -w log(t/beta) / (1+w)^2,
//   dR/dbeta  =  alpha w / (beta (1+w)^2).
std::array<double, 2> reliability_gradient(double t, const LogLogisticParams& params);

// Delta-method Wald interval for R(t) on the plain scale,
// R_hat +/- z * sqrt(grad^T I^{-1} grad), endpoints clamped to [0, 1]
// (clamping is recorded on the estimate).
IntervalEstimate wald_interval_reliability(double t, const FitResult& mle,
                                           const ObservedInformation& info, double level);

struct BootstrapRun {
    std::vector<double> estimates; // R(t; theta*) per resample, all in [0, 1]
    std::size_t resamples = 0;     // B
    std::size_t failures = 0;      // refits that failed and were redrawn
    bool flagged = false;          // failure rate exceeded 5%
    double t = 0.0;
};

// Parametric bootstrap: B resamples of the original size simulated from the
// fitted model (re-censored at the recorded type-I threshold when the sample
// is censored), each refit by maximum likelihood and mapped to R(t).
// Resample b draws from seed.derive(b), so a B1-run is a prefix of a B2-run
// and parallel execution matches sequential execution exactly.
BootstrapRun bootstrap_reliability(double t, const Sample& sample, std::size_t B, Seed seed,
                                   unsigned workers = 1);

// Equal-tailed percentile interval from the bootstrap estimates.
IntervalEstimate percentile_interval(const BootstrapRun& run, double level);

} // namespace llrel

#endif
