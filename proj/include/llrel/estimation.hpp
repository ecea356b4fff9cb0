#ifndef LLREL_ESTIMATION_HPP
#define LLREL_ESTIMATION_HPP

#include <array>
#include <cstddef>
#include <optional>
#include <vector>

#include "llrel/distribution.hpp"
#include "llrel/sample.hpp"

namespace llrel {

// Benard's plotting positions (i - 0.3) / (n + 0.4), i = 1..n.
std::vector<double> benard_positions(std::size_t n);

// One step of the Kaplan-Meier CDF estimate: a distinct failure time with
// the number of failures there, the size of the risk set just before it,
// and the estimate F(t) right after the step.
struct KmStep {
    double time;
    std::size_t failures;
    std::size_t at_risk;
    double cdf;
};

// Kaplan-Meier estimate of the CDF under right censoring, evaluated at the
// distinct ordered failure times.  Censored observations tied with a failure
// time count as at risk for that failure (censored immediately after).
// With no censoring this reduces to the empirical CDF i/n exactly.
std::vector<KmStep> km_cdf_estimate(const Sample& sample);

// Probability-plot regression data: ordered failure log-times y against
// fixed logit regressors x = logit(p).  ranks records which order statistics
// of the full n-point sample the retained points are (0-based), which is
// what the GPQ engine needs to match logistic order statistics under
// censoring.
struct PlottingDesign {
    std::vector<double> y;         // ordered failure log-times
    std::vector<double> x;         // logit of plotting positions, strictly increasing
    std::vector<double> positions; // the p_i, strictly inside (0, 1)
    std::vector<std::size_t> ranks;
    std::size_t total_n = 0;

    PlottingDesign(std::vector<double> y_in, std::vector<double> positions_in,
                   std::vector<std::size_t> ranks_in, std::size_t total_n_in);

    std::size_t points() const { return y.size(); }
    double x_mean() const;
};

// Complete-data design with Benard positions.  Rejects censored samples.
PlottingDesign plotting_design_complete(const Sample& sample);

// Censored-data design.  Positions are midpoints between consecutive
// Kaplan-Meier CDF values at the failures (tied failures subdivide their
// step uniformly), so every position stays strictly inside (0, 1) and the
// uncensored case reduces to the Hazen positions (i - 0.5) / n.
PlottingDesign plotting_design_censored(const Sample& sample);

enum class FitMethod { lse, mle };

struct FitResult {
    LocScaleParams loc_scale;
    LogLogisticParams params;
    FitMethod method;
    std::optional<PlottingDesign> design; // present for LSE fits

    FitResult(LocScaleParams ls, FitMethod m, std::optional<PlottingDesign> d = std::nullopt);
};

// Least-squares fit of y on x: s = slope, mu = intercept, alpha = 1/s,
// beta = exp(mu).  Throws non_positive_slope when s <= 0 and
// degenerate_design when x carries no spread.
FitResult lse_fit(const PlottingDesign& design);

// Log-likelihood: sum of log-densities over failures plus log-reliabilities
// over censored observations.
double loglik(const LogLogisticParams& params, const Sample& sample);

// Gradient of loglik with respect to (log alpha, log beta).
std::array<double, 2> loglik_gradient_log(const LogLogisticParams& params, const Sample& sample);

// Maximum likelihood via Nelder-Mead in (log alpha, log beta) followed by a
// Newton polish, started from the least-squares fit when one is available.
// Throws non_convergence when the iteration budget (500) is exhausted or
// the iterates run off to the boundary of the parameter space.
FitResult mle_fit(const Sample& sample);

struct ObservedInformation {
    std::array<std::array<double, 2>, 2> matrix; // parameter order (alpha, beta)
    bool positive_definite;
    double condition; // ratio of absolute eigenvalues

    bool well_conditioned() const { return positive_definite && condition <= 1e12; }
};

// Negative Hessian of loglik at params, by central finite differences with
// relative step 1e-5, symmetrized as (H + H^T)/2.
ObservedInformation observed_information(const LogLogisticParams& params, const Sample& sample);

} // namespace llrel

#endif
