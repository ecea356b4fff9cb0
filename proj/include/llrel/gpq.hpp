#ifndef LLREL_GPQ_HPP
#define LLREL_GPQ_HPP

#include <cstddef>
#include <optional>
#include <vector>

#include "llrel/estimation.hpp"
#include "llrel/interval.hpp"
#include "llrel/random.hpp"

namespace llrel {

// Slope and mean of a sorted standard logistic sample regressed on a
// design's fixed regressors (only the order statistics at the design's
// ranks enter).  These are the auxiliary quantities the pivotal argument
// is built on; they never look at the observed responses.
struct LogisticSlopeStats {
    double slope; // s(Z)
    double mean;  // mean of the retained Z order statistics
};

LogisticSlopeStats logistic_design_stats(const PlottingDesign& design,
                                         const std::vector<double>& z_sorted);

// The simulated slope/mean stream for a design: draw j regenerates a full
// standard logistic sample of the design's original size from seed.derive(j),
// sorts it and regresses the retained order statistics on x.  Pure in
// (design, M, seed), so any partitioning over workers gives the same stream.
std::vector<LogisticSlopeStats> simulate_design_stats(const PlottingDesign& design, std::size_t M,
                                                      Seed seed, unsigned workers = 1);

// Monte Carlo draws of the pivotal quantities G_s and G_mu:
//   G_s  = s_hat / s(Z),
//   G_mu = mu_hat - G_s * (mean(Z) - x_bar * s(Z)).
struct GpqDraws {
    std::vector<double> g_s;  // strictly positive
    std::vector<double> g_mu;
    std::size_t rejections = 0; // draws redrawn because s(Z) <= 0
    PlottingDesign design;

    std::size_t count() const { return g_s.size(); }
};

GpqDraws gpq_draws(const FitResult& fit, std::size_t M, Seed seed, unsigned workers = 1);

// Elementwise mapping of the draws to the requested target:
// alpha -> 1/G_s, beta -> exp(G_mu), reliability -> R(t; G_alpha, G_beta).
std::vector<double> gpq_transform(const GpqDraws& draws, CiTarget target,
                                  std::optional<double> t = std::nullopt);

// Equal-tailed interval from the empirical quantiles of the transformed
// draws, using the shared project quantile convention.
IntervalEstimate gpq_interval(const std::vector<double>& transformed, double level,
                              CiTarget target = CiTarget::reliability,
                              std::optional<double> t = std::nullopt);

} // namespace llrel

#endif
