#include "llrel/classical.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <limits>
#include <optional>
#include <stdexcept>

#include "llrel/errors.hpp"
#include "llrel/stats_util.hpp"

namespace llrel {

std::array<double, 2> reliability_gradient(double t, const LogLogisticParams& params) {
    if (!(t > 0.0))
        throw std::domain_error("reliability gradient requires t > 0");
    const double log_ratio = std::log(t) - std::log(params.beta);
    // w/(1+w)^2 = F * R, computed through the logistic CDF to stay finite
    // for extreme t/beta ratios.
    const double z = params.alpha * log_ratio;
    const double f = logistic_cdf(z);
    const double r = logistic_cdf(-z);
    const double fr = f * r;
    return {-fr * log_ratio, params.alpha * fr / params.beta};
}

IntervalEstimate wald_interval_reliability(double t, const FitResult& mle,
                                           const ObservedInformation& info, double level) {
    if (!(level > 0.0 && level < 1.0))
        throw std::domain_error("confidence level must lie strictly inside (0, 1)");
    if (!info.well_conditioned())
        throw singular_information("observed information matrix is singular or indefinite");

    const double det = info.matrix[0][0] * info.matrix[1][1] - info.matrix[0][1] * info.matrix[1][0];
    if (det == 0.0 || !std::isfinite(det))
        throw singular_information("observed information matrix is not invertible");

    const auto g = reliability_gradient(t, mle.params);
    // g^T I^{-1} g via the adjugate of the 2x2 matrix.
    const double quad = (g[0] * (info.matrix[1][1] * g[0] - info.matrix[0][1] * g[1]) +
                         g[1] * (info.matrix[0][0] * g[1] - info.matrix[1][0] * g[0])) /
                        det;
    const double se = std::sqrt(std::max(0.0, quad));
    const double z = normal_quantile((1.0 + level) / 2.0);
    const double r_hat = ll_reliability(t, mle.params);

    IntervalEstimate est{r_hat - z * se, r_hat + z * se,    level,
                         CiMethod::asymptotic, CiTarget::reliability, t};
    if (est.lower < 0.0) {
        est.lower = 0.0;
        est.clamped = true;
    }
    if (est.upper > 1.0) {
        est.upper = 1.0;
        est.clamped = true;
    }
    return est;
}

namespace {

constexpr int kMaxAttemptsPerResample = 50;

// Simulate one resample from the fitted model, re-censoring at the original
// type-I threshold when one applies, and refit by maximum likelihood.
double resample_estimate(double t, const LogLogisticParams& fitted, std::size_t n,
                         std::optional<double> threshold, Seed resample_seed,
                         std::size_t& failures) {
    Rng rng(resample_seed);
    std::vector<double> times(n);
    std::vector<bool> censored(n);
    const double log_beta = std::log(fitted.beta);
    for (int attempt = 0; attempt < kMaxAttemptsPerResample; ++attempt) {
        for (std::size_t i = 0; i < n; ++i) {
            const double u = rng.uniform01();
            double life = std::exp(log_beta + std::log(u / (1.0 - u)) / fitted.alpha);
            if (threshold && life > *threshold) {
                times[i] = *threshold;
                censored[i] = true;
            } else {
                times[i] = life;
                censored[i] = false;
            }
        }
        try {
            const auto refit = mle_fit(Sample(times, censored, threshold));
            return ll_reliability(t, refit.params);
        } catch (const fit_error&) {
            ++failures;
        }
    }
    return std::numeric_limits<double>::quiet_NaN();
}

} // namespace

BootstrapRun bootstrap_reliability(double t, const Sample& sample, std::size_t B, Seed seed,
                                   unsigned workers) {
    if (B < 100)
        throw std::invalid_argument("parametric bootstrap requires B >= 100");
    if (!(t > 0.0))
        throw std::domain_error("bootstrap requires t > 0");

    const auto fit = mle_fit(sample);
    std::optional<double> threshold;
    if (sample.has_censoring()) {
        threshold = sample.infer_type1_threshold();
        if (!threshold)
            throw std::invalid_argument(
                "censored bootstrap needs a single type-I censoring threshold; the censored "
                "times disagree and none was recorded");
    }

    BootstrapRun run;
    run.estimates.resize(B);
    run.resamples = B;
    run.t = t;

    const unsigned lanes = std::max(1u, workers);
    std::vector<std::size_t> failures(lanes, 0);
    const std::size_t chunk = (B + lanes - 1) / lanes;
    std::vector<std::future<void>> futs;
    for (unsigned w = 0; w < lanes; ++w) {
        const std::size_t begin = std::min<std::size_t>(B, static_cast<std::size_t>(w) * chunk);
        const std::size_t end = std::min<std::size_t>(B, begin + chunk);
        if (begin == end)
            continue;
        auto body = [&, begin, end, w] {
            for (std::size_t b = begin; b < end; ++b)
                run.estimates[b] = resample_estimate(t, fit.params, sample.size(), threshold,
                                                     seed.derive(b), failures[w]);
        };
        if (lanes == 1)
            body();
        else
            futs.push_back(std::async(std::launch::async, body));
    }
    for (auto& f : futs)
        f.get();

    for (std::size_t c : failures)
        run.failures += c;
    const bool exhausted_slot =
        std::any_of(run.estimates.begin(), run.estimates.end(),
                    [](double v) { return std::isnan(v); });
    run.flagged = exhausted_slot ||
                  run.failures * 20 > run.resamples; // failure rate above 5%
    return run;
}

IntervalEstimate percentile_interval(const BootstrapRun& run, double level) {
    if (run.flagged)
        throw fit_error("bootstrap run is flagged; too many refit failures");
    if (!(level > 0.0 && level < 1.0))
        throw std::domain_error("confidence level must lie strictly inside (0, 1)");
    std::vector<double> sorted(run.estimates);
    std::sort(sorted.begin(), sorted.end());
    return IntervalEstimate{empirical_quantile_sorted(sorted, (1.0 - level) / 2.0),
                            empirical_quantile_sorted(sorted, (1.0 + level) / 2.0),
                            level,
                            CiMethod::parametric_bootstrap,
                            CiTarget::reliability,
                            run.t};
}

} // namespace llrel
