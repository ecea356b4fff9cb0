#include "llrel/gpq.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <stdexcept>

#include "llrel/errors.hpp"
#include "llrel/stats_util.hpp"

namespace llrel {

LogisticSlopeStats logistic_design_stats(const PlottingDesign& design,
                                         const std::vector<double>& z_sorted) {
    if (z_sorted.size() != design.total_n)
        throw std::invalid_argument("logistic sample size does not match the design");
    const double xbar = design.x_mean();

    NeumaierSum zsum;
    for (std::size_t rank : design.ranks)
        zsum.add(z_sorted[rank]);
    const double zbar = zsum.value() / static_cast<double>(design.ranks.size());

    double sxx = 0.0, sxz = 0.0;
    for (std::size_t i = 0; i < design.points(); ++i) {
        const double dx = design.x[i] - xbar;
        sxx += dx * dx;
        sxz += dx * (z_sorted[design.ranks[i]] - zbar);
    }
    return {sxz / sxx, zbar};
}

namespace {

constexpr std::size_t kMaxRedrawsPerDraw = 1000;

LogisticSlopeStats one_draw(const PlottingDesign& design, Seed draw_seed,
                            std::size_t& rejections) {
    Rng rng(draw_seed);
    std::vector<double> z(design.total_n);
    for (std::size_t attempt = 0; attempt < kMaxRedrawsPerDraw; ++attempt) {
        for (auto& v : z) {
            const double u = rng.uniform01();
            v = std::log(u / (1.0 - u));
        }
        std::sort(z.begin(), z.end());
        const auto stats = logistic_design_stats(design, z);
        if (stats.slope > 0.0)
            return stats;
        ++rejections;
    }
    throw excessive_rejections("a pivotal draw failed to produce a positive slope");
}

template <typename Fn>
void parallel_slots(std::size_t count, unsigned workers, Fn&& fn) {
    if (workers <= 1 || count < 2 * workers) {
        fn(0, count, 0);
        return;
    }
    const std::size_t chunk = (count + workers - 1) / workers;
    std::vector<std::future<void>> futs;
    for (unsigned w = 0; w < workers; ++w) {
        const std::size_t begin = std::min(count, static_cast<std::size_t>(w) * chunk);
        const std::size_t end = std::min(count, begin + chunk);
        if (begin == end)
            continue;
        futs.push_back(std::async(std::launch::async,
                                  [&fn, begin, end, w] { fn(begin, end, w); }));
    }
    for (auto& f : futs)
        f.get();
}

} // namespace

std::vector<LogisticSlopeStats> simulate_design_stats(const PlottingDesign& design, std::size_t M,
                                                      Seed seed, unsigned workers) {
    std::vector<LogisticSlopeStats> out(M);
    std::vector<std::size_t> rejections(std::max(1u, workers), 0);
    parallel_slots(M, workers, [&](std::size_t begin, std::size_t end, std::size_t w) {
        for (std::size_t j = begin; j < end; ++j)
            out[j] = one_draw(design, seed.derive(j), rejections[w]);
    });
    return out;
}

GpqDraws gpq_draws(const FitResult& fit, std::size_t M, Seed seed, unsigned workers) {
    if (fit.method != FitMethod::lse || !fit.design)
        throw std::invalid_argument("pivotal draws require a least-squares fit with its design");
    if (M < 100)
        throw std::invalid_argument("pivotal draws require M >= 100");

    const PlottingDesign& design = *fit.design;
    const double xbar = design.x_mean();
    const double s_hat = fit.loc_scale.s;
    const double mu_hat = fit.loc_scale.mu;

    GpqDraws draws{std::vector<double>(M), std::vector<double>(M), 0, design};
    std::vector<std::size_t> rejections(std::max(1u, workers), 0);

    parallel_slots(M, workers, [&](std::size_t begin, std::size_t end, std::size_t w) {
        for (std::size_t j = begin; j < end; ++j) {
            const auto stats = one_draw(design, seed.derive(j), rejections[w]);
            const double g_s = s_hat / stats.slope;
            draws.g_s[j] = g_s;
            draws.g_mu[j] = mu_hat - g_s * (stats.mean - xbar * stats.slope);
        }
    });

    for (std::size_t r : rejections)
        draws.rejections += r;
    if (2 * draws.rejections > M + draws.rejections)
        throw excessive_rejections("more than half of the pivotal draws were rejected; "
                                   "the design is too degenerate for the pivotal argument");
    return draws;
}

std::vector<double> gpq_transform(const GpqDraws& draws, CiTarget target,
                                  std::optional<double> t) {
    std::vector<double> out(draws.count());
    switch (target) {
    case CiTarget::alpha:
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] = 1.0 / draws.g_s[j];
        break;
    case CiTarget::beta:
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] = std::exp(draws.g_mu[j]);
        break;
    case CiTarget::reliability: {
        if (!t || *t <= 0.0)
            throw std::invalid_argument("reliability transform requires a positive time t");
        const double log_t = std::log(*t);
        for (std::size_t j = 0; j < out.size(); ++j)
            out[j] = logistic_cdf(-(log_t - draws.g_mu[j]) / draws.g_s[j]);
        break;
    }
    }
    return out;
}

IntervalEstimate gpq_interval(const std::vector<double>& transformed, double level,
                              CiTarget target, std::optional<double> t) {
    if (transformed.size() < 100)
        throw std::invalid_argument("interval construction requires at least 100 draws");
    if (!(level > 0.0 && level < 1.0))
        throw std::domain_error("confidence level must lie strictly inside (0, 1)");
    std::vector<double> sorted(transformed);
    std::sort(sorted.begin(), sorted.end());
    return IntervalEstimate{empirical_quantile_sorted(sorted, (1.0 - level) / 2.0),
                            empirical_quantile_sorted(sorted, (1.0 + level) / 2.0),
                            level,
                            CiMethod::lse_gpq,
                            target,
                            t};
}

} // namespace llrel
