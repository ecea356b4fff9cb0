#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "llrel/datasets.hpp"
#include "llrel/errors.hpp"
#include "llrel/estimation.hpp"
#include "llrel/gpq.hpp"
#include "llrel/random.hpp"
#include "llrel/stats_util.hpp"

using namespace llrel;

namespace {

// Build responses y = mu + s * z_(rank) on a design and fit them.
FitResult synthetic_fit(const PlottingDesign& design, const std::vector<double>& z_sorted,
                        double mu, double s) {
    std::vector<double> y(design.points());
    for (std::size_t i = 0; i < design.points(); ++i)
        y[i] = mu + s * z_sorted[design.ranks[i]];
    return lse_fit(PlottingDesign(y, design.positions, design.ranks, design.total_n));
}

} // namespace

TEST_SUITE_BEGIN("gpq");

TEST_CASE("pivotal reduction recovers the generating parameters exactly") {
    // Property (testable form): data built as y = mu + s z_(i) on a fixed
    // design, evaluated with that same z, returns exactly (mu, s).
    const double mu = 1.3, s = 0.45;

    SUBCASE("complete design") {
        const auto design = plotting_design_complete(grinder_dataset());
        auto z = sample_std_logistic(design.total_n, Seed{400});
        std::sort(z.begin(), z.end());
        const auto fit = synthetic_fit(design, z, mu, s);
        const auto stats = logistic_design_stats(design, z);

        const double g_s = fit.loc_scale.s / stats.slope;
        const double g_mu =
            fit.loc_scale.mu - g_s * (stats.mean - design.x_mean() * stats.slope);
        CHECK(g_s == doctest::Approx(s).epsilon(1e-10));
        CHECK(g_mu == doctest::Approx(mu).epsilon(1e-10));
    }

    SUBCASE("censored design") {
        const Sample censored({1.0, 2.0, 3.0, 4.0, 5.0, 6.0},
                              {false, false, true, false, false, true});
        const auto design = plotting_design_censored(censored);
        auto z = sample_std_logistic(design.total_n, Seed{401});
        std::sort(z.begin(), z.end());
        const auto fit = synthetic_fit(design, z, mu, s);
        const auto stats = logistic_design_stats(design, z);

        const double g_s = fit.loc_scale.s / stats.slope;
        const double g_mu =
            fit.loc_scale.mu - g_s * (stats.mean - design.x_mean() * stats.slope);
        CHECK(g_s == doctest::Approx(s).epsilon(1e-10));
        CHECK(g_mu == doctest::Approx(mu).epsilon(1e-10));
    }
}

TEST_CASE("draws are deterministic in the seed") {
    const auto fit = lse_fit(plotting_design_complete(grinder_dataset()));
    const auto a = gpq_draws(fit, 2000, Seed{17});
    const auto b = gpq_draws(fit, 2000, Seed{17});
    CHECK(a.g_s == b.g_s);
    CHECK(a.g_mu == b.g_mu);
    CHECK(a.rejections == b.rejections);
    const auto c = gpq_draws(fit, 2000, Seed{18});
    CHECK(a.g_s != c.g_s);
}

TEST_CASE("draws are independent of worker partitioning") {
    const auto fit = lse_fit(plotting_design_complete(grinder_dataset()));
    const auto seq = gpq_draws(fit, 500, Seed{23}, 1);
    const auto par = gpq_draws(fit, 500, Seed{23}, 3);
    CHECK(seq.g_s == par.g_s);
    CHECK(seq.g_mu == par.g_mu);
}

TEST_CASE("slope stream never looks at the responses") {
    // Two different datasets of the same size share the design regressors;
    // the simulated slope/mean stream must be byte-identical.
    const auto d1 = plotting_design_complete(grinder_dataset());
    std::vector<double> other{5.0, 1.0, 80.0, 2.5, 120.0, 3.3, 9.0, 14.0, 0.4, 44.0, 7.7, 31.0};
    const auto d2 = plotting_design_complete(Sample::complete(other));
    REQUIRE(d1.x == d2.x);

    const auto s1 = simulate_design_stats(d1, 300, Seed{9});
    const auto s2 = simulate_design_stats(d2, 300, Seed{9});
    for (std::size_t j = 0; j < 300; ++j) {
        CHECK(s1[j].slope == s2[j].slope);
        CHECK(s1[j].mean == s2[j].mean);
    }
}

TEST_CASE("transform closed forms") {
    GpqDraws draws{{0.5}, {0.0}, 0, plotting_design_complete(grinder_dataset())};
    // gpq_transform requires nothing about M here; exercise the maps directly.
    const auto alpha = gpq_transform(draws, CiTarget::alpha);
    CHECK(alpha[0] == doctest::Approx(2.0).epsilon(1e-14));
    const auto beta = gpq_transform(draws, CiTarget::beta);
    CHECK(beta[0] == doctest::Approx(1.0).epsilon(1e-14));
    const auto rel = gpq_transform(draws, CiTarget::reliability, 1.0);
    CHECK(rel[0] == doctest::Approx(0.5).epsilon(1e-14));
    CHECK_THROWS(gpq_transform(draws, CiTarget::reliability));
}

TEST_CASE("gpq sanity on simulated data") {
    // Median of the alpha pivot should sit inside the central spread of the
    // least-squares estimator across replicates.
    const LogLogisticParams truth(2.0, 1.0);
    std::vector<double> alpha_hats;
    for (std::size_t r = 0; r < 200; ++r) {
        const auto data = Sample::complete(sample_loglogistic(10, truth, Seed{6000}.derive(r)));
        alpha_hats.push_back(lse_fit(plotting_design_complete(data)).params.alpha);
    }
    std::sort(alpha_hats.begin(), alpha_hats.end());
    const double lo = empirical_quantile_sorted(alpha_hats, 0.025);
    const double hi = empirical_quantile_sorted(alpha_hats, 0.975);

    const auto data = Sample::complete(sample_loglogistic(10, truth, Seed{42}));
    const auto fit = lse_fit(plotting_design_complete(data));
    const auto draws = gpq_draws(fit, 2000, Seed{43});
    const double med = empirical_quantile(gpq_transform(draws, CiTarget::alpha), 0.5);
    CHECK(med > lo);
    CHECK(med < hi);
}

TEST_CASE("reliability draws stay strictly inside (0,1)") {
    const auto fit = lse_fit(plotting_design_complete(reactor_pump_dataset()));
    const auto draws = gpq_draws(fit, 1000, Seed{3});
    for (double g : draws.g_s)
        CHECK(g > 0.0);
    for (double t : {0.01, 0.614, 50.0}) {
        const auto rel = gpq_transform(draws, CiTarget::reliability, t);
        for (double v : rel) {
            CHECK(v > 0.0);
            CHECK(v < 1.0);
        }
        const auto ci = gpq_interval(rel, 0.95, CiTarget::reliability, t);
        CHECK(ci.lower > 0.0);
        CHECK(ci.upper < 1.0);
        CHECK(!ci.clamped);
    }
}

TEST_CASE("equivariance under time rescaling") {
    const auto& base_data = grinder_dataset();
    std::vector<double> scaled(base_data.times());
    const double k = 12.5;
    for (auto& t : scaled)
        t *= k;

    const auto f1 = lse_fit(plotting_design_complete(base_data));
    const auto f2 = lse_fit(plotting_design_complete(Sample::complete(scaled)));
    const auto d1 = gpq_draws(f1, 400, Seed{77});
    const auto d2 = gpq_draws(f2, 400, Seed{77});
    for (std::size_t j = 0; j < 400; ++j) {
        CHECK(d2.g_s[j] == doctest::Approx(d1.g_s[j]).epsilon(1e-12));
        CHECK(std::exp(d2.g_mu[j]) ==
              doctest::Approx(k * std::exp(d1.g_mu[j])).epsilon(1e-10));
    }
}

TEST_CASE("interval construction") {
    std::vector<double> constant(200, 0.37);
    const auto flat = gpq_interval(constant, 0.9);
    CHECK(flat.lower == doctest::Approx(0.37));
    CHECK(flat.upper == doctest::Approx(0.37));

    std::vector<double> grid(1000);
    for (std::size_t i = 0; i < 1000; ++i)
        grid[i] = static_cast<double>(i + 1);
    const auto ci = gpq_interval(grid, 0.90);
    CHECK(std::abs(ci.lower - 50.5) <= 1.0);
    CHECK(std::abs(ci.upper - 950.5) <= 1.0);

    CHECK_THROWS(gpq_interval(grid, 0.0));
    CHECK_THROWS(gpq_interval(grid, 1.0));
    CHECK_THROWS(gpq_interval(std::vector<double>(10, 1.0), 0.9));
}

TEST_CASE("intervals nest across levels") {
    const auto fit = lse_fit(plotting_design_complete(grinder_dataset()));
    const auto draws = gpq_draws(fit, 2000, Seed{5});
    const auto rel = gpq_transform(draws, CiTarget::reliability, 96.05);
    const auto i90 = gpq_interval(rel, 0.90);
    const auto i95 = gpq_interval(rel, 0.95);
    CHECK(i95.lower <= i90.lower);
    CHECK(i95.upper >= i90.upper);
}

TEST_CASE("grinder interval at the median time") {
    const auto fit = lse_fit(plotting_design_complete(grinder_dataset()));
    const auto draws = gpq_draws(fit, 2000, Seed{101});
    const auto rel = gpq_transform(draws, CiTarget::reliability, 96.05);
    const auto ci = gpq_interval(rel, 0.95);
    CHECK(std::abs(ci.lower - 0.136) <= 0.03);
    CHECK(std::abs(ci.upper - 0.579) <= 0.03);
}

TEST_CASE("gpq rejects a non-lse fit") {
    const auto mle = mle_fit(grinder_dataset());
    CHECK_THROWS(gpq_draws(mle, 500, Seed{1}));
    const auto lse = lse_fit(plotting_design_complete(grinder_dataset()));
    CHECK_THROWS(gpq_draws(lse, 50, Seed{1})); // M too small
}

TEST_SUITE_END();
