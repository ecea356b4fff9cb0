#include "doctest.h"

#include <algorithm>
#include <cmath>
#include <vector>

#include "llrel/distribution.hpp"
#include "llrel/random.hpp"

using namespace llrel;

namespace {

// KS distance between a sample and a reference CDF.
double ks_distance(std::vector<double> sample, const LogLogisticParams& p) {
    std::sort(sample.begin(), sample.end());
    const double n = static_cast<double>(sample.size());
    double d = 0.0;
    for (std::size_t i = 0; i < sample.size(); ++i) {
        const double f = ll_cdf(sample[i], p);
        d = std::max(d, std::max((i + 1) / n - f, f - i / n));
    }
    return d;
}

} // namespace

TEST_SUITE_BEGIN("random");

TEST_CASE("seed derivation is stateless and spreads") {
    const Seed base{123};
    CHECK(base.derive(0).value == base.derive(0).value);
    CHECK(base.derive(0).value != base.derive(1).value);
    CHECK(base.derive(1).value != Seed{124}.derive(1).value);
}

TEST_CASE("uniform01 stays strictly inside (0,1)") {
    Rng rng(Seed{99});
    for (int i = 0; i < 100000; ++i) {
        const double u = rng.uniform01();
        CHECK(u > 0.0);
        CHECK(u < 1.0);
    }
}

TEST_CASE("log-logistic sampling is deterministic") {
    const LogLogisticParams p(2.0, 1.0);
    const auto a = sample_loglogistic(5, p, Seed{42});
    const auto b = sample_loglogistic(5, p, Seed{42});
    CHECK(a == b);
    const auto c = sample_loglogistic(5, p, Seed{43});
    CHECK(a != c);
}

TEST_CASE("log-logistic sample has the right median") {
    const LogLogisticParams p(2.0, 1.0);
    const auto sample = sample_loglogistic(10000, p, Seed{7});
    const double frac_below =
        static_cast<double>(std::count_if(sample.begin(), sample.end(),
                                          [](double t) { return t <= 1.0; })) /
        10000.0;
    CHECK(frac_below == doctest::Approx(0.5).epsilon(0.04)); // 0.5 +/- 0.02
}

TEST_CASE("log-logistic sample matches the cdf") {
    const LogLogisticParams p(5.0, 2.0);
    const auto sample = sample_loglogistic(10000, p, Seed{8});
    CHECK(ks_distance(sample, p) < 0.02);
}

TEST_CASE("standard logistic sampling") {
    const auto a = sample_std_logistic(100, Seed{5});
    const auto b = sample_std_logistic(100, Seed{5});
    CHECK(a == b);

    const auto big = sample_std_logistic(10000, Seed{6});
    double total = 0.0;
    std::size_t nonpositive = 0;
    for (double z : big) {
        total += z;
        if (z <= 0.0)
            ++nonpositive;
    }
    CHECK(std::abs(total / 10000.0) < 0.1);
    CHECK(std::abs(static_cast<double>(nonpositive) / 10000.0 - 0.5) < 0.02);
}

TEST_CASE("log-transform law") {
    // (log T - log beta) * alpha should be standard logistic.
    const LogLogisticParams p(5.0, 2.0);
    auto sample = sample_loglogistic(10000, p, Seed{11});
    for (auto& t : sample)
        t = std::exp((std::log(t) - std::log(p.beta)) * p.alpha); // maps to log-logistic(1,1)
    CHECK(ks_distance(sample, LogLogisticParams(1.0, 1.0)) < 0.02);
}

TEST_SUITE_END();
