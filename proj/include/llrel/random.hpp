#ifndef LLREL_RANDOM_HPP
#define LLREL_RANDOM_HPP

#include <array>
#include <cstdint>
#include <vector>

#include "llrel/distribution.hpp"

namespace llrel {

// Every stochastic routine in the library is a pure function of a Seed.
//
// Substreams (per replicate, per bootstrap resample, per GPQ draw) are
// obtained with derive(index), a stateless splitmix64-based mix of the
// parent seed and the index.  This is the single seed-splitting rule used
// throughout the project; it makes Monte Carlo runs independent of how the
// work is partitioned across threads.
struct Seed {
    std::uint64_t value = 0;

    Seed derive(std::uint64_t index) const;
};

// xoshiro256++ (Blackman & Vigna), seeded by expanding the 64-bit seed with
// splitmix64.  Chosen over std::mt19937_64 because the uniform *doubles*
// we need are generated by an explicit, platform-independent mapping rather
// than an unspecified std::uniform_real_distribution.
class Rng {
public:
    explicit Rng(Seed seed);

    std::uint64_t next_u64();

    // Uniform on the open interval (0, 1): (x >> 11 + 0.5) * 2^-53.
    // Never returns 0 or 1, so logit() and inverse-CDF transforms are safe.
    double uniform01();

private:
    std::array<std::uint64_t, 4> state_;
};

// i.i.d. log-logistic draws via inverse transform, beta * (U/(1-U))^(1/alpha);
// one uniform per draw, in stream order.
std::vector<double> sample_loglogistic(std::size_t n, const LogLogisticParams& p, Seed seed);

// i.i.d. standard logistic draws, logit(U).
std::vector<double> sample_std_logistic(std::size_t n, Seed seed);

} // namespace llrel

#endif
