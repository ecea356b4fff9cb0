#include "llrel/random.hpp"

#include <cmath>
#include <stdexcept>

namespace llrel {

namespace {

std::uint64_t splitmix64(std::uint64_t& state) {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}

std::uint64_t rotl(std::uint64_t x, int k) {
    return (x << k) | (x >> (64 - k));
}

} // namespace

Seed Seed::derive(std::uint64_t index) const {
    // Two splitmix64 finalizer passes over (value, index); stateless, so the
    // same (seed, index) pair always names the same substream.
    std::uint64_t s = value ^ (0x9E3779B97F4A7C15ULL * (index + 1));
    std::uint64_t out = splitmix64(s);
    out ^= splitmix64(s);
    return Seed{out};
}

Rng::Rng(Seed seed) {
    std::uint64_t s = seed.value;
    for (auto& word : state_)
        word = splitmix64(s);
}

std::uint64_t Rng::next_u64() {
    const std::uint64_t result = rotl(state_[0] + state_[3], 23) + state_[0];
    const std::uint64_t t = state_[1] << 17;
    state_[2] ^= state_[0];
    state_[3] ^= state_[1];
    state_[1] ^= state_[2];
    state_[0] ^= state_[3];
    state_[2] ^= t;
    state_[3] = rotl(state_[3], 45);
    return result;
}

double Rng::uniform01() {
    return (static_cast<double>(next_u64() >> 11) + 0.5) * 0x1.0p-53;
}

std::vector<double> sample_loglogistic(std::size_t n, const LogLogisticParams& p, Seed seed) {
    if (n == 0)
        throw std::invalid_argument("sample_loglogistic requires n >= 1");
    Rng rng(seed);
    std::vector<double> out(n);
    const double log_beta = std::log(p.beta);
    for (auto& t : out) {
        const double u = rng.uniform01();
        t = std::exp(log_beta + std::log(u / (1.0 - u)) / p.alpha);
    }
    return out;
}

std::vector<double> sample_std_logistic(std::size_t n, Seed seed) {
    if (n == 0)
        throw std::invalid_argument("sample_std_logistic requires n >= 1");
    Rng rng(seed);
    std::vector<double> out(n);
    for (auto& z : out) {
        const double u = rng.uniform01();
        z = std::log(u / (1.0 - u));
    }
    return out;
}

} // namespace llrel
