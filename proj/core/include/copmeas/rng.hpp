#pragma once

#include <cstdint>

namespace copmeas {

/// Counter-based pseudo-random generator: output k is a fixed bit mix of
/// (seed, k). No hidden state beyond the counter, so streams are stable
/// across platforms and trivially reproducible from (seed, draw index).
class CounterRng {
public:
    explicit CounterRng(std::uint64_t seed) : seed_(seed) {}

    std::uint64_t next_u64();

    /// Uniform double in [0, 1) with 53 random bits.
    double next_unit();

    /// Standard normal via Box-Muller; generates pairs, caches the spare.
    double next_normal();

    /// Uniform integer in [0, bound), bound >= 1. Rejection sampling, unbiased.
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t seed_;
    std::uint64_t counter_ = 0;
    double cached_normal_ = 0.0;
    bool has_cached_normal_ = false;
};

/// Stateless mix of a seed and a counter (SplitMix64 finalizer).
std::uint64_t mix_u64(std::uint64_t seed, std::uint64_t counter);

/// Hash-combine for deriving independent sub-seeds, e.g. per experiment
/// replicate: derive_seed(seed, n, kappa_bits, replicate).
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b = 0,
                          std::uint64_t c = 0);

/// IEEE-754 bits of a double, for hashing real-valued parameters.
std::uint64_t double_bits(double x);

}  // namespace copmeas
