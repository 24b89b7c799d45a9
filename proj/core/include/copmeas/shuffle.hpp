#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "copmeas/measure_report.hpp"
#include "copmeas/sample_set.hpp"

namespace copmeas {

/// Shuffle permutation pi of {1..n}, stored 0-based, with the inversion
/// count and displacement statistics cached at construction.
class Permutation {
public:
    /// Validates a 1-based image sequence (as parsed from the CLI).
    static Permutation from_one_based(const std::vector<int>& mapping);
    static Permutation identity(std::size_t n);
    static Permutation reversal(std::size_t n);
    static Permutation random(std::size_t n, std::uint64_t seed);

    std::size_t order() const { return map_.size(); }
    /// Image of strip i, both 0-based.
    std::size_t image(std::size_t i) const { return map_[i]; }
    std::span<const std::size_t> mapping() const { return map_; }

    std::uint64_t inversions() const { return inversions_; }
    /// d_i = pi(i) - i; identical in 0- and 1-based indexing.
    long long displacement(std::size_t i) const {
        return static_cast<long long>(map_[i]) - static_cast<long long>(i);
    }

private:
    explicit Permutation(std::vector<std::size_t> map);
    std::vector<std::size_t> map_;
    std::uint64_t inversions_ = 0;
};

/// Exact inversion count of an integer sequence via merge counting,
/// O(n log n).
std::uint64_t count_inversions(std::span<const std::size_t> values);

struct DisplacementStats {
    long long sum = 0;           // sum d_i, always 0 for a permutation
    long long sum_squares = 0;   // sum d_i^2
    long long weighted_sum = 0;  // sum d_i (2i - 1) with 1-based i, equals -sum_squares
};

DisplacementStats displacement_stats(const Permutation& p);

/// Closed-form measures of the straight equal-width shuffle-of-min copula:
/// tau = 1 - 4 N_inv / n^2, rho = 1 - 6 sum d_i^2 / n^3, xi = 1, and the
/// tail coefficients are corner-segment indicators.
MeasureReport shuffle_measures(const Permutation& p);

/// C_pi(u, v) as an O(n) clamp sum over the n support segments.
double eval_shuffle_cdf(const Permutation& p, double u, double v);

/// Exact sampler: U uniform, strip k from U, V = U - (k - pi(k))/n.
SampleSet sample_shuffle(const Permutation& p, std::size_t count, std::uint64_t seed);

}  // namespace copmeas
