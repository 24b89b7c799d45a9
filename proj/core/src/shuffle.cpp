#include "copmeas/shuffle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "copmeas/error.hpp"
#include "copmeas/rng.hpp"

namespace copmeas {

namespace {

std::uint64_t merge_count(std::vector<std::size_t>& v, std::vector<std::size_t>& scratch,
                          std::size_t lo, std::size_t hi) {
    if (hi - lo <= 1) return 0;
    const std::size_t mid = lo + (hi - lo) / 2;
    std::uint64_t inv = merge_count(v, scratch, lo, mid) + merge_count(v, scratch, mid, hi);
    std::size_t a = lo, b = mid, out = lo;
    while (a < mid && b < hi) {
        if (v[a] <= v[b]) {
            scratch[out++] = v[a++];
        } else {
            inv += mid - a;  // v[a..mid) are all greater than v[b]
            scratch[out++] = v[b++];
        }
    }
    while (a < mid) scratch[out++] = v[a++];
    while (b < hi) scratch[out++] = v[b++];
    std::copy(scratch.begin() + static_cast<std::ptrdiff_t>(lo),
              scratch.begin() + static_cast<std::ptrdiff_t>(hi),
              v.begin() + static_cast<std::ptrdiff_t>(lo));
    return inv;
}

}  // namespace

std::uint64_t count_inversions(std::span<const std::size_t> values) {
    std::vector<std::size_t> v(values.begin(), values.end());
    std::vector<std::size_t> scratch(v.size());
    return merge_count(v, scratch, 0, v.size());
}

Permutation::Permutation(std::vector<std::size_t> map) : map_(std::move(map)) {
    inversions_ = count_inversions(map_);
}

Permutation Permutation::from_one_based(const std::vector<int>& mapping) {
    if (mapping.empty()) throw Error("InvalidPermutation", "empty permutation");
    const std::size_t n = mapping.size();
    std::vector<std::size_t> map(n);
    std::vector<bool> seen(n, false);
    for (std::size_t i = 0; i < n; ++i) {
        const int v = mapping[i];
        if (v < 1 || static_cast<std::size_t>(v) > n) {
            throw Error("InvalidPermutation", "value " + std::to_string(v) +
                                                  " outside 1.." + std::to_string(n));
        }
        if (seen[static_cast<std::size_t>(v) - 1]) {
            throw Error("InvalidPermutation", "value " + std::to_string(v) + " repeats");
        }
        seen[static_cast<std::size_t>(v) - 1] = true;
        map[i] = static_cast<std::size_t>(v) - 1;
    }
    return Permutation(std::move(map));
}

Permutation Permutation::identity(std::size_t n) {
    if (n == 0) throw Error("InvalidPermutation", "empty permutation");
    std::vector<std::size_t> map(n);
    std::iota(map.begin(), map.end(), std::size_t{0});
    return Permutation(std::move(map));
}

Permutation Permutation::reversal(std::size_t n) {
    if (n == 0) throw Error("InvalidPermutation", "empty permutation");
    std::vector<std::size_t> map(n);
    for (std::size_t i = 0; i < n; ++i) map[i] = n - 1 - i;
    return Permutation(std::move(map));
}

Permutation Permutation::random(std::size_t n, std::uint64_t seed) {
    if (n == 0) throw Error("InvalidPermutation", "empty permutation");
    std::vector<std::size_t> map(n);
    std::iota(map.begin(), map.end(), std::size_t{0});
    CounterRng rng(seed);
    for (std::size_t i = n; i > 1; --i) std::swap(map[i - 1], map[rng.next_below(i)]);
    return Permutation(std::move(map));
}

DisplacementStats displacement_stats(const Permutation& p) {
    DisplacementStats s;
    for (std::size_t i = 0; i < p.order(); ++i) {
        const long long d = p.displacement(i);
        s.sum += d;
        s.sum_squares += d * d;
        s.weighted_sum += d * (2 * static_cast<long long>(i) + 1);  // 2i-1 with i 1-based
    }
    return s;
}

MeasureReport shuffle_measures(const Permutation& p) {
    const double n = static_cast<double>(p.order());
    MeasureReport r;
    r.tau = 1.0 - 4.0 * static_cast<double>(p.inversions()) / (n * n);
    r.rho_s =
        1.0 - 6.0 * static_cast<double>(displacement_stats(p).sum_squares) / (n * n * n);
    r.xi = 1.0;
    r.lambda_lower = p.image(0) == 0 ? 1.0 : 0.0;
    r.lambda_upper = p.image(p.order() - 1) == p.order() - 1 ? 1.0 : 0.0;
    r.family = CopulaFamilyTag::Shuffle;
    r.source = MeasureSource::ClosedForm;
    return r;
}

double eval_shuffle_cdf(const Permutation& p, double u, double v) {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
        throw Error("OutOfDomain", "(u,v) = (" + std::to_string(u) + "," +
                                       std::to_string(v) + ") outside the unit square");
    }
    const std::size_t n = p.order();
    const double nd = static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const double a = nd * u - static_cast<double>(k);             // n u - k + 1, 1-based
        const double b = nd * v - static_cast<double>(p.image(k));    // n v - pi(k) + 1
        acc += std::clamp(std::min(a, b), 0.0, 1.0);
    }
    return acc / nd;
}

SampleSet sample_shuffle(const Permutation& p, std::size_t count, std::uint64_t seed) {
    if (count == 0) throw Error("TooFewSamples", "count must be >= 1");
    const std::size_t n = p.order();
    const double nd = static_cast<double>(n);
    CounterRng rng(seed);
    std::vector<double> xs(count), ys(count);
    for (std::size_t t = 0; t < count; ++t) {
        const double u = rng.next_unit();
        const std::size_t k = std::min(static_cast<std::size_t>(u * nd), n - 1);
        xs[t] = u;
        ys[t] = u - (static_cast<double>(k) - static_cast<double>(p.image(k))) / nd;
    }
    return SampleSet(std::move(xs), std::move(ys));
}

}  // namespace copmeas
