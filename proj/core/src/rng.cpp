#include "copmeas/rng.hpp"

#include <bit>
#include <cmath>
#include <numbers>

namespace copmeas {

namespace {
constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t splitmix_finalize(std::uint64_t z) {
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
}
}  // namespace

std::uint64_t mix_u64(std::uint64_t seed, std::uint64_t counter) {
    return splitmix_finalize(seed + (counter + 1) * kGolden);
}

std::uint64_t CounterRng::next_u64() { return mix_u64(seed_, counter_++); }

double CounterRng::next_unit() {
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
}

double CounterRng::next_normal() {
    if (has_cached_normal_) {
        has_cached_normal_ = false;
        return cached_normal_;
    }
    // 1 - u lies in (0, 1], keeping the log argument away from zero.
    const double u1 = 1.0 - next_unit();
    const double u2 = next_unit();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double angle = 2.0 * std::numbers::pi * u2;
    cached_normal_ = r * std::sin(angle);
    has_cached_normal_ = true;
    return r * std::cos(angle);
}

std::uint64_t CounterRng::next_below(std::uint64_t bound) {
    if (bound <= 1) return 0;
    const std::uint64_t limit = ~std::uint64_t{0} - (~std::uint64_t{0} % bound);
    std::uint64_t x;
    do {
        x = next_u64();
    } while (x >= limit);
    return x % bound;
}

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t a, std::uint64_t b,
                          std::uint64_t c) {
    std::uint64_t h = splitmix_finalize(seed + kGolden);
    h = splitmix_finalize(h ^ (a + kGolden + (h << 6) + (h >> 2)));
    h = splitmix_finalize(h ^ (b + kGolden + (h << 6) + (h >> 2)));
    h = splitmix_finalize(h ^ (c + kGolden + (h << 6) + (h >> 2)));
    return h;
}

std::uint64_t double_bits(double x) { return std::bit_cast<std::uint64_t>(x); }

}  // namespace copmeas
