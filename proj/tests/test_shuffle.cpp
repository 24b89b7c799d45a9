#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "copmeas/error.hpp"
#include "copmeas/oracle.hpp"
#include "copmeas/shuffle.hpp"
#include "support/test_util.hpp"

using namespace copmeas;

namespace {

Permutation perm(std::initializer_list<int> one_based) {
    return Permutation::from_one_based(std::vector<int>(one_based));
}

/// Kendall tau of a paired sample with distinct x and y values, via the
/// inversion count of the y-ranks ordered by x. O(n log n).
double sample_kendall_tau(const SampleSet& s) {
    const std::size_t n = s.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return s.x(a) < s.x(b); });
    std::vector<double> ys(n);
    for (std::size_t p = 0; p < n; ++p) ys[p] = s.y(order[p]);
    std::vector<std::size_t> yrank(n);
    std::vector<double> sorted = ys;
    std::sort(sorted.begin(), sorted.end());
    for (std::size_t p = 0; p < n; ++p) {
        yrank[p] = static_cast<std::size_t>(
            std::lower_bound(sorted.begin(), sorted.end(), ys[p]) - sorted.begin());
    }
    const double discordant = static_cast<double>(count_inversions(yrank));
    const double pairs = 0.5 * static_cast<double>(n) * static_cast<double>(n - 1);
    return 1.0 - 2.0 * discordant / pairs;
}

}  // namespace

TEST_CASE("inversion counting") {
    CHECK(Permutation::identity(8).inversions() == 0);
    CHECK(Permutation::reversal(6).inversions() == 15);  // n(n-1)/2
    CHECK(perm({2, 3, 1}).inversions() == 2);

    // merge counting agrees with the quadratic definition
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        const auto p = Permutation::random(37, seed);
        std::uint64_t brute = 0;
        for (std::size_t i = 0; i < p.order(); ++i)
            for (std::size_t j = i + 1; j < p.order(); ++j)
                if (p.image(i) > p.image(j)) ++brute;
        CHECK(p.inversions() == brute);
    }
}

TEST_CASE("displacement statistics") {
    CHECK(displacement_stats(Permutation::identity(5)).sum_squares == 0);
    CHECK(displacement_stats(perm({2, 3, 1})).sum_squares == 6);
    const auto rev4 = displacement_stats(Permutation::reversal(4));
    CHECK(rev4.sum_squares == 20);  // (n^3 - n)/3
}

TEST_CASE("permutation sum identities hold exactly for random permutations") {
    for (std::uint64_t seed = 0; seed < 100; ++seed) {
        const std::size_t n = 1 + static_cast<std::size_t>(mix_u64(seed, 0) % 512);
        const auto stats = displacement_stats(Permutation::random(n, seed));
        CHECK(stats.sum == 0);
        CHECK(stats.weighted_sum == -stats.sum_squares);
    }
}

TEST_CASE("measures: identity, the 3-cycle, and the 2-reversal") {
    const auto id = shuffle_measures(Permutation::identity(9));
    CHECK(id.tau == doctest::Approx(1.0));
    CHECK(id.rho_s == doctest::Approx(1.0));
    CHECK(id.xi == doctest::Approx(1.0));
    CHECK(id.lambda_lower == 1.0);
    CHECK(id.lambda_upper == 1.0);

    const auto cyc = shuffle_measures(perm({2, 3, 1}));
    CHECK(cyc.tau == doctest::Approx(1.0 / 9.0));
    CHECK(cyc.rho_s == doctest::Approx(-1.0 / 3.0));
    CHECK(cyc.xi == doctest::Approx(1.0));
    CHECK(cyc.lambda_lower == 0.0);
    CHECK(cyc.lambda_upper == 0.0);

    const auto rev2 = shuffle_measures(Permutation::reversal(2));
    CHECK(rev2.tau == doctest::Approx(0.0));
    CHECK(rev2.rho_s == doctest::Approx(-0.5));
}

TEST_CASE("tau formula equals exact strip-pair concordance for all n <= 6") {
    for (std::size_t n = 1; n <= 6; ++n) {
        std::vector<int> image(n);
        std::iota(image.begin(), image.end(), 1);
        do {
            const auto p = Permutation::from_one_based(image);
            // Two independent draws land on strips (i, j) with probability
            // 1/n^2 each; i = j is concordant (the segment is increasing),
            // i != j follows the permutation order.
            long long concordant = 0, discordant = 0;
            for (std::size_t i = 0; i < n; ++i) {
                for (std::size_t j = 0; j < n; ++j) {
                    if (i == j) {
                        ++concordant;
                    } else if ((i < j) == (p.image(i) < p.image(j))) {
                        ++concordant;
                    } else {
                        ++discordant;
                    }
                }
            }
            const double tau_brute = static_cast<double>(concordant - discordant) /
                                     static_cast<double>(n * n);
            CHECK(shuffle_measures(p).tau == doctest::Approx(tau_brute).epsilon(1e-15));
        } while (std::next_permutation(image.begin(), image.end()));
    }
}

TEST_CASE("cdf: comonotone identity, marginals, and the 2-swap example") {
    const auto id = Permutation::identity(4);
    for (double u : {0.1, 0.5, 0.9})
        for (double v : {0.2, 0.5, 1.0})
            CHECK(eval_shuffle_cdf(id, u, v) == doctest::Approx(std::min(u, v)));

    const auto p = perm({3, 1, 4, 2});
    for (double t : {0.0, 0.31, 0.75, 1.0}) {
        CHECK(eval_shuffle_cdf(p, t, 1.0) == doctest::Approx(t));
        CHECK(eval_shuffle_cdf(p, 1.0, t) == doctest::Approx(t));
    }

    CHECK(eval_shuffle_cdf(perm({2, 1}), 0.25, 0.25) == doctest::Approx(0.0));
    CHECK_THROWS_WITH_AS(eval_shuffle_cdf(p, 2.0, 0.0), doctest::Contains("OutOfDomain"),
                         Error);
}

TEST_CASE("rho formula matches quadrature of the cdf for random permutations") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const std::size_t n = 2 + seed % 15;
        const auto p = Permutation::random(n, seed);
        const double rho_quad = rho_oracle(make_shuffle_evaluator(p));
        CHECK(rho_quad == doctest::Approx(shuffle_measures(p).rho_s).epsilon(1e-9));
    }
}

TEST_CASE("tau formula matches quadrature with the analytic partials") {
    for (std::uint64_t seed = 0; seed < 12; ++seed) {
        const std::size_t n = 2 + seed % 15;
        const auto p = Permutation::random(n, seed);
        const double tau_quad = tau_oracle(make_shuffle_evaluator(p));
        CHECK(tau_quad == doctest::Approx(shuffle_measures(p).tau).epsilon(1e-9));
    }
}

TEST_CASE("xi quadrature with the analytic conditional law returns 1") {
    for (std::uint64_t seed = 0; seed < 8; ++seed) {
        const auto p = Permutation::random(3 + seed % 12, seed);
        CHECK(xi_oracle(make_shuffle_evaluator(p)) == doctest::Approx(1.0).epsilon(1e-3));
    }
}

TEST_CASE("tail indicators via the dyadic corner ratio") {
    const auto fixed = perm({1, 3, 2});   // pi(1) = 1, pi(n) != n
    const auto moved = perm({2, 3, 1});   // pi(1) != 1
    const auto good_end = perm({2, 1, 3});
    for (int k = 4; k <= 20; k += 4) {
        const double t = std::ldexp(1.0, -k);
        CHECK(eval_shuffle_cdf(fixed, t, t) / t == doctest::Approx(1.0));
        CHECK(eval_shuffle_cdf(moved, t, t) / t == doctest::Approx(0.0));
    }
    const auto [lo_f, hi_f] = tail_oracle(make_shuffle_evaluator(fixed));
    CHECK(lo_f == doctest::Approx(1.0).epsilon(1e-4));
    CHECK(hi_f == doctest::Approx(0.0).epsilon(1e-4));
    const auto [lo_g, hi_g] = tail_oracle(make_shuffle_evaluator(good_end));
    CHECK(lo_g == doctest::Approx(0.0).epsilon(1e-4));
    CHECK(hi_g == doctest::Approx(1.0).epsilon(1e-4));
}

TEST_CASE("sampler: support, determinism, empirical cdf, sample tau") {
    const auto id = Permutation::identity(5);
    const auto como = sample_shuffle(id, 500, 3);
    for (std::size_t k = 0; k < como.size(); ++k) CHECK(como.x(k) == como.y(k));

    const auto p = perm({2, 3, 1});
    const auto a = sample_shuffle(p, 200, 9);
    const auto b = sample_shuffle(p, 200, 9);
    for (std::size_t k = 0; k < a.size(); ++k) {
        CHECK(a.x(k) == b.x(k));
        CHECK(a.y(k) == b.y(k));
        // every sample lies on a support segment: y - x = d_k / n
        const double shift = (a.y(k) - a.x(k)) * 3.0;
        CHECK(std::abs(shift - std::round(shift)) < 1e-12);
    }

    const std::size_t count = 100000;
    const auto big = sample_shuffle(p, count, 17);
    std::size_t below = 0;
    for (std::size_t k = 0; k < count; ++k)
        if (big.x(k) <= 0.5 && big.y(k) <= 0.5) ++below;
    const double ecdf = static_cast<double>(below) / static_cast<double>(count);
    const double cdf = eval_shuffle_cdf(p, 0.5, 0.5);
    CHECK(std::abs(ecdf - cdf) <= 3.0 / std::sqrt(static_cast<double>(count)));

    CHECK(std::abs(sample_kendall_tau(big) - 1.0 / 9.0) < 0.02);
}
