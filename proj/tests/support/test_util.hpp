#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <vector>

#include "copmeas/checkerboard.hpp"
#include "copmeas/matrix.hpp"

namespace copmeas::testutil {

inline Matrix scaled(const std::vector<std::vector<double>>& rows, double factor) {
    Matrix m = Matrix::from_rows(rows);
    for (double& v : m.data()) v *= factor;
    return m;
}

/// The corrected 2x2 matrix of the worked example: (1/8) [[3,1],[1,3]].
inline CheckerboardMatrix example_delta2() {
    return CheckerboardMatrix::validated(scaled({{3, 1}, {1, 3}}, 1.0 / 8.0));
}

/// The 4x4 matrix of the worked example.
inline CheckerboardMatrix example_delta4() {
    return CheckerboardMatrix::validated(
        scaled({{1, 0, 0, 0}, {0, 0.5, 0.5, 0}, {0, 0.5, 0.5, 0}, {0, 0, 0, 1}}, 0.25));
}

inline CheckerboardMatrix identity_delta(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0 / static_cast<double>(n);
    return CheckerboardMatrix::validated(std::move(m));
}

inline CheckerboardMatrix uniform_delta(std::size_t m, std::size_t n) {
    return CheckerboardMatrix::validated(
        Matrix(m, n, 1.0 / (static_cast<double>(m) * static_cast<double>(n))));
}

/// Sums groups of consecutive rows; group count must divide the row count.
/// Aggregation preserves the checkerboard line sums, which is how random
/// rectangular test matrices are produced from square Birkhoff mixtures.
inline Matrix aggregate_rows(const Matrix& a, std::size_t groups) {
    const std::size_t per = a.rows() / groups;
    Matrix out(groups, a.cols());
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i / per, j) += a(i, j);
    return out;
}

inline Matrix aggregate_cols(const Matrix& a, std::size_t groups) {
    const std::size_t per = a.cols() / groups;
    Matrix out(a.rows(), groups);
    for (std::size_t i = 0; i < a.rows(); ++i)
        for (std::size_t j = 0; j < a.cols(); ++j) out(i, j / per) += a(i, j);
    return out;
}

/// Random m x n checkerboard matrix; rectangular shapes are aggregated from
/// an lcm(m, n)-sized square mixture.
inline CheckerboardMatrix random_delta(std::size_t m, std::size_t n, std::uint64_t seed,
                                       std::size_t components = 5) {
    if (m == n) return random_checkerboard(m, n, components, seed);
    const std::size_t side = std::lcm(m, n);
    const CheckerboardMatrix square = random_checkerboard(side, side, components, seed);
    Matrix agg = aggregate_cols(aggregate_rows(square.entries(), m), n);
    return CheckerboardMatrix::validated(std::move(agg));
}

inline double median(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    const std::size_t n = values.size();
    return n % 2 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

/// Exact rational arithmetic over int64, enough for the golden-value
/// closed forms evaluated on small integer-scaled matrices.
struct Frac {
    long long num = 0;
    long long den = 1;

    Frac() = default;
    Frac(long long n, long long d = 1) : num(n), den(d) { reduce(); }

    void reduce() {
        if (den < 0) {
            num = -num;
            den = -den;
        }
        const long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
    }
    friend Frac operator+(Frac a, Frac b) { return {a.num * b.den + b.num * a.den, a.den * b.den}; }
    friend Frac operator-(Frac a, Frac b) { return {a.num * b.den - b.num * a.den, a.den * b.den}; }
    friend Frac operator*(Frac a, Frac b) { return {a.num * b.num, a.den * b.den}; }
    friend bool operator==(Frac a, Frac b) { return a.num == b.num && a.den == b.den; }
};

/// xi of the cell-independent checkerboard copula, evaluated exactly for
/// delta = K / scale with integer K.
inline Frac xi_pi_exact(const std::vector<std::vector<long long>>& k, long long scale) {
    const long long m = static_cast<long long>(k.size());
    const long long n = static_cast<long long>(k.front().size());
    Frac total(0);
    for (const auto& row : k) {
        long long cum = 0;
        for (long long v : row) {
            // (cum^2 + cum v + v^2/3) / scale^2
            total = total + Frac(3 * cum * cum + 3 * cum * v + v * v, 3 * scale * scale);
            cum += v;
        }
    }
    return Frac(6 * m, n) * total - Frac(2);
}

/// tr(delta^T delta) exactly.
inline Frac sum_squares_exact(const std::vector<std::vector<long long>>& k, long long scale) {
    long long acc = 0;
    for (const auto& row : k)
        for (long long v : row) acc += v * v;
    return Frac(acc, scale * scale);
}

inline Frac xi_pd_exact(const std::vector<std::vector<long long>>& k, long long scale) {
    const long long m = static_cast<long long>(k.size());
    const long long n = static_cast<long long>(k.front().size());
    return xi_pi_exact(k, scale) + Frac(m, n) * sum_squares_exact(k, scale);
}

}  // namespace copmeas::testutil
