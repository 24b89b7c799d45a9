#pragma once

#include <cstdint>

#include "copmeas/matrix.hpp"

namespace copmeas {

// Index convention: the mathematical definitions are 1-based like the
// literature; storage and all code indices are 0-based. The mapping is
// i_math = i_code + 1 throughout.

/// m x n matrix of nonnegative cell masses with row sums 1/m and column
/// sums 1/n. Immutable once validated.
class CheckerboardMatrix {
public:
    static constexpr double kConstructTol = 1e-12;
    static constexpr double kParseTol = 1e-9;

    /// Validates and wraps `raw`. Throws Error with kind NegativeEntry,
    /// RowSumViolation or ColSumViolation (checked in that order). No
    /// renormalisation is performed; the input must already satisfy the sums.
    static CheckerboardMatrix validated(Matrix raw, double tol = kConstructTol);

    std::size_t m() const { return entries_.rows(); }
    std::size_t n() const { return entries_.cols(); }
    double at(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const Matrix& entries() const { return entries_; }

private:
    explicit CheckerboardMatrix(Matrix entries) : entries_(std::move(entries)) {}
    Matrix entries_;
};

/// Parse-tolerance validation entry point for matrices read from text.
CheckerboardMatrix validate_checkerboard(Matrix raw,
                                         double tol = CheckerboardMatrix::kParseTol);

/// m x n matrix of cumulative copula values D_ij = C((i+1)/m, (j+1)/n)
/// (0-based ij). Last column is (1/m, ..., 1), last row (1/n, ..., 1),
/// entries are monotone along rows/columns and 2-increasing on the grid.
class GridCopulaMatrix {
public:
    static GridCopulaMatrix validated(Matrix raw, double tol = 1e-9);

    std::size_t m() const { return entries_.rows(); }
    std::size_t n() const { return entries_.cols(); }
    double at(std::size_t i, std::size_t j) const { return entries_(i, j); }
    const Matrix& entries() const { return entries_; }

private:
    friend GridCopulaMatrix cumulate(const CheckerboardMatrix& delta);
    explicit GridCopulaMatrix(Matrix entries) : entries_(std::move(entries)) {}
    Matrix entries_;
};

/// D_ij = sum of delta over cells (k,l) with k <= i, l <= j.
GridCopulaMatrix cumulate(const CheckerboardMatrix& delta);

/// Inverse of cumulate: second-order differencing. Throws Error with kind
/// NotTwoIncreasing if a difference drops below -1e-12.
CheckerboardMatrix delta_from_grid(const GridCopulaMatrix& grid);

/// Random n x n checkerboard matrix as a Birkhoff mixture: (1/n) times a
/// convex combination of k uniformly random permutation matrices. The
/// mixture keeps the row/column sums doubly stochastic by construction,
/// so the result validates at construction tolerance. Requires m == n
/// (throws DimensionMismatch otherwise); rectangular test matrices are
/// obtained by aggregating rows or columns of square ones.
CheckerboardMatrix random_checkerboard(std::size_t m, std::size_t n, std::size_t k,
                                       std::uint64_t seed);

}  // namespace copmeas
