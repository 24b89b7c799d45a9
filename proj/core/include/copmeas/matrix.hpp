#pragma once

#include <cstddef>
#include <span>
#include <vector>

namespace copmeas {

/// Dense row-major matrix of doubles. The only matrix type used in this
/// library; everything at paper scale (grids up to ~10^3) fits comfortably.
class Matrix {
public:
    Matrix() = default;
    Matrix(std::size_t rows, std::size_t cols, double fill = 0.0)
        : rows_(rows), cols_(cols), data_(rows * cols, fill) {}

    static Matrix from_rows(const std::vector<std::vector<double>>& rows);

    std::size_t rows() const { return rows_; }
    std::size_t cols() const { return cols_; }
    bool empty() const { return data_.empty(); }

    double& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
    double operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

    std::span<const double> row(std::size_t i) const {
        return std::span<const double>(data_).subspan(i * cols_, cols_);
    }
    std::span<const double> data() const { return data_; }
    std::span<double> data() { return data_; }

    double row_sum(std::size_t i) const;
    double col_sum(std::size_t j) const;
    double sum() const;

    bool operator==(const Matrix& other) const = default;

private:
    std::size_t rows_ = 0;
    std::size_t cols_ = 0;
    std::vector<double> data_;
};

Matrix transpose(const Matrix& a);
Matrix matmul(const Matrix& a, const Matrix& b);
double trace(const Matrix& a);

/// sum_{i,j} a_ij * b_ij, i.e. tr(a^T b) for same-shaped matrices.
double frobenius_inner(const Matrix& a, const Matrix& b);

/// Deterministic tree reduction; result does not depend on how the terms
/// were produced (e.g. by how many threads), only on their order.
double pairwise_sum(std::span<const double> values);

}  // namespace copmeas
