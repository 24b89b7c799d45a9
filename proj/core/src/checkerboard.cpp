#include "copmeas/checkerboard.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>
#include <vector>

#include "copmeas/error.hpp"
#include "copmeas/rng.hpp"

namespace copmeas {

namespace {

std::string fmt_double(double x) {
    std::ostringstream os;
    os.precision(12);
    os << x;
    return os.str();
}

}  // namespace

CheckerboardMatrix CheckerboardMatrix::validated(Matrix raw, double tol) {
    if (raw.rows() == 0 || raw.cols() == 0) {
        throw Error("EmptyMatrix", "checkerboard matrix needs positive dimensions");
    }
    const std::size_t m = raw.rows();
    const std::size_t n = raw.cols();
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            if (!std::isfinite(raw(i, j))) {
                throw Error("NonFiniteValue", "entry (" + std::to_string(i + 1) + "," +
                                                  std::to_string(j + 1) + ") is not finite");
            }
            if (raw(i, j) < -tol) {
                throw Error("NegativeEntry", "entry (" + std::to_string(i + 1) + "," +
                                                 std::to_string(j + 1) + ") = " +
                                                 fmt_double(raw(i, j)));
            }
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        const double s = raw.row_sum(i);
        if (std::abs(s - 1.0 / static_cast<double>(m)) > tol) {
            throw Error("RowSumViolation", "row " + std::to_string(i + 1) + " sums to " +
                                               fmt_double(s) + ", expected " +
                                               fmt_double(1.0 / static_cast<double>(m)));
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double s = raw.col_sum(j);
        if (std::abs(s - 1.0 / static_cast<double>(n)) > tol) {
            throw Error("ColSumViolation", "column " + std::to_string(j + 1) + " sums to " +
                                               fmt_double(s) + ", expected " +
                                               fmt_double(1.0 / static_cast<double>(n)));
        }
    }
    return CheckerboardMatrix(std::move(raw));
}

CheckerboardMatrix validate_checkerboard(Matrix raw, double tol) {
    return CheckerboardMatrix::validated(std::move(raw), tol);
}

GridCopulaMatrix GridCopulaMatrix::validated(Matrix raw, double tol) {
    if (raw.rows() == 0 || raw.cols() == 0) {
        throw Error("EmptyMatrix", "grid copula matrix needs positive dimensions");
    }
    const std::size_t m = raw.rows();
    const std::size_t n = raw.cols();
    for (std::size_t i = 0; i < m; ++i) {
        const double want = static_cast<double>(i + 1) / static_cast<double>(m);
        if (std::abs(raw(i, n - 1) - want) > tol) {
            throw Error("MarginViolation", "last column entry " + std::to_string(i + 1) +
                                               " = " + fmt_double(raw(i, n - 1)) +
                                               ", expected " + fmt_double(want));
        }
    }
    for (std::size_t j = 0; j < n; ++j) {
        const double want = static_cast<double>(j + 1) / static_cast<double>(n);
        if (std::abs(raw(m - 1, j) - want) > tol) {
            throw Error("MarginViolation", "last row entry " + std::to_string(j + 1) + " = " +
                                               fmt_double(raw(m - 1, j)) + ", expected " +
                                               fmt_double(want));
        }
    }
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double up = i > 0 ? raw(i - 1, j) : 0.0;
            const double left = j > 0 ? raw(i, j - 1) : 0.0;
            const double diag = (i > 0 && j > 0) ? raw(i - 1, j - 1) : 0.0;
            if (raw(i, j) - up - left + diag < -tol) {
                throw Error("NotTwoIncreasing",
                            "grid difference at (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") is negative");
            }
            if (raw(i, j) < up - tol || raw(i, j) < left - tol) {
                throw Error("NotMonotone", "grid entries decrease at (" +
                                               std::to_string(i + 1) + "," +
                                               std::to_string(j + 1) + ")");
            }
        }
    }
    return GridCopulaMatrix(std::move(raw));
}

GridCopulaMatrix cumulate(const CheckerboardMatrix& delta) {
    const std::size_t m = delta.m();
    const std::size_t n = delta.n();
    Matrix d(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        double row_acc = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            row_acc += delta.at(i, j);
            d(i, j) = row_acc + (i > 0 ? d(i - 1, j) : 0.0);
        }
    }
    return GridCopulaMatrix(std::move(d));
}

CheckerboardMatrix delta_from_grid(const GridCopulaMatrix& grid) {
    const std::size_t m = grid.m();
    const std::size_t n = grid.n();
    Matrix delta(m, n);
    for (std::size_t i = 0; i < m; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            const double up = i > 0 ? grid.at(i - 1, j) : 0.0;
            const double left = j > 0 ? grid.at(i, j - 1) : 0.0;
            const double diag = (i > 0 && j > 0) ? grid.at(i - 1, j - 1) : 0.0;
            const double v = (grid.at(i, j) - up) - (left - diag);
            if (v < -1e-12) {
                throw Error("NotTwoIncreasing",
                            "second-order difference at (" + std::to_string(i + 1) + "," +
                                std::to_string(j + 1) + ") = " + fmt_double(v));
            }
            delta(i, j) = std::max(v, 0.0);
        }
    }
    return CheckerboardMatrix::validated(std::move(delta), CheckerboardMatrix::kParseTol);
}

CheckerboardMatrix random_checkerboard(std::size_t m, std::size_t n, std::size_t k,
                                       std::uint64_t seed) {
    if (m != n) {
        throw Error("DimensionMismatch", "permutation mixture requires m == n, got " +
                                             std::to_string(m) + " x " + std::to_string(n));
    }
    if (n == 0 || k == 0) {
        throw Error("EmptyMatrix", "need n >= 1 and k >= 1");
    }
    CounterRng rng(seed);
    std::vector<double> weights(k);
    double total = 0.0;
    for (double& w : weights) {
        w = 1e-12 + rng.next_unit();
        total += w;
    }
    for (double& w : weights) w /= total;

    Matrix delta(n, n);
    std::vector<std::size_t> perm(n);
    for (std::size_t t = 0; t < k; ++t) {
        std::iota(perm.begin(), perm.end(), std::size_t{0});
        for (std::size_t i = n; i > 1; --i) {
            std::swap(perm[i - 1], perm[rng.next_below(i)]);
        }
        const double mass = weights[t] / static_cast<double>(n);
        for (std::size_t i = 0; i < n; ++i) delta(i, perm[i]) += mass;
    }
    return CheckerboardMatrix::validated(std::move(delta), CheckerboardMatrix::kConstructTol);
}

}  // namespace copmeas
