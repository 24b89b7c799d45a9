#include "copmeas/bernstein.hpp"

#include <cmath>
#include <string>

#include "copmeas/error.hpp"

namespace copmeas {

namespace {

void require_unit_square(double u, double v) {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
        throw Error("OutOfDomain", "(u,v) = (" + std::to_string(u) + "," +
                                       std::to_string(v) + ") outside the unit square");
    }
}

}  // namespace

double binomial(std::size_t n, std::size_t k) {
    if (k > n) return 0.0;
    k = std::min(k, n - k);
    double c = 1.0;
    for (std::size_t t = 0; t < k; ++t) {
        c *= static_cast<double>(n - t);
        c /= static_cast<double>(t + 1);
    }
    return c;
}

std::vector<double> bernstein_basis(std::size_t m, double u) {
    std::vector<double> b(m + 1);
    const double w = 1.0 - u;
    double c = 1.0;  // binom(m, i), updated multiplicatively
    for (std::size_t i = 0; i <= m; ++i) {
        b[i] = c * std::pow(u, static_cast<double>(i)) *
               std::pow(w, static_cast<double>(m - i));
        c *= static_cast<double>(m - i);
        c /= static_cast<double>(i + 1);
    }
    return b;
}

std::vector<double> bernstein_basis_derivative(std::size_t m, double u) {
    std::vector<double> d(m + 1);
    const double w = 1.0 - u;
    const double md = static_cast<double>(m);
    d[0] = -md * std::pow(w, md - 1.0);
    double c = md;  // binom(m, i) for i = 1
    for (std::size_t i = 1; i < m; ++i) {
        d[i] = c * (static_cast<double>(i) - md * u) *
               std::pow(u, static_cast<double>(i) - 1.0) *
               std::pow(w, static_cast<double>(m - i) - 1.0);
        c *= static_cast<double>(m - i);
        c /= static_cast<double>(i + 1);
    }
    d[m] = md * std::pow(u, md - 1.0);
    return d;
}

BernsteinCoefficients bernstein_coefficients(std::size_t m, std::size_t n) {
    if (m == 0 || n == 0) throw Error("EmptyMatrix", "need m, n >= 1");
    BernsteinCoefficients c;
    c.m = m;
    c.n = n;

    c.gamma = Matrix(m, n, 1.0 / (static_cast<double>(m + 1) * static_cast<double>(n + 1)));

    auto theta = [](std::size_t dim) {
        Matrix t(dim, dim);
        const double dd = static_cast<double>(dim);
        for (std::size_t ii = 1; ii <= dim; ++ii) {
            for (std::size_t jj = 1; jj <= dim; ++jj) {
                if (ii == jj) {
                    // Numerator carries a factor (i - j); the 0/0 convention
                    // only fires at i = j = dim where the denominator also
                    // vanishes, giving 1; everywhere else on the diagonal the
                    // entry is plain 0.
                    t(ii - 1, jj - 1) = (ii == dim) ? 1.0 : 0.0;
                    continue;
                }
                const double num = (static_cast<double>(ii) - static_cast<double>(jj)) *
                                   binomial(dim, ii) * binomial(dim, jj);
                const double den = (2.0 * dd - static_cast<double>(ii + jj)) *
                                   binomial(2 * dim - 1, ii + jj - 1);
                t(ii - 1, jj - 1) = num / den;
            }
        }
        return t;
    };
    c.theta_m = theta(m);
    c.theta_n = theta(n);

    c.omega = Matrix(m, m);
    const double md = static_cast<double>(m);
    for (std::size_t i = 1; i <= m; ++i) {
        for (std::size_t r = 1; r <= m; ++r) {
            double value;
            if (i == m && r == m) {
                value = md * md / (2.0 * md - 1.0);
            } else if (i == m || r == m) {
                const std::size_t q = (i == m) ? r : i;  // the index below m
                const double qd = static_cast<double>(q);
                value = md * (md - 1.0) * (qd - md) * binomial(m, q) /
                        ((2.0 * md - 1.0) * (2.0 * md - 2.0) * binomial(2 * m - 3, m + q - 2));
            } else {
                const double id = static_cast<double>(i);
                const double rd = static_cast<double>(r);
                const double pair = static_cast<double>(i + r) *
                                    (static_cast<double>(i + r) - 1.0) / 2.0;
                value = binomial(m, i) * binomial(m, r) /
                        ((2.0 * md - 3.0) * binomial(2 * m - 4, i + r - 2)) *
                        (id * rd - 2.0 * md * (md - 1.0) * pair /
                                       ((2.0 * md - 1.0) * (2.0 * md - 2.0)));
            }
            c.omega(i - 1, r - 1) = value;
        }
    }

    c.lambda = Matrix(n, n);
    const double nd = static_cast<double>(n);
    for (std::size_t j = 1; j <= n; ++j) {
        for (std::size_t s = 1; s <= n; ++s) {
            c.lambda(j - 1, s - 1) = binomial(n, j) * binomial(n, s) /
                                     ((2.0 * nd + 1.0) * binomial(2 * n, j + s));
        }
    }
    return c;
}

double eval_bernstein_cdf(const GridCopulaMatrix& grid, double u, double v) {
    require_unit_square(u, v);
    const auto bu = bernstein_basis(grid.m(), u);
    const auto bv = bernstein_basis(grid.n(), v);
    double acc = 0.0;
    for (std::size_t i = 1; i <= grid.m(); ++i) {
        double inner = 0.0;
        for (std::size_t j = 1; j <= grid.n(); ++j) inner += grid.at(i - 1, j - 1) * bv[j];
        acc += bu[i] * inner;
    }
    return acc;
}

double eval_bernstein_partial1(const GridCopulaMatrix& grid, double u, double v) {
    require_unit_square(u, v);
    const auto du = bernstein_basis_derivative(grid.m(), u);
    const auto bv = bernstein_basis(grid.n(), v);
    double acc = 0.0;
    for (std::size_t i = 1; i <= grid.m(); ++i) {
        double inner = 0.0;
        for (std::size_t j = 1; j <= grid.n(); ++j) inner += grid.at(i - 1, j - 1) * bv[j];
        acc += du[i] * inner;
    }
    return acc;
}

double eval_bernstein_partial2(const GridCopulaMatrix& grid, double u, double v) {
    require_unit_square(u, v);
    const auto bu = bernstein_basis(grid.m(), u);
    const auto dv = bernstein_basis_derivative(grid.n(), v);
    double acc = 0.0;
    for (std::size_t i = 1; i <= grid.m(); ++i) {
        double inner = 0.0;
        for (std::size_t j = 1; j <= grid.n(); ++j) inner += grid.at(i - 1, j - 1) * dv[j];
        acc += bu[i] * inner;
    }
    return acc;
}

double rho_bernstein(const GridCopulaMatrix& grid) {
    const double w =
        1.0 / (static_cast<double>(grid.m() + 1) * static_cast<double>(grid.n() + 1));
    return 12.0 * w * grid.entries().sum() - 3.0;
}

double tau_bernstein(const GridCopulaMatrix& grid) {
    const auto c = bernstein_coefficients(grid.m(), grid.n());
    const Matrix left = matmul(c.theta_m, grid.entries());           // m x n
    const Matrix right = matmul(c.theta_n, transpose(grid.entries()));  // n x m
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.m(); ++i)
        for (std::size_t j = 0; j < grid.n(); ++j) acc += left(i, j) * right(j, i);
    return 1.0 - acc;
}

double xi_bernstein(const GridCopulaMatrix& grid) {
    const auto c = bernstein_coefficients(grid.m(), grid.n());
    const Matrix left = matmul(c.omega, grid.entries());               // m x n
    const Matrix right = matmul(c.lambda, transpose(grid.entries()));  // n x m
    double acc = 0.0;
    for (std::size_t i = 0; i < grid.m(); ++i)
        for (std::size_t j = 0; j < grid.n(); ++j) acc += left(i, j) * right(j, i);
    return 6.0 * acc - 2.0;
}

MeasureReport bernstein_report(const GridCopulaMatrix& grid) {
    MeasureReport r;
    r.rho_s = rho_bernstein(grid);
    r.tau = tau_bernstein(grid);
    r.xi = xi_bernstein(grid);
    r.lambda_lower = 0.0;
    r.lambda_upper = 0.0;
    r.family = CopulaFamilyTag::Bernstein;
    r.source = MeasureSource::ClosedForm;
    return r;
}

}  // namespace copmeas
