#include "copmeas/checkerboard_measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "copmeas/error.hpp"

namespace copmeas {

double rho_pi_kernel(const Matrix& delta) {
    const std::size_t m = delta.rows();
    const std::size_t n = delta.cols();
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        const double wi = static_cast<double>(2 * (m - 1 - i) + 1);
        for (std::size_t j = 0; j < n; ++j) {
            const double wj = static_cast<double>(2 * (n - 1 - j) + 1);
            acc += wi * wj * delta(i, j);
        }
    }
    return 3.0 * acc / mn - 3.0;
}

double tau_pi_kernel(const Matrix& delta) {
    const std::size_t m = delta.rows();
    const std::size_t n = delta.cols();
    // Column-cumulative sums (over k < i) maintained row by row.
    std::vector<double> col_cum(n, 0.0);
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double row_cum = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            const double d = delta(i, j);
            acc += (col_cum[j] + 0.5 * d) * (row_cum + 0.5 * d);
            row_cum += d;
            col_cum[j] += d;
        }
    }
    return 1.0 - 4.0 * acc;
}

double xi_pi_kernel(const Matrix& delta) {
    const std::size_t m = delta.rows();
    const std::size_t n = delta.cols();
    double acc = 0.0;
    for (std::size_t i = 0; i < m; ++i) {
        double row_cum = 0.0;  // sum over l < j within row i
        for (std::size_t j = 0; j < n; ++j) {
            const double d = delta(i, j);
            acc += row_cum * row_cum + row_cum * d + d * d / 3.0;
            row_cum += d;
        }
    }
    return 6.0 * static_cast<double>(m) / static_cast<double>(n) * acc - 2.0;
}

double sum_squares(const Matrix& delta) {
    double acc = 0.0;
    for (double v : delta.data()) acc += v * v;
    return acc;
}

double rho_checkerboard(const CheckerboardMatrix& delta, CheckerboardFamily family) {
    const double base = rho_pi_kernel(delta.entries());
    const double mn = static_cast<double>(delta.m()) * static_cast<double>(delta.n());
    switch (family) {
        case CheckerboardFamily::Pi: return base;
        case CheckerboardFamily::Min: return base + 1.0 / mn;
        case CheckerboardFamily::W: return base - 1.0 / mn;
    }
    return base;
}

double tau_checkerboard(const CheckerboardMatrix& delta, CheckerboardFamily family) {
    const double base = tau_pi_kernel(delta.entries());
    switch (family) {
        case CheckerboardFamily::Pi: return base;
        case CheckerboardFamily::Min: return base + sum_squares(delta.entries());
        case CheckerboardFamily::W: return base - sum_squares(delta.entries());
    }
    return base;
}

double xi_checkerboard(const CheckerboardMatrix& delta, XiFamily family) {
    const double base = xi_pi_kernel(delta.entries());
    if (family == XiFamily::Pi) return base;
    const double ratio =
        static_cast<double>(delta.m()) / static_cast<double>(delta.n());
    return base + ratio * sum_squares(delta.entries());
}

std::pair<double, double> tail_coefficients(const CheckerboardMatrix& delta,
                                            CheckerboardFamily family) {
    if (family != CheckerboardFamily::Min) return {0.0, 0.0};
    const double scale = static_cast<double>(std::min(delta.m(), delta.n()));
    return {delta.at(0, 0) * scale, delta.at(delta.m() - 1, delta.n() - 1) * scale};
}

double xi_gap_bound(const CheckerboardMatrix& delta) {
    const double m = static_cast<double>(delta.m());
    const double n = static_cast<double>(delta.n());
    return delta.m() <= delta.n() ? m / (n * n) : 1.0 / n;
}

double eval_cdf(const CheckerboardMatrix& delta, CheckerboardFamily family, double u,
                double v) {
    if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
        throw Error("OutOfDomain", "(u,v) = (" + std::to_string(u) + "," +
                                       std::to_string(v) + ") outside the unit square");
    }
    const std::size_t m = delta.m();
    const std::size_t n = delta.n();
    // Half-open cells; u = 1 or v = 1 falls into the last cell.
    const std::size_t i = std::min(static_cast<std::size_t>(u * static_cast<double>(m)), m - 1);
    const std::size_t j = std::min(static_cast<std::size_t>(v * static_cast<double>(n)), n - 1);
    const double x = u * static_cast<double>(m) - static_cast<double>(i);  // in [0,1]
    const double y = v * static_cast<double>(n) - static_cast<double>(j);

    double block = 0.0;   // mass strictly left and below the cell
    double above = 0.0;   // sum over k < i of delta(k, j)
    double left = 0.0;    // sum over l < j of delta(i, l)
    for (std::size_t k = 0; k < i; ++k) {
        for (std::size_t l = 0; l < j; ++l) block += delta.at(k, l);
        above += delta.at(k, j);
    }
    for (std::size_t l = 0; l < j; ++l) left += delta.at(i, l);

    double cell = 0.0;
    switch (family) {
        case CheckerboardFamily::Pi: cell = x * y; break;
        case CheckerboardFamily::Min: cell = std::min(x, y); break;
        case CheckerboardFamily::W: cell = std::max(x + y - 1.0, 0.0); break;
    }
    return block + above * y + left * x + delta.at(i, j) * cell;
}

MeasureReport checkerboard_report(const CheckerboardMatrix& delta,
                                  CheckerboardFamily family) {
    MeasureReport r;
    r.rho_s = rho_checkerboard(delta, family);
    r.tau = tau_checkerboard(delta, family);
    r.xi = xi_checkerboard(delta, family == CheckerboardFamily::Pi
                                      ? XiFamily::Pi
                                      : XiFamily::PerfectDependence);
    std::tie(r.lambda_lower, r.lambda_upper) = tail_coefficients(delta, family);
    switch (family) {
        case CheckerboardFamily::Pi: r.family = CopulaFamilyTag::Pi; break;
        case CheckerboardFamily::Min: r.family = CopulaFamilyTag::Min; break;
        case CheckerboardFamily::W: r.family = CopulaFamilyTag::W; break;
    }
    r.source = MeasureSource::ClosedForm;
    return r;
}

XiStructureMatrices xi_structure_matrices(std::size_t m, std::size_t n) {
    XiStructureMatrices s;
    s.t = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) s.t(i, j) = 1.0;

    s.m_xi = Matrix(n, n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < n; ++j) {
            // (T T^T)_{ij} = #{k : k > max(i, j)}
            s.m_xi(i, j) = static_cast<double>(n - 1 - std::max(i, j));
            if (i > j) s.m_xi(i, j) += 1.0;  // T^T
            if (i == j) s.m_xi(i, j) += 1.0 / 3.0;
        }
    }

    auto lower_two = [](std::size_t dim) {
        Matrix x(dim, dim);
        for (std::size_t i = 0; i < dim; ++i)
            for (std::size_t j = 0; j < dim; ++j) x(i, j) = i > j ? 2.0 : (i == j ? 1.0 : 0.0);
        return x;
    };
    s.xi_m = lower_two(m);
    s.xi_n = lower_two(n);

    s.omega_rho = Matrix(m, n);
    const double mn = static_cast<double>(m) * static_cast<double>(n);
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = 0; j < n; ++j)
            s.omega_rho(i, j) = static_cast<double>(2 * (m - 1 - i) + 1) *
                                static_cast<double>(2 * (n - 1 - j) + 1) / mn;
    return s;
}

}  // namespace copmeas
