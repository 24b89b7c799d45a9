#pragma once

#include <utility>

#include "copmeas/checkerboard.hpp"
#include "copmeas/matrix.hpp"
#include "copmeas/measure_report.hpp"

namespace copmeas {

/// Dependence structure inside each grid cell: conditional independence
/// (Pi), perfect positive dependence (Min) or perfect negative dependence (W).
enum class CheckerboardFamily { Pi, Min, W };

/// Family selector for the xi closed form. PerfectDependence covers every
/// copula whose cells carry a measure-preserving functional relationship,
/// in particular both the Min and W families.
enum class XiFamily { Pi, PerfectDependence };

// All measures are evaluated by O(mn) cumulative-sum sweeps; the structure
// matrices below exist so tests can cross-check the sweeps against the
// equivalent trace expressions.

double rho_checkerboard(const CheckerboardMatrix& delta, CheckerboardFamily family);
double tau_checkerboard(const CheckerboardMatrix& delta, CheckerboardFamily family);
double xi_checkerboard(const CheckerboardMatrix& delta, XiFamily family);

/// (lambda_L, lambda_U). Zero for Pi and W; for Min they are the corner
/// masses scaled by min(m, n).
std::pair<double, double> tail_coefficients(const CheckerboardMatrix& delta,
                                            CheckerboardFamily family);

/// Upper bound on |xi(C_pd) - xi(C_Pi)| over all perfect-dependence copulas
/// with mass matrix delta: m/n^2 if m <= n, else 1/n.
double xi_gap_bound(const CheckerboardMatrix& delta);

/// CDF of the chosen family at (u, v). Cells are half-open with the top and
/// right edges assigned to the last cell, so eval_cdf(1, 1) = 1. Throws
/// OutOfDomain outside the unit square.
double eval_cdf(const CheckerboardMatrix& delta, CheckerboardFamily family, double u,
                double v);

/// All five measures for one family.
MeasureReport checkerboard_report(const CheckerboardMatrix& delta,
                                  CheckerboardFamily family);

// Unvalidated kernels on raw matrices. The estimator module feeds these
// near-doubly-stochastic empirical matrices whose line sums are off by up
// to 1/n, which strict validation would reject.
double rho_pi_kernel(const Matrix& delta);
double tau_pi_kernel(const Matrix& delta);
double xi_pi_kernel(const Matrix& delta);
double sum_squares(const Matrix& delta);  // tr(delta^T delta)

/// The structure matrices behind the trace forms of the measures: strict
/// upper triangle T, M_xi = T T^T + T^T + I/3, the lower-triangular Xi
/// matrices of Kendall's tau, and the Spearman weight matrix.
struct XiStructureMatrices {
    Matrix t;          // n x n, 1 above the diagonal
    Matrix m_xi;       // n x n
    Matrix xi_m;       // m x m: 2 below diagonal, 1 on it, 0 above
    Matrix xi_n;       // n x n, same pattern
    Matrix omega_rho;  // m x n Spearman weights (2(m-i)+1)(2(n-j)+1)/(mn), 1-based ij
};

XiStructureMatrices xi_structure_matrices(std::size_t m, std::size_t n);

}  // namespace copmeas
