#pragma once

#include <vector>

#include "copmeas/checkerboard.hpp"
#include "copmeas/matrix.hpp"
#include "copmeas/measure_report.hpp"

namespace copmeas {

/// Coefficient matrices of the closed-form measures for Bernstein copulas.
/// gamma is the constant Spearman weight, theta_m/theta_n drive Kendall's
/// tau, and omega/lambda are the Gram matrices of the Bernstein basis
/// derivatives and of the basis itself, which drive xi:
///   omega[i][r]  = integral of B'_{i,m} B'_{r,m} over [0,1]
///   lambda[j][s] = integral of B_{j,n} B_{s,n} over [0,1]
/// (1-based indices i,r in 1..m and j,s in 1..n).
struct BernsteinCoefficients {
    std::size_t m = 0, n = 0;
    Matrix gamma;    // m x n, constant 1/((m+1)(n+1))
    Matrix theta_m;  // m x m
    Matrix theta_n;  // n x n
    Matrix omega;    // m x m, symmetric
    Matrix lambda;   // n x n, symmetric positive
};

BernsteinCoefficients bernstein_coefficients(std::size_t m, std::size_t n);

/// Bernstein basis values B_{i,m}(u) for i = 0..m.
std::vector<double> bernstein_basis(std::size_t m, double u);
/// Derivatives d/du B_{i,m}(u) for i = 0..m.
std::vector<double> bernstein_basis_derivative(std::size_t m, double u);

/// Binomial coefficient as a double via the multiplicative recurrence.
double binomial(std::size_t n, std::size_t k);

double eval_bernstein_cdf(const GridCopulaMatrix& grid, double u, double v);
double eval_bernstein_partial1(const GridCopulaMatrix& grid, double u, double v);
double eval_bernstein_partial2(const GridCopulaMatrix& grid, double u, double v);

double rho_bernstein(const GridCopulaMatrix& grid);
double tau_bernstein(const GridCopulaMatrix& grid);
double xi_bernstein(const GridCopulaMatrix& grid);

/// All measures; tail coefficients of a Bernstein copula are always (0, 0).
MeasureReport bernstein_report(const GridCopulaMatrix& grid);

}  // namespace copmeas
