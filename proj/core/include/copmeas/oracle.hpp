#pragma once

#include <cstdint>
#include <functional>
#include <utility>
#include <vector>

#include "copmeas/checkerboard.hpp"
#include "copmeas/checkerboard_measures.hpp"
#include "copmeas/measure_report.hpp"
#include "copmeas/sample_set.hpp"
#include "copmeas/shuffle.hpp"

namespace copmeas {

/// Piecewise-linear function on [0,1]: value(v) = a[k] + b[k]*v on
/// [breaks[k], breaks[k+1]]. Integrals of itself, its square, and products
/// of two slices are evaluated exactly, which is what makes the oracle
/// integrals of the piecewise families exact instead of approximate.
struct PiecewiseLinear {
    std::vector<double> breaks;  // 0 = breaks[0] < ... < breaks[K] = 1
    std::vector<double> a, b;    // size K

    void append(double upto, double constant, double slope);
    double integral() const;
    double integral_square() const;
    static double integral_product(const PiecewiseLinear& f, const PiecewiseLinear& g);
};

/// A copula presented to the oracle. Only `cdf` is mandatory. The pointwise
/// partials support smooth families; the slice callbacks return the exact
/// v-profile at fixed u and enable exact per-cell integration across the
/// jump discontinuities of the perfect-dependence and shuffle families.
struct CopulaEvaluator {
    std::function<double(double, double)> cdf;
    std::function<double(double, double)> partial1;  // d/du C, pointwise
    std::function<double(double, double)> partial2;  // d/dv C, pointwise
    std::function<PiecewiseLinear(double)> cdf_slice;       // v -> C(u, v)
    std::function<PiecewiseLinear(double)> partial1_slice;  // v -> d1 C(u, v)
    std::function<PiecewiseLinear(double)> partial2_slice;  // v -> d2 C(u, v)
    std::function<SampleSet(std::size_t, std::uint64_t)> sampler;
    std::size_t cells_m = 1;  // integrands are smooth within each cell
    std::size_t cells_n = 1;
};

struct QuadratureSpec {
    int points_per_cell = 8;  // Gauss-Legendre nodes per axis per cell
    std::size_t cells_m = 0;  // 0 = take the evaluator's hint
    std::size_t cells_n = 0;
    int threads = 1;
};

/// Gauss-Legendre nodes and weights on [0, 1].
struct GaussLegendreRule {
    std::vector<double> nodes;
    std::vector<double> weights;
};
GaussLegendreRule gauss_legendre(int points);

/// rho_S = 12 * integral of C - 3.
double rho_oracle(const CopulaEvaluator& c, const QuadratureSpec& q = {});
/// tau = 1 - 4 * integral of d1C * d2C. Throws MissingPartial.
double tau_oracle(const CopulaEvaluator& c, const QuadratureSpec& q = {});
/// xi = 6 * integral of (d1C)^2 - 2. Throws MissingPartial.
double xi_oracle(const CopulaEvaluator& c, const QuadratureSpec& q = {});

/// Dyadic limits of C(t,t)/t at 0 and (1 - C(t,t))/(1-t) at 1; a limit is
/// declared once three successive iterates agree within 1e-4, otherwise
/// throws NoConvergence.
std::pair<double, double> tail_oracle(const CopulaEvaluator& c);

MeasureReport oracle_report(const CopulaEvaluator& c, const QuadratureSpec& q = {},
                            CopulaFamilyTag family = CopulaFamilyTag::Pi);

// Evaluator factories for the families implemented in this library.
CopulaEvaluator make_checkerboard_evaluator(const CheckerboardMatrix& delta,
                                            CheckerboardFamily family);
CopulaEvaluator make_bernstein_evaluator(const GridCopulaMatrix& grid);
CopulaEvaluator make_shuffle_evaluator(const Permutation& p);
CopulaEvaluator make_independence_evaluator();
/// M(u,v) = min(u,v) evaluated pointwise; the cell hint bounds the error of
/// integrating across the diagonal kink.
CopulaEvaluator make_comonotone_evaluator(std::size_t cells_hint = 64);

/// Single-factor model draws (Z, Z + eps) with independent standard
/// normals; corr(Z, Z + eps) = 1/sqrt(2).
SampleSet gaussian_factor_sampler(std::size_t count, std::uint64_t seed);

}  // namespace copmeas
