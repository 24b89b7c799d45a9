#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "copmeas/matrix.hpp"
#include "copmeas/sample_set.hpp"

namespace copmeas {

enum class EstimatorVariant { Average, Upper, Lower, Classical };

struct EstimatorConfig {
    double kappa = 1.0 / 3.0;  // grid side is floor(n^kappa)
    std::uint64_t seed = 0;    // tie-breaking randomness (classical estimator)
    EstimatorVariant variant = EstimatorVariant::Average;
};

/// Rank of v_k defined as #{j : v_j <= v_k}; ties get equal (maximal)
/// ranks. O(n log n).
std::vector<std::size_t> ranks(std::span<const double> values);

/// g x g cell counts of the rank-transformed sample. Rows bin the X ranks,
/// columns the Y ranks; cell index is ceil(g * rank / n) clamped to [1, g].
struct EmpiricalCheckerboard {
    std::size_t g = 0;
    std::vector<std::uint64_t> counts;  // row-major g x g, sums to n
    Matrix delta;                       // counts / n
};

EmpiricalCheckerboard empirical_checkerboard(const SampleSet& s, std::size_t g);

/// floor(n^kappa) with a tiny epsilon guard against under-rounding at exact
/// powers.
std::size_t grid_side(std::size_t n, double kappa);

/// Checkerboard estimator of Chatterjee's xi. Lower evaluates the
/// conditional-independence closed form on the empirical matrix, Upper the
/// perfect-dependence one, Average their midpoint. Throws TooFewSamples for
/// n < 2 and InvalidVariant for Classical (use xi_classical).
double xi_checkerboard_estimate(const SampleSet& s, const EstimatorConfig& cfg);

/// Classical rank/nearest-neighbor estimator. Nearest-neighbor ties (tied X
/// values, or left/right equidistant neighbors) are broken uniformly at
/// random over the whole argmin set, seeded. Throws DegenerateY when all Y
/// are equal.
double xi_classical(const SampleSet& s, std::uint64_t seed);

enum class ExperimentModel { GaussianFactor, Independence, Comonotone };

ExperimentModel experiment_model_from_name(const std::string& name);
std::string experiment_model_name(ExperimentModel model);
std::string variant_name(EstimatorVariant variant);
EstimatorVariant variant_from_name(const std::string& name);

struct ExperimentRow {
    ExperimentModel model;
    std::size_t n;
    double kappa;
    std::size_t replicate;
    EstimatorVariant variant;
    double value;
};

/// One row per (n, kappa, replicate, variant). Each replicate uses a seed
/// derived from (seed, n, kappa, replicate), so results are identical
/// regardless of thread count or scheduling.
std::vector<ExperimentRow> convergence_experiment(ExperimentModel model,
                                                  std::span<const std::size_t> ns,
                                                  std::span<const double> kappas,
                                                  std::size_t replicates,
                                                  std::uint64_t seed, int threads = 1);

struct TimingRow {
    std::string estimator;
    std::size_t n;
    double millis;
};

/// Wall-clock comparison of the Classical, Average and Lower estimators on
/// single-factor model data.
std::vector<TimingRow> timing_experiment(std::span<const std::size_t> ns,
                                         std::uint64_t seed);

/// Draws a sample of the given model, seeded.
SampleSet draw_model_sample(ExperimentModel model, std::size_t n, std::uint64_t seed);

}  // namespace copmeas
