#include "copmeas/xi_estimators.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <numeric>
#include <thread>

#include "copmeas/checkerboard_measures.hpp"
#include "copmeas/error.hpp"
#include "copmeas/oracle.hpp"
#include "copmeas/rng.hpp"

namespace copmeas {

std::vector<std::size_t> ranks(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    std::vector<std::size_t> out(values.size());
    for (std::size_t k = 0; k < values.size(); ++k) {
        out[k] = static_cast<std::size_t>(
            std::upper_bound(sorted.begin(), sorted.end(), values[k]) - sorted.begin());
    }
    return out;
}

std::size_t grid_side(std::size_t n, double kappa) {
    const double g = std::pow(static_cast<double>(n), kappa) + 1e-9;
    return static_cast<std::size_t>(g);
}

EmpiricalCheckerboard empirical_checkerboard(const SampleSet& s, std::size_t g) {
    if (g == 0) throw Error("TooFewSamples", "grid side must be >= 1");
    const std::size_t n = s.size();
    const auto rx = ranks(s.xs());
    const auto ry = ranks(s.ys());
    EmpiricalCheckerboard e;
    e.g = g;
    e.counts.assign(g * g, 0);
    for (std::size_t k = 0; k < n; ++k) {
        // ceil(g * rank / n), clamped to [1, g]; 0-based storage.
        const std::size_t i = std::min((g * rx[k] + n - 1) / n, g) - 1;
        const std::size_t j = std::min((g * ry[k] + n - 1) / n, g) - 1;
        ++e.counts[i * g + j];
    }
    e.delta = Matrix(g, g);
    const double inv_n = 1.0 / static_cast<double>(n);
    for (std::size_t c = 0; c < g * g; ++c) {
        e.delta.data()[c] = static_cast<double>(e.counts[c]) * inv_n;
    }
    return e;
}

double xi_checkerboard_estimate(const SampleSet& s, const EstimatorConfig& cfg) {
    if (cfg.variant == EstimatorVariant::Classical) {
        throw Error("InvalidVariant", "use xi_classical for the classical estimator");
    }
    if (s.size() < 2) throw Error("TooFewSamples", "need n >= 2");
    if (!(cfg.kappa > 0.0 && cfg.kappa <= 1.0)) {
        throw Error("InvalidKappa", "kappa must lie in (0, 1]");
    }
    const std::size_t g = grid_side(s.size(), cfg.kappa);
    if (g < 1) throw Error("TooFewSamples", "grid side floor(n^kappa) is zero");
    const auto emp = empirical_checkerboard(s, g);
    const double lower = xi_pi_kernel(emp.delta);
    if (cfg.variant == EstimatorVariant::Lower) return lower;
    const double t2 = sum_squares(emp.delta);
    return cfg.variant == EstimatorVariant::Upper ? lower + t2 : lower + 0.5 * t2;
}

double xi_classical(const SampleSet& s, std::uint64_t seed) {
    const std::size_t n = s.size();
    if (n < 2) throw Error("TooFewSamples", "need n >= 2");

    const auto r = ranks(s.ys());  // R_k = #{j : Y_j <= Y_k}
    std::vector<double> ys_sorted(s.ys().begin(), s.ys().end());
    std::sort(ys_sorted.begin(), ys_sorted.end());
    std::vector<std::size_t> l(n);  // L_k = #{j : Y_j >= Y_k}
    for (std::size_t k = 0; k < n; ++k) {
        l[k] = n - static_cast<std::size_t>(std::lower_bound(ys_sorted.begin(),
                                                             ys_sorted.end(), s.y(k)) -
                                            ys_sorted.begin());
    }

    // Order by X; equal X values form contiguous groups.
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t a, std::size_t b) { return s.x(a) < s.x(b); });
    std::vector<std::size_t> group_lo(n), group_hi(n);  // [lo, hi) of ties at each position
    for (std::size_t p = 0; p < n;) {
        std::size_t q = p + 1;
        while (q < n && s.x(order[q]) == s.x(order[p])) ++q;
        for (std::size_t t = p; t < q; ++t) {
            group_lo[t] = p;
            group_hi[t] = q;
        }
        p = q;
    }

    CounterRng rng(seed);
    double num = 0.0;
    double den = 0.0;
    const double nd = static_cast<double>(n);
    // inverse of order: position of sample k in the sorted-by-X sequence
    std::vector<std::size_t> pos(n);
    for (std::size_t p = 0; p < n; ++p) pos[order[p]] = p;

    for (std::size_t k = 0; k < n; ++k) {
        const std::size_t p = pos[k];
        const std::size_t lo = group_lo[p], hi = group_hi[p];
        std::size_t neighbor;
        if (hi - lo > 1) {
            // Tied X values: the argmin set is the tie group minus self.
            std::size_t pick = lo + rng.next_below(hi - lo - 1);
            if (pick >= p) ++pick;
            neighbor = order[pick];
        } else {
            // Distinct value; candidates are the whole adjacent value groups.
            const bool has_left = lo > 0;
            const bool has_right = hi < n;
            double dl = has_left ? s.x(k) - s.x(order[lo - 1]) : 0.0;
            double dr = has_right ? s.x(order[hi]) - s.x(k) : 0.0;
            bool use_left;
            std::size_t left_lo = 0, left_hi = 0, right_lo = 0, right_hi = 0;
            if (has_left) {
                left_lo = group_lo[lo - 1];
                left_hi = group_hi[lo - 1];
            }
            if (has_right) {
                right_lo = group_lo[hi];
                right_hi = group_hi[hi];
            }
            if (has_left && has_right && dl == dr) {
                const std::size_t total = (left_hi - left_lo) + (right_hi - right_lo);
                const std::size_t pick = rng.next_below(total);
                use_left = pick < left_hi - left_lo;
                neighbor = use_left ? order[left_lo + pick]
                                    : order[right_lo + (pick - (left_hi - left_lo))];
            } else {
                use_left = has_left && (!has_right || dl < dr);
                const std::size_t glo = use_left ? left_lo : right_lo;
                const std::size_t ghi = use_left ? left_hi : right_hi;
                const std::size_t width = ghi - glo;
                neighbor = order[width == 1 ? glo : glo + rng.next_below(width)];
            }
        }
        const double rk = static_cast<double>(r[k]);
        const double rn = static_cast<double>(r[neighbor]);
        const double lk = static_cast<double>(l[k]);
        num += nd * std::min(rk, rn) - lk * lk;
        den += lk * (nd - lk);
    }
    if (den <= 0.0) {
        throw Error("DegenerateY", "all Y values are equal; the estimator is undefined");
    }
    return num / den;
}

ExperimentModel experiment_model_from_name(const std::string& name) {
    if (name == "gaussian-factor") return ExperimentModel::GaussianFactor;
    if (name == "independence") return ExperimentModel::Independence;
    if (name == "comonotone") return ExperimentModel::Comonotone;
    throw Error("ParseError", "unknown model '" + name + "'");
}

std::string experiment_model_name(ExperimentModel model) {
    switch (model) {
        case ExperimentModel::GaussianFactor: return "gaussian-factor";
        case ExperimentModel::Independence: return "independence";
        case ExperimentModel::Comonotone: return "comonotone";
    }
    return "?";
}

std::string variant_name(EstimatorVariant variant) {
    switch (variant) {
        case EstimatorVariant::Average: return "avg";
        case EstimatorVariant::Upper: return "upper";
        case EstimatorVariant::Lower: return "lower";
        case EstimatorVariant::Classical: return "classical";
    }
    return "?";
}

EstimatorVariant variant_from_name(const std::string& name) {
    if (name == "avg" || name == "average") return EstimatorVariant::Average;
    if (name == "upper") return EstimatorVariant::Upper;
    if (name == "lower") return EstimatorVariant::Lower;
    if (name == "classical") return EstimatorVariant::Classical;
    throw Error("ParseError", "unknown variant '" + name + "'");
}

SampleSet draw_model_sample(ExperimentModel model, std::size_t n, std::uint64_t seed) {
    CounterRng rng(seed);
    std::vector<double> xs(n), ys(n);
    switch (model) {
        case ExperimentModel::GaussianFactor:
            return gaussian_factor_sampler(n, seed);
        case ExperimentModel::Independence: {
            for (std::size_t k = 0; k < n; ++k) {
                xs[k] = rng.next_unit();
                ys[k] = rng.next_unit();
            }
            break;
        }
        case ExperimentModel::Comonotone: {
            for (std::size_t k = 0; k < n; ++k) {
                xs[k] = rng.next_unit();
                ys[k] = xs[k];
            }
            break;
        }
    }
    return SampleSet(std::move(xs), std::move(ys));
}

std::vector<ExperimentRow> convergence_experiment(ExperimentModel model,
                                                  std::span<const std::size_t> ns,
                                                  std::span<const double> kappas,
                                                  std::size_t replicates,
                                                  std::uint64_t seed, int threads) {
    if (replicates == 0) throw Error("TooFewSamples", "need replicates >= 1");
    struct Task {
        std::size_t n;
        double kappa;
        std::size_t replicate;
    };
    std::vector<Task> tasks;
    for (std::size_t n : ns)
        for (double kappa : kappas)
            for (std::size_t rep = 0; rep < replicates; ++rep) tasks.push_back({n, kappa, rep});

    std::vector<ExperimentRow> rows(tasks.size() * 4);

    auto run_task = [&](std::size_t t) {
        const Task& task = tasks[t];
        const std::uint64_t task_seed =
            derive_seed(seed, task.n, double_bits(task.kappa), task.replicate);
        const SampleSet sample = draw_model_sample(model, task.n, task_seed);
        const std::size_t g = grid_side(task.n, task.kappa);
        const auto emp = empirical_checkerboard(sample, g);
        const double lower = xi_pi_kernel(emp.delta);
        const double t2 = sum_squares(emp.delta);
        const double values[] = {lower, lower + 0.5 * t2, lower + t2,
                                 xi_classical(sample, derive_seed(task_seed, 0x7165))};
        const EstimatorVariant order[] = {EstimatorVariant::Lower, EstimatorVariant::Average,
                                          EstimatorVariant::Upper, EstimatorVariant::Classical};
        for (std::size_t v = 0; v < 4; ++v) {
            rows[t * 4 + v] = ExperimentRow{model,          task.n,   task.kappa,
                                            task.replicate, order[v], values[v]};
        }
    };

    if (threads <= 1 || tasks.size() <= 1) {
        for (std::size_t t = 0; t < tasks.size(); ++t) run_task(t);
    } else {
        std::atomic<std::size_t> next{0};
        auto worker = [&]() {
            for (;;) {
                const std::size_t t = next.fetch_add(1);
                if (t >= tasks.size()) return;
                run_task(t);
            }
        };
        std::vector<std::thread> pool;
        const std::size_t count = std::min<std::size_t>(static_cast<std::size_t>(threads),
                                                        tasks.size());
        pool.reserve(count);
        for (std::size_t t = 0; t < count; ++t) pool.emplace_back(worker);
        for (auto& th : pool) th.join();
    }
    return rows;
}

std::vector<TimingRow> timing_experiment(std::span<const std::size_t> ns,
                                         std::uint64_t seed) {
    using clock = std::chrono::steady_clock;
    std::vector<TimingRow> rows;
    for (std::size_t n : ns) {
        const SampleSet sample =
            draw_model_sample(ExperimentModel::GaussianFactor, n, derive_seed(seed, n));
        struct Entry {
            const char* name;
            EstimatorVariant variant;
        };
        const Entry entries[] = {{"classical", EstimatorVariant::Classical},
                                 {"avg", EstimatorVariant::Average},
                                 {"lower", EstimatorVariant::Lower}};
        for (const auto& entry : entries) {
            const auto t0 = clock::now();
            double value;
            if (entry.variant == EstimatorVariant::Classical) {
                value = xi_classical(sample, seed);
            } else {
                EstimatorConfig cfg;
                cfg.variant = entry.variant;
                cfg.seed = seed;
                value = xi_checkerboard_estimate(sample, cfg);
            }
            const auto t1 = clock::now();
            (void)value;
            rows.push_back(
                {entry.name, n,
                 std::chrono::duration<double, std::milli>(t1 - t0).count()});
        }
    }
    return rows;
}

}  // namespace copmeas
