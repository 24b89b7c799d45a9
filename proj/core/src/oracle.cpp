#include "copmeas/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <numbers>
#include <thread>

#include "copmeas/bernstein.hpp"
#include "copmeas/error.hpp"
#include "copmeas/rng.hpp"

namespace copmeas {

void PiecewiseLinear::append(double upto, double constant, double slope) {
    if (breaks.empty()) breaks.push_back(0.0);
    if (upto <= breaks.back()) return;  // zero-width piece
    breaks.push_back(upto);
    a.push_back(constant);
    b.push_back(slope);
}

double PiecewiseLinear::integral() const {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double l = breaks[k], r = breaks[k + 1];
        acc += a[k] * (r - l) + b[k] * (r * r - l * l) / 2.0;
    }
    return acc;
}

double PiecewiseLinear::integral_square() const {
    double acc = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        const double l = breaks[k], r = breaks[k + 1];
        acc += a[k] * a[k] * (r - l) + a[k] * b[k] * (r * r - l * l) +
               b[k] * b[k] * (r * r * r - l * l * l) / 3.0;
    }
    return acc;
}

double PiecewiseLinear::integral_product(const PiecewiseLinear& f, const PiecewiseLinear& g) {
    double acc = 0.0;
    std::size_t kf = 0, kg = 0;
    double lo = 0.0;
    while (kf < f.a.size() && kg < g.a.size()) {
        const double hi = std::min(f.breaks[kf + 1], g.breaks[kg + 1]);
        if (hi > lo) {
            const double c0 = f.a[kf] * g.a[kg];
            const double c1 = f.a[kf] * g.b[kg] + f.b[kf] * g.a[kg];
            const double c2 = f.b[kf] * g.b[kg];
            acc += c0 * (hi - lo) + c1 * (hi * hi - lo * lo) / 2.0 +
                   c2 * (hi * hi * hi - lo * lo * lo) / 3.0;
        }
        if (f.breaks[kf + 1] <= hi) ++kf;
        if (g.breaks[kg + 1] <= hi) ++kg;
        lo = hi;
    }
    return acc;
}

GaussLegendreRule gauss_legendre(int points) {
    if (points < 1) throw Error("InvalidQuadrature", "need at least one node");
    const int p = points;
    GaussLegendreRule rule;
    rule.nodes.resize(p);
    rule.weights.resize(p);
    // Newton iteration on Legendre polynomials over [-1, 1], then map to [0, 1].
    for (int i = 0; i < (p + 1) / 2; ++i) {
        double x = std::cos(std::numbers::pi * (i + 0.75) / (p + 0.5));
        double dp = 0.0;
        for (int iter = 0; iter < 100; ++iter) {
            double p0 = 1.0, p1 = x;
            for (int k = 2; k <= p; ++k) {
                const double pk = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = pk;
            }
            dp = p * (x * p1 - p0) / (x * x - 1.0);
            const double dx = p1 / dp;
            x -= dx;
            if (std::abs(dx) < 1e-15) break;
        }
        const double w = 2.0 / ((1.0 - x * x) * dp * dp);
        rule.nodes[i] = (1.0 - x) / 2.0;           // roots come out descending in x
        rule.nodes[p - 1 - i] = (1.0 + x) / 2.0;
        rule.weights[i] = w / 2.0;
        rule.weights[p - 1 - i] = w / 2.0;
    }
    return rule;
}

namespace {

void run_chunks(std::size_t count, int threads, const std::function<void(std::size_t)>& body) {
    if (threads <= 1 || count <= 1) {
        for (std::size_t t = 0; t < count; ++t) body(t);
        return;
    }
    const std::size_t workers =
        std::min<std::size_t>(static_cast<std::size_t>(threads), count);
    std::vector<std::thread> pool;
    pool.reserve(workers);
    for (std::size_t w = 0; w < workers; ++w) {
        pool.emplace_back([&, w]() {
            for (std::size_t t = w; t < count; t += workers) body(t);
        });
    }
    for (auto& th : pool) th.join();
}

struct ResolvedSpec {
    int points;
    std::size_t cells_m, cells_n;
    int threads;
};

ResolvedSpec resolve(const CopulaEvaluator& c, const QuadratureSpec& q) {
    if (q.points_per_cell < 2) {
        throw Error("InvalidQuadrature", "points_per_cell must be >= 2");
    }
    return {q.points_per_cell, q.cells_m ? q.cells_m : std::max<std::size_t>(c.cells_m, 1),
            q.cells_n ? q.cells_n : std::max<std::size_t>(c.cells_n, 1), q.threads};
}

/// Outer Gauss-Legendre in u per column strip, exact inner integral in v.
double integrate_slices(const std::function<double(double)>& inner_at,
                        std::size_t strips, int points, int threads) {
    const GaussLegendreRule rule = gauss_legendre(points);
    std::vector<double> values(strips * static_cast<std::size_t>(points));
    run_chunks(strips, threads, [&](std::size_t strip) {
        for (int nd = 0; nd < points; ++nd) {
            const double u =
                (static_cast<double>(strip) + rule.nodes[static_cast<std::size_t>(nd)]) /
                static_cast<double>(strips);
            values[strip * static_cast<std::size_t>(points) + static_cast<std::size_t>(nd)] =
                rule.weights[static_cast<std::size_t>(nd)] * inner_at(u) /
                static_cast<double>(strips);
        }
    });
    return pairwise_sum(values);
}

/// Tensor-product Gauss-Legendre per cell of the hint partition.
double integrate_pointwise(const std::function<double(double, double)>& f,
                           std::size_t cells_m, std::size_t cells_n, int points,
                           int threads) {
    const GaussLegendreRule rule = gauss_legendre(points);
    const double scale = 1.0 / (static_cast<double>(cells_m) * static_cast<double>(cells_n));
    std::vector<double> values(cells_m * cells_n);
    run_chunks(cells_m * cells_n, threads, [&](std::size_t cell) {
        const std::size_t ci = cell / cells_n;
        const std::size_t cj = cell % cells_n;
        double acc = 0.0;
        for (int na = 0; na < points; ++na) {
            const double u = (static_cast<double>(ci) + rule.nodes[static_cast<std::size_t>(na)]) /
                             static_cast<double>(cells_m);
            double inner = 0.0;
            for (int nb = 0; nb < points; ++nb) {
                const double v =
                    (static_cast<double>(cj) + rule.nodes[static_cast<std::size_t>(nb)]) /
                    static_cast<double>(cells_n);
                inner += rule.weights[static_cast<std::size_t>(nb)] * f(u, v);
            }
            acc += rule.weights[static_cast<std::size_t>(na)] * inner;
        }
        values[cell] = acc * scale;
    });
    return pairwise_sum(values);
}

}  // namespace

double rho_oracle(const CopulaEvaluator& c, const QuadratureSpec& q) {
    const ResolvedSpec spec = resolve(c, q);
    double integral;
    if (c.cdf_slice) {
        integral = integrate_slices([&](double u) { return c.cdf_slice(u).integral(); },
                                    spec.cells_m, spec.points, spec.threads);
    } else {
        integral = integrate_pointwise(c.cdf, spec.cells_m, spec.cells_n, spec.points,
                                       spec.threads);
    }
    return 12.0 * integral - 3.0;
}

double tau_oracle(const CopulaEvaluator& c, const QuadratureSpec& q) {
    const ResolvedSpec spec = resolve(c, q);
    double integral;
    if (c.partial1_slice && c.partial2_slice) {
        integral = integrate_slices(
            [&](double u) {
                return PiecewiseLinear::integral_product(c.partial1_slice(u),
                                                         c.partial2_slice(u));
            },
            spec.cells_m, spec.points, spec.threads);
    } else if (c.partial1 && c.partial2) {
        integral = integrate_pointwise(
            [&](double u, double v) { return c.partial1(u, v) * c.partial2(u, v); },
            spec.cells_m, spec.cells_n, spec.points, spec.threads);
    } else {
        throw Error("MissingPartial", "tau oracle needs both partial derivatives");
    }
    return 1.0 - 4.0 * integral;
}

double xi_oracle(const CopulaEvaluator& c, const QuadratureSpec& q) {
    const ResolvedSpec spec = resolve(c, q);
    double integral;
    if (c.partial1_slice) {
        integral =
            integrate_slices([&](double u) { return c.partial1_slice(u).integral_square(); },
                             spec.cells_m, spec.points, spec.threads);
    } else if (c.partial1) {
        integral = integrate_pointwise(
            [&](double u, double v) {
                const double d = c.partial1(u, v);
                return d * d;
            },
            spec.cells_m, spec.cells_n, spec.points, spec.threads);
    } else {
        throw Error("MissingPartial", "xi oracle needs the first partial derivative");
    }
    return 6.0 * integral - 2.0;
}

std::pair<double, double> tail_oracle(const CopulaEvaluator& c) {
    auto dyadic_limit = [](const std::function<double(int)>& iterate) {
        double prev = 0.0, prev2 = 0.0;
        for (int k = 4; k <= 24; ++k) {
            const double r = iterate(k);
            if (k >= 6 && std::abs(r - prev) < 1e-4 && std::abs(prev - prev2) < 1e-4) {
                return r;
            }
            prev2 = prev;
            prev = r;
        }
        throw Error("NoConvergence", "tail iterates did not settle within 1e-4");
    };
    const double lower = dyadic_limit([&](int k) {
        const double t = std::ldexp(1.0, -k);
        return c.cdf(t, t) / t;
    });
    const double upper_slope = dyadic_limit([&](int k) {
        const double t = std::ldexp(1.0, -k);
        return (1.0 - c.cdf(1.0 - t, 1.0 - t)) / t;
    });
    auto clamp01 = [](double x) { return std::clamp(x, 0.0, 1.0); };
    return {clamp01(lower), clamp01(2.0 - upper_slope)};
}

MeasureReport oracle_report(const CopulaEvaluator& c, const QuadratureSpec& q,
                            CopulaFamilyTag family) {
    MeasureReport r;
    r.rho_s = rho_oracle(c, q);
    r.tau = tau_oracle(c, q);
    r.xi = xi_oracle(c, q);
    std::tie(r.lambda_lower, r.lambda_upper) = tail_oracle(c);
    r.family = family;
    r.source = MeasureSource::Oracle;
    return r;
}

namespace {

/// Padded partial-sum table: cum(i, j) = sum of delta over rows < i, cols < j.
struct CumTable {
    std::size_t m, n;
    std::vector<double> cum;  // (m+1) x (n+1)

    explicit CumTable(const Matrix& delta) : m(delta.rows()), n(delta.cols()) {
        cum.assign((m + 1) * (n + 1), 0.0);
        for (std::size_t i = 0; i < m; ++i) {
            for (std::size_t j = 0; j < n; ++j) {
                at(i + 1, j + 1) =
                    delta(i, j) + at(i, j + 1) + at(i + 1, j) - at(i, j);
            }
        }
    }
    double& at(std::size_t i, std::size_t j) { return cum[i * (n + 1) + j]; }
    double at(std::size_t i, std::size_t j) const { return cum[i * (n + 1) + j]; }

    double block(std::size_t i, std::size_t j) const { return at(i, j); }
    /// sum over k < i of delta(k, j)
    double above(std::size_t i, std::size_t j) const { return at(i, j + 1) - at(i, j); }
    /// sum over l < j of delta(i, l)
    double left(std::size_t i, std::size_t j) const { return at(i + 1, j) - at(i, j); }
};

std::size_t strip_index(double u, std::size_t cells) {
    return std::min(static_cast<std::size_t>(u * static_cast<double>(cells)), cells - 1);
}

}  // namespace

CopulaEvaluator make_checkerboard_evaluator(const CheckerboardMatrix& delta,
                                            CheckerboardFamily family) {
    auto matrix = std::make_shared<Matrix>(delta.entries());
    auto table = std::make_shared<CumTable>(*matrix);
    const std::size_t m = delta.m();
    const std::size_t n = delta.n();
    const double md = static_cast<double>(m);
    const double nd = static_cast<double>(n);

    CopulaEvaluator ev;
    ev.cells_m = m;
    ev.cells_n = n;

    ev.cdf = [matrix, table, family, md, nd, m, n](double u, double v) {
        if (!(u >= 0.0 && u <= 1.0 && v >= 0.0 && v <= 1.0)) {
            throw Error("OutOfDomain", "cdf outside the unit square");
        }
        const std::size_t i = strip_index(u, m);
        const std::size_t j = strip_index(v, n);
        const double x = u * md - static_cast<double>(i);
        const double y = v * nd - static_cast<double>(j);
        double cell = 0.0;
        switch (family) {
            case CheckerboardFamily::Pi: cell = x * y; break;
            case CheckerboardFamily::Min: cell = std::min(x, y); break;
            case CheckerboardFamily::W: cell = std::max(x + y - 1.0, 0.0); break;
        }
        return table->block(i, j) + table->above(i, j) * y + table->left(i, j) * x +
               (*matrix)(i, j) * cell;
    };

    ev.cdf_slice = [matrix, table, family, md, nd, m, n](double u) {
        const std::size_t i = strip_index(u, m);
        const double x = u * md - static_cast<double>(i);
        PiecewiseLinear slice;
        for (std::size_t j = 0; j < n; ++j) {
            const double jd = static_cast<double>(j);
            const double block = table->block(i, j);
            const double above = table->above(i, j);
            const double left = table->left(i, j);
            const double d = (*matrix)(i, j);
            const double hi = (jd + 1.0) / nd;
            const double base = block + left * x;
            // Written in y = n v - j, then converted to a + b v.
            switch (family) {
                case CheckerboardFamily::Pi: {
                    const double cy = above + d * x;
                    slice.append(hi, base - jd * cy, nd * cy);
                    break;
                }
                case CheckerboardFamily::Min: {
                    const double split = (jd + x) / nd;
                    slice.append(split, base - jd * (above + d), nd * (above + d));
                    slice.append(hi, base + d * x - jd * above, nd * above);
                    break;
                }
                case CheckerboardFamily::W: {
                    const double split = (jd + 1.0 - x) / nd;
                    slice.append(split, base - jd * above, nd * above);
                    slice.append(hi, base + d * (x - 1.0) - jd * (above + d),
                                 nd * (above + d));
                    break;
                }
            }
        }
        return slice;
    };

    ev.partial1_slice = [matrix, table, family, md, nd, m, n](double u) {
        const std::size_t i = strip_index(u, m);
        const double x = u * md - static_cast<double>(i);
        PiecewiseLinear slice;
        for (std::size_t j = 0; j < n; ++j) {
            const double jd = static_cast<double>(j);
            const double left = table->left(i, j);
            const double d = (*matrix)(i, j);
            const double hi = (jd + 1.0) / nd;
            switch (family) {
                case CheckerboardFamily::Pi:
                    slice.append(hi, md * (left - jd * d), md * nd * d);
                    break;
                case CheckerboardFamily::Min:
                    slice.append((jd + x) / nd, md * left, 0.0);
                    slice.append(hi, md * (left + d), 0.0);
                    break;
                case CheckerboardFamily::W:
                    slice.append((jd + 1.0 - x) / nd, md * left, 0.0);
                    slice.append(hi, md * (left + d), 0.0);
                    break;
            }
        }
        return slice;
    };

    ev.partial2_slice = [matrix, table, family, md, nd, m, n](double u) {
        const std::size_t i = strip_index(u, m);
        const double x = u * md - static_cast<double>(i);
        PiecewiseLinear slice;
        for (std::size_t j = 0; j < n; ++j) {
            const double jd = static_cast<double>(j);
            const double above = table->above(i, j);
            const double d = (*matrix)(i, j);
            const double hi = (jd + 1.0) / nd;
            switch (family) {
                case CheckerboardFamily::Pi:
                    slice.append(hi, nd * (above + d * x), 0.0);
                    break;
                case CheckerboardFamily::Min:
                    slice.append((jd + x) / nd, nd * (above + d), 0.0);
                    slice.append(hi, nd * above, 0.0);
                    break;
                case CheckerboardFamily::W:
                    slice.append((jd + 1.0 - x) / nd, nd * above, 0.0);
                    slice.append(hi, nd * (above + d), 0.0);
                    break;
            }
        }
        return slice;
    };

    return ev;
}

CopulaEvaluator make_bernstein_evaluator(const GridCopulaMatrix& grid) {
    auto g = std::make_shared<GridCopulaMatrix>(grid);
    CopulaEvaluator ev;
    ev.cells_m = grid.m();
    ev.cells_n = grid.n();
    ev.cdf = [g](double u, double v) { return eval_bernstein_cdf(*g, u, v); };
    ev.partial1 = [g](double u, double v) { return eval_bernstein_partial1(*g, u, v); };
    ev.partial2 = [g](double u, double v) { return eval_bernstein_partial2(*g, u, v); };
    return ev;
}

CopulaEvaluator make_shuffle_evaluator(const Permutation& p) {
    auto perm = std::make_shared<Permutation>(p);
    const std::size_t n = p.order();
    auto inverse = std::make_shared<std::vector<std::size_t>>(n);
    for (std::size_t k = 0; k < n; ++k) (*inverse)[p.image(k)] = k;
    const double nd = static_cast<double>(n);

    CopulaEvaluator ev;
    ev.cells_m = n;
    ev.cells_n = n;

    ev.cdf = [perm](double u, double v) { return eval_shuffle_cdf(*perm, u, v); };

    ev.partial1_slice = [perm, nd, n](double u) {
        const std::size_t k = strip_index(u, n);
        const double s =
            u + (static_cast<double>(perm->image(k)) - static_cast<double>(k)) / nd;
        PiecewiseLinear slice;
        slice.append(s, 0.0, 0.0);
        slice.append(1.0, 1.0, 0.0);
        return slice;
    };

    ev.partial2_slice = [inverse, nd, n](double u) {
        PiecewiseLinear slice;
        for (std::size_t l = 0; l < n; ++l) {
            const double lo = static_cast<double>(l) / nd;
            const double hi = static_cast<double>(l + 1) / nd;
            // d2 C(u, v) = 1 iff u >= v + (inv(l) - l)/n on cell l.
            const double threshold =
                u - (static_cast<double>((*inverse)[l]) - static_cast<double>(l)) / nd;
            if (threshold >= hi) {
                slice.append(hi, 1.0, 0.0);
            } else if (threshold <= lo) {
                slice.append(hi, 0.0, 0.0);
            } else {
                slice.append(threshold, 1.0, 0.0);
                slice.append(hi, 0.0, 0.0);
            }
        }
        return slice;
    };

    ev.cdf_slice = [perm, inverse, nd, n](double u) {
        const std::size_t k = strip_index(u, n);
        const double x = u * nd - static_cast<double>(k);
        // counts[l] = #{t < k : pi(t) < l}
        std::vector<std::size_t> hist(n + 1, 0);
        for (std::size_t t = 0; t < k; ++t) ++hist[perm->image(t) + 1];
        for (std::size_t l = 1; l <= n; ++l) hist[l] += hist[l - 1];

        PiecewiseLinear slice;
        for (std::size_t l = 0; l < n; ++l) {
            const double lo = static_cast<double>(l) / nd;
            const double hi = static_cast<double>(l + 1) / nd;
            double base = static_cast<double>(hist[l]);
            if (k < n && perm->image(k) < l) base += x;
            const std::size_t t_star = (*inverse)[l];
            if (t_star < k) {
                // term is y over the whole cell: (1/n)(base + n v - l)
                slice.append(hi, (base - static_cast<double>(l)) / nd, 1.0);
            } else if (t_star == k) {
                // term is min(x, y): y below the split, x above
                const double split = (static_cast<double>(l) + x) / nd;
                slice.append(split, (base - static_cast<double>(l)) / nd, 1.0);
                slice.append(hi, (base + x) / nd, 0.0);
            } else {
                slice.append(hi, base / nd, 0.0);
            }
        }
        return slice;
    };

    return ev;
}

CopulaEvaluator make_independence_evaluator() {
    CopulaEvaluator ev;
    ev.cdf = [](double u, double v) { return u * v; };
    ev.partial1 = [](double, double v) { return v; };
    ev.partial2 = [](double u, double) { return u; };
    return ev;
}

CopulaEvaluator make_comonotone_evaluator(std::size_t cells_hint) {
    CopulaEvaluator ev;
    ev.cells_m = cells_hint;
    ev.cells_n = cells_hint;
    ev.cdf = [](double u, double v) { return std::min(u, v); };
    ev.partial1_slice = [](double u) {
        PiecewiseLinear slice;
        slice.append(u, 0.0, 0.0);
        slice.append(1.0, 1.0, 0.0);
        return slice;
    };
    ev.partial2_slice = [](double u) {
        PiecewiseLinear slice;
        slice.append(u, 1.0, 0.0);
        slice.append(1.0, 0.0, 0.0);
        return slice;
    };
    return ev;
}

SampleSet gaussian_factor_sampler(std::size_t count, std::uint64_t seed) {
    if (count == 0) throw Error("TooFewSamples", "count must be >= 1");
    CounterRng rng(seed);
    std::vector<double> xs(count), ys(count);
    for (std::size_t k = 0; k < count; ++k) {
        const double z = rng.next_normal();
        const double eps = rng.next_normal();
        xs[k] = z;
        ys[k] = z + eps;
    }
    return SampleSet(std::move(xs), std::move(ys));
}

}  // namespace copmeas
