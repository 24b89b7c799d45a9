// Command-line front end: closed-form measures for checkerboard-type,
// Bernstein and shuffle-of-min copulas, xi estimation from CSV samples,
// oracle cross-checks, and CSV experiment tables.

#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "copmeas/bernstein.hpp"
#include "copmeas/checkerboard.hpp"
#include "copmeas/checkerboard_measures.hpp"
#include "copmeas/error.hpp"
#include "copmeas/matrix_io.hpp"
#include "copmeas/measure_report.hpp"
#include "copmeas/oracle.hpp"
#include "copmeas/sample_set.hpp"
#include "copmeas/shuffle.hpp"
#include "copmeas/xi_estimators.hpp"

namespace {

using copmeas::CheckerboardFamily;
using copmeas::MeasureReport;

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            out.push_back(std::stoi(field));
        } catch (const std::exception&) {
            throw copmeas::Error("ParseError", "bad integer '" + field + "' in list");
        }
    }
    if (out.empty()) throw copmeas::Error("ParseError", "empty integer list");
    return out;
}

std::vector<std::size_t> parse_size_list(const std::string& text) {
    std::vector<std::size_t> out;
    for (int v : parse_int_list(text)) {
        if (v <= 0) throw copmeas::Error("ParseError", "list entries must be positive");
        out.push_back(static_cast<std::size_t>(v));
    }
    return out;
}

std::vector<double> parse_double_list(const std::string& text) {
    std::vector<double> out;
    std::stringstream ss(text);
    std::string field;
    while (std::getline(ss, field, ',')) {
        try {
            out.push_back(std::stod(field));
        } catch (const std::exception&) {
            throw copmeas::Error("ParseError", "bad number '" + field + "' in list");
        }
    }
    if (out.empty()) throw copmeas::Error("ParseError", "empty number list");
    return out;
}

nlohmann::json report_to_json(const MeasureReport& r, std::uint64_t seed) {
    return nlohmann::json{{"family", copmeas::family_name(r.family)},
                          {"source", copmeas::source_name(r.source)},
                          {"rho_s", r.rho_s},
                          {"tau", r.tau},
                          {"xi", r.xi},
                          {"lambda_lower", r.lambda_lower},
                          {"lambda_upper", r.lambda_upper},
                          {"seed", seed}};
}

void print_report_text(std::ostream& out, const MeasureReport& r, std::uint64_t seed) {
    out.precision(12);
    out << "family: " << copmeas::family_name(r.family) << "\n"
        << "source: " << copmeas::source_name(r.source) << "\n"
        << "rho_s:  " << r.rho_s << "\n"
        << "tau:    " << r.tau << "\n"
        << "xi:     " << r.xi << "\n"
        << "lambda_lower: " << r.lambda_lower << "\n"
        << "lambda_upper: " << r.lambda_upper << "\n"
        << "seed:   " << seed << "\n";
}

CheckerboardFamily family_from_string(const std::string& name) {
    if (name == "pi") return CheckerboardFamily::Pi;
    if (name == "min") return CheckerboardFamily::Min;
    if (name == "w") return CheckerboardFamily::W;
    throw copmeas::Error("ParseError", "unknown family '" + name + "'");
}

std::ofstream open_output(const std::string& path) {
    std::ofstream out(path);
    if (!out) throw copmeas::Error("IoError", "cannot write '" + path + "'");
    return out;
}

struct Options {
    std::string matrix_path;
    std::string family = "pi";
    std::string shuffle;
    std::string input_path;
    std::string output_path;
    std::string variant = "avg";
    std::string model = "gaussian-factor";
    std::string ns = "1000,10000,100000";
    std::string kappas = "0.3333333333333333";
    double kappa = 1.0 / 3.0;
    std::uint64_t seed = 0;
    std::size_t count = 1000;
    std::size_t replicates = 10;
    int points = 8;
    int threads = 1;
    bool json = false;
};

int run_measures(const Options& opt) {
    MeasureReport report;
    if (!opt.shuffle.empty()) {
        const auto perm = copmeas::Permutation::from_one_based(parse_int_list(opt.shuffle));
        report = copmeas::shuffle_measures(perm);
    } else if (opt.family == "bernstein") {
        const auto delta = copmeas::validate_checkerboard(
            copmeas::read_matrix_file(opt.matrix_path));
        report = copmeas::bernstein_report(copmeas::cumulate(delta));
    } else {
        const auto delta = copmeas::validate_checkerboard(
            copmeas::read_matrix_file(opt.matrix_path));
        report = copmeas::checkerboard_report(delta, family_from_string(opt.family));
    }
    if (opt.json) {
        std::cout << report_to_json(report, opt.seed).dump(2) << "\n";
    } else {
        print_report_text(std::cout, report, opt.seed);
    }
    return 0;
}

int run_estimate(const Options& opt) {
    const auto sample = copmeas::SampleSet::read_csv_file(opt.input_path);
    const auto variant = copmeas::variant_from_name(opt.variant);
    double value;
    std::size_t g = 0;
    if (variant == copmeas::EstimatorVariant::Classical) {
        value = copmeas::xi_classical(sample, opt.seed);
    } else {
        copmeas::EstimatorConfig cfg;
        cfg.kappa = opt.kappa;
        cfg.seed = opt.seed;
        cfg.variant = variant;
        value = copmeas::xi_checkerboard_estimate(sample, cfg);
        g = copmeas::grid_side(sample.size(), opt.kappa);
    }
    if (opt.json) {
        nlohmann::json j{{"variant", copmeas::variant_name(variant)},
                         {"kappa", opt.kappa},
                         {"n", sample.size()},
                         {"grid", g},
                         {"xi", value},
                         {"seed", opt.seed}};
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout.precision(12);
        std::cout << "variant: " << copmeas::variant_name(variant) << "\n"
                  << "n:       " << sample.size() << "\n";
        if (g) std::cout << "grid:    " << g << "\n";
        std::cout << "xi:      " << value << "\n"
                  << "seed:    " << opt.seed << "\n";
    }
    return 0;
}

int run_sample(const Options& opt) {
    const auto perm = copmeas::Permutation::from_one_based(parse_int_list(opt.shuffle));
    const auto sample = copmeas::sample_shuffle(perm, opt.count, opt.seed);
    auto out = open_output(opt.output_path);
    out << "# seed=" << opt.seed << "\n";
    sample.write_csv(out);
    return 0;
}

int run_oracle(const Options& opt) {
    const auto delta =
        copmeas::validate_checkerboard(copmeas::read_matrix_file(opt.matrix_path));
    const auto family = family_from_string(opt.family);
    const auto closed = copmeas::checkerboard_report(delta, family);
    copmeas::QuadratureSpec spec;
    spec.points_per_cell = opt.points;
    spec.threads = opt.threads;
    const auto numeric = copmeas::oracle_report(
        copmeas::make_checkerboard_evaluator(delta, family), spec, closed.family);

    if (opt.json) {
        nlohmann::json j{{"closed_form", report_to_json(closed, opt.seed)},
                         {"oracle", report_to_json(numeric, opt.seed)},
                         {"diff",
                          {{"rho_s", numeric.rho_s - closed.rho_s},
                           {"tau", numeric.tau - closed.tau},
                           {"xi", numeric.xi - closed.xi},
                           {"lambda_lower", numeric.lambda_lower - closed.lambda_lower},
                           {"lambda_upper", numeric.lambda_upper - closed.lambda_upper}}},
                         {"seed", opt.seed}};
        std::cout << j.dump(2) << "\n";
        return 0;
    }
    std::cout.precision(12);
    std::cout << "measure        closed-form        oracle             diff\n";
    const char* names[] = {"rho_s", "tau", "xi", "lambda_lower", "lambda_upper"};
    const double cf[] = {closed.rho_s, closed.tau, closed.xi, closed.lambda_lower,
                         closed.lambda_upper};
    const double oc[] = {numeric.rho_s, numeric.tau, numeric.xi, numeric.lambda_lower,
                         numeric.lambda_upper};
    for (int k = 0; k < 5; ++k) {
        std::cout << names[k];
        for (std::size_t pad = std::string(names[k]).size(); pad < 15; ++pad)
            std::cout << ' ';
        std::cout << cf[k] << "  " << oc[k] << "  " << (oc[k] - cf[k]) << "\n";
    }
    std::cout << "seed: " << opt.seed << "\n";
    return 0;
}

int run_experiment_convergence(const Options& opt) {
    const auto model = copmeas::experiment_model_from_name(opt.model);
    const auto ns = parse_size_list(opt.ns);
    const auto kappas = parse_double_list(opt.kappas);
    const auto rows = copmeas::convergence_experiment(model, ns, kappas, opt.replicates,
                                                      opt.seed, opt.threads);
    auto out = open_output(opt.output_path);
    out.precision(17);
    out << "# seed=" << opt.seed << "\n";
    out << "model,n,kappa,replicate,variant,value\n";
    for (const auto& row : rows) {
        out << copmeas::experiment_model_name(row.model) << ',' << row.n << ',' << row.kappa
            << ',' << row.replicate << ',' << copmeas::variant_name(row.variant) << ','
            << row.value << '\n';
    }
    std::cout << "wrote " << rows.size() << " rows to " << opt.output_path << " (seed "
              << opt.seed << ")\n";
    return 0;
}

int run_experiment_timing(const Options& opt) {
    const auto ns = parse_size_list(opt.ns);
    const auto rows = copmeas::timing_experiment(ns, opt.seed);
    auto out = open_output(opt.output_path);
    out.precision(6);
    out << "# seed=" << opt.seed << "\n";
    out << "estimator,n,millis\n";
    for (const auto& row : rows) {
        out << row.estimator << ',' << row.n << ',' << std::fixed << row.millis << '\n';
    }
    std::cout << "wrote " << rows.size() << " rows to " << opt.output_path << " (seed "
              << opt.seed << ")\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Association measures for copula approximations and xi estimators"};
    app.require_subcommand(1);
    Options opt;

    auto* measures = app.add_subcommand(
        "measures", "Closed-form rho/tau/xi/tails for a matrix family or a shuffle");
    measures->add_option("--matrix", opt.matrix_path,
                         "mass matrix file (CSV rows or JSON {m,n,entries})");
    measures->add_option("--family", opt.family, "pi | min | w | bernstein");
    measures->add_option("--shuffle", opt.shuffle, "1-based permutation, e.g. 2,3,1");
    measures->add_flag("--json", opt.json, "emit JSON");

    auto* estimate =
        app.add_subcommand("estimate", "Estimate Chatterjee's xi from paired CSV samples");
    estimate->add_option("--in", opt.input_path, "samples CSV with header x,y")->required();
    estimate->add_option("--variant", opt.variant, "avg | upper | lower | classical");
    estimate->add_option("--kappa", opt.kappa, "grid exponent in (0,1]");
    estimate->add_option("--seed", opt.seed, "tie-breaking seed");
    estimate->add_flag("--json", opt.json, "emit JSON");

    auto* sample = app.add_subcommand("sample", "Draw exact samples from a shuffle copula");
    sample->add_option("--shuffle", opt.shuffle, "1-based permutation")->required();
    sample->add_option("--count", opt.count, "number of pairs")->required();
    sample->add_option("--seed", opt.seed, "sampler seed");
    sample->add_option("--out", opt.output_path, "output CSV path")->required();

    auto* oracle = app.add_subcommand(
        "oracle", "Quadrature cross-check of the checkerboard closed forms");
    oracle->add_option("--matrix", opt.matrix_path, "mass matrix file")->required();
    oracle->add_option("--family", opt.family, "pi | min | w");
    oracle->add_option("--points", opt.points, "Gauss-Legendre points per cell");
    oracle->add_option("--threads", opt.threads, "quadrature threads");
    oracle->add_flag("--json", opt.json, "emit JSON");

    auto* experiment = app.add_subcommand("experiment", "Batch experiment tables (CSV)");
    experiment->require_subcommand(1);
    auto* convergence = experiment->add_subcommand(
        "convergence", "Estimator values across sample sizes and kappas");
    convergence->add_option("--model", opt.model,
                            "gaussian-factor | independence | comonotone");
    convergence->add_option("--ns", opt.ns, "comma-separated sample sizes");
    convergence->add_option("--kappas", opt.kappas, "comma-separated grid exponents");
    convergence->add_option("--replicates", opt.replicates, "replicates per cell");
    convergence->add_option("--seed", opt.seed, "base seed");
    convergence->add_option("--threads", opt.threads, "worker threads");
    convergence->add_option("--out", opt.output_path, "output CSV path")->required();
    auto* timing =
        experiment->add_subcommand("timing", "Wall-clock comparison of the estimators");
    timing->add_option("--ns", opt.ns, "comma-separated sample sizes");
    timing->add_option("--seed", opt.seed, "base seed");
    timing->add_option("--out", opt.output_path, "output CSV path")->required();

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n";
        return 2;
    }

    try {
        if (measures->parsed()) {
            if (opt.shuffle.empty() && opt.matrix_path.empty()) {
                std::cerr << "measures needs --matrix or --shuffle\n";
                return 2;
            }
            return run_measures(opt);
        }
        if (estimate->parsed()) return run_estimate(opt);
        if (sample->parsed()) return run_sample(opt);
        if (oracle->parsed()) return run_oracle(opt);
        if (experiment->parsed()) {
            if (convergence->parsed()) return run_experiment_convergence(opt);
            if (timing->parsed()) return run_experiment_timing(opt);
        }
    } catch (const copmeas::Error& e) {
        std::cerr << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
