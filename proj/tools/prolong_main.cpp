#include <chrono>
#include <cstdint>
#include <filesystem>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#ifdef _OPENMP
#include <omp.h>
#endif

#include "prolong/experiments.hpp"
#include "prolong/io.hpp"
#include "prolong/oracles.hpp"

namespace {

using namespace prolong;
using io::json;

constexpr const char* kVersion = "1.0.0";

struct GlobalArgs {
    std::string config_path;
    std::uint64_t seed = 1;
    bool seed_given = false;
    std::string out_dir = ".";
    int jobs = 0;
};

void add_common_flags(CLI::App* cmd, GlobalArgs& args) {
    cmd->add_option("--config", args.config_path, "Run configuration file");
    cmd->add_option("--seed", args.seed, "Deterministic RNG seed")
        ->each([&args](const std::string&) { args.seed_given = true; });
    cmd->add_option("--out", args.out_dir, "Output directory");
    cmd->add_option("--jobs", args.jobs, "Concurrent trial workers");
}

json load_config(const GlobalArgs& args) {
    if (args.config_path.empty()) return json::object();
    return json::parse(io::read_file(args.config_path));
}

void apply_jobs(int jobs) {
#ifdef _OPENMP
    if (jobs > 0) omp_set_num_threads(jobs);
#else
    (void)jobs;
#endif
}

std::string out_path(const GlobalArgs& args, const std::string& name) {
    std::filesystem::create_directories(args.out_dir);
    return (std::filesystem::path(args.out_dir) / name).string();
}

void emit_manifest(const GlobalArgs& args, const std::string& command, const json& config,
                   double duration_seconds, const std::vector<std::string>& outputs) {
    io::RunManifest manifest;
    manifest.command = command;
    manifest.config_echo = config.dump();
    manifest.seed = args.seed;
    manifest.version = kVersion;
    manifest.duration_seconds = duration_seconds;
    for (const std::string& file : outputs)
        manifest.output_digests[std::filesystem::path(file).filename().string()] =
            io::fnv1a_digest(io::read_file(file));
    io::write_manifest(out_path(args, command + "_manifest.json"), manifest);
}

Complex complex_from_entry(const json& j) {
    if (j.is_array()) return Complex(j.at(0).get<double>(), j.at(1).get<double>());
    return Complex(j.get<double>(), 0.0);
}

// Points file: JSON array of points; each point is an array of reals or of
// [re, im] pairs. Stored column-wise, d x n.
CMatrix load_points(const std::string& path) {
    const json j = json::parse(io::read_file(path));
    if (!j.is_array()) throw Error("points file must be a JSON array");
    if (j.empty()) return CMatrix(0, 0);
    const Eigen::Index d = static_cast<Eigen::Index>(j.at(0).size());
    CMatrix points(d, static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index c = 0; c < points.cols(); ++c) {
        const json& pt = j.at(c);
        if (static_cast<Eigen::Index>(pt.size()) != d)
            throw DimensionMismatch("inconsistent point dimensions in " + path);
        for (Eigen::Index r = 0; r < d; ++r) points(r, c) = complex_from_entry(pt.at(r));
    }
    return points;
}

CVector load_values(const std::string& path) {
    const json j = json::parse(io::read_file(path));
    CVector v(static_cast<Eigen::Index>(j.size()));
    for (Eigen::Index i = 0; i < v.size(); ++i) v[i] = complex_from_entry(j.at(i));
    return v;
}

double target_value(const std::string& name, double x) {
    if (name == "elliptic_e") return oracles::elliptic_e(x);
    if (name == "chirp") return oracles::chirp(x);
    if (name == "homotopy_phi") return oracles::homotopy_phi(x);
    if (name == "zero") return 0.0;
    throw UnsupportedId("unknown target function: " + name);
}

int cmd_fit(const GlobalArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const json config = load_config(args);

    kernels::KernelSpec spec;
    const json kernel_cfg = config.value("kernel", json("omega"));
    if (kernel_cfg.is_string())
        spec = kernels::KernelSpec::make(kernels::parse_id(kernel_cfg.get<std::string>()));
    else
        spec = io::spec_from_json(kernel_cfg);

    CMatrix nodes;
    const json node_cfg = config.at("nodes");
    if (node_cfg.contains("file")) {
        nodes = load_points(node_cfg.at("file").get<std::string>());
    } else {
        const int n = node_cfg.at("count").get<int>();
        const double a = node_cfg.value("min", -0.9);
        const double b = node_cfg.value("max", 0.9);
        const Eigen::VectorXd x = interp::chebyshev_nodes(n, a, b);
        nodes = CMatrix(1, n);
        for (int i = 0; i < n; ++i) nodes(0, i) = Complex(x[i], 0.0);
    }

    CVector values;
    const json value_cfg = config.at("values");
    if (value_cfg.contains("file")) {
        values = load_values(value_cfg.at("file").get<std::string>());
    } else {
        const std::string target = value_cfg.at("target").get<std::string>();
        values.resize(nodes.cols());
        for (Eigen::Index i = 0; i < nodes.cols(); ++i)
            values[i] = Complex(target_value(target, nodes(0, i).real()), 0.0);
    }

    const int depth = config.value("depth", 2);
    interp::InterpNetwork net;
    interp::GramSolveReport report;
    if (depth == 2) {
        auto fitted = interp::fit(spec, nodes, values);
        net = fitted.first;
        report = fitted.second;
    } else {
        net = interp::fit_deep(spec, nodes, values, depth);
    }

    const std::string model_path = out_path(args, "model.json");
    io::save_model(model_path, net);
    const json report_json{{"cond_estimate", report.cond_estimate},
                           {"residual_norm", report.residual_norm},
                           {"jitter", report.jitter},
                           {"solver_path", report.solver_path}};
    const std::string report_path = out_path(args, "fit_report.json");
    io::atomic_write(report_path, report_json.dump(2) + "\n");
    emit_manifest(args, "fit", config,
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(),
                  {model_path, report_path});
    std::cout << "model written to " << model_path << "\n";
    return 0;
}

int cmd_eval(const GlobalArgs& args, const std::string& model_opt, const std::string& input_opt) {
    const auto t0 = std::chrono::steady_clock::now();
    const json config = load_config(args);
    const std::string model_path =
        !model_opt.empty() ? model_opt : config.at("model").get<std::string>();
    const std::string input_path =
        !input_opt.empty() ? input_opt : config.at("input").get<std::string>();

    const interp::InterpNetwork net = io::load_model(model_path);
    const CMatrix points = load_points(input_path);

    std::vector<std::string> columns;
    for (Eigen::Index r = 0; r < net.nodes.rows(); ++r)
        columns.push_back("x" + std::to_string(r));
    columns.push_back("prediction_re");
    columns.push_back("prediction_im");

    std::vector<std::vector<double>> rows;
    if (points.cols() > 0) {
        const CVector pred = interp::evaluate_batch(net, points);
        for (Eigen::Index c = 0; c < points.cols(); ++c) {
            std::vector<double> row;
            for (Eigen::Index r = 0; r < points.rows(); ++r) row.push_back(points(r, c).real());
            row.push_back(pred[c].real());
            row.push_back(pred[c].imag());
            rows.push_back(std::move(row));
        }
    }
    const std::string csv_path = out_path(args, "eval.csv");
    io::write_csv(csv_path, columns, rows);
    emit_manifest(args, "eval", config,
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(),
                  {csv_path});
    std::cout << "predictions written to " << csv_path << "\n";
    return 0;
}

int cmd_reduce(const GlobalArgs& args) {
    const auto t0 = std::chrono::steady_clock::now();
    const json config = load_config(args);

    modelred::ProductSymbol product;
    for (const json& path : config.at("symbols"))
        product.factors.push_back(io::load_symbol(path.get<std::string>()));
    const std::vector<int> orders = config.at("orders").get<std::vector<int>>();

    const auto reduction = modelred::marginal_aak(product, orders);

    std::vector<std::string> outputs;
    for (size_t j = 0; j < reduction.factors.size(); ++j) {
        const std::string path = out_path(args, "approximant_" + std::to_string(j) + ".json");
        io::save_approximant(path, reduction.factors[j]);
        outputs.push_back(path);
    }
    json bounds{{"schmidt_values", reduction.schmidt_values},
                {"bound_sqrt_d", reduction.bound_sqrt_d},
                {"bound_product", reduction.bound_product}};
    json achieved = json::array();
    for (const auto& f : reduction.factors) achieved.push_back(f.achieved_error);
    bounds["achieved_errors"] = achieved;
    const std::string bounds_path = out_path(args, "reduce_report.json");
    io::atomic_write(bounds_path, bounds.dump(2) + "\n");
    outputs.push_back(bounds_path);

    emit_manifest(args, "reduce", config,
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(),
                  outputs);
    std::cout << "bound sqrt(d)*prod s = " << reduction.bound_sqrt_d << "\n";
    return 0;
}

int cmd_bench(const GlobalArgs& args, const std::string& experiment_id) {
    const auto t0 = std::chrono::steady_clock::now();
    const json config = load_config(args);

    experiments::ExperimentConfig cfg;
    cfg.id = !experiment_id.empty() ? experiment_id : config.value("experiment", "");
    cfg.seed = args.seed_given ? args.seed : config.value("seed", args.seed);
    cfg.jobs = args.jobs;
    cfg.nodes = config.value("nodes", 0);
    cfg.dimension = config.value("dimension", 0);
    cfg.trials = config.value("trials", 0);
    cfg.noise = config.value("noise", 0.1);
    cfg.out_dir = args.out_dir;
    apply_jobs(args.jobs);

    const auto report = experiments::run_experiment(cfg);

    const std::string csv_path = out_path(args, report.id + "_report.csv");
    io::write_csv(csv_path, report.columns, report.rows);
    json summary = json::object();
    for (const auto& m : report.summary) summary[m.name] = m.value;
    const std::string summary_path = out_path(args, report.id + "_summary.json");
    io::atomic_write(summary_path, summary.dump(2) + "\n");

    emit_manifest(args, "bench", config,
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(),
                  {csv_path, summary_path});
    std::cout << summary.dump(2) << "\n";
    return 0;
}

int cmd_nodes(const GlobalArgs& args, int count, double lo, double hi) {
    const auto t0 = std::chrono::steady_clock::now();
    const json config = load_config(args);
    const int n = count > 0 ? count : config.value("count", 30);
    const double a = config.is_object() && config.contains("min") ? config.at("min").get<double>() : lo;
    const double b = config.is_object() && config.contains("max") ? config.at("max").get<double>() : hi;

    const Eigen::VectorXd x = interp::chebyshev_nodes(n, a, b);
    std::vector<std::vector<double>> rows;
    for (int i = 0; i < n; ++i) rows.push_back({static_cast<double>(i), x[i]});
    const std::string csv_path = out_path(args, "nodes.csv");
    io::write_csv(csv_path, {"index", "x"}, rows);
    emit_manifest(args, "nodes", config,
                  std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count(),
                  {csv_path});
    std::cout << "nodes written to " << csv_path << "\n";
    return 0;
}

int dispatch(int argc, char** argv) {
    CLI::App app{"Kernel interpolation networks with Hankel-norm model reduction"};
    app.require_subcommand(1);

    GlobalArgs args;
    std::string eval_model, eval_input, bench_id;
    int nodes_count = 0;
    double nodes_min = -0.9, nodes_max = 0.9;

    CLI::App* fit = app.add_subcommand("fit", "Train an interpolating kernel network");
    add_common_flags(fit, args);

    CLI::App* eval = app.add_subcommand("eval", "Evaluate a saved model on input points");
    add_common_flags(eval, args);
    eval->add_option("--model", eval_model, "Model file");
    eval->add_option("--input", eval_input, "Input points file");

    CLI::App* reduce = app.add_subcommand("reduce", "Hankel-norm reduce product symbols");
    add_common_flags(reduce, args);

    CLI::App* bench = app.add_subcommand("bench", "Run a benchmark experiment");
    add_common_flags(bench, args);
    bench->add_option("experiment", bench_id, "Experiment id");

    CLI::App* nodes = app.add_subcommand("nodes", "Generate Chebyshev nodes");
    add_common_flags(nodes, args);
    nodes->add_option("--count", nodes_count, "Node count");
    nodes->add_option("--min", nodes_min, "Interval lower end");
    nodes->add_option("--max", nodes_max, "Interval upper end");

    CLI11_PARSE(app, argc, argv);

    if (fit->parsed()) return cmd_fit(args);
    if (eval->parsed()) return cmd_eval(args, eval_model, eval_input);
    if (reduce->parsed()) return cmd_reduce(args);
    if (bench->parsed()) return cmd_bench(args, bench_id);
    if (nodes->parsed()) return cmd_nodes(args, nodes_count, nodes_min, nodes_max);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return dispatch(argc, argv);
    } catch (const prolong::NotFound& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const prolong::UnsupportedId& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const prolong::SingularGram& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const prolong::DuplicateNodes& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const prolong::DuplicatePoints& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const prolong::DomainViolation& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const prolong::SingularValueCluster& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 4;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 10;
    }
}
