// Command-line frontend: solve one instance, sweep experiments from a
// config file or preset, verify guarantees against brute force, generate
// instances, and print the closed-form bounds.
//
// Exit codes: 0 success, 1 usage error, 2 verification failure.

#include <cstdio>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "submax/submax.hpp"

namespace {

struct InstanceFlags {
    std::string kind = "er_graph";
    int n = 100;
    double p = 0.5;
    int m_attach = 10;
    std::uint64_t seed = 1;
    int samples = 0;
    int universe = 0;
    std::string path;
    std::string objective;
    std::string weights;
    bool second_order = false;
    std::string poly_keep;

    void attach(CLI::App* app) {
        app->add_option("--instance", kind,
                        "instance kind: er_graph, ba_graph, graph_file, psd_synthetic, "
                        "psd_csv, coverage, coverage_file, modular")
            ->capture_default_str();
        app->add_option("--n", n, "ground-set size")->capture_default_str();
        app->add_option("--p", p, "edge / coverage probability")->capture_default_str();
        app->add_option("--m-attach", m_attach, "attachments per node (ba_graph)")
            ->capture_default_str();
        app->add_option("--instance-seed", seed, "generator seed")->capture_default_str();
        app->add_option("--samples", samples, "feature-matrix rows (psd_synthetic)");
        app->add_option("--universe", universe, "universe size (coverage)");
        app->add_option("--path", path, "input file (graph_file, psd_csv, coverage_file)");
        app->add_option("--objective", objective, "psd objective: mutual_information or logdet");
        app->add_option("--weights", weights, "comma-separated weights (modular)");
        app->add_flag("--second-order", second_order, "append pairwise feature products (psd_csv)");
        app->add_option("--poly-keep", poly_keep,
                        "comma-separated pair indices to keep from the second-order block");
    }

    submax::InstanceSpec to_spec() const {
        submax::InstanceSpec spec;
        const auto parsed = submax::instance_kind_from_name(kind);
        if (!parsed) throw CLI::ValidationError("--instance", "unknown instance kind '" + kind + "'");
        spec.kind = *parsed;
        spec.n = n;
        spec.p = p;
        spec.m_attach = m_attach;
        spec.seed = seed;
        spec.samples = samples > 0 ? samples : std::max(1, 2 * n);
        spec.universe = universe > 0 ? universe : std::max(1, 2 * n);
        spec.path = path;
        spec.objective = objective;
        spec.second_order = second_order;
        if (!poly_keep.empty()) {
            std::vector<int> keep;
            for (const auto& part : submax::detail::split_list(poly_keep)) {
                keep.push_back(std::stoi(part));
            }
            spec.poly_keep = std::move(keep);
        }
        if (!weights.empty()) {
            for (const auto& part : submax::detail::split_list(weights)) {
                spec.weights.push_back(std::stod(part));
            }
        }
        return spec;
    }
};

struct AlgorithmFlags {
    std::string name = "sg";
    int k = 10;
    std::string epsilon = "auto";
    double delta = 0.1;
    std::uint64_t seed = 0;

    void attach(CLI::App* app, bool with_k = true) {
        app->add_option("--alg", name, "sg, msg, greedy, random_greedy, brute_force")
            ->capture_default_str();
        if (with_k) app->add_option("--k", k, "cardinality budget")->capture_default_str();
        app->add_option("--epsilon", epsilon, "sampling parameter in (0,1), or 'auto'")
            ->capture_default_str();
        app->add_option("--delta", delta, "padding parameter in (0,1) (msg)")->capture_default_str();
        app->add_option("--seed", seed, "solver seed")->capture_default_str();
    }

    submax::AlgorithmSpec to_spec() const {
        submax::AlgorithmSpec spec;
        const auto parsed = submax::algorithm_from_name(name);
        if (!parsed) throw CLI::ValidationError("--alg", "unknown algorithm '" + name + "'");
        spec.variant = *parsed;
        spec.params.k = k;
        spec.params.delta = delta;
        spec.params.seed = seed;
        if (epsilon == "auto") {
            spec.params.epsilon_mode = submax::EpsilonMode::Auto;
        } else {
            spec.params.epsilon = std::stod(epsilon);
        }
        return spec;
    }

    std::optional<double> epsilon_or_auto() const {
        if (epsilon == "auto") return std::nullopt;
        return std::stod(epsilon);
    }
};

int run_solve(const InstanceFlags& inst, const AlgorithmFlags& alg, std::uint64_t cap,
              bool timing, const std::string& out_path) {
    const std::string json = submax::solve_to_json(inst.to_spec(), alg.to_spec(), cap, timing);
    if (out_path.empty()) {
        std::cout << json << "\n";
    } else {
        std::ofstream out(out_path);
        if (!out) throw std::runtime_error("cannot write " + out_path);
        out << json << "\n";
    }
    return 0;
}

int run_bounds(const AlgorithmFlags& alg, int n) {
    const auto b = submax::theoretical_bounds(alg.to_spec().variant, n, alg.k,
                                              alg.epsilon_or_auto(), alg.delta);
    std::printf("algorithm:           %s\n", alg.name.c_str());
    std::printf("n=%d k=%d epsilon=%.6g delta=%.6g\n", n, alg.k, b.epsilon_effective, alg.delta);
    if (b.virtual_ground != n) std::printf("virtual ground size: %lld\n",
                                           static_cast<long long>(b.virtual_ground));
    std::printf("approx ratio:        %.6g\n", b.approx_ratio);
    std::printf("expected queries:    %.6g\n", b.expected_queries);
    std::printf("worst-case queries:  %.6g\n", b.worst_case_queries);
    std::printf("guarantee valid:     %s\n", b.guarantee_valid ? "yes" : "no (heuristic range)");
    return 0;
}

int run_verify(const InstanceFlags& inst, const AlgorithmFlags& alg, int trials,
               std::uint64_t base_seed, std::uint64_t cap) {
    const auto report = submax::verify_guarantees(inst.to_spec(), alg.to_spec(), trials,
                                                  base_seed, cap);
    std::printf("instance:      %s\n", inst.to_spec().describe().c_str());
    std::printf("algorithm:     %s  (k=%d, %d trials)\n", report.algorithm.c_str(), alg.k,
                report.trials);
    std::printf("optimum f(A*): %.10g\n", report.optimum);
    std::printf("mean ratio:    %.6f   (SEM %.6f)\n", report.mean_ratio, report.sem_ratio);
    std::printf("floor:         %.6f   (ratio must be >= floor - 3*SEM)\n", report.floor);
    std::printf("mean queries:  %.2f\n", report.mean_queries);
    std::printf("%s\n", report.pass ? "PASS" : "FAIL");
    return report.pass ? 0 : 2;
}

int run_bench(const std::string& config_path, const std::string& preset, bool paper_scale,
              const std::string& out_override, std::optional<int> trials_override,
              std::optional<std::uint64_t> seed_override, std::optional<std::uint64_t> cap_override) {
    submax::ExperimentSpec spec;
    if (!preset.empty()) {
        spec = submax::preset_experiment(preset, paper_scale);
    } else if (!config_path.empty()) {
        spec = submax::experiment_from_config_file(config_path);
    } else {
        throw CLI::ValidationError("bench", "need --config FILE or --preset NAME");
    }
    if (!out_override.empty()) spec.output = out_override;
    if (trials_override) spec.trials = *trials_override;
    if (seed_override) spec.base_seed = *seed_override;
    if (cap_override) spec.enumeration_cap = *cap_override;

    const auto result = submax::run_experiment(spec);
    std::printf("wrote %s (%zu rows) and %s\n", result.csv_path.c_str(), result.rows.size(),
                result.json_path.c_str());
    if (result.any_error) std::printf("some cells failed; see the errors array in the summary\n");
    if (result.any_violation) {
        std::printf("FAIL: a run exceeded its worst-case query ceiling\n");
        return 2;
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"stochastic greedy solvers for non-monotone submodular maximization"};
    app.require_subcommand(1);

    std::uint64_t cap = submax::kDefaultEnumerationCap;
    app.add_option("--cap", cap, "brute-force enumeration cap")->capture_default_str();

    // solve
    auto* solve = app.add_subcommand("solve", "run one algorithm on one instance, print JSON");
    InstanceFlags solve_inst;
    AlgorithmFlags solve_alg;
    solve_inst.attach(solve);
    solve_alg.attach(solve);
    bool solve_timing = false;
    std::string solve_out;
    solve->add_flag("--timing", solve_timing, "include wall time (breaks byte-identical output)");
    solve->add_option("--out", solve_out, "write JSON to a file instead of stdout");

    // bench
    auto* bench = app.add_subcommand("bench", "run an experiment sweep, write CSV + summary JSON");
    std::string bench_config, bench_preset, bench_out;
    bool paper_scale = false;
    std::optional<int> bench_trials;
    std::optional<std::uint64_t> bench_seed, bench_cap;
    bench->add_option("--config", bench_config, "flat key=value experiment config");
    bench->add_option("--preset", bench_preset,
                      "built-in experiment: delta_sweep, er_cut, ba_cut, feature_mi");
    bench->add_flag("--paper-scale", paper_scale, "use the original (larger) preset sizes");
    bench->add_option("--out", bench_out, "output path prefix (overrides config)");
    bench->add_option("--trials", bench_trials, "trial count (overrides config)");
    bench->add_option("--seed", bench_seed, "base seed (overrides config)");
    bench->add_option("--cap", bench_cap, "enumeration cap (overrides config)");

    // verify
    auto* verify = app.add_subcommand("verify", "compare mean ratio against the theoretical floor");
    InstanceFlags verify_inst;
    AlgorithmFlags verify_alg;
    verify_inst.attach(verify);
    verify_alg.attach(verify);
    int verify_trials = 1000;
    std::uint64_t verify_seed = 0;
    verify->add_option("--trials", verify_trials, "number of seeded runs")->capture_default_str();
    verify->add_option("--base-seed", verify_seed, "first trial seed")->capture_default_str();

    // gen
    auto* gen = app.add_subcommand("gen", "materialize a generated instance to a file");
    InstanceFlags gen_inst;
    gen_inst.attach(gen);
    std::string gen_out;
    gen->add_option("--out", gen_out, "output file")->required();

    // bounds
    auto* bounds = app.add_subcommand("bounds", "print closed-form ratio and query bounds");
    AlgorithmFlags bounds_alg;
    bounds_alg.attach(bounds);
    int bounds_n = 100;
    bounds->add_option("--n", bounds_n, "ground-set size")->capture_default_str();

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 1;
    }

    try {
        if (solve->parsed()) return run_solve(solve_inst, solve_alg, cap, solve_timing, solve_out);
        if (bench->parsed()) {
            return run_bench(bench_config, bench_preset, paper_scale, bench_out, bench_trials,
                             bench_seed, bench_cap);
        }
        if (verify->parsed()) return run_verify(verify_inst, verify_alg, verify_trials, verify_seed, cap);
        if (gen->parsed()) {
            const std::string what = submax::materialize_instance(gen_inst.to_spec(), gen_out);
            std::printf("wrote %s: %s\n", gen_out.c_str(), what.c_str());
            return 0;
        }
        if (bounds->parsed()) return run_bounds(bounds_alg, bounds_n);
    } catch (const CLI::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 1;
}
