#pragma once

// Experiment harness: instance construction from specs or files, seeded
// multi-trial sweeps over (algorithm, k) grids with CSV + JSON output,
// and Monte-Carlo verification of the approximation guarantees against
// brute-force optima.

#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "submax/algorithms.hpp"
#include "submax/core.hpp"
#include "submax/objectives.hpp"

namespace submax {

enum class InstanceKind {
    ErGraph,
    BaGraph,
    GraphFile,
    PsdSynthetic,
    PsdCsv,
    Coverage,
    CoverageFile,
    Modular,
};

inline const char* instance_kind_name(InstanceKind k) {
    switch (k) {
        case InstanceKind::ErGraph: return "er_graph";
        case InstanceKind::BaGraph: return "ba_graph";
        case InstanceKind::GraphFile: return "graph_file";
        case InstanceKind::PsdSynthetic: return "psd_synthetic";
        case InstanceKind::PsdCsv: return "psd_csv";
        case InstanceKind::Coverage: return "coverage";
        case InstanceKind::CoverageFile: return "coverage_file";
        case InstanceKind::Modular: return "modular";
    }
    return "?";
}

inline std::optional<InstanceKind> instance_kind_from_name(const std::string& name) {
    if (name == "er_graph" || name == "er") return InstanceKind::ErGraph;
    if (name == "ba_graph" || name == "ba") return InstanceKind::BaGraph;
    if (name == "graph_file") return InstanceKind::GraphFile;
    if (name == "psd_synthetic") return InstanceKind::PsdSynthetic;
    if (name == "psd_csv") return InstanceKind::PsdCsv;
    if (name == "coverage") return InstanceKind::Coverage;
    if (name == "coverage_file") return InstanceKind::CoverageFile;
    if (name == "modular") return InstanceKind::Modular;
    return std::nullopt;
}

// Generator provenance plus everything needed to materialize an objective.
struct InstanceSpec {
    InstanceKind kind = InstanceKind::ErGraph;
    int n = 100;
    double p = 0.5;                    // er edge probability / coverage item probability
    int m_attach = 1;                  // ba attachment count
    std::uint64_t seed = 0;
    int samples = 1;                   // psd_synthetic: rows of the feature matrix
    int universe = 1;                  // coverage universe size
    std::string path;                  // file-backed kinds
    std::string objective;             // psd kinds: "mutual_information" (default) or "logdet"
    std::vector<double> weights;       // modular
    bool second_order = false;         // psd_csv: append pairwise feature products
    std::optional<std::vector<int>> poly_keep;

    std::string describe() const {
        std::ostringstream out;
        out << instance_kind_name(kind) << "(";
        switch (kind) {
            case InstanceKind::ErGraph: out << "n=" << n << ",p=" << p << ",seed=" << seed; break;
            case InstanceKind::BaGraph: out << "n=" << n << ",m_attach=" << m_attach << ",seed=" << seed; break;
            case InstanceKind::GraphFile: out << "path=" << path; break;
            case InstanceKind::PsdSynthetic:
                out << "n=" << n << ",samples=" << samples << ",seed=" << seed;
                break;
            case InstanceKind::PsdCsv: out << "path=" << path; break;
            case InstanceKind::Coverage:
                out << "n=" << n << ",universe=" << universe << ",p=" << p << ",seed=" << seed;
                break;
            case InstanceKind::CoverageFile: out << "path=" << path; break;
            case InstanceKind::Modular: out << "n=" << weights.size(); break;
        }
        out << ")";
        return out.str();
    }
};

struct Instance {
    int n = 0;
    std::shared_ptr<const SetFunction> objective;
    std::string description;
};

// --- plain-text materialization formats (see README for grammar) -------

inline void write_graph_file(const WeightedGraph& g, const std::string& path,
                             const std::string& comment = "") {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write graph file: " + path);
    if (!comment.empty()) out << "# " << comment << "\n";
    out << g.n() << " " << g.edges().size() << "\n";
    char buf[64];
    for (const Edge& e : g.edges()) {
        std::snprintf(buf, sizeof buf, "%.17g", e.w);
        out << e.u << " " << e.v << " " << buf << "\n";
    }
}

inline WeightedGraph load_graph_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open graph file: " + path);
    std::string line;
    int n = -1;
    std::size_t m = 0;
    std::vector<Edge> edges;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ss(line);
        if (n < 0) {
            if (!(ss >> n >> m)) throw std::runtime_error("graph file: bad header in " + path);
            edges.reserve(m);
            continue;
        }
        Edge e;
        if (!(ss >> e.u >> e.v >> e.w)) throw std::runtime_error("graph file: bad edge line in " + path);
        edges.push_back(e);
    }
    if (n < 0) throw std::runtime_error("graph file: missing header in " + path);
    if (edges.size() != m) throw std::runtime_error("graph file: edge count mismatch in " + path);
    return WeightedGraph(n, std::move(edges));
}

inline void write_csv_matrix(const Matrix& m, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write CSV file: " + path);
    char buf[64];
    for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) {
            std::snprintf(buf, sizeof buf, "%.17g", m.at(i, j));
            out << buf << (j + 1 < m.cols() ? "," : "\n");
        }
    }
}

inline void write_coverage_file(const CoverageObjective& cov, const std::string& path,
                                const std::vector<std::vector<int>>& sets) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write coverage file: " + path);
    out << cov.n() << " " << cov.universe() << "\n";
    for (const auto& set : sets) {
        for (std::size_t i = 0; i < set.size(); ++i) out << set[i] << (i + 1 < set.size() ? " " : "");
        out << "\n";
    }
}

inline CoverageObjective load_coverage_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open coverage file: " + path);
    std::string line;
    if (!std::getline(in, line)) throw std::runtime_error("coverage file: empty " + path);
    std::istringstream head(line);
    int n = 0, universe = 0;
    if (!(head >> n >> universe)) throw std::runtime_error("coverage file: bad header in " + path);
    std::vector<std::vector<int>> sets;
    sets.reserve(static_cast<std::size_t>(n));
    while (std::getline(in, line) && static_cast<int>(sets.size()) < n) {
        std::istringstream ss(line);
        std::vector<int> set;
        int item;
        while (ss >> item) set.push_back(item);
        sets.push_back(std::move(set));
    }
    if (static_cast<int>(sets.size()) != n) {
        throw std::runtime_error("coverage file: expected " + std::to_string(n) + " element lines");
    }
    return CoverageObjective(universe, std::move(sets));
}

namespace detail {

inline std::shared_ptr<const SetFunction> psd_objective(std::shared_ptr<const PsdMatrix> x,
                                                        const std::string& which) {
    if (which.empty() || which == "mutual_information" || which == "mi") {
        return std::make_shared<MutualInformationObjective>(std::move(x));
    }
    if (which == "logdet" || which == "entropy") {
        return std::make_shared<LogDetObjective>(std::move(x));
    }
    throw std::invalid_argument("unknown psd objective '" + which +
                                "' (expected mutual_information or logdet)");
}

}  // namespace detail

inline Instance build_instance(const InstanceSpec& spec) {
    Instance inst;
    inst.description = spec.describe();
    switch (spec.kind) {
        case InstanceKind::ErGraph: {
            auto g = std::make_shared<WeightedGraph>(gen_er_graph(spec.n, spec.p, spec.seed));
            inst.n = g->n();
            inst.objective = std::make_shared<CutObjective>(std::move(g));
            break;
        }
        case InstanceKind::BaGraph: {
            auto g = std::make_shared<WeightedGraph>(gen_ba_graph(spec.n, spec.m_attach, spec.seed));
            inst.n = g->n();
            inst.objective = std::make_shared<CutObjective>(std::move(g));
            break;
        }
        case InstanceKind::GraphFile: {
            auto g = std::make_shared<WeightedGraph>(load_graph_file(spec.path));
            inst.n = g->n();
            inst.objective = std::make_shared<CutObjective>(std::move(g));
            break;
        }
        case InstanceKind::PsdSynthetic: {
            const Matrix a = gen_feature_matrix(spec.n, spec.samples, spec.seed);
            auto x = std::make_shared<PsdMatrix>(psd_from_features(a));
            inst.n = x->dim();
            inst.objective = detail::psd_objective(std::move(x), spec.objective);
            break;
        }
        case InstanceKind::PsdCsv: {
            Matrix a = load_csv_matrix(spec.path);
            if (spec.second_order) a = expand_second_order(a, spec.poly_keep);
            auto x = std::make_shared<PsdMatrix>(psd_from_features(a));
            inst.n = x->dim();
            inst.objective = detail::psd_objective(std::move(x), spec.objective);
            break;
        }
        case InstanceKind::Coverage: {
            auto cov = std::make_shared<CoverageObjective>(
                gen_coverage(spec.n, spec.universe, spec.p, spec.seed));
            inst.n = cov->n();
            inst.objective = std::move(cov);
            break;
        }
        case InstanceKind::CoverageFile: {
            auto cov = std::make_shared<CoverageObjective>(load_coverage_file(spec.path));
            inst.n = cov->n();
            inst.objective = std::move(cov);
            break;
        }
        case InstanceKind::Modular: {
            auto mod = std::make_shared<ModularObjective>(spec.weights);
            inst.n = mod->n();
            inst.objective = std::move(mod);
            break;
        }
    }
    return inst;
}

// Materialize a generated instance to a file loadable by the *_file /
// *_csv kinds; returns a one-line description of what was written.
inline std::string materialize_instance(const InstanceSpec& spec, const std::string& out_path) {
    switch (spec.kind) {
        case InstanceKind::ErGraph: {
            const auto g = gen_er_graph(spec.n, spec.p, spec.seed);
            write_graph_file(g, out_path, spec.describe());
            return "graph with " + std::to_string(g.n()) + " nodes, " +
                   std::to_string(g.edges().size()) + " edges";
        }
        case InstanceKind::BaGraph: {
            const auto g = gen_ba_graph(spec.n, spec.m_attach, spec.seed);
            write_graph_file(g, out_path, spec.describe());
            return "graph with " + std::to_string(g.n()) + " nodes, " +
                   std::to_string(g.edges().size()) + " edges";
        }
        case InstanceKind::PsdSynthetic: {
            const Matrix a = gen_feature_matrix(spec.n, spec.samples, spec.seed);
            write_csv_matrix(a, out_path);
            return "feature matrix " + std::to_string(a.rows()) + "x" + std::to_string(a.cols());
        }
        case InstanceKind::Coverage: {
            RandomSource rng(spec.seed);
            std::vector<std::vector<int>> sets(static_cast<std::size_t>(spec.n));
            for (auto& set : sets) {
                for (int item = 0; item < spec.universe; ++item) {
                    if (rng.uniform01() < spec.p) set.push_back(item);
                }
            }
            CoverageObjective cov(spec.universe, sets);
            write_coverage_file(cov, out_path, sets);
            return "coverage instance with " + std::to_string(spec.n) + " elements";
        }
        case InstanceKind::Modular: {
            Matrix row(1, spec.weights.size());
            for (std::size_t j = 0; j < spec.weights.size(); ++j) row.at(0, j) = spec.weights[j];
            write_csv_matrix(row, out_path);
            return "modular weights (" + std::to_string(spec.weights.size()) + " entries)";
        }
        default:
            throw std::invalid_argument("materialize_instance: kind " +
                                        std::string(instance_kind_name(spec.kind)) +
                                        " is already file-backed");
    }
}

// --- experiment sweeps --------------------------------------------------

struct ExperimentSpec {
    InstanceSpec instance;
    std::vector<AlgorithmSpec> algorithms;
    std::vector<int> k_values;
    int trials = 1;
    std::uint64_t base_seed = 0;
    std::string output = "results";
    bool emit_bounds = false;
    std::uint64_t enumeration_cap = kDefaultEnumerationCap;
    std::map<std::string, std::string> raw_config;  // echoed into the summary
};

struct SweepRow {
    std::string algorithm;
    int k = 0;
    int trial = 0;
    std::uint64_t seed = 0;
    double value = 0.0;
    std::uint64_t queries = 0;
    double wall_time_ms = 0.0;
    Bounds bounds;
    bool ceiling_violation = false;
    std::string error;  // non-empty when the cell failed
};

struct ExperimentResult {
    std::vector<SweepRow> rows;
    std::string csv_path;
    std::string json_path;
    bool any_violation = false;
    bool any_error = false;
};

namespace detail {

inline unsigned worker_count(std::size_t cells) {
    unsigned workers = std::thread::hardware_concurrency();
    if (workers == 0) workers = 1;
    if (const char* env = std::getenv("SUBMAX_THREADS")) {
        const long cap = std::strtol(env, nullptr, 10);
        if (cap >= 1) workers = std::min<unsigned>(workers, static_cast<unsigned>(cap));
    }
    return static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(cells, 1)));
}

inline std::string format_double(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

struct MeanStd {
    double mean = 0.0;
    double std = 0.0;
};

inline MeanStd mean_std(const std::vector<double>& xs) {
    MeanStd ms;
    if (xs.empty()) return ms;
    double sum = 0.0;
    for (double x : xs) sum += x;
    ms.mean = sum / static_cast<double>(xs.size());
    if (xs.size() > 1) {
        double sq = 0.0;
        for (double x : xs) sq += (x - ms.mean) * (x - ms.mean);
        ms.std = std::sqrt(sq / static_cast<double>(xs.size() - 1));
    }
    return ms;
}

}  // namespace detail

inline std::string default_label(const AlgorithmSpec& spec) {
    if (!spec.label.empty()) return spec.label;
    std::ostringstream out;
    out << algorithm_name(spec.variant);
    if (spec.variant == Algorithm::Sg || spec.variant == Algorithm::Msg) {
        if (spec.params.epsilon_mode == EpsilonMode::Auto) {
            out << "_eps_auto";
        } else {
            out << "_eps" << spec.params.epsilon;
        }
        if (spec.variant == Algorithm::Msg) out << "_delta" << spec.params.delta;
    }
    return out.str();
}

// Runs every (algorithm, k, trial) cell, trials seeded as base_seed +
// trial index, on a bounded worker pool (capped by SUBMAX_THREADS).
// Results are merged by cell index, so output order is deterministic.
inline ExperimentResult run_experiment(const ExperimentSpec& spec) {
    if (spec.trials < 1) throw std::invalid_argument("run_experiment: trials must be >= 1");
    if (spec.algorithms.empty()) throw std::invalid_argument("run_experiment: no algorithms");
    if (spec.k_values.empty()) throw std::invalid_argument("run_experiment: no k values");

    const Instance inst = build_instance(spec.instance);
    const GroundSet ground(inst.n);
    for (int k : spec.k_values) {
        if (k < 1 || k > inst.n) {
            throw std::invalid_argument("run_experiment: k=" + std::to_string(k) +
                                        " outside [1, n=" + std::to_string(inst.n) + "]");
        }
    }

    struct Cell {
        const AlgorithmSpec* alg;
        int k;
        int trial;
    };
    std::vector<Cell> cells;
    for (const AlgorithmSpec& alg : spec.algorithms) {
        const int alg_trials = alg.trials_override.value_or(spec.trials);
        if (alg_trials < 1) {
            throw std::invalid_argument("run_experiment: trials override for '" +
                                        default_label(alg) + "' must be >= 1");
        }
        for (int k : spec.k_values) {
            for (int t = 0; t < alg_trials; ++t) cells.push_back({&alg, k, t});
        }
    }

    ExperimentResult result;
    result.rows.resize(cells.size());

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
        for (;;) {
            const std::size_t i = next.fetch_add(1);
            if (i >= cells.size()) return;
            const Cell& cell = cells[i];
            SweepRow row;
            row.algorithm = default_label(*cell.alg);
            row.k = cell.k;
            row.trial = cell.trial;
            row.seed = spec.base_seed + static_cast<std::uint64_t>(cell.trial);
            try {
                AlgorithmSpec alg = *cell.alg;
                alg.params.k = cell.k;
                alg.params.seed = row.seed;
                ValueOracle oracle = counted_oracle(inst.objective);
                RandomSource rng(row.seed);
                const RunResult run = run_algorithm(alg, oracle, ground, rng, spec.enumeration_cap);
                row.value = run.value;
                row.queries = run.queries;
                row.wall_time_ms = run.wall_time_ms;
                std::optional<double> eps;
                if (alg.params.epsilon_mode != EpsilonMode::Auto) eps = alg.params.epsilon;
                row.bounds = theoretical_bounds(alg.variant, inst.n, cell.k, eps, alg.params.delta,
                                                spec.enumeration_cap);
                row.ceiling_violation =
                    static_cast<double>(row.queries) > row.bounds.worst_case_queries;
            } catch (const std::exception& e) {
                row.error = e.what();
            }
            result.rows[i] = std::move(row);
        }
    };

    const unsigned workers = detail::worker_count(cells.size());
    if (workers <= 1) {
        worker();
    } else {
        std::vector<std::thread> threads;
        threads.reserve(workers);
        for (unsigned w = 0; w < workers; ++w) threads.emplace_back(worker);
        for (auto& t : threads) t.join();
    }

    for (const SweepRow& row : result.rows) {
        if (row.ceiling_violation) result.any_violation = true;
        if (!row.error.empty()) result.any_error = true;
    }

    // CSV, one row per cell.
    result.csv_path = spec.output + ".csv";
    {
        std::ofstream csv(result.csv_path);
        if (!csv) throw std::runtime_error("cannot write " + result.csv_path);
        csv << "algorithm,k,trial,seed,value,queries,wall_time_ms";
        if (spec.emit_bounds) {
            csv << ",bound_ratio,bound_queries_expected,bound_queries_worst,ceiling_violation";
        }
        csv << "\n";
        char wall[32];
        for (const SweepRow& row : result.rows) {
            if (!row.error.empty()) continue;  // reported in the summary, not as data rows
            std::snprintf(wall, sizeof wall, "%.3f", row.wall_time_ms);
            csv << row.algorithm << "," << row.k << "," << row.trial << "," << row.seed << ","
                << detail::format_double(row.value) << "," << row.queries << "," << wall;
            if (spec.emit_bounds) {
                csv << "," << detail::format_double(row.bounds.approx_ratio) << ","
                    << detail::format_double(row.bounds.expected_queries) << ","
                    << detail::format_double(row.bounds.worst_case_queries) << ","
                    << (row.ceiling_violation ? 1 : 0);
            }
            csv << "\n";
        }
    }

    // Summary JSON with per-(algorithm, k) statistics.
    result.json_path = spec.output + ".json";
    {
        nlohmann::json summary;
        summary["config"] = spec.raw_config.empty()
                                ? nlohmann::json{{"instance", inst.description}}
                                : nlohmann::json(spec.raw_config);
        summary["instance"] = inst.description;
        summary["n"] = inst.n;
        nlohmann::json cells_json = nlohmann::json::array();
        // Preserve first-appearance order of (algorithm, k) groups.
        std::vector<std::pair<std::string, int>> group_order;
        std::map<std::pair<std::string, int>, std::vector<const SweepRow*>> groups;
        for (const SweepRow& row : result.rows) {
            if (!row.error.empty()) continue;
            const auto key = std::make_pair(row.algorithm, row.k);
            auto [it, inserted] = groups.try_emplace(key);
            if (inserted) group_order.push_back(key);
            it->second.push_back(&row);
        }
        for (const auto& key : group_order) {
            const auto& rows = groups[key];
            std::vector<double> values, queries;
            bool violation = false;
            for (const SweepRow* r : rows) {
                values.push_back(r->value);
                queries.push_back(static_cast<double>(r->queries));
                violation = violation || r->ceiling_violation;
            }
            const auto v = detail::mean_std(values);
            const auto q = detail::mean_std(queries);
            const Bounds& b = rows.front()->bounds;
            cells_json.push_back({{"algorithm", key.first},
                                  {"k", key.second},
                                  {"trials", rows.size()},
                                  {"mean_value", v.mean},
                                  {"std_value", v.std},
                                  {"mean_queries", q.mean},
                                  {"std_queries", q.std},
                                  {"bound_ratio", b.approx_ratio},
                                  {"bound_queries_expected", b.expected_queries},
                                  {"bound_queries_worst", b.worst_case_queries},
                                  {"pass", !violation}});
        }
        summary["cells"] = std::move(cells_json);
        nlohmann::json errors = nlohmann::json::array();
        for (const SweepRow& row : result.rows) {
            if (!row.error.empty()) {
                errors.push_back({{"algorithm", row.algorithm},
                                  {"k", row.k},
                                  {"trial", row.trial},
                                  {"error", row.error}});
            }
        }
        summary["errors"] = std::move(errors);
        std::ofstream json_out(result.json_path);
        if (!json_out) throw std::runtime_error("cannot write " + result.json_path);
        json_out << summary.dump(2) << "\n";
    }
    return result;
}

// --- guarantee verification ----------------------------------------------

struct VerifyReport {
    std::string algorithm;
    int trials = 0;
    double optimum = 0.0;
    std::vector<ElementId> optimal_set;
    double mean_ratio = 0.0;
    double sem_ratio = 0.0;
    double floor = 0.0;
    double mean_queries = 0.0;
    bool pass = false;
};

// Computes f(A*) by enumeration, replays the solver over seeded trials,
// and tests mean ratio >= theoretical floor - 3 * SEM.
inline VerifyReport verify_guarantees(const InstanceSpec& instance_spec,
                                      const AlgorithmSpec& algorithm, int trials,
                                      std::uint64_t base_seed,
                                      std::uint64_t enumeration_cap = kDefaultEnumerationCap) {
    if (trials < 1) throw std::invalid_argument("verify_guarantees: trials must be >= 1");
    const Instance inst = build_instance(instance_spec);
    const GroundSet ground(inst.n);

    ValueOracle opt_oracle = counted_oracle(inst.objective);
    const RunResult opt = brute_force(opt_oracle, ground, algorithm.params.k, enumeration_cap);

    VerifyReport report;
    report.algorithm = default_label(algorithm);
    report.trials = trials;
    report.optimum = opt.value;
    report.optimal_set = opt.solution.sorted();

    std::optional<double> eps;
    if (algorithm.params.epsilon_mode != EpsilonMode::Auto) eps = algorithm.params.epsilon;
    report.floor = theoretical_bounds(algorithm.variant, inst.n, algorithm.params.k, eps,
                                      algorithm.params.delta, enumeration_cap)
                       .approx_ratio;

    std::vector<double> ratios, queries;
    ratios.reserve(static_cast<std::size_t>(trials));
    for (int t = 0; t < trials; ++t) {
        AlgorithmSpec alg = algorithm;
        alg.params.seed = base_seed + static_cast<std::uint64_t>(t);
        ValueOracle oracle = counted_oracle(inst.objective);
        RandomSource rng(alg.params.seed);
        const RunResult run = run_algorithm(alg, oracle, ground, rng, enumeration_cap);
        ratios.push_back(report.optimum > 0.0 ? run.value / report.optimum : 1.0);
        queries.push_back(static_cast<double>(run.queries));
    }
    const auto r = detail::mean_std(ratios);
    report.mean_ratio = r.mean;
    report.sem_ratio = trials > 1 ? r.std / std::sqrt(static_cast<double>(trials)) : 0.0;
    report.mean_queries = detail::mean_std(queries).mean;
    report.pass = report.mean_ratio >= report.floor - 3.0 * report.sem_ratio;
    return report;
}

// --- run-result serialization (the `solve` subcommand) --------------------

// Timing is omitted by default so repeated runs with the same seed emit
// byte-identical JSON.
inline nlohmann::json run_result_to_json(const RunResult& run, bool include_timing = false) {
    nlohmann::json j;
    j["solution"] = run.solution.members();
    j["value"] = run.value;
    j["queries"] = run.queries;
    nlohmann::json iters = nlohmann::json::array();
    for (const IterationRecord& rec : run.iterations) {
        nlohmann::json r;
        r["sample_size"] = rec.sample_size;
        if (rec.chosen) {
            r["chosen"] = *rec.chosen;
        } else {
            r["chosen"] = nullptr;
        }
        r["gain"] = rec.gain;
        iters.push_back(std::move(r));
    }
    j["iterations"] = std::move(iters);
    if (include_timing) j["wall_time_ms"] = run.wall_time_ms;
    return j;
}

inline std::string solve_to_json(const InstanceSpec& instance_spec, const AlgorithmSpec& algorithm,
                                 std::uint64_t enumeration_cap = kDefaultEnumerationCap,
                                 bool include_timing = false) {
    const Instance inst = build_instance(instance_spec);
    const GroundSet ground(inst.n);
    ValueOracle oracle = counted_oracle(inst.objective);
    RandomSource rng(algorithm.params.seed);
    const RunResult run = run_algorithm(algorithm, oracle, ground, rng, enumeration_cap);
    nlohmann::json j = run_result_to_json(run, include_timing);
    j["instance"] = inst.description;
    j["algorithm"] = default_label(algorithm);
    j["seed"] = algorithm.params.seed;
    return j.dump(2);
}

// --- flat key=value config files ------------------------------------------

// Grammar: one `key = value` pair per line, '#' starts a comment,
// whitespace around keys and values is trimmed. List values are
// comma-separated. Algorithms are indexed: alg.0.variant, alg.0.epsilon...
inline std::map<std::string, std::string> parse_config_text(std::istream& in) {
    std::map<std::string, std::string> kv;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        const auto trim = [](std::string s) {
            const auto first = s.find_first_not_of(" \t\r");
            if (first == std::string::npos) return std::string();
            const auto last = s.find_last_not_of(" \t\r");
            return s.substr(first, last - first + 1);
        };
        if (trim(line).empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos) {
            throw std::runtime_error("config line " + std::to_string(line_no) + ": expected key = value");
        }
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        if (key.empty()) {
            throw std::runtime_error("config line " + std::to_string(line_no) + ": empty key");
        }
        kv[key] = value;
    }
    return kv;
}

namespace detail {

inline std::vector<std::string> split_list(const std::string& s) {
    std::vector<std::string> parts;
    std::string part;
    std::stringstream ss(s);
    while (std::getline(ss, part, ',')) {
        const auto first = part.find_first_not_of(" \t");
        const auto last = part.find_last_not_of(" \t");
        if (first != std::string::npos) parts.push_back(part.substr(first, last - first + 1));
    }
    return parts;
}

inline double to_double(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const double v = std::strtod(value.c_str(), &end);
    if (end == value.c_str() || *end != '\0') {
        throw std::runtime_error("config: " + key + " = '" + value + "' is not a number");
    }
    return v;
}

inline long long to_int(const std::string& key, const std::string& value) {
    char* end = nullptr;
    const long long v = std::strtoll(value.c_str(), &end, 10);
    if (end == value.c_str() || *end != '\0') {
        throw std::runtime_error("config: " + key + " = '" + value + "' is not an integer");
    }
    return v;
}

inline bool to_bool(const std::string& key, const std::string& value) {
    if (value == "true" || value == "1" || value == "yes") return true;
    if (value == "false" || value == "0" || value == "no") return false;
    throw std::runtime_error("config: " + key + " = '" + value + "' is not a boolean");
}

}  // namespace detail

inline ExperimentSpec experiment_from_config(const std::map<std::string, std::string>& kv) {
    ExperimentSpec spec;
    spec.raw_config = kv;
    const auto get = [&](const std::string& key) -> std::optional<std::string> {
        const auto it = kv.find(key);
        if (it == kv.end()) return std::nullopt;
        return it->second;
    };
    const auto require = [&](const std::string& key) {
        const auto v = get(key);
        if (!v) throw std::runtime_error("config: missing required key '" + key + "'");
        return *v;
    };

    const auto kind = instance_kind_from_name(require("instance.kind"));
    if (!kind) throw std::runtime_error("config: unknown instance.kind '" + require("instance.kind") + "'");
    spec.instance.kind = *kind;
    if (const auto v = get("instance.n")) spec.instance.n = static_cast<int>(detail::to_int("instance.n", *v));
    if (const auto v = get("instance.p")) spec.instance.p = detail::to_double("instance.p", *v);
    if (const auto v = get("instance.m_attach")) {
        spec.instance.m_attach = static_cast<int>(detail::to_int("instance.m_attach", *v));
    }
    if (const auto v = get("instance.seed")) {
        spec.instance.seed = static_cast<std::uint64_t>(detail::to_int("instance.seed", *v));
    }
    if (const auto v = get("instance.samples")) {
        spec.instance.samples = static_cast<int>(detail::to_int("instance.samples", *v));
    }
    if (const auto v = get("instance.universe")) {
        spec.instance.universe = static_cast<int>(detail::to_int("instance.universe", *v));
    }
    if (const auto v = get("instance.path")) spec.instance.path = *v;
    if (const auto v = get("instance.objective")) spec.instance.objective = *v;
    if (const auto v = get("instance.second_order")) {
        spec.instance.second_order = detail::to_bool("instance.second_order", *v);
    }
    if (const auto v = get("instance.poly_keep")) {
        std::vector<int> keep;
        for (const auto& part : detail::split_list(*v)) {
            keep.push_back(static_cast<int>(detail::to_int("instance.poly_keep", part)));
        }
        spec.instance.poly_keep = std::move(keep);
    }
    if (const auto v = get("instance.weights")) {
        for (const auto& part : detail::split_list(*v)) {
            spec.instance.weights.push_back(detail::to_double("instance.weights", part));
        }
    }

    for (const auto& part : detail::split_list(require("k_values"))) {
        spec.k_values.push_back(static_cast<int>(detail::to_int("k_values", part)));
    }
    if (const auto v = get("trials")) spec.trials = static_cast<int>(detail::to_int("trials", *v));
    if (const auto v = get("base_seed")) {
        spec.base_seed = static_cast<std::uint64_t>(detail::to_int("base_seed", *v));
    }
    if (const auto v = get("output")) spec.output = *v;
    if (const auto v = get("emit_bounds")) spec.emit_bounds = detail::to_bool("emit_bounds", *v);
    if (const auto v = get("cap")) {
        spec.enumeration_cap = static_cast<std::uint64_t>(detail::to_int("cap", *v));
    }

    for (int i = 0;; ++i) {
        const std::string prefix = "alg." + std::to_string(i) + ".";
        const auto variant_str = get(prefix + "variant");
        if (!variant_str) break;
        AlgorithmSpec alg;
        const auto variant = algorithm_from_name(*variant_str);
        if (!variant) throw std::runtime_error("config: unknown algorithm variant '" + *variant_str + "'");
        alg.variant = *variant;
        if (const auto v = get(prefix + "epsilon")) {
            if (*v == "auto") {
                alg.params.epsilon_mode = EpsilonMode::Auto;
            } else {
                alg.params.epsilon = detail::to_double(prefix + "epsilon", *v);
            }
        }
        if (const auto v = get(prefix + "delta")) alg.params.delta = detail::to_double(prefix + "delta", *v);
        if (const auto v = get(prefix + "label")) alg.label = *v;
        if (const auto v = get(prefix + "trials")) {
            alg.trials_override = static_cast<int>(detail::to_int(prefix + "trials", *v));
        }
        spec.algorithms.push_back(std::move(alg));
    }
    if (spec.algorithms.empty()) {
        throw std::runtime_error("config: no algorithms (need at least alg.0.variant)");
    }
    return spec;
}

inline ExperimentSpec experiment_from_config_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file: " + path);
    return experiment_from_config(parse_config_text(in));
}

// --- built-in experiment presets -------------------------------------------

// Desk-scale reproductions of the shipped experiment shapes; paper_scale
// restores the original sizes.
inline ExperimentSpec preset_experiment(const std::string& name, bool paper_scale) {
    ExperimentSpec spec;
    spec.emit_bounds = true;
    const auto make_alg = [](Algorithm variant, std::optional<double> eps, double delta,
                             std::string label, std::optional<int> trials = std::nullopt) {
        AlgorithmSpec alg;
        alg.variant = variant;
        if (eps) {
            alg.params.epsilon = *eps;
        } else {
            alg.params.epsilon_mode = EpsilonMode::Auto;
        }
        alg.params.delta = delta;
        alg.label = std::move(label);
        alg.trials_override = trials;
        return alg;
    };

    if (name == "delta_sweep") {
        // Sensitivity of the modified solver to delta at fixed epsilon.
        spec.instance.kind = InstanceKind::ErGraph;
        spec.instance.n = 100;
        spec.instance.p = 0.5;
        spec.instance.seed = 1;
        spec.k_values = {10};
        spec.trials = 100;
        spec.output = "delta_sweep";
        for (double eps : {0.01, 0.5}) {
            for (int exp10 = -10; exp10 <= -1; ++exp10) {
                const double delta = std::pow(10.0, exp10);
                std::ostringstream label;
                label << "msg_eps" << eps << "_delta1e" << exp10;
                spec.algorithms.push_back(make_alg(Algorithm::Msg, eps, delta, label.str()));
            }
        }
        return spec;
    }
    if (name == "er_cut") {
        spec.instance.kind = InstanceKind::ErGraph;
        spec.instance.n = 1000;
        spec.instance.p = 0.5;
        spec.instance.seed = 1;
        spec.k_values = {50, 100, 150, 200, 250, 300, 350, 400, 450, 500};
        spec.trials = 10;
        spec.output = "er_cut";
        spec.algorithms = {
            make_alg(Algorithm::Sg, 0.01, 0.1, "sg_1"),
            make_alg(Algorithm::Sg, 0.5, 0.1, "sg_2"),
            make_alg(Algorithm::Msg, 0.01, 0.1, "msg_1"),
            make_alg(Algorithm::Msg, 0.5, 0.1, "msg_2"),
            make_alg(Algorithm::Greedy, std::nullopt, 0.1, "greedy", 1),
        };
        return spec;
    }
    if (name == "ba_cut") {
        spec.instance.kind = InstanceKind::BaGraph;
        spec.instance.n = paper_scale ? 5000 : 2000;
        spec.instance.m_attach = paper_scale ? 50 : 20;
        spec.instance.seed = 1;
        spec.k_values.clear();
        const int step = paper_scale ? 250 : 100;
        for (int k = step; k <= 10 * step; k += step) spec.k_values.push_back(k);
        spec.trials = 10;
        spec.output = "ba_cut";
        spec.algorithms = {
            make_alg(Algorithm::Sg, 0.01, 0.1, "sg_1"),
            make_alg(Algorithm::Sg, 0.5, 0.1, "sg_2"),
            make_alg(Algorithm::Msg, 0.01, 0.1, "msg_1"),
            make_alg(Algorithm::Msg, 0.5, 0.1, "msg_2"),
            make_alg(Algorithm::Greedy, std::nullopt, 0.1, "greedy", 1),
        };
        return spec;
    }
    if (name == "feature_mi") {
        spec.instance.kind = InstanceKind::PsdSynthetic;
        spec.instance.n = paper_scale ? 1000 : 200;
        spec.instance.seed = 1;
        spec.instance.samples = paper_scale ? 1059 : 300;
        spec.instance.objective = "mutual_information";
        spec.k_values = paper_scale ? std::vector<int>{200} : std::vector<int>{20, 50};
        spec.trials = paper_scale ? 10 : 5;
        spec.output = "feature_mi";
        spec.algorithms = {
            make_alg(Algorithm::Sg, 0.01, 0.1, "sg_1"),
            make_alg(Algorithm::Sg, 0.5, 0.1, "sg_2"),
            make_alg(Algorithm::Msg, 0.01, 0.1, "msg_1"),
            make_alg(Algorithm::Msg, 0.5, 0.1, "msg_2"),
            make_alg(Algorithm::Greedy, std::nullopt, 0.1, "greedy", 1),
        };
        return spec;
    }
    throw std::invalid_argument("unknown preset '" + name +
                                "' (expected delta_sweep, er_cut, ba_cut, or feature_mi)");
}

}  // namespace submax
