#pragma once

// The solvers: stochastic greedy (sg), modified stochastic greedy with
// hypergeometric sample sizes (msg), the standard and random greedy
// baselines, exhaustive search, and the closed-form guarantee/query
// bounds for each.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "submax/core.hpp"
#include "submax/sampling.hpp"

namespace submax {

enum class Algorithm { Sg, Msg, Greedy, RandomGreedy, BruteForce };

inline const char* algorithm_name(Algorithm a) {
    switch (a) {
        case Algorithm::Sg: return "sg";
        case Algorithm::Msg: return "msg";
        case Algorithm::Greedy: return "greedy";
        case Algorithm::RandomGreedy: return "random_greedy";
        case Algorithm::BruteForce: return "brute_force";
    }
    return "?";
}

inline std::optional<Algorithm> algorithm_from_name(const std::string& name) {
    if (name == "sg") return Algorithm::Sg;
    if (name == "msg") return Algorithm::Msg;
    if (name == "greedy") return Algorithm::Greedy;
    if (name == "random_greedy") return Algorithm::RandomGreedy;
    if (name == "brute_force") return Algorithm::BruteForce;
    return std::nullopt;
}

struct AlgorithmSpec {
    Algorithm variant = Algorithm::Sg;
    SolverParams params;
    std::string label;                  // optional; defaults to the variant name
    std::optional<int> trials_override; // sweeps: per-algorithm trial count
};

inline constexpr std::uint64_t kDefaultEnumerationCap = 5'000'000;

namespace detail {

// Ceiling that forgives one-part-in-1e9 of floating noise, so quantities
// like 19/0.1 land on the intended integer.
inline std::int64_t ceil_tol(double x) {
    return static_cast<std::int64_t>(std::ceil(x - 1e-9));
}

struct Pick {
    std::optional<ElementId> best;
    double value_after = 0.0;
    double gain = 0.0;
};

// Greedy rule over a candidate list; ties broken toward the smallest id.
// One counted query per candidate.
inline Pick pick_best(ValueOracle::Grower& grower, const std::vector<ElementId>& candidates) {
    Pick pick;
    const double base = grower.base();
    for (ElementId v : candidates) {
        const double value = grower.value_with(v);
        const double gain = value - base;
        if (!pick.best || gain > pick.gain || (gain == pick.gain && v < *pick.best)) {
            pick.best = v;
            pick.value_after = value;
            pick.gain = gain;
        }
    }
    return pick;
}

inline void erase_element(std::vector<ElementId>& pool, ElementId v) {
    pool.erase(std::find(pool.begin(), pool.end(), v));
}

inline void validate_common(const GroundSet& ground, int k) {
    if (k < 1 || k > ground.n) {
        throw std::invalid_argument("solver: need 1 <= k <= n, got k=" + std::to_string(k) +
                                    ", n=" + std::to_string(ground.n));
    }
}

inline void validate_epsilon(double epsilon) {
    if (!(epsilon > 0.0 && epsilon < 1.0)) {
        throw std::invalid_argument("solver: need 0 < epsilon < 1, got " + std::to_string(epsilon));
    }
}

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}
    double elapsed_ms() const {
        const auto now = std::chrono::steady_clock::now();
        return std::chrono::duration<double, std::milli>(now - start_).count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

inline RunResult finish_run(ValueOracle& oracle, ValueOracle::Grower& grower,
                            std::uint64_t queries_before, std::vector<IterationRecord> trace,
                            const Stopwatch& watch) {
    RunResult result;
    result.solution = grower.set();
    result.queries = oracle.queries() - queries_before;
    result.iterations = std::move(trace);
    result.wall_time_ms = watch.elapsed_ms();
    // Final verification evaluation; uncounted by convention.
    result.value = oracle.probe(result.solution);
    return result;
}

}  // namespace detail

// Balanced epsilon 1/2 + (k-1)/(m-k) for a (possibly virtual) ground set
// of size m.
inline double auto_epsilon(std::int64_t m, int k) {
    if (m <= k) {
        throw std::invalid_argument("auto epsilon: requires ground-set size > k");
    }
    const double eps = 0.5 + static_cast<double>(k - 1) / static_cast<double>(m - k);
    if (!(eps < 1.0)) {
        throw std::invalid_argument("auto epsilon: 1/2 + (k-1)/(m-k) = " + std::to_string(eps) +
                                    " is not < 1; ground set too small for k=" + std::to_string(k));
    }
    return eps;
}

// Virtual ground-set size N = max{n, k + ceil((2k-1)/delta)}.
inline std::int64_t msg_virtual_ground(int n, int k, double delta) {
    if (!(delta > 0.0 && delta < 1.0)) {
        throw std::invalid_argument("msg: need 0 < delta < 1, got " + std::to_string(delta));
    }
    const std::int64_t padded = static_cast<std::int64_t>(k) +
                                detail::ceil_tol((2.0 * k - 1.0) / delta);
    return std::max<std::int64_t>(n, padded);
}

// Stochastic greedy: k rounds, each sampling min(ceil(s), |V\A|) elements
// uniformly without replacement with s = (n/k) ln(1/eps), accepting the
// best sampled element iff its marginal gain is strictly positive.
inline RunResult run_sg(ValueOracle& oracle, const GroundSet& ground, const SolverParams& params,
                        RandomSource& rng) {
    detail::validate_common(ground, params.k);
    const int n = ground.n;
    const int k = params.k;
    const double epsilon = params.epsilon_mode == EpsilonMode::Auto
                               ? auto_epsilon(n, k)
                               : params.epsilon;
    detail::validate_epsilon(epsilon);
    const double s = (static_cast<double>(n) / k) * std::log(1.0 / epsilon);
    const std::int64_t sample_size = detail::ceil_tol(s);

    const detail::Stopwatch watch;
    const std::uint64_t queries_before = oracle.queries();
    auto grower = oracle.grower();
    std::vector<ElementId> pool = ground.all();
    std::vector<IterationRecord> trace;
    trace.reserve(static_cast<std::size_t>(k));

    for (int i = 0; i < k; ++i) {
        const std::size_t m = std::min<std::size_t>(static_cast<std::size_t>(sample_size), pool.size());
        const auto candidates = sample_without_replacement(pool, m, rng);
        const auto pick = detail::pick_best(grower, candidates);
        IterationRecord rec;
        rec.sample_size = static_cast<int>(m);
        rec.gain = pick.best ? pick.gain : 0.0;
        if (pick.best && pick.gain > 0.0) {
            grower.accept(*pick.best, pick.value_after);
            detail::erase_element(pool, *pick.best);
            rec.chosen = *pick.best;
        }
        trace.push_back(rec);
    }
    return detail::finish_run(oracle, grower, queries_before, std::move(trace), watch);
}

// Modified stochastic greedy: the per-round sample size r is drawn from
// H(ceil(s̄), |V\A|, N - |A|) with s̄ = (N/k) ln(1/eps), which reproduces
// stochastic greedy on a ground set padded to size N with zero-gain dummy
// elements, without materializing the dummies.
inline RunResult run_msg(ValueOracle& oracle, const GroundSet& ground, const SolverParams& params,
                         RandomSource& rng) {
    detail::validate_common(ground, params.k);
    const int n = ground.n;
    const int k = params.k;
    const std::int64_t virtual_n = msg_virtual_ground(n, k, params.delta);
    const double epsilon = params.epsilon_mode == EpsilonMode::Auto
                               ? auto_epsilon(virtual_n, k)
                               : params.epsilon;
    detail::validate_epsilon(epsilon);
    const double sbar = (static_cast<double>(virtual_n) / k) * std::log(1.0 / epsilon);
    const std::int64_t sample_size = detail::ceil_tol(sbar);

    const detail::Stopwatch watch;
    const std::uint64_t queries_before = oracle.queries();
    auto grower = oracle.grower();
    std::vector<ElementId> pool = ground.all();
    std::vector<IterationRecord> trace;
    trace.reserve(static_cast<std::size_t>(k));

    for (int i = 0; i < k; ++i) {
        const std::int64_t accepted = static_cast<std::int64_t>(grower.set().size());
        const std::int64_t population = virtual_n - accepted;
        // With heuristic eps < 1/e the nominal sample can exceed the padded
        // pool; draws are clamped to the population, as in the plain solver.
        const HypergeomParams hp{std::min(sample_size, population),
                                 static_cast<std::int64_t>(pool.size()), population};
        const std::int64_t r = HypergeometricSampler(hp).draw(rng);
        const auto candidates = sample_without_replacement(pool, static_cast<std::size_t>(r), rng);
        const auto pick = detail::pick_best(grower, candidates);
        IterationRecord rec;
        rec.sample_size = static_cast<int>(r);
        rec.gain = pick.best ? pick.gain : 0.0;
        if (pick.best && pick.gain > 0.0) {
            grower.accept(*pick.best, pick.value_after);
            detail::erase_element(pool, *pick.best);
            rec.chosen = *pick.best;
        }
        trace.push_back(rec);
    }
    return detail::finish_run(oracle, grower, queries_before, std::move(trace), watch);
}

// Standard greedy with the same positive-gain acceptance rule: k rounds,
// each scanning the whole remainder.
inline RunResult run_greedy(ValueOracle& oracle, const GroundSet& ground, int k) {
    detail::validate_common(ground, k);
    const detail::Stopwatch watch;
    const std::uint64_t queries_before = oracle.queries();
    auto grower = oracle.grower();
    std::vector<ElementId> pool = ground.all();
    std::vector<IterationRecord> trace;
    trace.reserve(static_cast<std::size_t>(k));

    for (int i = 0; i < k; ++i) {
        const auto pick = detail::pick_best(grower, pool);
        IterationRecord rec;
        rec.sample_size = static_cast<int>(pool.size());
        rec.gain = pick.best ? pick.gain : 0.0;
        if (pick.best && pick.gain > 0.0) {
            grower.accept(*pick.best, pick.value_after);
            detail::erase_element(pool, *pick.best);
            rec.chosen = *pick.best;
        }
        trace.push_back(rec);
    }
    return detail::finish_run(oracle, grower, queries_before, std::move(trace), watch);
}

// Random greedy: each round evaluates every remaining element, forms the
// top-k positive-gain candidates, conceptually pads them to k slots with
// zero-gain dummies, and picks a slot uniformly; a dummy slot skips the
// round.
inline RunResult run_random_greedy(ValueOracle& oracle, const GroundSet& ground, int k,
                                   RandomSource& rng) {
    detail::validate_common(ground, k);
    const detail::Stopwatch watch;
    const std::uint64_t queries_before = oracle.queries();
    auto grower = oracle.grower();
    std::vector<ElementId> pool = ground.all();
    std::vector<IterationRecord> trace;
    trace.reserve(static_cast<std::size_t>(k));

    struct Scored {
        ElementId id;
        double value_after;
        double gain;
    };

    for (int i = 0; i < k; ++i) {
        std::vector<Scored> positives;
        const double base = grower.base();
        double best_gain = 0.0;
        for (ElementId v : pool) {
            const double value = grower.value_with(v);
            const double gain = value - base;
            if (gain > best_gain) best_gain = gain;
            if (gain > 0.0) positives.push_back({v, value, gain});
        }
        std::sort(positives.begin(), positives.end(), [](const Scored& a, const Scored& b) {
            return a.gain != b.gain ? a.gain > b.gain : a.id < b.id;
        });
        if (positives.size() > static_cast<std::size_t>(k)) {
            positives.resize(static_cast<std::size_t>(k));
        }

        IterationRecord rec;
        rec.sample_size = static_cast<int>(pool.size());
        rec.gain = best_gain;
        const std::uint64_t slot = rng.uniform_below(static_cast<std::uint64_t>(k));
        if (slot < positives.size()) {
            const Scored& chosen = positives[static_cast<std::size_t>(slot)];
            grower.accept(chosen.id, chosen.value_after);
            detail::erase_element(pool, chosen.id);
            rec.chosen = chosen.id;
            rec.gain = chosen.gain;
        }
        trace.push_back(rec);
    }
    return detail::finish_run(oracle, grower, queries_before, std::move(trace), watch);
}

// Number of subsets of an n-element set with size <= k, saturating at cap+1.
inline std::uint64_t count_subsets_up_to(int n, int k, std::uint64_t cap) {
    long double total = 0.0L;
    long double binom = 1.0L;  // C(n, 0)
    for (int j = 0; j <= k; ++j) {
        total += binom;
        if (total > static_cast<long double>(cap)) return cap + 1;
        binom = binom * static_cast<long double>(n - j) / static_cast<long double>(j + 1);
    }
    return static_cast<std::uint64_t>(total + 0.5L);
}

struct EnumerationCapError : std::runtime_error {
    explicit EnumerationCapError(const std::string& msg) : std::runtime_error(msg) {}
};

// Exact maximum of f over all S with |S| <= k; ties resolved toward the
// lexicographically smallest member sequence.
inline RunResult brute_force(ValueOracle& oracle, const GroundSet& ground, int k,
                             std::uint64_t enumeration_cap = kDefaultEnumerationCap) {
    if (k < 0 || k > ground.n) {
        throw std::invalid_argument("brute_force: need 0 <= k <= n");
    }
    const std::uint64_t count = count_subsets_up_to(ground.n, k, enumeration_cap);
    if (count > enumeration_cap) {
        throw EnumerationCapError("brute_force: C(n, <=k) exceeds cap " +
                                  std::to_string(enumeration_cap) + " for n=" +
                                  std::to_string(ground.n) + ", k=" + std::to_string(k));
    }

    const detail::Stopwatch watch;
    const std::uint64_t queries_before = oracle.queries();
    std::vector<ElementId> best;
    double best_value = -std::numeric_limits<double>::infinity();

    std::vector<ElementId> combo;
    for (int size = 0; size <= k; ++size) {
        combo.resize(static_cast<std::size_t>(size));
        for (int i = 0; i < size; ++i) combo[static_cast<std::size_t>(i)] = i;
        for (;;) {
            const double value = oracle.value(SolutionSet(combo));
            if (value > best_value ||
                (value == best_value &&
                 std::lexicographical_compare(combo.begin(), combo.end(), best.begin(), best.end()))) {
                best_value = value;
                best = combo;
            }
            if (size == 0) break;
            // Next lexicographic combination of {0..n-1} choose size.
            int pos = size - 1;
            while (pos >= 0 && combo[static_cast<std::size_t>(pos)] == ground.n - size + pos) --pos;
            if (pos < 0) break;
            ++combo[static_cast<std::size_t>(pos)];
            for (int j = pos + 1; j < size; ++j) {
                combo[static_cast<std::size_t>(j)] = combo[static_cast<std::size_t>(j - 1)] + 1;
            }
        }
    }

    RunResult result;
    result.solution = SolutionSet(best);
    result.queries = oracle.queries() - queries_before;
    result.wall_time_ms = watch.elapsed_ms();
    result.value = oracle.probe(result.solution);
    return result;
}

// Closed-form guarantees and query bounds. For the stochastic solvers in
// auto-epsilon mode the query formulas are evaluated at eps = 1/2 (a valid
// ceiling, since the balanced epsilon is always >= 1/2) and the ratio uses
// the balanced closed form; explicit epsilon uses the general expressions.
struct Bounds {
    double approx_ratio = 0.0;
    double expected_queries = 0.0;
    double worst_case_queries = 0.0;
    bool guarantee_valid = false;
    double epsilon_effective = 0.0;   // the epsilon the ratio refers to
    std::int64_t virtual_ground = 0;  // N for msg; n otherwise
};

inline Bounds theoretical_bounds(Algorithm variant, int n, int k,
                                 std::optional<double> epsilon,  // nullopt = auto
                                 double delta,
                                 std::uint64_t enumeration_cap = kDefaultEnumerationCap) {
    if (n < 1 || k < 1 || k > n) {
        throw std::invalid_argument("theoretical_bounds: need 1 <= k <= n");
    }
    constexpr double kInvE = 0.36787944117144233;
    Bounds b;
    b.virtual_ground = n;

    const auto clamp0 = [](double x) { return x < 0.0 ? 0.0 : x; };

    switch (variant) {
        case Algorithm::Sg: {
            const bool auto_mode = !epsilon.has_value();
            double eps = 0.0;
            if (auto_mode) {
                eps = auto_epsilon(n, k);
            } else {
                eps = *epsilon;
            }
            detail::validate_epsilon(eps);
            b.epsilon_effective = eps;
            const double size_term = (n > k) ? 2.0 * (k - 1) / static_cast<double>(n - k) : 0.0;
            if (auto_mode) {
                b.approx_ratio = clamp0(0.25 * (1.0 - size_term) * (1.0 - size_term));
            } else {
                b.approx_ratio = clamp0((eps - size_term) * (1.0 - eps));
            }
            const double query_eps = auto_mode ? 0.5 : eps;
            const double per_round =
                static_cast<double>(detail::ceil_tol((static_cast<double>(n) / k) * std::log(1.0 / query_eps)));
            b.expected_queries = k * per_round;
            b.worst_case_queries = k * per_round;
            b.guarantee_valid = k >= 2 && n >= 3 * k && eps >= kInvE && eps < 1.0;
            break;
        }
        case Algorithm::Msg: {
            const std::int64_t virtual_n = msg_virtual_ground(n, k, delta);
            b.virtual_ground = virtual_n;
            const bool auto_mode = !epsilon.has_value();
            double eps = 0.0;
            if (auto_mode) {
                eps = auto_epsilon(virtual_n, k);
            } else {
                eps = *epsilon;
            }
            detail::validate_epsilon(eps);
            b.epsilon_effective = eps;
            if (auto_mode) {
                b.approx_ratio = clamp0(0.25 * (1.0 - delta) * (1.0 - delta));
            } else {
                b.approx_ratio = clamp0((eps - delta) * (1.0 - eps));
            }
            const double query_eps = auto_mode ? 0.5 : eps;
            const double log_term = std::log(1.0 / query_eps);
            b.expected_queries = n * log_term + n * delta * static_cast<double>(k) / (k - 1 > 0 ? k - 1 : 1);
            b.worst_case_queries = static_cast<double>(k) *
                static_cast<double>(detail::ceil_tol((static_cast<double>(virtual_n) / k) * log_term));
            b.guarantee_valid = eps >= kInvE && eps < 1.0 && delta > 0.0 && delta < eps;
            break;
        }
        case Algorithm::Greedy: {
            b.approx_ratio = 0.0;  // no guarantee for non-monotone objectives
            b.expected_queries = static_cast<double>(k) * n;
            b.worst_case_queries = static_cast<double>(k) * n;
            b.guarantee_valid = false;
            break;
        }
        case Algorithm::RandomGreedy: {
            b.approx_ratio = kInvE;
            b.expected_queries = static_cast<double>(k) * n;
            b.worst_case_queries = static_cast<double>(k) * n;
            b.guarantee_valid = true;
            break;
        }
        case Algorithm::BruteForce: {
            b.approx_ratio = 1.0;
            const std::uint64_t count = count_subsets_up_to(n, k, enumeration_cap);
            b.expected_queries = static_cast<double>(count);
            b.worst_case_queries = static_cast<double>(count);
            b.guarantee_valid = count <= enumeration_cap;
            break;
        }
    }
    return b;
}

// Dispatch a run by spec. Randomized variants consume the rng; the
// deterministic ones leave it untouched.
inline RunResult run_algorithm(const AlgorithmSpec& spec, ValueOracle& oracle,
                               const GroundSet& ground, RandomSource& rng,
                               std::uint64_t enumeration_cap = kDefaultEnumerationCap) {
    switch (spec.variant) {
        case Algorithm::Sg: return run_sg(oracle, ground, spec.params, rng);
        case Algorithm::Msg: return run_msg(oracle, ground, spec.params, rng);
        case Algorithm::Greedy: return run_greedy(oracle, ground, spec.params.k);
        case Algorithm::RandomGreedy: return run_random_greedy(oracle, ground, spec.params.k, rng);
        case Algorithm::BruteForce: return brute_force(oracle, ground, spec.params.k, enumeration_cap);
    }
    throw std::logic_error("run_algorithm: unknown variant");
}

}  // namespace submax
