#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <memory>
#include <vector>

#include "submax/algorithms.hpp"
#include "submax/graphs.hpp"
#include "submax/objectives.hpp"
#include "oracles.hpp"

using namespace submax;
using testutil::make_set;

namespace {

std::shared_ptr<const CutObjective> er_cut(int n, double p, std::uint64_t seed) {
    return std::make_shared<CutObjective>(std::make_shared<WeightedGraph>(gen_er_graph(n, p, seed)));
}

SolverParams sg_params(int k, double eps) {
    SolverParams p;
    p.k = k;
    p.epsilon = eps;
    return p;
}

}  // namespace

TEST_CASE("sg rejects non-positive gains") {
    auto zeros = std::make_shared<ModularObjective>(std::vector<double>{0.0, 0.0, 0.0, 0.0});
    ValueOracle oracle = counted_oracle(zeros);
    RandomSource rng(1);
    const RunResult run = run_sg(oracle, GroundSet(4), sg_params(3, 0.5), rng);
    CHECK(run.solution.empty());
    CHECK(run.iterations.size() == 3);
    for (const auto& rec : run.iterations) CHECK_FALSE(rec.chosen.has_value());
}

TEST_CASE("sg with exhaustive sampling degenerates to greedy") {
    // k = n and eps small enough that ceil(s) >= n every round:
    // ceil((5/5) ln(1/0.005)) = 6.
    const std::vector<double> weights{2.0, 0.0, 5.0, 0.0, 1.0};
    auto modular = std::make_shared<ModularObjective>(weights);
    ValueOracle oracle = counted_oracle(modular);
    RandomSource rng(3);
    const RunResult run = run_sg(oracle, GroundSet(5), sg_params(5, 0.005), rng);
    CHECK(run.solution.sorted() == std::vector<ElementId>{0, 2, 4});
    CHECK(run.value == doctest::Approx(8.0));
}

TEST_CASE("sg parameter validation") {
    auto modular = std::make_shared<ModularObjective>(std::vector<double>{1.0, 1.0});
    ValueOracle oracle = counted_oracle(modular);
    RandomSource rng(0);
    CHECK_THROWS_AS(run_sg(oracle, GroundSet(2), sg_params(0, 0.5), rng), std::invalid_argument);
    CHECK_THROWS_AS(run_sg(oracle, GroundSet(2), sg_params(3, 0.5), rng), std::invalid_argument);
    CHECK_THROWS_AS(run_sg(oracle, GroundSet(2), sg_params(1, 0.0), rng), std::invalid_argument);
    CHECK_THROWS_AS(run_sg(oracle, GroundSet(2), sg_params(1, 1.0), rng), std::invalid_argument);
}

TEST_CASE("msg respects the worst-case query ceiling from the virtual ground set") {
    // n=100, k=10, delta=0.1, eps=1/2: N = 200, ceil(sbar) = 14, ceiling 140.
    CHECK(msg_virtual_ground(100, 10, 0.1) == 200);
    auto cut = er_cut(100, 0.5, 19);
    SolverParams params = sg_params(10, 0.5);
    params.delta = 0.1;
    for (std::uint64_t seed = 0; seed < 50; ++seed) {
        ValueOracle oracle = counted_oracle(cut);
        RandomSource rng(seed);
        const RunResult run = run_msg(oracle, GroundSet(100), params, rng);
        CHECK(run.queries <= 140);
        CHECK(run.solution.size() <= 10);
    }
}

TEST_CASE("msg collapses to plain stochastic greedy when N = n") {
    // n=300, k=10, delta=0.1: k + ceil(19/0.1) = 200 < n, so N = n and the
    // hypergeometric draw is the full sample size every round.
    CHECK(msg_virtual_ground(300, 10, 0.1) == 300);
    auto cut = er_cut(300, 0.1, 23);
    SolverParams params = sg_params(10, 0.5);
    params.delta = 0.1;
    ValueOracle oracle = counted_oracle(cut);
    RandomSource rng(77);
    const RunResult run = run_msg(oracle, GroundSet(300), params, rng);
    const int ceil_sbar = 21;  // ceil((300/10) ln 2)
    REQUIRE(run.iterations.size() == 10);
    for (const auto& rec : run.iterations) CHECK(rec.sample_size == ceil_sbar);
    CHECK(run.queries == 210);
}

TEST_CASE("msg clamps heuristic oversampling to the padded population") {
    // eps = 0.01 < 1/e makes ceil(sbar) = 19 exceed the padded pool of 8;
    // draws clamp to the population, so every real element is sampled and
    // the run behaves like full greedy.
    auto cut = er_cut(6, 0.5, 2);
    SolverParams params = sg_params(2, 0.01);
    params.delta = 0.5;
    CHECK(msg_virtual_ground(6, 2, 0.5) == 8);
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
        ValueOracle oracle = counted_oracle(cut);
        RandomSource rng(seed);
        const RunResult run = run_msg(oracle, GroundSet(6), params, rng);
        REQUIRE(run.iterations.size() == 2);
        CHECK(run.iterations[0].sample_size == 6);
        CHECK(run.queries <= 6 + 5);
    }
}

TEST_CASE("greedy on modular weights picks the top elements") {
    auto modular = std::make_shared<ModularObjective>(std::vector<double>{5.0, 3.0, 1.0});
    ValueOracle oracle = counted_oracle(modular);
    const RunResult run = run_greedy(oracle, GroundSet(3), 2);
    CHECK(run.solution.members() == std::vector<ElementId>{0, 1});
    CHECK(run.value == doctest::Approx(8.0));
}

TEST_CASE("greedy with k = 1 performs one full scan") {
    auto cut = er_cut(17, 0.5, 2);
    ValueOracle oracle = counted_oracle(cut);
    const RunResult run = run_greedy(oracle, GroundSet(17), 1);
    CHECK(run.queries == 17);
    CHECK(run.solution.size() <= 1);
}

TEST_CASE("greedy achieves the classical coverage guarantee") {
    const auto cov = std::make_shared<CoverageObjective>(gen_coverage(12, 24, 0.2, 6));
    ValueOracle oracle = counted_oracle(cov);
    const RunResult run = run_greedy(oracle, GroundSet(12), 3);
    const auto best = testutil::exhaustive_best(
        [&](const SolutionSet& s) { return cov->value(s); }, 12, 3);
    CHECK(run.value >= (1.0 - std::exp(-1.0)) * best.value);
}

TEST_CASE("random greedy only ever accepts positive gains") {
    auto modular = std::make_shared<ModularObjective>(std::vector<double>{0.0, 2.0, 0.0, 1.0});
    for (std::uint64_t seed = 0; seed < 30; ++seed) {
        ValueOracle oracle = counted_oracle(modular);
        RandomSource rng(seed);
        const RunResult run = run_random_greedy(oracle, GroundSet(4), 4, rng);
        for (ElementId v : run.solution.members()) CHECK((v == 1 || v == 3));
    }
}

TEST_CASE("random greedy padding: single positive candidate with k = 2") {
    // One positive element, k=2. Each round the top-2 slate is {element,
    // dummy}, so acceptance is a coin flip per round while the element
    // remains: P(in final solution) = 1/2 + 1/4 = 3/4.
    auto modular = std::make_shared<ModularObjective>(std::vector<double>{4.0, 0.0, 0.0});
    const int trials = 20000;
    int accepted = 0;
    for (int t = 0; t < trials; ++t) {
        ValueOracle oracle = counted_oracle(modular);
        RandomSource rng(static_cast<std::uint64_t>(t));
        const RunResult run = run_random_greedy(oracle, GroundSet(3), 2, rng);
        if (run.solution.contains(0)) ++accepted;
    }
    const double freq = static_cast<double>(accepted) / trials;
    const double sem = std::sqrt(0.75 * 0.25 / trials);
    CHECK(std::abs(freq - 0.75) <= 3.0 * sem);
}

TEST_CASE("random greedy meets the 1/e floor on a small cut instance") {
    auto cut = er_cut(12, 0.5, 8);
    ValueOracle opt_oracle = counted_oracle(cut);
    const RunResult opt = brute_force(opt_oracle, GroundSet(12), 3);
    REQUIRE(opt.value > 0.0);

    const int trials = 5000;
    std::vector<double> ratios;
    ratios.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        ValueOracle oracle = counted_oracle(cut);
        RandomSource rng(static_cast<std::uint64_t>(t));
        const RunResult run = run_random_greedy(oracle, GroundSet(12), 3, rng);
        CHECK(run.queries <= 3u * 12u);
        ratios.push_back(run.value / opt.value);
    }
    const auto s = testutil::stats_of(ratios);
    CHECK(s.mean >= std::exp(-1.0) - 3.0 * s.sem);
}

TEST_CASE("sg meets its expectation floor on a small cut instance") {
    // eps = 0.55: floor (eps - 2(k-1)/(n-k)) (1 - eps) ~ 0.0475 at n=12, k=3.
    auto cut = er_cut(12, 0.5, 8);
    ValueOracle opt_oracle = counted_oracle(cut);
    const RunResult opt = brute_force(opt_oracle, GroundSet(12), 3);
    REQUIRE(opt.value > 0.0);

    SolverParams params = sg_params(3, 0.55);
    const int trials = 5000;
    std::vector<double> ratios;
    ratios.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        ValueOracle oracle = counted_oracle(cut);
        RandomSource rng(static_cast<std::uint64_t>(t));
        ratios.push_back(run_sg(oracle, GroundSet(12), params, rng).value / opt.value);
    }
    const auto s = testutil::stats_of(ratios);
    const double floor = (0.55 - 2.0 * 2.0 / 9.0) * (1.0 - 0.55);
    CHECK(s.mean >= floor - 3.0 * s.sem);
}

TEST_CASE("brute force") {
    SUBCASE("modular optimum is the top-k positive weights") {
        auto modular = std::make_shared<ModularObjective>(std::vector<double>{1.0, 7.0, 0.5, 3.0});
        ValueOracle oracle = counted_oracle(modular);
        const RunResult run = brute_force(oracle, GroundSet(4), 2);
        CHECK(run.solution.sorted() == std::vector<ElementId>{1, 3});
        CHECK(run.value == doctest::Approx(10.0));
        CHECK(run.queries == 1 + 4 + 6);
    }
    SUBCASE("k = 0 returns the empty set") {
        auto modular = std::make_shared<ModularObjective>(std::vector<double>{1.0});
        ValueOracle oracle = counted_oracle(modular);
        const RunResult run = brute_force(oracle, GroundSet(1), 0);
        CHECK(run.solution.empty());
        CHECK(run.value == doctest::Approx(0.0));
    }
    SUBCASE("triangle cut at k = 1 resolves the tie toward {0}") {
        auto g = std::make_shared<WeightedGraph>(
            WeightedGraph(3, {{0, 1, 1.0}, {0, 2, 1.0}, {1, 2, 1.0}}));
        ValueOracle oracle = counted_oracle(std::make_shared<CutObjective>(g));
        const RunResult run = brute_force(oracle, GroundSet(3), 1);
        CHECK(run.solution.members() == std::vector<ElementId>{0});
        CHECK(run.value == doctest::Approx(2.0));
    }
    SUBCASE("enumeration cap refuses oversized instances") {
        auto modular = std::make_shared<ModularObjective>(std::vector<double>(64, 1.0));
        ValueOracle oracle = counted_oracle(modular);
        CHECK_THROWS_AS(brute_force(oracle, GroundSet(64), 32, 1000), EnumerationCapError);
    }
    SUBCASE("matches an independent exhaustive maximizer") {
        auto cut = er_cut(10, 0.5, 14);
        ValueOracle oracle = counted_oracle(cut);
        const RunResult run = brute_force(oracle, GroundSet(10), 3);
        const auto best = testutil::exhaustive_best(
            [&](const SolutionSet& s) { return cut->value(s); }, 10, 3);
        CHECK(run.value == doctest::Approx(best.value));
    }
}

TEST_CASE("subset counting") {
    CHECK(count_subsets_up_to(24, 4, kDefaultEnumerationCap) == 12951);
    CHECK(count_subsets_up_to(4, 2, kDefaultEnumerationCap) == 11);
    CHECK(count_subsets_up_to(64, 32, 1000) == 1001);  // saturated
}

TEST_CASE("theoretical bounds closed forms") {
    SUBCASE("sg with the balanced epsilon value given explicitly") {
        const Bounds b = theoretical_bounds(Algorithm::Sg, 100, 10, 0.6, 0.1);
        CHECK(b.approx_ratio == doctest::Approx(0.16).epsilon(1e-12));
        CHECK(b.guarantee_valid);
    }
    SUBCASE("msg auto epsilon, delta = 0.1") {
        const Bounds b = theoretical_bounds(Algorithm::Msg, 100, 10, std::nullopt, 0.1);
        CHECK(b.approx_ratio == doctest::Approx(0.2025).epsilon(1e-12));
        CHECK(b.worst_case_queries == doctest::Approx(140.0));
        CHECK(b.expected_queries ==
              doctest::Approx(100.0 * std::log(2.0) + 100.0 * 0.1 * 10.0 / 9.0).epsilon(1e-12));
        CHECK(b.virtual_ground == 200);
        CHECK(b.guarantee_valid);
    }
    SUBCASE("sg heuristic epsilon below 1/e is flagged") {
        const Bounds b = theoretical_bounds(Algorithm::Sg, 100, 10, 0.01, 0.1);
        CHECK_FALSE(b.guarantee_valid);
    }
    SUBCASE("random greedy carries the 1/e ratio") {
        const Bounds b = theoretical_bounds(Algorithm::RandomGreedy, 50, 5, std::nullopt, 0.1);
        CHECK(b.approx_ratio == doctest::Approx(std::exp(-1.0)).epsilon(1e-9));
        CHECK(b.worst_case_queries == doctest::Approx(250.0));
    }
    SUBCASE("ratios clamp at zero") {
        // eps - 2(k-1)/(n-k) < 0 for a crowded instance
        const Bounds b = theoretical_bounds(Algorithm::Sg, 13, 4, 0.5, 0.1);
        CHECK(b.approx_ratio == 0.0);
    }
    SUBCASE("parameter domain") {
        CHECK_THROWS_AS(theoretical_bounds(Algorithm::Sg, 10, 0, 0.5, 0.1), std::invalid_argument);
        CHECK_THROWS_AS(theoretical_bounds(Algorithm::Msg, 10, 2, 0.5, 0.0), std::invalid_argument);
    }
}

TEST_CASE("feasibility and monotone trace across all solvers") {
    auto cut = er_cut(20, 0.5, 33);
    const GroundSet ground(20);
    const int k = 6;

    const auto check_run = [&](const RunResult& run, std::uint64_t ceiling) {
        CHECK(run.solution.size() <= static_cast<std::size_t>(k));
        for (ElementId v : run.solution.members()) CHECK(ground.contains(v));
        CHECK(run.queries <= ceiling);
        double reconstructed = 0.0;  // cut is normalized: f(∅) = 0
        for (const auto& rec : run.iterations) {
            if (rec.chosen) {
                CHECK(rec.gain > 0.0);
                reconstructed += rec.gain;
            }
        }
        if (!run.iterations.empty()) {
            CHECK(run.value == doctest::Approx(reconstructed).epsilon(1e-9));
        }
    };

    SolverParams params = sg_params(k, 0.5);
    params.delta = 0.1;
    const std::int64_t ceil_s = 3;      // ceil((20/6) ln 2)
    const std::int64_t n_virtual = msg_virtual_ground(20, k, 0.1);  // 6 + 110 = 116
    const std::int64_t ceil_sbar = static_cast<std::int64_t>(
        std::ceil(static_cast<double>(n_virtual) / k * std::log(2.0) - 1e-9));

    for (std::uint64_t seed = 0; seed < 25; ++seed) {
        ValueOracle o1 = counted_oracle(cut);
        RandomSource r1(seed);
        check_run(run_sg(o1, ground, params, r1), static_cast<std::uint64_t>(k * ceil_s));

        ValueOracle o2 = counted_oracle(cut);
        RandomSource r2(seed);
        check_run(run_msg(o2, ground, params, r2), static_cast<std::uint64_t>(k * ceil_sbar));

        ValueOracle o3 = counted_oracle(cut);
        RandomSource r3(seed);
        check_run(run_random_greedy(o3, ground, k, r3), static_cast<std::uint64_t>(k) * 20u);
    }
    ValueOracle o4 = counted_oracle(cut);
    check_run(run_greedy(o4, ground, k), static_cast<std::uint64_t>(k) * 20u);
}

TEST_CASE("per-iteration gain floor on a small non-monotone instance") {
    // Light version of the expectation bound: from the empty prefix, one
    // sampled iteration gains at least ((1-eps)/k) f_∅(A*) on average.
    auto cut = er_cut(10, 0.5, 40);
    const int k = 3;
    const double eps = 0.5;
    ValueOracle opt_oracle = counted_oracle(cut);
    const RunResult opt = brute_force(opt_oracle, GroundSet(10), k);
    REQUIRE(opt.value > 0.0);

    const std::size_t m = 3;  // ceil((10/3) ln 2)
    std::vector<ElementId> pool;
    for (ElementId v = 0; v < 10; ++v) pool.push_back(v);

    RandomSource rng(7);
    const int trials = 20000;
    std::vector<double> gains;
    gains.reserve(trials);
    for (int t = 0; t < trials; ++t) {
        const auto sample = sample_without_replacement(pool, m, rng);
        double best = 0.0;
        ElementId best_id = -1;
        for (ElementId v : sample) {
            const double gain = cut->value(make_set({v}));
            if (best_id < 0 || gain > best || (gain == best && v < best_id)) {
                best = gain;
                best_id = v;
            }
        }
        gains.push_back(best > 0.0 ? best : 0.0);
    }
    const auto s = testutil::stats_of(gains);
    const double floor = (1.0 - eps) / k * opt.value;  // f_∅(A*) = f(A*) here
    CHECK(s.mean >= floor - 3.0 * s.sem);
}
