#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <vector>

#include "submax/sampling.hpp"
#include "oracles.hpp"

using namespace submax;

TEST_CASE("without-replacement sampling basics") {
    RandomSource rng(1);
    const std::vector<ElementId> pool{10, 20, 30, 40, 50};

    SUBCASE("drawing the whole pool is a permutation") {
        auto draw = sample_without_replacement(pool, 5, rng);
        std::sort(draw.begin(), draw.end());
        CHECK(draw == std::vector<ElementId>{10, 20, 30, 40, 50});
    }
    SUBCASE("m = 0 yields the empty draw") {
        CHECK(sample_without_replacement(pool, 0, rng).empty());
    }
    SUBCASE("m beyond the pool is a precondition error") {
        CHECK_THROWS_AS(sample_without_replacement(pool, 6, rng), std::invalid_argument);
    }
}

TEST_CASE("every pair of a 4-pool is drawn with probability 1/6") {
    RandomSource rng(7);
    const std::vector<ElementId> pool{0, 1, 2, 3};
    std::map<std::pair<ElementId, ElementId>, int> counts;
    const int trials = 40000;
    for (int t = 0; t < trials; ++t) {
        auto draw = sample_without_replacement(pool, 2, rng);
        std::sort(draw.begin(), draw.end());
        ++counts[{draw[0], draw[1]}];
    }
    CHECK(counts.size() == 6);
    for (const auto& [pair, count] : counts) {
        const double freq = static_cast<double>(count) / trials;
        CHECK(freq == doctest::Approx(1.0 / 6.0).epsilon(0.06));  // 1/6 ± 0.01
    }
}

TEST_CASE("hypergeometric parameter validation and degenerate cases") {
    RandomSource rng(3);
    SUBCASE("all-target population always returns the draw count") {
        const HypergeomParams p{4, 9, 9};
        for (int i = 0; i < 20; ++i) CHECK(hypergeometric_draw(p, rng) == 4);
    }
    SUBCASE("zero draws always return zero") {
        const HypergeomParams p{0, 5, 9};
        for (int i = 0; i < 20; ++i) CHECK(hypergeometric_draw(p, rng) == 0);
    }
    SUBCASE("invalid parameters throw") {
        const HypergeomParams too_many_draws{10, 3, 9};
        const HypergeomParams too_many_targets{3, 10, 9};
        const HypergeomParams negative_draws{-1, 3, 9};
        CHECK_THROWS_AS(too_many_draws.validate(), std::invalid_argument);
        CHECK_THROWS_AS(too_many_targets.validate(), std::invalid_argument);
        CHECK_THROWS_AS(negative_draws.validate(), std::invalid_argument);
    }
    SUBCASE("empty population") {
        const HypergeomParams p{0, 0, 0};
        CHECK(hypergeometric_draw(p, rng) == 0);
    }
}

TEST_CASE("draws stay inside the exact support") {
    RandomSource rng(17);
    const HypergeomParams cases[] = {{5, 3, 10}, {7, 7, 9}, {4, 8, 11}, {11, 6, 12}, {3, 3, 3}};
    for (const auto& p : cases) {
        HypergeometricSampler sampler(p);
        for (int i = 0; i < 2000; ++i) {
            const std::int64_t r = sampler.draw(rng);
            CHECK(r >= p.support_min());
            CHECK(r <= p.support_max());
        }
    }
}

TEST_CASE("hypergeometric moments for (draws=5, targets=3, population=10)") {
    const HypergeomParams p{5, 3, 10};
    CHECK(p.mean() == doctest::Approx(1.5));
    CHECK(p.variance() == doctest::Approx(0.5833333333).epsilon(1e-9));

    HypergeometricSampler sampler(p);
    RandomSource rng(2024);
    const int trials = 100000;
    std::vector<double> xs;
    xs.reserve(trials);
    for (int i = 0; i < trials; ++i) xs.push_back(static_cast<double>(sampler.draw(rng)));
    const auto s = testutil::stats_of(xs);
    const double sigma_mean = std::sqrt(p.variance() / trials);
    CHECK(std::abs(s.mean - p.mean()) <= 3.0 * sigma_mean);

    double var = 0.0, fourth = 0.0;
    for (double x : xs) {
        var += (x - s.mean) * (x - s.mean);
        fourth += std::pow(x - s.mean, 4.0);
    }
    var /= trials - 1;
    fourth /= trials;
    const double se_var = std::sqrt((fourth - var * var) / trials);
    CHECK(std::abs(var - p.variance()) <= 3.0 * se_var);
}

TEST_CASE("empirical pmf matches the closed form on spot-check triples") {
    RandomSource rng(5);
    const HypergeomParams cases[] = {{5, 3, 10}, {6, 6, 12}, {4, 7, 11}, {9, 5, 12}};
    for (const auto& p : cases) {
        HypergeometricSampler sampler(p);
        const int trials = 200000;
        std::map<std::int64_t, double> empirical;
        for (int i = 0; i < trials; ++i) empirical[sampler.draw(rng)] += 1.0 / trials;
        std::map<std::int64_t, double> exact;
        for (std::int64_t r = p.support_min(); r <= p.support_max(); ++r) exact[r] = sampler.pmf(r);
        CHECK(testutil::total_variation(empirical, exact) <= 0.01);
    }
}

TEST_CASE("pmf sums to one and respects its support") {
    for (const auto& p : {HypergeomParams{5, 3, 10}, HypergeomParams{12, 9, 12},
                          HypergeomParams{2, 11, 12}}) {
        HypergeometricSampler sampler(p);
        double total = 0.0;
        for (std::int64_t r = p.support_min(); r <= p.support_max(); ++r) total += sampler.pmf(r);
        CHECK(total == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(sampler.pmf(p.support_min() - 1) == 0.0);
        CHECK(sampler.pmf(p.support_max() + 1) == 0.0);
    }
}

TEST_CASE("drawing r then r real elements simulates padded sampling") {
    // Real elements 0..targets-1, dummies above. Method A draws the real
    // count hypergeometrically then samples that many reals; method B
    // samples from the padded pool and discards dummies. The joint
    // distributions over real-element subsets must agree.
    const std::int64_t population = 7, targets = 4, draws = 3;
    const int trials = 200000;

    std::vector<ElementId> reals, padded;
    for (ElementId v = 0; v < targets; ++v) reals.push_back(v);
    for (ElementId v = 0; v < population; ++v) padded.push_back(v);

    RandomSource rng_a(11), rng_b(12);
    std::map<std::vector<ElementId>, double> dist_a, dist_b;
    HypergeometricSampler sampler({draws, targets, population});
    for (int t = 0; t < trials; ++t) {
        const auto r = sampler.draw(rng_a);
        auto subset = sample_without_replacement(reals, static_cast<std::size_t>(r), rng_a);
        std::sort(subset.begin(), subset.end());
        dist_a[subset] += 1.0 / trials;

        auto sample = sample_without_replacement(padded, static_cast<std::size_t>(draws), rng_b);
        std::vector<ElementId> kept;
        for (ElementId v : sample) {
            if (v < targets) kept.push_back(v);
        }
        std::sort(kept.begin(), kept.end());
        dist_b[kept] += 1.0 / trials;
    }
    CHECK(testutil::total_variation(dist_a, dist_b) <= 0.01);
}
