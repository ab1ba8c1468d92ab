#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "submax/theory.hpp"

using namespace submax;

TEST_CASE("epsilon lemma point checks") {
    SUBCASE("boundary of the hypotheses: n = 30, k = 2, eps = 1/e") {
        const auto v = check_lemma_eps(30, 2, kInvE);
        REQUIRE(v.has_value());
        CHECK(*v);
    }
    SUBCASE("n exactly 3k with epsilon near one") {
        const auto v = check_lemma_eps(30, 10, 0.99);
        REQUIRE(v.has_value());
        CHECK(*v);
    }
    SUBCASE("k = 2, n = 6, eps = 0.5 is inside the hypotheses and holds") {
        const auto v = check_lemma_eps(6, 2, 0.5);
        REQUIRE(v.has_value());  // 0.5 >= 1/e, so evaluated rather than skipped
        CHECK(*v);
    }
    SUBCASE("hypothesis violations are skipped, not failed") {
        CHECK_FALSE(check_lemma_eps(5, 2, 0.5).has_value());    // n < 3k
        CHECK_FALSE(check_lemma_eps(30, 1, 0.5).has_value());   // k < 2
        CHECK_FALSE(check_lemma_eps(30, 2, 0.2).has_value());   // eps < 1/e
        CHECK_FALSE(check_lemma_eps(30, 2, 1.0).has_value());   // eps >= 1
    }
}

TEST_CASE("linearization lemma point checks") {
    SUBCASE("m = 1 is equality") {
        const auto v = check_lemma_lin(0.7, 0.2, 1);
        REQUIRE(v.has_value());
        CHECK(*v);
    }
    SUBCASE("x = 1, y = 0") {
        const auto v = check_lemma_lin(1.0, 0.0, 7);
        REQUIRE(v.has_value());
        CHECK(*v);
    }
    SUBCASE("x = 0.8, y = 0.3, m = 3: 0.125 >= -0.388") {
        const auto v = check_lemma_lin(0.8, 0.3, 3);
        REQUIRE(v.has_value());
        CHECK(*v);
        CHECK(std::pow(0.5, 3.0) == doctest::Approx(0.125));
        CHECK(std::pow(0.8, 3.0) - 3 * 0.3 == doctest::Approx(-0.388));
    }
    SUBCASE("hypothesis violations are skipped") {
        CHECK_FALSE(check_lemma_lin(0.5, 0.6, 2).has_value());  // y > x
        CHECK_FALSE(check_lemma_lin(1.2, 0.1, 2).has_value());  // x > 1
        CHECK_FALSE(check_lemma_lin(0.5, 0.1, 0).has_value());  // m < 1
    }
}

TEST_CASE("gamma lemma point checks") {
    SUBCASE("gamma = 0 gives 1 >= 1") {
        const auto v = check_lemma_gamma(0.0, 3.7);
        REQUIRE(v.has_value());
        CHECK(*v);
    }
    SUBCASE("x = 1 makes the exponent zero") {
        const auto v = check_lemma_gamma(0.8, 1.0);
        REQUIRE(v.has_value());
        CHECK(*v);
    }
    SUBCASE("gamma = 1, x = 2: 0.5 >= e^-1") {
        const auto v = check_lemma_gamma(1.0, 2.0);
        REQUIRE(v.has_value());
        CHECK(*v);
    }
    SUBCASE("hypothesis violations are skipped") {
        CHECK_FALSE(check_lemma_gamma(1.1, 2.0).has_value());
        CHECK_FALSE(check_lemma_gamma(0.5, 0.9).has_value());
    }
}

TEST_CASE("dense hypothesis-respecting grids hold everywhere") {
    const auto grid = InequalityGrid::standard();

    const GridReport eps_report = run_lemma_eps_grid(grid);
    CHECK(eps_report.evaluated >= 10000);
    CHECK(eps_report.failures == 0);
    CHECK(eps_report.min_slack >= -kInequalitySlack);
    // The LHS itself is non-negative on the grid (up to rounding at the
    // exact k=2, n=3k, eps=1/e corner).
    CHECK(eps_report.min_lhs >= -kInequalitySlack);

    const GridReport lin_report = run_lemma_lin_grid(grid);
    CHECK(lin_report.evaluated >= 10000);
    CHECK(lin_report.failures == 0);

    const GridReport gamma_report = run_lemma_gamma_grid(grid);
    CHECK(gamma_report.evaluated >= 10000);
    CHECK(gamma_report.failures == 0);
}
