#pragma once

// Deterministic numeric checks of the standalone inequalities behind the
// approximation guarantees. Each check returns nullopt when its
// hypotheses fail (the point is skipped, not a failure) and otherwise
// whether the inequality holds within a 1e-12 slack.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <vector>

namespace submax {

inline constexpr double kInequalitySlack = 1e-12;
inline constexpr double kInvE = 0.36787944117144233;

// (1 - (1/k) ln(1/eps) - 2/(n-k))^(k-1) >= eps - 2(k-1)/(n-k),
// under k >= 2, n >= 3k, 1/e <= eps < 1.
inline std::optional<bool> check_lemma_eps(int n, int k, double epsilon) {
    if (k < 2 || n < 3 * k || epsilon < kInvE || epsilon >= 1.0) return std::nullopt;
    const double lhs = std::pow(1.0 - std::log(1.0 / epsilon) / k - 2.0 / (n - k),
                                static_cast<double>(k - 1));
    const double rhs = epsilon - 2.0 * (k - 1) / static_cast<double>(n - k);
    return lhs >= rhs - kInequalitySlack;
}

// (x - y)^m >= x^m - m y, under 0 <= y <= x <= 1 and integer m >= 1.
inline std::optional<bool> check_lemma_lin(double x, double y, int m) {
    if (!(0.0 <= y && y <= x && x <= 1.0) || m < 1) return std::nullopt;
    const double lhs = std::pow(x - y, static_cast<double>(m));
    const double rhs = std::pow(x, static_cast<double>(m)) - m * y;
    return lhs >= rhs - kInequalitySlack;
}

// (1 - gamma/x)^(x-1) >= e^(-gamma), under 0 <= gamma <= 1 and x >= 1.
inline std::optional<bool> check_lemma_gamma(double gamma, double x) {
    if (!(0.0 <= gamma && gamma <= 1.0) || x < 1.0) return std::nullopt;
    const double lhs = std::pow(1.0 - gamma / x, x - 1.0);
    const double rhs = std::exp(-gamma);
    return lhs >= rhs - kInequalitySlack;
}

struct GridAxis {
    std::vector<double> values;

    static GridAxis linear(double lo, double hi, int steps) {
        GridAxis axis;
        axis.values.reserve(static_cast<std::size_t>(steps) + 1);
        for (int i = 0; i <= steps; ++i) {
            axis.values.push_back(lo + (hi - lo) * static_cast<double>(i) / steps);
        }
        return axis;
    }

    // Extra points geometrically approaching `boundary` from inside the
    // interval; the inequalities are tightest there.
    GridAxis& densify_toward(double boundary, double scale, int extra) {
        double offset = scale;
        for (int i = 0; i < extra; ++i) {
            values.push_back(boundary - offset);
            offset *= 0.1;
        }
        return *this;
    }
};

struct GridReport {
    std::size_t evaluated = 0;
    std::size_t skipped = 0;
    std::size_t failures = 0;
    double min_slack = std::numeric_limits<double>::infinity();  // min(LHS - RHS)
    double min_lhs = std::numeric_limits<double>::infinity();

    bool all_hold() const { return failures == 0 && evaluated > 0; }
};

// Hypothesis-respecting evaluation grids; defaults exceed 1e4 points per
// lemma with clustering at the boundaries where slack vanishes.
struct InequalityGrid {
    std::vector<int> k_values;
    std::vector<double> n_factors;  // n = round(factor * k)
    GridAxis eps_axis;
    GridAxis x_axis;
    std::vector<double> y_fractions;  // y = fraction * x
    std::vector<int> m_values;
    GridAxis gamma_axis;
    GridAxis scale_axis;  // the 'x' of the gamma lemma

    static InequalityGrid standard() {
        InequalityGrid g;
        g.k_values = {2, 3, 4, 5, 6, 8, 10, 16, 24, 32, 64, 128};
        g.n_factors = {3.0, 3.001, 3.01, 3.1, 3.5, 4.0, 5.0, 8.0, 12.0, 20.0, 50.0, 100.0};
        g.eps_axis = GridAxis::linear(kInvE, 1.0 - 1e-6, 60);
        g.eps_axis.densify_toward(1.0, 1e-7, 6);
        for (int i = 0; i < 6; ++i) g.eps_axis.values.push_back(kInvE + std::pow(10.0, -3 - i));
        g.x_axis = GridAxis::linear(0.0, 1.0, 40);
        g.x_axis.densify_toward(1.0, 1e-6, 5);
        for (double f = 0.0; f <= 1.0; f += 0.05) g.y_fractions.push_back(f);
        g.m_values = {1, 2, 3, 4, 5, 6, 7, 8, 10, 16, 32, 64, 128, 256};
        g.gamma_axis = GridAxis::linear(0.0, 1.0, 100);
        g.gamma_axis.densify_toward(1.0, 1e-6, 6);
        g.scale_axis = GridAxis::linear(1.0, 10.0, 60);
        for (int i = 0; i < 50; ++i) g.scale_axis.values.push_back(std::pow(10.0, 1.0 + i * 0.1));
        g.scale_axis.values.push_back(1.0 + 1e-9);
        return g;
    }
};

inline GridReport run_lemma_eps_grid(const InequalityGrid& grid = InequalityGrid::standard()) {
    GridReport report;
    for (int k : grid.k_values) {
        for (double factor : grid.n_factors) {
            const int n = static_cast<int>(std::llround(factor * k));
            if (n < 3 * k) continue;
            for (double eps : grid.eps_axis.values) {
                const auto verdict = check_lemma_eps(n, k, eps);
                if (!verdict) {
                    ++report.skipped;
                    continue;
                }
                ++report.evaluated;
                if (!*verdict) ++report.failures;
                const double lhs = std::pow(1.0 - std::log(1.0 / eps) / k - 2.0 / (n - k),
                                            static_cast<double>(k - 1));
                const double rhs = eps - 2.0 * (k - 1) / static_cast<double>(n - k);
                report.min_slack = std::min(report.min_slack, lhs - rhs);
                report.min_lhs = std::min(report.min_lhs, lhs);
            }
        }
    }
    return report;
}

inline GridReport run_lemma_lin_grid(const InequalityGrid& grid = InequalityGrid::standard()) {
    GridReport report;
    for (double x : grid.x_axis.values) {
        for (double frac : grid.y_fractions) {
            const double y = frac * x;
            for (int m : grid.m_values) {
                const auto verdict = check_lemma_lin(x, y, m);
                if (!verdict) {
                    ++report.skipped;
                    continue;
                }
                ++report.evaluated;
                if (!*verdict) ++report.failures;
                const double lhs = std::pow(x - y, static_cast<double>(m));
                const double rhs = std::pow(x, static_cast<double>(m)) - m * y;
                report.min_slack = std::min(report.min_slack, lhs - rhs);
                report.min_lhs = std::min(report.min_lhs, lhs);
            }
        }
    }
    return report;
}

inline GridReport run_lemma_gamma_grid(const InequalityGrid& grid = InequalityGrid::standard()) {
    GridReport report;
    for (double gamma : grid.gamma_axis.values) {
        for (double x : grid.scale_axis.values) {
            const auto verdict = check_lemma_gamma(gamma, x);
            if (!verdict) {
                ++report.skipped;
                continue;
            }
            ++report.evaluated;
            if (!*verdict) ++report.failures;
            const double lhs = std::pow(1.0 - gamma / x, x - 1.0);
            const double rhs = std::exp(-gamma);
            report.min_slack = std::min(report.min_slack, lhs - rhs);
            report.min_lhs = std::min(report.min_lhs, lhs);
        }
    }
    return report;
}

}  // namespace submax
