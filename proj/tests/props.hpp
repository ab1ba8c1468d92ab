#pragma once

// Property suites shared by the unit tests and the acceptance runner:
// submodularity and non-negativity spot checks over random sets, plus the
// exact symmetry identities of the cut and mutual-information objectives.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <vector>

#include "submax/core.hpp"
#include "submax/graphs.hpp"
#include "submax/matrix.hpp"

namespace testutil {

inline std::vector<submax::ElementId> random_subset(int n, int max_size, submax::RandomSource& rng) {
    const int size = rng.uniform_int_below(std::min(max_size, n) + 1);
    std::vector<submax::ElementId> pool(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) pool[static_cast<std::size_t>(i)] = i;
    for (int i = 0; i < size; ++i) {
        const auto j = static_cast<std::size_t>(i) +
                       static_cast<std::size_t>(rng.uniform_below(pool.size() - static_cast<std::size_t>(i)));
        std::swap(pool[static_cast<std::size_t>(i)], pool[j]);
    }
    pool.resize(static_cast<std::size_t>(size));
    return pool;
}

// Diminishing returns on random triples X ⊆ Y, v ∉ Y with |Y| <= max_y:
// f_X(v) >= f_Y(v) - 1e-8. Returns the violation count.
inline int submodularity_violations(const submax::SetFunction& fn, int n, int trials,
                                    std::uint64_t seed, int max_y = 12) {
    submax::RandomSource rng(seed);
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        const auto y_members = random_subset(n, std::min(max_y, n - 1), rng);
        std::vector<submax::ElementId> x_members;
        for (submax::ElementId v : y_members) {
            if (rng.uniform_below(2) == 0) x_members.push_back(v);
        }
        std::vector<submax::ElementId> outside;
        for (int v = 0; v < n; ++v) {
            if (std::find(y_members.begin(), y_members.end(), v) == y_members.end()) {
                outside.push_back(v);
            }
        }
        if (outside.empty()) continue;
        const submax::ElementId v = outside[rng.uniform_below(outside.size())];

        const submax::SolutionSet x(x_members), y(y_members);
        const double gain_x = fn.value(x.with(v)) - fn.value(x);
        const double gain_y = fn.value(y.with(v)) - fn.value(y);
        if (gain_x < gain_y - 1e-8) ++violations;
    }
    return violations;
}

// f(S) >= -1e-9 on random sets of any size.
inline int nonnegativity_violations(const submax::SetFunction& fn, int n, int trials,
                                    std::uint64_t seed) {
    submax::RandomSource rng(seed);
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        const auto members = random_subset(n, n, rng);
        if (fn.value(submax::SolutionSet(members)) < -1e-9) ++violations;
    }
    return violations;
}

// cut(S) == cut(V\S), exact for integer weights.
inline int cut_symmetry_violations(const submax::WeightedGraph& g, int trials, std::uint64_t seed) {
    submax::RandomSource rng(seed);
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        const auto members = random_subset(g.n(), g.n(), rng);
        std::vector<submax::ElementId> complement;
        for (int v = 0; v < g.n(); ++v) {
            if (std::find(members.begin(), members.end(), v) == members.end()) complement.push_back(v);
        }
        const double a = submax::cut_value(g, submax::SolutionSet(members));
        const double b = submax::cut_value(g, submax::SolutionSet(complement));
        if (a != b) ++violations;
    }
    return violations;
}

// |f(S) - f(V\S)| <= 1e-8 for the mutual information.
inline int mi_symmetry_violations(const submax::SetFunction& fn, int n, int trials,
                                  std::uint64_t seed) {
    submax::RandomSource rng(seed);
    int violations = 0;
    for (int t = 0; t < trials; ++t) {
        const auto members = random_subset(n, n, rng);
        std::vector<submax::ElementId> complement;
        for (int v = 0; v < n; ++v) {
            if (std::find(members.begin(), members.end(), v) == members.end()) complement.push_back(v);
        }
        const double a = fn.value(submax::SolutionSet(members));
        const double b = fn.value(submax::SolutionSet(complement));
        if (std::abs(a - b) > 1e-8) ++violations;
    }
    return violations;
}

}  // namespace testutil
