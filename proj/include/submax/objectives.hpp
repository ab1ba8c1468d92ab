#pragma once

// Concrete submodular objectives behind the SetFunction contract: graph
// cut, log-det entropy, mutual information, set coverage, and modular
// weights.

#include <cstdint>
#include <memory>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "submax/core.hpp"
#include "submax/graphs.hpp"
#include "submax/matrix.hpp"

namespace submax {

// H(S) = ln det X[S]. Monotone and non-negative when the matrix carries
// the certified minimum-eigenvalue flag.
class LogDetObjective final : public SetFunction {
public:
    explicit LogDetObjective(std::shared_ptr<const PsdMatrix> x) : x_(std::move(x)) {
        if (!x_) throw std::invalid_argument("LogDetObjective: null matrix");
    }

    double value(const SolutionSet& s) const override { return logdet_entropy(*x_, s); }

    const PsdMatrix& matrix() const { return *x_; }

private:
    std::shared_ptr<const PsdMatrix> x_;
};

// f(S) = H(S) + H(V\S) - H(V); the total entropy is precomputed once.
class MutualInformationObjective final : public SetFunction {
public:
    explicit MutualInformationObjective(std::shared_ptr<const PsdMatrix> x) : x_(std::move(x)) {
        if (!x_) throw std::invalid_argument("MutualInformationObjective: null matrix");
        SolutionSet whole;
        for (ElementId v = 0; v < x_->dim(); ++v) whole.add(v);
        total_entropy_ = logdet_entropy(*x_, whole);
    }

    double value(const SolutionSet& s) const override {
        const int n = x_->dim();
        std::vector<char> in(static_cast<std::size_t>(n), 0);
        for (ElementId v : s.members()) {
            if (v < 0 || v >= n) {
                throw std::invalid_argument("mutual information: index " + std::to_string(v) +
                                            " out of range");
            }
            in[static_cast<std::size_t>(v)] = 1;
        }
        std::vector<ElementId> complement;
        complement.reserve(static_cast<std::size_t>(n) - s.size());
        for (ElementId v = 0; v < n; ++v) {
            if (!in[static_cast<std::size_t>(v)]) complement.push_back(v);
        }
        return logdet_entropy(*x_, s) + logdet_entropy(*x_, SolutionSet(complement)) - total_entropy_;
    }

    const PsdMatrix& matrix() const { return *x_; }

private:
    std::shared_ptr<const PsdMatrix> x_;
    double total_entropy_ = 0.0;
};

// f(S) = number of universe items covered by the union of the members'
// sets. Monotone, integer-valued.
class CoverageObjective final : public SetFunction {
public:
    CoverageObjective(int universe_size, std::vector<std::vector<int>> sets)
        : universe_(universe_size), sets_(std::move(sets)) {
        if (universe_ < 1) throw std::invalid_argument("CoverageObjective: universe must be >= 1");
        for (const auto& set : sets_) {
            for (int item : set) {
                if (item < 0 || item >= universe_) {
                    throw std::invalid_argument("CoverageObjective: item out of universe range");
                }
            }
        }
    }

    double value(const SolutionSet& s) const override {
        std::vector<char> covered(static_cast<std::size_t>(universe_), 0);
        int count = 0;
        for (ElementId v : s.members()) {
            if (v < 0 || static_cast<std::size_t>(v) >= sets_.size()) {
                throw std::invalid_argument("CoverageObjective: element out of range");
            }
            for (int item : sets_[static_cast<std::size_t>(v)]) {
                if (!covered[static_cast<std::size_t>(item)]) {
                    covered[static_cast<std::size_t>(item)] = 1;
                    ++count;
                }
            }
        }
        return static_cast<double>(count);
    }

    bool integer_valued() const override { return true; }

    int n() const { return static_cast<int>(sets_.size()); }
    int universe() const { return universe_; }

private:
    int universe_;
    std::vector<std::vector<int>> sets_;
};

// Each of n elements covers every universe item independently with
// probability p. Deterministic given seed.
inline CoverageObjective gen_coverage(int n, int universe_size, double p, std::uint64_t seed) {
    if (n < 1) throw std::invalid_argument("gen_coverage: n must be >= 1");
    if (!(p > 0.0 && p <= 1.0)) throw std::invalid_argument("gen_coverage: need 0 < p <= 1");
    RandomSource rng(seed);
    std::vector<std::vector<int>> sets(static_cast<std::size_t>(n));
    for (auto& set : sets) {
        for (int item = 0; item < universe_size; ++item) {
            if (rng.uniform01() < p) set.push_back(item);
        }
    }
    return CoverageObjective(universe_size, std::move(sets));
}

// f(S) = Σ_{v∈S} w_v with non-negative weights. Monotone modular.
class ModularObjective final : public SetFunction {
public:
    explicit ModularObjective(std::vector<double> weights) : weights_(std::move(weights)) {
        if (weights_.empty()) throw std::invalid_argument("ModularObjective: empty weights");
        for (double w : weights_) {
            if (w < 0.0) throw std::invalid_argument("ModularObjective: negative weight");
        }
    }

    double value(const SolutionSet& s) const override {
        double total = 0.0;
        for (ElementId v : s.members()) {
            if (v < 0 || static_cast<std::size_t>(v) >= weights_.size()) {
                throw std::invalid_argument("ModularObjective: element out of range");
            }
            total += weights_[static_cast<std::size_t>(v)];
        }
        return total;
    }

    int n() const { return static_cast<int>(weights_.size()); }

private:
    std::vector<double> weights_;
};

}  // namespace submax
