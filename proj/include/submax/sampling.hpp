#pragma once

// Exact uniform without-replacement sampling and exact hypergeometric
// variate generation by sequential inverse transform over the pmf.

#include <cmath>
#include <cstdint>
#include <limits>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "submax/core.hpp"

namespace submax {

// Returns m distinct elements of pool; every m-subset is equiprobable.
// Partial Fisher-Yates over a scratch copy of the pool.
inline std::vector<ElementId> sample_without_replacement(std::span<const ElementId> pool,
                                                         std::size_t m, RandomSource& rng) {
    if (m > pool.size()) {
        throw std::invalid_argument("sample_without_replacement: m = " + std::to_string(m) +
                                    " exceeds pool size " + std::to_string(pool.size()));
    }
    std::vector<ElementId> scratch(pool.begin(), pool.end());
    for (std::size_t i = 0; i < m; ++i) {
        const std::size_t j = i + static_cast<std::size_t>(rng.uniform_below(scratch.size() - i));
        std::swap(scratch[i], scratch[j]);
    }
    scratch.resize(m);
    return scratch;
}

inline std::vector<ElementId> sample_without_replacement(const std::vector<ElementId>& pool,
                                                         std::size_t m, RandomSource& rng) {
    return sample_without_replacement(std::span<const ElementId>(pool), m, rng);
}

// Parameters of H(draws, targets, population): the law of the number of
// target items in a without-replacement sample of `draws` items from a
// population containing `targets` of them.
struct HypergeomParams {
    std::int64_t draws = 0;
    std::int64_t targets = 0;
    std::int64_t population = 0;

    void validate() const {
        if (population < 0 || targets < 0 || draws < 0 ||
            targets > population || draws > population) {
            throw std::invalid_argument(
                "HypergeomParams: need 0 <= targets <= population and 0 <= draws <= population, got "
                "draws=" + std::to_string(draws) + " targets=" + std::to_string(targets) +
                " population=" + std::to_string(population));
        }
    }

    std::int64_t support_min() const { return std::max<std::int64_t>(0, draws + targets - population); }
    std::int64_t support_max() const { return std::min(draws, targets); }

    double mean() const {
        if (population == 0) return 0.0;
        return static_cast<double>(draws) * static_cast<double>(targets) / static_cast<double>(population);
    }

    double variance() const {
        if (population <= 1) return 0.0;
        const double p = static_cast<double>(targets) / static_cast<double>(population);
        return static_cast<double>(draws) * p * (1.0 - p) *
               static_cast<double>(population - draws) / static_cast<double>(population - 1);
    }
};

namespace detail {
inline double log_binom(std::int64_t n, std::int64_t k) {
    if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
    return std::lgamma(static_cast<double>(n) + 1.0) -
           std::lgamma(static_cast<double>(k) + 1.0) -
           std::lgamma(static_cast<double>(n - k) + 1.0);
}
}  // namespace detail

// Tabulates the pmf once (log-gamma based binomials, exponentiated and
// normalized) and draws by walking the cumulative sum. Exact at desk
// scale; the cost of a draw is O(support size).
class HypergeometricSampler {
public:
    explicit HypergeometricSampler(HypergeomParams p) : p_(p) {
        p_.validate();
        lo_ = p_.support_min();
        hi_ = p_.support_max();
        const std::int64_t width = hi_ - lo_ + 1;
        cumulative_.reserve(static_cast<std::size_t>(width));
        double total = 0.0;
        for (std::int64_t r = lo_; r <= hi_; ++r) {
            total += pmf(r);
            cumulative_.push_back(total);
        }
        for (double& c : cumulative_) c /= total;
    }

    // P(r) = C(targets, r) C(population-targets, draws-r) / C(population, draws).
    double pmf(std::int64_t r) const {
        if (r < lo_ || r > hi_) return 0.0;
        const double lg = detail::log_binom(p_.targets, r) +
                          detail::log_binom(p_.population - p_.targets, p_.draws - r) -
                          detail::log_binom(p_.population, p_.draws);
        return std::exp(lg);
    }

    std::int64_t draw(RandomSource& rng) const {
        if (lo_ == hi_) return lo_;
        const double u = rng.uniform01();
        for (std::size_t i = 0; i + 1 < cumulative_.size(); ++i) {
            if (u < cumulative_[i]) return lo_ + static_cast<std::int64_t>(i);
        }
        return hi_;
    }

    const HypergeomParams& params() const { return p_; }
    std::int64_t support_min() const { return lo_; }
    std::int64_t support_max() const { return hi_; }

private:
    HypergeomParams p_;
    std::int64_t lo_ = 0;
    std::int64_t hi_ = 0;
    std::vector<double> cumulative_;
};

inline std::int64_t hypergeometric_draw(const HypergeomParams& p, RandomSource& rng) {
    return HypergeometricSampler(p).draw(rng);
}

}  // namespace submax
