#pragma once

// Core types shared by every solver: ground set, solution set, the
// counted value-oracle contract, and the seeded random source.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace submax {

using ElementId = std::int32_t;

// Universe V = {0, ..., n-1}.
struct GroundSet {
    int n = 0;

    explicit GroundSet(int count) : n(count) {
        if (n < 1) throw std::invalid_argument("GroundSet: n must be >= 1");
    }

    bool contains(ElementId v) const { return v >= 0 && v < n; }

    std::vector<ElementId> all() const {
        std::vector<ElementId> ids(static_cast<std::size_t>(n));
        for (int i = 0; i < n; ++i) ids[static_cast<std::size_t>(i)] = i;
        return ids;
    }
};

// Ordered set of distinct elements; insertion order is the order the
// solver accepted them.
class SolutionSet {
public:
    SolutionSet() = default;

    explicit SolutionSet(std::vector<ElementId> members) {
        for (ElementId v : members) add(v);
    }

    bool contains(ElementId v) const {
        return std::find(members_.begin(), members_.end(), v) != members_.end();
    }

    void add(ElementId v) {
        if (v < 0) throw std::invalid_argument("SolutionSet: negative element id");
        if (contains(v)) throw std::invalid_argument("SolutionSet: duplicate element " + std::to_string(v));
        members_.push_back(v);
    }

    SolutionSet with(ElementId v) const {
        SolutionSet s(*this);
        s.add(v);
        return s;
    }

    std::size_t size() const { return members_.size(); }
    bool empty() const { return members_.empty(); }
    const std::vector<ElementId>& members() const { return members_; }

    std::vector<ElementId> sorted() const {
        std::vector<ElementId> m = members_;
        std::sort(m.begin(), m.end());
        return m;
    }

    bool operator==(const SolutionSet& other) const { return sorted() == other.sorted(); }

private:
    std::vector<ElementId> members_;
};

// Incremental evaluation of a growing set, offered by objectives whose
// structure admits a cheap f(A ∪ {v}) given the current A.  Each
// value_with() corresponds to one full oracle evaluation of a distinct
// set and is charged as one query by the counting layer.
class MarginCursor {
public:
    virtual ~MarginCursor() = default;
    virtual double base() const = 0;                    // f(A)
    virtual double value_with(ElementId v) const = 0;   // f(A ∪ {v}), v ∉ A
    virtual void accept(ElementId v) = 0;               // A ← A ∪ {v}
};

// Black-box set function.  Implementations must be immutable after
// construction, deterministic, and non-negative on every input.
class SetFunction {
public:
    virtual ~SetFunction() = default;

    virtual double value(const SolutionSet& s) const = 0;

    // Optional query-equivalent fast path; nullptr means callers fall
    // back to one-shot evaluation.
    virtual std::unique_ptr<MarginCursor> cursor() const { return nullptr; }

    // True when the objective only ever returns exactly representable
    // integers (unit-weight cuts, coverage counts); such values compare
    // exactly instead of within relative tolerance.
    virtual bool integer_valued() const { return false; }
};

// Wraps an arbitrary callable as an objective; used by tests and spy
// oracles. No cursor, no integer claim.
class FunctionObjective final : public SetFunction {
public:
    using Fn = std::function<double(const SolutionSet&)>;
    explicit FunctionObjective(Fn fn) : fn_(std::move(fn)) {}
    double value(const SolutionSet& s) const override { return fn_(s); }

private:
    Fn fn_;
};

inline constexpr double kNonNegativityTolerance = 1e-9;

namespace detail {
inline double checked_value(const SetFunction& fn, const SolutionSet& s) {
    const double v = fn.value(s);
    if (v < -kNonNegativityTolerance) {
        throw std::domain_error("oracle returned negative value " + std::to_string(v) +
                                " for a set of size " + std::to_string(s.size()));
    }
    return v;
}
}  // namespace detail

// Query-counted view of a set function.  The counter charges exactly one
// query per distinct set evaluated through value(); probe() is the
// uncounted path solvers use for f(∅) at startup and for the final
// verification of f(A_k), so reported totals match the convention that
// one stochastic-greedy iteration costs exactly its sample size.
class ValueOracle {
public:
    explicit ValueOracle(std::shared_ptr<const SetFunction> fn) : fn_(std::move(fn)) {
        if (!fn_) throw std::invalid_argument("ValueOracle: null objective");
    }

    double value(const SolutionSet& s) {
        ++count_;
        return detail::checked_value(*fn_, s);
    }

    double probe(const SolutionSet& s) const { return detail::checked_value(*fn_, s); }

    std::uint64_t queries() const { return count_; }

    const SetFunction& function() const { return *fn_; }
    std::shared_ptr<const SetFunction> function_ptr() const { return fn_; }

    // Growing-set evaluator for solver inner loops.  Uses the objective's
    // cursor when present, otherwise one-shot evaluations against a cached
    // base value.  Every value_with() increments the owning counter by one.
    class Grower {
    public:
        explicit Grower(ValueOracle& owner)
            : owner_(&owner), cursor_(owner.fn_->cursor()) {
            if (!cursor_) base_ = owner.probe(set_);
        }

        double base() const { return cursor_ ? cursor_->base() : base_; }

        double value_with(ElementId v) {
            ++owner_->count_;
            if (cursor_) return cursor_->value_with(v);
            return detail::checked_value(*owner_->fn_, set_.with(v));
        }

        // value_after must be the result of value_with(v); carrying it in
        // avoids re-evaluating the accepted set.
        void accept(ElementId v, double value_after) {
            set_.add(v);
            if (cursor_) {
                cursor_->accept(v);
            } else {
                base_ = value_after;
            }
        }

        const SolutionSet& set() const { return set_; }

    private:
        ValueOracle* owner_;
        std::unique_ptr<MarginCursor> cursor_;
        SolutionSet set_;
        double base_ = 0.0;
    };

    Grower grower() { return Grower(*this); }

private:
    std::shared_ptr<const SetFunction> fn_;
    std::uint64_t count_ = 0;
};

// Fresh counter over the same objective; values are identical to base.
inline ValueOracle counted_oracle(const ValueOracle& base) {
    return ValueOracle(base.function_ptr());
}

inline ValueOracle counted_oracle(std::shared_ptr<const SetFunction> fn) {
    return ValueOracle(std::move(fn));
}

// f_base(v) = f(base ∪ {v}) − f(base).  Two counted evaluations.
inline double marginal_gain(ValueOracle& oracle, const SolutionSet& base, ElementId v) {
    if (base.contains(v)) {
        throw std::invalid_argument("marginal_gain: element " + std::to_string(v) +
                                    " already in base set");
    }
    const double with_v = oracle.value(base.with(v));
    const double without = oracle.value(base);
    return with_v - without;
}

// Deterministic random source.  The engine is std::mt19937_64, whose
// output sequence the C++ standard specifies exactly; the bounded-integer
// and [0,1) draws are hand-rolled here because the standard distribution
// adaptors are implementation-defined.  Same seed, same stream, on every
// platform and in every release.
class RandomSource {
public:
    explicit RandomSource(std::uint64_t seed) : engine_(seed) {}

    std::uint64_t next_u64() { return engine_(); }

    // Uniform in [0, bound); bound >= 1. Rejection from the top removes
    // modulo bias.
    std::uint64_t uniform_below(std::uint64_t bound) {
        if (bound == 0) throw std::invalid_argument("uniform_below: bound must be >= 1");
        const std::uint64_t threshold = (0 - bound) % bound;  // 2^64 mod bound
        for (;;) {
            const std::uint64_t r = next_u64();
            if (r >= threshold) return r % bound;
        }
    }

    int uniform_int_below(int bound) {
        return static_cast<int>(uniform_below(static_cast<std::uint64_t>(bound)));
    }

    // Uniform double in [0, 1) with 53 significant bits.
    double uniform01() { return static_cast<double>(next_u64() >> 11) * 0x1.0p-53; }

private:
    std::mt19937_64 engine_;
};

inline RandomSource seeded_rng(std::uint64_t seed) { return RandomSource(seed); }

enum class EpsilonMode { Explicit, Auto };

// Solver parameters. epsilon is the sampling parameter of the stochastic
// algorithms, delta the virtual-padding parameter of the modified variant.
// Auto mode balances epsilon at 1/2 plus the instance-size correction
// (1/2 + (k-1)/(n-k) for sg, 1/2 + (k-1)/(N-k) for msg).
struct SolverParams {
    int k = 1;
    double epsilon = 0.5;
    double delta = 0.1;
    std::uint64_t seed = 0;
    EpsilonMode epsilon_mode = EpsilonMode::Explicit;
};

struct IterationRecord {
    int sample_size = 0;                 // candidates actually evaluated this round
    std::optional<ElementId> chosen;     // accepted element, if any
    double gain = 0.0;                   // best marginal gain seen this round
};

struct RunResult {
    SolutionSet solution;
    double value = 0.0;
    std::uint64_t queries = 0;
    std::vector<IterationRecord> iterations;
    double wall_time_ms = 0.0;
};

}  // namespace submax
