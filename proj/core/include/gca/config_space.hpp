#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gca/group.hpp"

namespace gca {

/// Default cap on exhaustive configuration enumerations (q^|G| entries).
inline constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 24;

/// q^n when it fits below 2^63, otherwise throws BudgetError with the
/// requested size spelled out.
std::uint64_t checked_pow(int q, int n);

/// The state set {0..q-1}. The library follows the |A| > 1 convention.
struct Alphabet {
    int size;

    explicit Alphabet(int q) : size(q) {
        if (q < 2)
            throw DomainError("alphabet size must be >= 2, got " + std::to_string(q));
    }

    bool operator==(const Alphabet&) const = default;
};

/**
 * A total assignment x: G -> A, stored densely by element index.
 * Configurations are immutable values; all operations below are pure.
 */
class Configuration {
public:
    Configuration(GroupRef group, Alphabet alphabet, std::vector<std::uint8_t> values);

    /// The all-zero configuration.
    static Configuration zero(GroupRef group, Alphabet alphabet);

    const GroupRef& group() const { return group_; }
    Alphabet alphabet() const { return alphabet_; }
    int size() const { return static_cast<int>(values_.size()); }

    int at(int element) const {
        if (element < 0 || element >= size())
            throw DomainError("configuration index out of range");
        return values_[static_cast<size_t>(element)];
    }

    const std::vector<std::uint8_t>& values() const { return values_; }

    bool operator==(const Configuration& other) const;
    bool operator!=(const Configuration& other) const { return !(*this == other); }

private:
    GroupRef group_;
    Alphabet alphabet_;
    std::vector<std::uint8_t> values_;
};

/// A partial assignment on a finite support.
struct Pattern {
    std::vector<int> support;          // distinct group elements, in order
    std::vector<std::uint8_t> values;  // one state per support element
};

/// Left shift: (g.x)(k) = x(g^-1 k). Satisfies the action axioms.
Configuration shift(int g, const Configuration& x);

/// Restriction x|_S as a pattern with the given support order.
Pattern restrict_to(const Configuration& x, const std::vector<int>& support);

/// True iff x and y agree on every element of omega. Requires matching
/// group and alphabet. Trivially true on the empty set.
bool same_on(const Configuration& x, const Configuration& y, const std::vector<int>& omega);

/**
 * The cylinder V(x,S): all configurations agreeing with the base on S.
 * Membership is an equivalence on A^G for fixed S.
 */
struct Cylinder {
    Configuration base;
    std::vector<int> support;

    bool contains(const Configuration& y) const { return same_on(base, y, support); }
};

/// Number of configurations over a group of the given order, guarded by
/// the budget. Throws BudgetError when q^order exceeds it.
std::uint64_t config_count(int group_order, Alphabet a, std::uint64_t budget = kDefaultBudget);

/// The index-th configuration in lexicographic order of the value array
/// (element 0 is the most significant digit).
Configuration config_at(const GroupRef& group, Alphabet a, std::uint64_t index);

/// Lexicographic rank of a configuration; inverse of config_at.
std::uint64_t config_index(const Configuration& x);

/**
 * Ordered stream of all q^|G| configurations, lexicographic in the value
 * array. The range checks the budget up front and yields by const
 * reference to an internal buffer advanced like an odometer.
 */
class ConfigRange {
public:
    ConfigRange(GroupRef group, Alphabet a, std::uint64_t budget = kDefaultBudget);

    class iterator {
    public:
        using value_type = Configuration;

        iterator() = default;
        iterator(const ConfigRange* range, std::uint64_t index);

        const Configuration& operator*() const { return *current_; }
        const Configuration* operator->() const { return &*current_; }
        iterator& operator++();
        bool operator==(const iterator& other) const { return index_ == other.index_; }
        bool operator!=(const iterator& other) const { return index_ != other.index_; }

    private:
        const ConfigRange* range_ = nullptr;
        std::uint64_t index_ = 0;
        std::optional<Configuration> current_;

        friend class ConfigRange;
    };

    iterator begin() const;
    iterator end() const;
    std::uint64_t size() const { return count_; }

private:
    GroupRef group_;
    Alphabet alphabet_;
    std::uint64_t count_;

    friend class iterator;
};

/// Convenience wrapper around ConfigRange construction.
ConfigRange enumerate_configs(const GroupRef& group, Alphabet a,
                              std::uint64_t budget = kDefaultBudget);

} // namespace gca
