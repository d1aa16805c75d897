#include "gca/config_space.hpp"

#include <algorithm>

namespace gca {

std::uint64_t checked_pow(int q, int n) {
    std::uint64_t result = 1;
    const std::uint64_t limit = std::uint64_t{1} << 62;
    for (int i = 0; i < n; ++i) {
        if (result > limit / static_cast<std::uint64_t>(q))
            throw BudgetError("enumeration size " + std::to_string(q) + "^" +
                              std::to_string(n) + " overflows the supported range");
        result *= static_cast<std::uint64_t>(q);
    }
    return result;
}

Configuration::Configuration(GroupRef group, Alphabet alphabet, std::vector<std::uint8_t> values)
    : group_(std::move(group)), alphabet_(alphabet), values_(std::move(values)) {
    if (!group_)
        throw DomainError("configuration requires a group");
    if (static_cast<int>(values_.size()) != group_->order())
        throw DomainError("configuration must assign a state to every group element");
    for (auto v : values_)
        if (v >= alphabet_.size)
            throw DomainError("configuration state out of alphabet range");
}

Configuration Configuration::zero(GroupRef group, Alphabet alphabet) {
    if (!group)
        throw DomainError("configuration requires a group");
    std::vector<std::uint8_t> values(static_cast<size_t>(group->order()), 0);
    return Configuration(std::move(group), alphabet, std::move(values));
}

bool Configuration::operator==(const Configuration& other) const {
    if (alphabet_ != other.alphabet_)
        return false;
    if (group_ != other.group_ && *group_ != *other.group_)
        return false;
    return values_ == other.values_;
}

Configuration shift(int g, const Configuration& x) {
    const auto& grp = *x.group();
    const int ginv = grp.inverse(g);
    std::vector<std::uint8_t> out(static_cast<size_t>(x.size()));
    for (int k = 0; k < x.size(); ++k)
        out[static_cast<size_t>(k)] =
            static_cast<std::uint8_t>(x.at(grp.op(ginv, k)));
    return Configuration(x.group(), x.alphabet(), std::move(out));
}

Pattern restrict_to(const Configuration& x, const std::vector<int>& support) {
    Pattern p;
    p.support = support;
    p.values.reserve(support.size());
    for (int s : support)
        p.values.push_back(static_cast<std::uint8_t>(x.at(s)));
    return p;
}

bool same_on(const Configuration& x, const Configuration& y, const std::vector<int>& omega) {
    if (x.alphabet() != y.alphabet() || (x.group() != y.group() && *x.group() != *y.group()))
        throw DomainError("same_on requires matching group and alphabet");
    for (int w : omega)
        if (x.at(w) != y.at(w))
            return false;
    return true;
}

std::uint64_t config_count(int group_order, Alphabet a, std::uint64_t budget) {
    const std::uint64_t count = checked_pow(a.size, group_order);
    if (count > budget)
        throw BudgetError("enumeration of " + std::to_string(count) +
                          " configurations exceeds the budget of " + std::to_string(budget));
    return count;
}

Configuration config_at(const GroupRef& group, Alphabet a, std::uint64_t index) {
    if (!group)
        throw DomainError("configuration requires a group");
    const int n = group->order();
    std::vector<std::uint8_t> values(static_cast<size_t>(n));
    // Element 0 is the most significant base-q digit.
    for (int k = n - 1; k >= 0; --k) {
        values[static_cast<size_t>(k)] =
            static_cast<std::uint8_t>(index % static_cast<std::uint64_t>(a.size));
        index /= static_cast<std::uint64_t>(a.size);
    }
    if (index != 0)
        throw DomainError("configuration index out of range for this space");
    return Configuration(group, a, std::move(values));
}

std::uint64_t config_index(const Configuration& x) {
    std::uint64_t index = 0;
    for (int k = 0; k < x.size(); ++k)
        index = index * static_cast<std::uint64_t>(x.alphabet().size) +
                static_cast<std::uint64_t>(x.at(k));
    return index;
}

ConfigRange::ConfigRange(GroupRef group, Alphabet a, std::uint64_t budget)
    : group_(std::move(group)), alphabet_(a), count_(0) {
    if (!group_)
        throw DomainError("enumeration requires a group");
    count_ = config_count(group_->order(), a, budget);
}

ConfigRange::iterator::iterator(const ConfigRange* range, std::uint64_t index)
    : range_(range), index_(index) {
    if (range_ && index_ < range_->count_)
        current_ = config_at(range_->group_, range_->alphabet_, index_);
}

ConfigRange::iterator& ConfigRange::iterator::operator++() {
    ++index_;
    if (!current_ || index_ >= range_->count_)
        return *this;
    // Odometer step on the value array, least significant digit last.
    auto& values = const_cast<std::vector<std::uint8_t>&>(current_->values());
    const int q = range_->alphabet_.size;
    for (int k = static_cast<int>(values.size()) - 1; k >= 0; --k) {
        if (values[static_cast<size_t>(k)] + 1 < q) {
            ++values[static_cast<size_t>(k)];
            return *this;
        }
        values[static_cast<size_t>(k)] = 0;
    }
    return *this;
}

ConfigRange::iterator ConfigRange::begin() const { return iterator(this, 0); }

ConfigRange::iterator ConfigRange::end() const { return iterator(this, count_); }

ConfigRange enumerate_configs(const GroupRef& group, Alphabet a, std::uint64_t budget) {
    return ConfigRange(group, a, budget);
}

} // namespace gca
