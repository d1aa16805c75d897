#include "gca/phi_ca.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>
#include <unordered_map>

namespace gca {

LocalRule::LocalRule(Alphabet a, std::vector<int> memory_elements,
                     std::vector<std::uint8_t> entries)
    : alphabet(a), memory(std::move(memory_elements)), table(std::move(entries)) {
    std::set<int> distinct(memory.begin(), memory.end());
    if (distinct.size() != memory.size())
        throw DomainError("rule memory elements must be distinct");
    const std::uint64_t expected = checked_pow(alphabet.size, static_cast<int>(memory.size()));
    if (table.size() != expected)
        throw DomainError("rule table has " + std::to_string(table.size()) + " entries, expected " +
                          std::to_string(expected));
    for (auto v : table)
        if (v >= alphabet.size)
            throw DomainError("rule table value out of alphabet range");
}

std::uint64_t LocalRule::index_of(const std::vector<std::uint8_t>& states) const {
    if (states.size() != memory.size())
        throw DomainError("pattern length does not match rule memory");
    std::uint64_t idx = 0;
    for (auto s : states)
        idx = idx * static_cast<std::uint64_t>(alphabet.size) + s;
    return idx;
}

int LocalRule::evaluate(const std::vector<std::uint8_t>& states) const {
    return table[index_of(states)];
}

PhiCA::PhiCA(GroupHom phi, LocalRule rule) : phi_(std::move(phi)), rule_(std::move(rule)) {
    const int n = phi_.codomain()->order();
    for (int s : rule_.memory)
        if (s < 0 || s >= n)
            throw DomainError("rule memory element " + std::to_string(s) +
                              " is not in the universe group");
}

Configuration apply(const PhiCA& t, const Configuration& x) {
    const auto& g = *t.source_group();
    if (*x.group() != g || x.alphabet() != t.alphabet())
        throw DomainError("apply: configuration does not live in the automaton's source space");
    const auto& rule = t.rule();
    const int hn = t.target_group()->order();
    const int q = rule.alphabet.size;
    std::vector<std::uint8_t> out(static_cast<size_t>(hn));
    for (int h = 0; h < hn; ++h) {
        // (phi(h^-1).x)(s) = x(phi(h) s)
        const int base = t.phi()(h);
        std::uint64_t idx = 0;
        for (int s : rule.memory)
            idx = idx * static_cast<std::uint64_t>(q) +
                  static_cast<std::uint64_t>(x.at(g.op(base, s)));
        out[static_cast<size_t>(h)] = rule.table[idx];
    }
    return Configuration(t.target_group(), t.alphabet(), std::move(out));
}

PhiCA phi_star(const GroupHom& phi, Alphabet a) {
    std::vector<std::uint8_t> id_table(static_cast<size_t>(a.size));
    std::iota(id_table.begin(), id_table.end(), std::uint8_t{0});
    LocalRule rule(a, {phi.codomain()->identity()}, std::move(id_table));
    return PhiCA(phi, std::move(rule));
}

PhiCA compose(const PhiCA& t2, const PhiCA& t1) {
    if (t1.alphabet() != t2.alphabet())
        throw DomainError("compose: alphabets differ");
    if (*t1.target_group() != *t2.source_group())
        throw DomainError("compose: intermediate configuration spaces differ");
    const auto& g = *t1.source_group();
    const GroupHom chained = hom_compose(t1.phi(), t2.phi());

    // Memory {phi1(s2) s1}, deduplicated and sorted.
    std::set<int> memory_set;
    for (int s2 : t2.rule().memory)
        for (int s1 : t1.rule().memory)
            memory_set.insert(g.op(t1.phi()(s2), s1));
    std::vector<int> memory(memory_set.begin(), memory_set.end());

    // Composed rule by direct evaluation:
    //   mu(p) = mu2(s2 -> mu1(s1 -> p(phi1(s2) s1))).
    const int q = t1.alphabet().size;
    std::unordered_map<int, size_t> slot;
    for (size_t i = 0; i < memory.size(); ++i)
        slot[memory[i]] = i;
    const std::uint64_t patterns = checked_pow(q, static_cast<int>(memory.size()));
    std::vector<std::uint8_t> table(patterns);
    std::vector<std::uint8_t> digits(memory.size(), 0);
    std::vector<std::uint8_t> inner(t1.rule().memory.size());
    std::vector<std::uint8_t> middle(t2.rule().memory.size());
    for (std::uint64_t p = 0; p < patterns; ++p) {
        for (size_t j = 0; j < middle.size(); ++j) {
            const int s2 = t2.rule().memory[j];
            const int shifted = t1.phi()(s2);
            for (size_t i = 0; i < inner.size(); ++i)
                inner[i] = digits[slot.at(g.op(shifted, t1.rule().memory[i]))];
            middle[j] = static_cast<std::uint8_t>(t1.rule().evaluate(inner));
        }
        table[p] = static_cast<std::uint8_t>(t2.rule().evaluate(middle));
        // Advance the pattern odometer, last digit least significant.
        for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
            if (digits[static_cast<size_t>(k)] + 1 < q) {
                ++digits[static_cast<size_t>(k)];
                break;
            }
            digits[static_cast<size_t>(k)] = 0;
        }
    }
    return PhiCA(chained, LocalRule(t1.alphabet(), std::move(memory), std::move(table)));
}

CaFactorization decompose_ca(const GroupHom& phi, Alphabet a) {
    const HomFactorization factors = decompose_hom(phi);
    return {phi_star(factors.projection, a), phi_star(factors.embedding, a)};
}

MapTable::MapTable(GroupRef source_group, GroupRef target_group, Alphabet alphabet,
                   std::vector<std::vector<std::uint8_t>> outputs)
    : source_(std::move(source_group)), target_(std::move(target_group)), alphabet_(alphabet),
      outputs_(std::move(outputs)) {
    if (!source_ || !target_)
        throw DomainError("map table requires source and target groups");
    const std::uint64_t expected = checked_pow(alphabet_.size, source_->order());
    if (outputs_.size() != expected)
        throw DomainError("map table must cover all " + std::to_string(expected) + " inputs");
    for (const auto& out : outputs_) {
        if (static_cast<int>(out.size()) != target_->order())
            throw DomainError("map table output has wrong length");
        for (auto v : out)
            if (v >= alphabet_.size)
                throw DomainError("map table output state out of range");
    }
}

MapTable MapTable::tabulate(const PhiCA& t, std::uint64_t budget) {
    std::vector<std::vector<std::uint8_t>> outputs;
    outputs.reserve(config_count(t.source_group()->order(), t.alphabet(), budget));
    for (const auto& x : enumerate_configs(t.source_group(), t.alphabet(), budget))
        outputs.push_back(apply(t, x).values());
    return MapTable(t.source_group(), t.target_group(), t.alphabet(), std::move(outputs));
}

Configuration MapTable::output_at(std::uint64_t input_index) const {
    if (input_index >= outputs_.size())
        throw DomainError("map table input index out of range");
    return Configuration(target_, alphabet_, outputs_[input_index]);
}

Configuration MapTable::operator()(const Configuration& x) const {
    if (*x.group() != *source_ || x.alphabet() != alphabet_)
        throw DomainError("map table applied outside its domain");
    return output_at(config_index(x));
}

bool MapTable::operator==(const MapTable& other) const {
    return *source_ == *other.source_ && *target_ == *other.target_ &&
           alphabet_ == other.alphabet_ && outputs_ == other.outputs_;
}

bool check_equivariant(const MapTable& f, const GroupHom& phi) {
    if (*phi.codomain() != *f.source_group() || *phi.domain() != *f.target_group())
        throw DomainError("check_equivariant: hom endpoints do not match the map table");
    for (const auto& x : enumerate_configs(f.source_group(), f.alphabet(), f.input_count())) {
        const Configuration fx = f(x);
        for (int h = 0; h < f.target_group()->order(); ++h) {
            if (f(shift(phi(h), x)) != shift(h, fx))
                return false;
        }
    }
    return true;
}

namespace {

// Constancy of x -> f(x)(e_H) on every cylinder V(., S): bucket inputs by
// their restriction to S and compare the identity coordinate.
bool coordinate_constant_on(const MapTable& f, const std::vector<int>& support,
                            std::uint64_t* violating_input = nullptr) {
    const int e_h = f.target_group()->identity();
    const int q = f.alphabet().size;
    std::unordered_map<std::uint64_t, std::uint8_t> seen;
    std::uint64_t index = 0;
    for (const auto& x : enumerate_configs(f.source_group(), f.alphabet(), f.input_count())) {
        std::uint64_t key = 0;
        for (int s : support)
            key = key * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(x.at(s));
        const std::uint8_t value = f.raw_outputs()[index][static_cast<size_t>(e_h)];
        auto [it, inserted] = seen.emplace(key, value);
        if (!inserted && it->second != value) {
            if (violating_input)
                *violating_input = index;
            return false;
        }
        ++index;
    }
    return true;
}

std::vector<int> subset_from_mask(std::uint32_t mask, int n) {
    std::vector<int> out;
    for (int i = 0; i < n; ++i)
        if (mask & (std::uint32_t{1} << i))
            out.push_back(i);
    return out;
}

} // namespace

std::vector<int> find_memory_set(const MapTable& f, const GroupHom& phi) {
    if (!check_equivariant(f, phi))
        throw DomainError("find_memory_set requires an equivariant map table");
    const int n = f.source_group()->order();

    if (n <= 12) {
        // Full subset-lattice scan; the valid sets form an up-closed family,
        // so the minimal ones are an antichain. Return the lex-least minimal
        // set by sorted element indices.
        std::vector<std::uint32_t> valid;
        for (std::uint32_t mask = 0; mask < (std::uint32_t{1} << n); ++mask)
            if (coordinate_constant_on(f, subset_from_mask(mask, n)))
                valid.push_back(mask);
        std::vector<std::vector<int>> minimal;
        for (std::uint32_t mask : valid) {
            bool is_minimal = true;
            for (std::uint32_t other : valid)
                if (other != mask && (other & mask) == other) {
                    is_minimal = false;
                    break;
                }
            if (is_minimal)
                minimal.push_back(subset_from_mask(mask, n));
        }
        return *std::min_element(minimal.begin(), minimal.end());
    }

    // Greedy elimination from the full group, then per-element minimality
    // verification. Yields an inclusion-minimal set.
    std::vector<int> memory(static_cast<size_t>(n));
    std::iota(memory.begin(), memory.end(), 0);
    for (int drop = n - 1; drop >= 0; --drop) {
        std::vector<int> candidate;
        for (int s : memory)
            if (s != drop)
                candidate.push_back(s);
        if (coordinate_constant_on(f, candidate))
            memory = std::move(candidate);
    }
    for (int s : memory) {
        std::vector<int> candidate;
        for (int t : memory)
            if (t != s)
                candidate.push_back(t);
        if (coordinate_constant_on(f, candidate))
            throw InternalError("greedy memory-set search returned a non-minimal set");
    }
    return memory;
}

LocalRule reconstruct_rule(const MapTable& f, const GroupHom& phi,
                           const std::vector<int>& memory) {
    if (*phi.codomain() != *f.source_group() || *phi.domain() != *f.target_group())
        throw DomainError("reconstruct_rule: hom endpoints do not match the map table");
    const int n = f.source_group()->order();
    for (int s : memory)
        if (s < 0 || s >= n)
            throw DomainError("memory element " + std::to_string(s) + " out of range");

    const int q = f.alphabet().size;
    const int e_h = f.target_group()->identity();
    const std::uint64_t patterns = checked_pow(q, static_cast<int>(memory.size()));
    std::vector<std::uint8_t> table(patterns);

    // Read each entry off the identity coordinate of the zero-extension.
    std::vector<std::uint8_t> digits(memory.size(), 0);
    for (std::uint64_t p = 0; p < patterns; ++p) {
        std::vector<std::uint8_t> values(static_cast<size_t>(n), 0);
        for (size_t i = 0; i < memory.size(); ++i)
            values[static_cast<size_t>(memory[i])] = digits[i];
        const std::uint64_t input =
            config_index(Configuration(f.source_group(), f.alphabet(), std::move(values)));
        table[p] = f.raw_outputs()[input][static_cast<size_t>(e_h)];
        for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
            if (digits[static_cast<size_t>(k)] + 1 < q) {
                ++digits[static_cast<size_t>(k)];
                break;
            }
            digits[static_cast<size_t>(k)] = 0;
        }
    }
    LocalRule rule(f.alphabet(), memory, std::move(table));

    // The set must actually be a memory set: the identity coordinate may
    // not depend on anything outside it.
    std::uint64_t index = 0;
    for (const auto& x : enumerate_configs(f.source_group(), f.alphabet(), f.input_count())) {
        std::vector<std::uint8_t> states;
        states.reserve(memory.size());
        for (int s : memory)
            states.push_back(static_cast<std::uint8_t>(x.at(s)));
        if (rule.evaluate(states) != f.raw_outputs()[index][static_cast<size_t>(e_h)]) {
            std::string support = "{";
            for (size_t i = 0; i < memory.size(); ++i)
                support += (i ? "," : "") + std::to_string(memory[i]);
            support += "}";
            throw DomainError("not a memory set: identity coordinate is not constant on the "
                              "cylinder V(input " +
                              std::to_string(index) + ", " + support + ")");
        }
        ++index;
    }
    return rule;
}

namespace {

// Both extremal checks are budgeted on the larger of the two spaces.
void check_extremes_budget(const PhiCA& t, std::uint64_t budget) {
    const int larger = std::max(t.source_group()->order(), t.target_group()->order());
    config_count(larger, t.alphabet(), budget);
}

} // namespace

bool is_injective(const PhiCA& t, std::uint64_t budget) {
    check_extremes_budget(t, budget);
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto& x : enumerate_configs(t.source_group(), t.alphabet(), budget))
        if (!seen.insert(apply(t, x).values()).second)
            return false;
    return true;
}

bool is_surjective(const PhiCA& t, std::uint64_t budget) {
    check_extremes_budget(t, budget);
    std::set<std::vector<std::uint8_t>> seen;
    for (const auto& x : enumerate_configs(t.source_group(), t.alphabet(), budget))
        seen.insert(apply(t, x).values());
    return seen.size() == checked_pow(t.alphabet().size, t.target_group()->order());
}

int f_tau(const PhiCA& t, const Configuration& x) {
    return apply(t, x).at(t.target_group()->identity());
}

std::vector<Configuration> run(const PhiCA& t, const Configuration& x0, int steps) {
    if (!t.phi().is_endomorphism())
        throw DomainError("run: automaton is not iterable, its hom is not an endomorphism");
    if (steps < 0)
        throw DomainError("run: steps must be >= 0");
    std::vector<Configuration> trace;
    trace.reserve(static_cast<size_t>(steps) + 1);
    trace.push_back(x0);
    for (int i = 0; i < steps; ++i)
        trace.push_back(apply(t, trace.back()));
    return trace;
}

} // namespace gca
