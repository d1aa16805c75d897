#pragma once

#include <cstdint>
#include <vector>

#include "gca/config_space.hpp"
#include "gca/group.hpp"

namespace gca {

/**
 * A local rule: an ordered memory list S inside the universe group and a
 * total table A^S -> A. Patterns are indexed in mixed radix with the
 * first memory element as the most significant digit, so table order
 * matches the lexicographic order of pattern digit strings. The memory
 * order is part of the rule's identity and is serialized with it.
 */
struct LocalRule {
    Alphabet alphabet;
    std::vector<int> memory;
    std::vector<std::uint8_t> table; // q^|memory| entries

    LocalRule(Alphabet a, std::vector<int> memory_elements, std::vector<std::uint8_t> entries);

    std::uint64_t pattern_count() const { return table.size(); }

    /// Table index of a tuple of states listed in memory order.
    std::uint64_t index_of(const std::vector<std::uint8_t>& states) const;

    /// Rule value on a tuple of states listed in memory order.
    int evaluate(const std::vector<std::uint8_t>& states) const;
};

/**
 * A phi-cellular automaton tau: A^G -> A^H for phi in Hom(H,G), given by
 * phi plus a local rule whose memory lives in G. The global map is
 * tau(x)(h) = mu(s -> x(phi(h) s)).
 */
class PhiCA {
public:
    PhiCA(GroupHom phi, LocalRule rule);

    const GroupHom& phi() const { return phi_; }
    const LocalRule& rule() const { return rule_; }

    /// Universe of inputs (G = codomain of phi).
    const GroupRef& source_group() const { return phi_.codomain(); }
    /// Universe of outputs (H = domain of phi).
    const GroupRef& target_group() const { return phi_.domain(); }
    Alphabet alphabet() const { return rule_.alphabet; }

private:
    GroupHom phi_;
    LocalRule rule_;
};

/// Global map of the automaton on one configuration.
Configuration apply(const PhiCA& t, const Configuration& x);

/// The canonical phi-CA x -> x . phi, with memory {e_G} and identity rule.
PhiCA phi_star(const GroupHom& phi, Alphabet a);

/**
 * Composition as automata: for t1: A^G -> A^H and t2: A^H -> A^K, the
 * returned t satisfies apply(t, x) = apply(t2, apply(t1, x)) with hom
 * phi1 . phi2 and memory {phi1(s2) s1}, deduplicated. The composed table
 * is evaluated directly from the two local rules.
 */
PhiCA compose(const PhiCA& t2, const PhiCA& t1);

struct CaFactorization {
    PhiCA outer; ///< along the quotient projection, A^{H/K} -> A^H
    PhiCA inner; ///< along the injective embedding, A^G -> A^{H/K}
};

/**
 * Star automata of the first-isomorphism factors of phi. Applying inner
 * then outer reproduces phi_star(phi, a) on every configuration.
 */
CaFactorization decompose_ca(const GroupHom& phi, Alphabet a);

/**
 * An explicit total map A^G -> A^H, the finite stand-in the verifiers
 * take instead of opaque callables. Output i corresponds to the input of
 * lexicographic rank i.
 */
class MapTable {
public:
    MapTable(GroupRef source_group, GroupRef target_group, Alphabet alphabet,
             std::vector<std::vector<std::uint8_t>> outputs);

    /// Tabulate an automaton exhaustively.
    static MapTable tabulate(const PhiCA& t, std::uint64_t budget = kDefaultBudget);

    const GroupRef& source_group() const { return source_; }
    const GroupRef& target_group() const { return target_; }
    Alphabet alphabet() const { return alphabet_; }
    std::uint64_t input_count() const { return outputs_.size(); }

    Configuration output_at(std::uint64_t input_index) const;
    Configuration operator()(const Configuration& x) const;

    const std::vector<std::vector<std::uint8_t>>& raw_outputs() const { return outputs_; }

    bool operator==(const MapTable& other) const;

private:
    GroupRef source_;
    GroupRef target_;
    Alphabet alphabet_;
    std::vector<std::vector<std::uint8_t>> outputs_;
};

/// True iff f(phi(h).x) = h.f(x) for every h in H and every input x.
bool check_equivariant(const MapTable& f, const GroupHom& phi);

/**
 * The canonical minimal memory set of an equivariant map: the smallest S
 * such that x -> f(x)(e_H) is constant on every cylinder V(x,S). Since G
 * is finite, S = G always works, so every equivariant table is an
 * automaton; non-equivariant input raises DomainError. When several
 * inclusion-minimal sets exist the lexicographically least (as a sorted
 * index sequence) is returned; above order 12 a greedy elimination is
 * used instead of the full subset scan and the result is some minimal
 * set, not necessarily the canonical one.
 */
std::vector<int> find_memory_set(const MapTable& f, const GroupHom& phi);

/**
 * Read the local rule off the identity coordinate of f over the given
 * memory set. Throws DomainError naming a violating cylinder when S is
 * not a memory set for f.
 */
LocalRule reconstruct_rule(const MapTable& f, const GroupHom& phi, const std::vector<int>& memory);

/// Exhaustive injectivity of the global map.
bool is_injective(const PhiCA& t, std::uint64_t budget = kDefaultBudget);

/// Exhaustive surjectivity of the global map.
bool is_surjective(const PhiCA& t, std::uint64_t budget = kDefaultBudget);

/// The identity-coordinate map f_tau(x) = tau(x)(e_H). Depends only on
/// the restriction of x to the memory set.
int f_tau(const PhiCA& t, const Configuration& x);

/// Orbit segment [x0, tau(x0), ..., tau^steps(x0)]. Requires phi to be an
/// endomorphism, otherwise the automaton cannot be iterated.
std::vector<Configuration> run(const PhiCA& t, const Configuration& x0, int steps);

} // namespace gca
