#pragma once

#include <memory>
#include <string>
#include <vector>

#include "gca/errors.hpp"

namespace gca {

class FiniteGroup;

/// Shared handle to an immutable group. Types that retain a group
/// (configurations, homomorphisms, graphs) hold one of these.
using GroupRef = std::shared_ptr<const FiniteGroup>;

/**
 * A finite group on canonical element indices 0..n-1.
 *
 * Two storage forms exist: a cyclic descriptor (element i is generator^i,
 * op(i,j) = (i+j) mod n, no table) and an explicit n-by-n multiplication
 * table. Construction validates the group axioms: associativity by triple
 * scan (table form, n <= 64), two-sided identity and two-sided inverses.
 */
class FiniteGroup {
public:
    /// Z_n in cyclic descriptor form. Throws DomainError when n < 1.
    static FiniteGroup cyclic(int n);

    /// General group from a multiplication table. table[a][b] = a*b.
    /// Throws DomainError when the table is not a group (n <= 64 checked).
    static FiniteGroup from_table(std::vector<std::vector<int>> table,
                                  std::string label);

    int order() const { return order_; }
    int identity() const { return identity_; }

    int op(int a, int b) const {
        check_element(a);
        check_element(b);
        return cyclic_ ? (a + b) % order_ : table_[static_cast<size_t>(a) * order_ + b];
    }

    int inverse(int a) const {
        check_element(a);
        return inverse_[a];
    }

    /// True when stored as a cyclic descriptor (made by cyclic()).
    bool cyclic_form() const { return cyclic_; }

    const std::string& label() const { return label_; }

    /// Structural equality: same order and same element arithmetic.
    /// Labels and storage form are not part of a group's identity.
    bool operator==(const FiniteGroup& other) const;
    bool operator!=(const FiniteGroup& other) const { return !(*this == other); }

private:
    FiniteGroup() = default;

    void check_element(int a) const {
        if (a < 0 || a >= order_)
            throw DomainError("element index " + std::to_string(a) +
                              " out of range for group of order " + std::to_string(order_));
    }

    int order_ = 0;
    int identity_ = 0;
    bool cyclic_ = false;
    std::vector<int> table_;   // row-major order_ x order_, empty in cyclic form
    std::vector<int> inverse_; // one entry per element
    std::string label_;
};

/// Z_n as a shared handle. Throws DomainError when n < 1.
GroupRef make_cyclic(int n);

/// Shared handle around a table group.
GroupRef make_group(std::vector<std::vector<int>> table, std::string label);

/**
 * A subgroup given by its sorted member indices. Construction verifies
 * closure under the group operation and inverses, and membership of the
 * identity.
 */
class Subgroup {
public:
    Subgroup(GroupRef parent, std::vector<int> members);

    /// Smallest subgroup containing the given generators.
    static Subgroup generated(GroupRef parent, const std::vector<int>& generators);

    const GroupRef& parent() const { return parent_; }
    const std::vector<int>& members() const { return members_; }
    int size() const { return static_cast<int>(members_.size()); }
    bool contains(int g) const;

private:
    GroupRef parent_;
    std::vector<int> members_; // sorted
};

/// A subgroup with gN = Ng for every g, verified at construction.
class NormalSubgroup : public Subgroup {
public:
    NormalSubgroup(GroupRef parent, std::vector<int> members);
    explicit NormalSubgroup(Subgroup sub);
};

/**
 * A verified homomorphism between two finite groups, stored as a total
 * element map. Construction checks map(a*b) = map(a)*map(b) for every
 * pair and rejects anything else.
 */
class GroupHom {
public:
    GroupHom(GroupRef domain, GroupRef codomain, std::vector<int> map);

    /// Cyclic-to-cyclic hom determined by the image of the generator.
    /// Throws DomainError when the generator image does not define a hom
    /// or when either group is not in cyclic form.
    static GroupHom cyclic_hom(GroupRef domain, GroupRef codomain, int generator_image);

    /// Identity endomorphism.
    static GroupHom identity(GroupRef group);

    const GroupRef& domain() const { return domain_; }
    const GroupRef& codomain() const { return codomain_; }
    const std::vector<int>& map() const { return map_; }

    int operator()(int g) const {
        if (g < 0 || g >= static_cast<int>(map_.size()))
            throw DomainError("hom applied to element out of range");
        return map_[g];
    }

    bool is_endomorphism() const { return *domain_ == *codomain_; }

    /// Equal when domains, codomains and element maps all agree.
    bool operator==(const GroupHom& other) const;
    bool operator!=(const GroupHom& other) const { return !(*this == other); }

private:
    GroupRef domain_;
    GroupRef codomain_;
    std::vector<int> map_;
};

/// f after s: (f . s)(k) = f(s(k)). Requires s's codomain == f's domain.
GroupHom hom_compose(const GroupHom& f, const GroupHom& s);

bool hom_is_injective(const GroupHom& f);
bool hom_is_surjective(const GroupHom& f);

/**
 * All homomorphisms H -> G for cyclic groups, one per generator image
 * whose order divides both |H| and |G|, in increasing generator-image
 * order. The list has exactly gcd(|H|,|G|) entries. Groups not in cyclic
 * form are rejected with DomainError.
 */
std::vector<GroupHom> enumerate_homs(const GroupRef& domain, const GroupRef& codomain);

/// Preimage of the codomain identity. Always normal in the domain.
NormalSubgroup kernel(const GroupHom& f);

/// Range of the map, as a subgroup of the codomain.
Subgroup image(const GroupHom& f);

struct QuotientResult {
    GroupRef group;      ///< G/N, in cyclic form whenever G is cyclic
    GroupHom projection; ///< canonical g -> gN (with any relabeling folded in)
};

/**
 * Quotient of a group by a normal subgroup, together with the canonical
 * projection. When the parent is cyclic the quotient is relabeled to
 * Z_{|G|/|N|} and the relabeling is retained inside the projection.
 */
QuotientResult quotient(const GroupRef& g, const NormalSubgroup& n);

struct HomFactorization {
    GroupHom projection; ///< H -> H/Ker(f), surjective
    GroupHom embedding;  ///< H/Ker(f) -> G, injective, coset hK -> f(h)
};

/**
 * First-isomorphism factorization f = embedding . projection, checked on
 * every domain element before returning.
 */
HomFactorization decompose_hom(const GroupHom& f);

} // namespace gca
