#pragma once

#include <optional>
#include <vector>

#include "gca/group.hpp"
#include "gca/phi_ca.hpp"

namespace gca {

/**
 * Cayley graph of a cyclic group: vertices are the group elements and
 * (g, g') is an edge iff g' = g s for some s in the connection set.
 * The connection set is loop-free (no identity), symmetric (S = S^-1)
 * and generating (the graph is connected).
 */
class CirculantGraph {
public:
    CirculantGraph(GroupRef group, std::vector<int> connection);

    const GroupRef& group() const { return group_; }
    const std::vector<int>& connection() const { return connection_; }
    int vertex_count() const { return group_->order(); }

    bool adjacent(int u, int v) const;
    std::vector<int> neighbors(int v) const;
    std::vector<std::pair<int, int>> edges() const; ///< each edge once, u < v

private:
    GroupRef group_;
    std::vector<int> connection_; // sorted
};

/// Validating constructor mirror; errors name the violated condition.
CirculantGraph build_circulant(const GroupRef& group, const std::vector<int>& connection);

/**
 * A vertex map between two circulants. Totality and range are checked at
 * construction; edge preservation is a query (is_graph_hom), not an
 * invariant, so failing maps can be built and examined.
 */
struct GraphMap {
    CirculantGraph source;
    CirculantGraph target;
    std::vector<int> vertex_map;

    GraphMap(CirculantGraph src, CirculantGraph tgt, std::vector<int> map);

    int operator()(int v) const { return vertex_map[static_cast<size_t>(v)]; }
};

/// Every source edge maps to a target edge.
bool is_graph_hom(const GraphMap& m);

/// Surjective onto target vertices.
bool is_surjective_map(const GraphMap& m);

/**
 * Covering in the local-bijection sense: a surjective graph homomorphism
 * whose restriction to each neighbor set is a bijection onto the image
 * vertex's neighbor set. Returns false (never throws) on maps that fail
 * any part.
 */
bool is_covering(const GraphMap& m);

/// Common fiber size of a covering. Throws InternalError when fibers are
/// unequal, which verified covers of connected graphs never produce.
int fold_number(const GraphMap& m);

/**
 * A verified covering map. Quotient covers carry the group projection
 * they came from, which induced_injective_ca requires.
 */
struct CoveringMap {
    GraphMap map;
    int fold;
    std::optional<GroupHom> projection;
};

/**
 * The covering C_G -> C_{G/N} induced by the canonical projection. The
 * preconditions S and N disjoint and s1 s2^-1 not in N for distinct
 * s1, s2 keep the quotient graph simple and the map locally bijective;
 * violations raise DomainError naming the offending element or pair.
 * The result is re-verified (hom, covering, fold = |N|) before returning.
 */
CoveringMap quotient_cover(const CirculantGraph& c, const NormalSubgroup& n);

/**
 * The injective phi-CA induced by a quotient cover: the star automaton of
 * the projection, A^{G/N} -> A^G. Injectivity is verified exhaustively
 * within the budget before returning.
 */
PhiCA induced_injective_ca(const CoveringMap& m, Alphabet a,
                           std::uint64_t budget = kDefaultBudget);

} // namespace gca
