#include "gca/covering.hpp"

#include <algorithm>
#include <set>
#include <string>

namespace gca {

CirculantGraph::CirculantGraph(GroupRef group, std::vector<int> connection)
    : group_(std::move(group)), connection_(std::move(connection)) {
    if (!group_)
        throw DomainError("circulant requires a group");
    if (!group_->cyclic_form())
        throw DomainError("circulant graphs are defined over cyclic groups");
    std::sort(connection_.begin(), connection_.end());
    connection_.erase(std::unique(connection_.begin(), connection_.end()), connection_.end());
    for (int s : connection_)
        if (s < 0 || s >= group_->order())
            throw DomainError("connection element " + std::to_string(s) + " out of range");
    if (std::binary_search(connection_.begin(), connection_.end(), group_->identity()))
        throw DomainError("connection set contains the identity (loop)");
    for (int s : connection_)
        if (!std::binary_search(connection_.begin(), connection_.end(), group_->inverse(s)))
            throw DomainError("connection set is not symmetric: missing inverse of " +
                              std::to_string(s));
    // Connectivity: the connection set must generate the whole group.
    const Subgroup span = Subgroup::generated(group_, connection_);
    if (span.size() != group_->order())
        throw DomainError("connection set does not generate the group (graph disconnected)");
}

bool CirculantGraph::adjacent(int u, int v) const {
    for (int s : connection_)
        if (group_->op(u, s) == v)
            return true;
    return false;
}

std::vector<int> CirculantGraph::neighbors(int v) const {
    std::vector<int> out;
    out.reserve(connection_.size());
    for (int s : connection_)
        out.push_back(group_->op(v, s));
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

std::vector<std::pair<int, int>> CirculantGraph::edges() const {
    std::set<std::pair<int, int>> out;
    for (int v = 0; v < vertex_count(); ++v)
        for (int s : connection_) {
            const int w = group_->op(v, s);
            out.emplace(std::min(v, w), std::max(v, w));
        }
    return {out.begin(), out.end()};
}

CirculantGraph build_circulant(const GroupRef& group, const std::vector<int>& connection) {
    return CirculantGraph(group, connection);
}

GraphMap::GraphMap(CirculantGraph src, CirculantGraph tgt, std::vector<int> map)
    : source(std::move(src)), target(std::move(tgt)), vertex_map(std::move(map)) {
    if (static_cast<int>(vertex_map.size()) != source.vertex_count())
        throw DomainError("vertex map must cover every source vertex");
    for (int v : vertex_map)
        if (v < 0 || v >= target.vertex_count())
            throw DomainError("vertex map value out of target range");
}

bool is_graph_hom(const GraphMap& m) {
    for (const auto& [u, v] : m.source.edges())
        if (!m.target.adjacent(m(u), m(v)))
            return false;
    return true;
}

bool is_surjective_map(const GraphMap& m) {
    std::set<int> hit(m.vertex_map.begin(), m.vertex_map.end());
    return static_cast<int>(hit.size()) == m.target.vertex_count();
}

bool is_covering(const GraphMap& m) {
    if (!is_graph_hom(m) || !is_surjective_map(m))
        return false;
    for (int v = 0; v < m.source.vertex_count(); ++v) {
        const auto around_v = m.source.neighbors(v);
        const auto around_image = m.target.neighbors(m(v));
        if (around_v.size() != around_image.size())
            return false;
        std::set<int> mapped;
        for (int u : around_v)
            mapped.insert(m(u));
        if (!std::equal(mapped.begin(), mapped.end(), around_image.begin(), around_image.end()))
            return false;
    }
    return true;
}

int fold_number(const GraphMap& m) {
    std::vector<int> fiber(static_cast<size_t>(m.target.vertex_count()), 0);
    for (int v : m.vertex_map)
        ++fiber[static_cast<size_t>(v)];
    for (int count : fiber)
        if (count != fiber[0])
            throw InternalError("covering map has unequal fibers");
    return fiber[0];
}

CoveringMap quotient_cover(const CirculantGraph& c, const NormalSubgroup& n) {
    const GroupRef& g = c.group();
    if (*n.parent() != *g)
        throw DomainError("normal subgroup belongs to a different group");

    // Degeneracy preconditions keep the quotient simple and the map a
    // local bijection.
    for (int s : c.connection())
        if (n.contains(s))
            throw DomainError("cover degeneracy: connection element " + std::to_string(s) +
                              " lies in the subgroup");
    for (int s1 : c.connection())
        for (int s2 : c.connection())
            if (s1 != s2 && n.contains(g->op(s1, g->inverse(s2))))
                throw DomainError("cover degeneracy: pair (" + std::to_string(s1) + "," +
                                  std::to_string(s2) + ") collapses in the quotient");

    auto [qgroup, projection] = quotient(g, n);
    std::set<int> image_connection;
    for (int s : c.connection())
        image_connection.insert(projection(s));
    CirculantGraph target(qgroup,
                          std::vector<int>(image_connection.begin(), image_connection.end()));
    GraphMap map(c, std::move(target), projection.map());

    if (!is_graph_hom(map) || !is_covering(map))
        throw InternalError("quotient projection failed covering verification");
    const int fold = fold_number(map);
    if (fold != n.size())
        throw InternalError("quotient cover fold differs from the subgroup order");
    return {std::move(map), fold, std::move(projection)};
}

PhiCA induced_injective_ca(const CoveringMap& m, Alphabet a, std::uint64_t budget) {
    if (!m.projection)
        throw DomainError("induced automaton requires a cover built from a group projection");
    PhiCA star = phi_star(*m.projection, a);
    if (!is_injective(star, budget))
        throw InternalError("star automaton of a surjective projection must be injective");
    return star;
}

} // namespace gca
