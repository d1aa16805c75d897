#include "gca/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>

namespace gca {

namespace {

std::string cyclic_label(int n) { return "Z" + std::to_string(n); }

} // namespace

FiniteGroup FiniteGroup::cyclic(int n) {
    if (n < 1)
        throw DomainError("cyclic group order must be >= 1, got " + std::to_string(n));
    FiniteGroup g;
    g.order_ = n;
    g.identity_ = 0;
    g.cyclic_ = true;
    g.inverse_.resize(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i)
        g.inverse_[static_cast<size_t>(i)] = (n - i) % n;
    g.label_ = cyclic_label(n);
    return g;
}

FiniteGroup FiniteGroup::from_table(std::vector<std::vector<int>> table, std::string label) {
    const int n = static_cast<int>(table.size());
    if (n < 1)
        throw DomainError("group table must be nonempty");
    if (n > 64)
        throw DomainError("table groups limited to order 64, got " + std::to_string(n));
    FiniteGroup g;
    g.order_ = n;
    g.cyclic_ = false;
    g.label_ = std::move(label);
    g.table_.resize(static_cast<size_t>(n) * n);
    for (int a = 0; a < n; ++a) {
        if (static_cast<int>(table[static_cast<size_t>(a)].size()) != n)
            throw DomainError("group table row " + std::to_string(a) + " has wrong length");
        for (int b = 0; b < n; ++b) {
            const int v = table[static_cast<size_t>(a)][static_cast<size_t>(b)];
            if (v < 0 || v >= n)
                throw DomainError("group table entry out of range at (" + std::to_string(a) +
                                  "," + std::to_string(b) + ")");
            g.table_[static_cast<size_t>(a) * n + b] = v;
        }
    }
    auto mul = [&](int a, int b) { return g.table_[static_cast<size_t>(a) * n + b]; };

    // Two-sided identity.
    int identity = -1;
    for (int e = 0; e < n; ++e) {
        bool ok = true;
        for (int x = 0; x < n && ok; ++x)
            ok = mul(e, x) == x && mul(x, e) == x;
        if (ok) {
            identity = e;
            break;
        }
    }
    if (identity < 0)
        throw DomainError("group table has no two-sided identity");
    g.identity_ = identity;

    // Two-sided inverses.
    g.inverse_.assign(static_cast<size_t>(n), -1);
    for (int x = 0; x < n; ++x) {
        for (int y = 0; y < n; ++y) {
            if (mul(x, y) == identity && mul(y, x) == identity) {
                g.inverse_[static_cast<size_t>(x)] = y;
                break;
            }
        }
        if (g.inverse_[static_cast<size_t>(x)] < 0)
            throw DomainError("element " + std::to_string(x) + " has no two-sided inverse");
    }

    // Associativity, full triple scan.
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b)
            for (int c = 0; c < n; ++c)
                if (mul(mul(a, b), c) != mul(a, mul(b, c)))
                    throw DomainError("group table is not associative at (" + std::to_string(a) +
                                      "," + std::to_string(b) + "," + std::to_string(c) + ")");
    return g;
}

bool FiniteGroup::operator==(const FiniteGroup& other) const {
    if (order_ != other.order_)
        return false;
    if (cyclic_ && other.cyclic_)
        return true;
    for (int a = 0; a < order_; ++a)
        for (int b = 0; b < order_; ++b)
            if (op(a, b) != other.op(a, b))
                return false;
    return true;
}

GroupRef make_cyclic(int n) {
    return std::make_shared<const FiniteGroup>(FiniteGroup::cyclic(n));
}

GroupRef make_group(std::vector<std::vector<int>> table, std::string label) {
    return std::make_shared<const FiniteGroup>(
        FiniteGroup::from_table(std::move(table), std::move(label)));
}

Subgroup::Subgroup(GroupRef parent, std::vector<int> members)
    : parent_(std::move(parent)), members_(std::move(members)) {
    if (!parent_)
        throw DomainError("subgroup requires a parent group");
    std::sort(members_.begin(), members_.end());
    members_.erase(std::unique(members_.begin(), members_.end()), members_.end());
    if (members_.empty())
        throw DomainError("subgroup must be nonempty");
    for (int m : members_)
        if (m < 0 || m >= parent_->order())
            throw DomainError("subgroup member " + std::to_string(m) + " out of range");
    if (!contains(parent_->identity()))
        throw DomainError("subgroup does not contain the identity");
    for (int a : members_) {
        if (!contains(parent_->inverse(a)))
            throw DomainError("subgroup not closed under inverse at " + std::to_string(a));
        for (int b : members_)
            if (!contains(parent_->op(a, b)))
                throw DomainError("subgroup not closed under the operation at (" +
                                  std::to_string(a) + "," + std::to_string(b) + ")");
    }
}

bool Subgroup::contains(int g) const {
    return std::binary_search(members_.begin(), members_.end(), g);
}

Subgroup Subgroup::generated(GroupRef parent, const std::vector<int>& generators) {
    if (!parent)
        throw DomainError("subgroup requires a parent group");
    std::set<int> closure{parent->identity()};
    for (int g : generators) {
        if (g < 0 || g >= parent->order())
            throw DomainError("generator " + std::to_string(g) + " out of range");
        closure.insert(g);
        closure.insert(parent->inverse(g));
    }
    bool grew = true;
    while (grew) {
        grew = false;
        std::vector<int> current(closure.begin(), closure.end());
        for (int a : current)
            for (int b : current)
                if (closure.insert(parent->op(a, b)).second)
                    grew = true;
    }
    return Subgroup(std::move(parent), std::vector<int>(closure.begin(), closure.end()));
}

NormalSubgroup::NormalSubgroup(GroupRef parent, std::vector<int> members)
    : NormalSubgroup(Subgroup(std::move(parent), std::move(members))) {}

NormalSubgroup::NormalSubgroup(Subgroup sub) : Subgroup(std::move(sub)) {
    const auto& g = *parent();
    for (int x = 0; x < g.order(); ++x) {
        std::set<int> left, right;
        for (int m : members()) {
            left.insert(g.op(x, m));
            right.insert(g.op(m, x));
        }
        if (left != right)
            throw DomainError("subgroup is not normal: coset mismatch at element " +
                              std::to_string(x));
    }
}

GroupHom::GroupHom(GroupRef domain, GroupRef codomain, std::vector<int> map)
    : domain_(std::move(domain)), codomain_(std::move(codomain)), map_(std::move(map)) {
    if (!domain_ || !codomain_)
        throw DomainError("hom requires domain and codomain groups");
    if (static_cast<int>(map_.size()) != domain_->order())
        throw DomainError("hom map must cover every domain element");
    for (int v : map_)
        if (v < 0 || v >= codomain_->order())
            throw DomainError("hom map value out of codomain range");
    for (int a = 0; a < domain_->order(); ++a)
        for (int b = 0; b < domain_->order(); ++b)
            if (map_[static_cast<size_t>(domain_->op(a, b))] !=
                codomain_->op(map_[static_cast<size_t>(a)], map_[static_cast<size_t>(b)]))
                throw DomainError("map is not a homomorphism at (" + std::to_string(a) + "," +
                                  std::to_string(b) + ")");
}

GroupHom GroupHom::cyclic_hom(GroupRef domain, GroupRef codomain, int generator_image) {
    if (!domain || !codomain || !domain->cyclic_form() || !codomain->cyclic_form())
        throw DomainError("cyclic_hom requires groups in cyclic form");
    const int m = domain->order();
    std::vector<int> map(static_cast<size_t>(m));
    for (int i = 0; i < m; ++i) {
        long long v = static_cast<long long>(i) * generator_image % codomain->order();
        map[static_cast<size_t>(i)] = static_cast<int>(v);
    }
    return GroupHom(std::move(domain), std::move(codomain), std::move(map));
}

GroupHom GroupHom::identity(GroupRef group) {
    if (!group)
        throw DomainError("identity hom requires a group");
    std::vector<int> map(static_cast<size_t>(group->order()));
    std::iota(map.begin(), map.end(), 0);
    return GroupHom(group, group, std::move(map));
}

bool GroupHom::operator==(const GroupHom& other) const {
    return *domain_ == *other.domain_ && *codomain_ == *other.codomain_ && map_ == other.map_;
}

GroupHom hom_compose(const GroupHom& f, const GroupHom& s) {
    if (*s.codomain() != *f.domain())
        throw DomainError("hom_compose: codomain of inner map differs from domain of outer map");
    std::vector<int> map(s.map().size());
    for (size_t k = 0; k < map.size(); ++k)
        map[k] = f(s.map()[k]);
    return GroupHom(s.domain(), f.codomain(), std::move(map));
}

bool hom_is_injective(const GroupHom& f) {
    std::set<int> seen(f.map().begin(), f.map().end());
    return static_cast<int>(seen.size()) == f.domain()->order();
}

bool hom_is_surjective(const GroupHom& f) {
    std::set<int> seen(f.map().begin(), f.map().end());
    return static_cast<int>(seen.size()) == f.codomain()->order();
}

std::vector<GroupHom> enumerate_homs(const GroupRef& domain, const GroupRef& codomain) {
    if (!domain || !codomain || !domain->cyclic_form() || !codomain->cyclic_form())
        throw DomainError("enumerate_homs supports cyclic groups only");
    const int m = domain->order();
    const int n = codomain->order();
    const int g = std::gcd(m, n);
    std::vector<GroupHom> homs;
    homs.reserve(static_cast<size_t>(g));
    // Generator images are the multiples of n/gcd(m,n), in increasing order.
    for (int t = 0; t < g; ++t)
        homs.push_back(GroupHom::cyclic_hom(domain, codomain, t * (n / g)));
    return homs;
}

NormalSubgroup kernel(const GroupHom& f) {
    std::vector<int> members;
    const int e = f.codomain()->identity();
    for (int g = 0; g < f.domain()->order(); ++g)
        if (f(g) == e)
            members.push_back(g);
    return NormalSubgroup(f.domain(), std::move(members));
}

Subgroup image(const GroupHom& f) {
    std::set<int> range(f.map().begin(), f.map().end());
    return Subgroup(f.codomain(), std::vector<int>(range.begin(), range.end()));
}

namespace {

// Coset-table quotient for table-form parents. Cosets are indexed in order
// of their smallest representative.
QuotientResult quotient_by_cosets(const GroupRef& g, const NormalSubgroup& n) {
    const int order = g->order();
    std::vector<int> coset_of(static_cast<size_t>(order), -1);
    std::vector<int> representative;
    for (int x = 0; x < order; ++x) {
        if (coset_of[static_cast<size_t>(x)] >= 0)
            continue;
        const int idx = static_cast<int>(representative.size());
        representative.push_back(x);
        for (int m : n.members())
            coset_of[static_cast<size_t>(g->op(x, m))] = idx;
    }
    const int q = static_cast<int>(representative.size());
    std::vector<std::vector<int>> table(static_cast<size_t>(q),
                                        std::vector<int>(static_cast<size_t>(q)));
    for (int a = 0; a < q; ++a)
        for (int b = 0; b < q; ++b)
            table[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                coset_of[static_cast<size_t>(g->op(representative[static_cast<size_t>(a)],
                                                   representative[static_cast<size_t>(b)]))];
    GroupRef qgroup = make_group(std::move(table), g->label() + "/N");

    // Relabel to cyclic form when a generator exists.
    for (int c = 0; c < q; ++c) {
        std::vector<int> log(static_cast<size_t>(q), -1);
        int cur = qgroup->identity();
        int k = 0;
        do {
            log[static_cast<size_t>(cur)] = k;
            cur = qgroup->op(cur, c);
            ++k;
        } while (cur != qgroup->identity() && k <= q);
        if (k == q && std::find(log.begin(), log.end(), -1) == log.end()) {
            GroupRef zq = make_cyclic(q);
            std::vector<int> proj(static_cast<size_t>(order));
            for (int x = 0; x < order; ++x)
                proj[static_cast<size_t>(x)] = log[static_cast<size_t>(coset_of[static_cast<size_t>(x)])];
            return {zq, GroupHom(g, zq, std::move(proj))};
        }
    }
    std::vector<int> proj(coset_of.begin(), coset_of.end());
    return {qgroup, GroupHom(g, qgroup, std::move(proj))};
}

} // namespace

QuotientResult quotient(const GroupRef& g, const NormalSubgroup& n) {
    if (!g)
        throw DomainError("quotient requires a group");
    if (*n.parent() != *g)
        throw DomainError("normal subgroup belongs to a different group");
    if (g->cyclic_form()) {
        // Subgroups of Z_n are the sets of multiples of n/k; the quotient is
        // Z_{n/k} with projection x -> x mod (n/k).
        const int d = g->order() / n.size();
        GroupRef zq = make_cyclic(d);
        std::vector<int> proj(static_cast<size_t>(g->order()));
        for (int x = 0; x < g->order(); ++x)
            proj[static_cast<size_t>(x)] = x % d;
        return {zq, GroupHom(g, zq, std::move(proj))};
    }
    return quotient_by_cosets(g, n);
}

HomFactorization decompose_hom(const GroupHom& f) {
    auto [qgroup, projection] = quotient(f.domain(), kernel(f));
    // Embedding sends the coset of h to f(h); pick any preimage per coset.
    std::vector<int> emb(static_cast<size_t>(qgroup->order()), -1);
    for (int h = 0; h < f.domain()->order(); ++h)
        emb[static_cast<size_t>(projection(h))] = f(h);
    GroupHom embedding(qgroup, f.codomain(), std::move(emb));

    if (!hom_is_injective(embedding))
        throw InternalError("decompose_hom produced a non-injective embedding");
    if (!hom_is_surjective(projection))
        throw InternalError("decompose_hom produced a non-surjective projection");
    const GroupHom composite = hom_compose(embedding, projection);
    for (int h = 0; h < f.domain()->order(); ++h)
        if (composite(h) != f(h))
            throw InternalError("decompose_hom factors do not compose to the input");
    return {std::move(projection), std::move(embedding)};
}

} // namespace gca
