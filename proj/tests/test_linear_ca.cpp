#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <vector>

#include "gca/linear_ca.hpp"

using namespace gca;

namespace {

const VectorAlphabet kGf2(2, 1);

PhiCA xor_rule(int n) {
    const GroupRef g = make_cyclic(n);
    return PhiCA(GroupHom::identity(g),
                 LocalRule(Alphabet(2), {1, n - 1}, {0, 1, 1, 0}));
}

Configuration make_config(const GroupRef& g, std::vector<std::uint8_t> v, int q = 2) {
    return Configuration(g, Alphabet(q), std::move(v));
}

// Oracle: smallest M with f_tau = 0 on every configuration vanishing on
// M, by scanning the whole subset lattice.
std::vector<int> oracle_dependency_set(const PhiCA& t) {
    const int n = t.source_group()->order();
    std::vector<int> best;
    bool found = false;
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
        std::vector<int> m;
        for (int i = 0; i < n; ++i)
            if (mask & (1u << i))
                m.push_back(i);
        bool valid = true;
        for (const auto& x : enumerate_configs(t.source_group(), t.alphabet())) {
            bool vanishes = true;
            for (int e : m)
                if (x.at(e) != 0)
                    vanishes = false;
            if (vanishes && f_tau(t, x) != 0) {
                valid = false;
                break;
            }
        }
        if (valid && (!found || m.size() < best.size())) {
            best = m;
            found = true;
        }
    }
    REQUIRE(found);
    return best;
}

} // namespace

TEST_CASE("vector alphabet encoding") {
    CHECK(kGf2.size() == 2);
    CHECK_THROWS_AS(VectorAlphabet(4, 1), DomainError);
    CHECK_THROWS_AS(VectorAlphabet(6, 1), DomainError);
    CHECK_THROWS_AS(VectorAlphabet(2, 0), DomainError);

    const VectorAlphabet v(3, 2);
    CHECK(v.size() == 9);
    for (int s = 0; s < 9; ++s)
        CHECK(v.encode(v.decode(s)) == s);
    CHECK(v.add(v.encode({1, 2}), v.encode({2, 2})) == v.encode({0, 1}));
    CHECK(v.scale(2, v.encode({1, 2})) == v.encode({2, 1}));
    CHECK(v.unit(1) == v.encode({0, 1}));
}

TEST_CASE("GF(p) matrix helpers") {
    GfMatrix m(2, 2, 2);
    m.at(0, 0) = 1;
    m.at(0, 1) = 1;
    m.at(1, 1) = 1;
    const GfMatrix m2 = gf_multiply(m, m);
    CHECK(m2.at(0, 0) == 1);
    CHECK(m2.at(0, 1) == 0);
    CHECK(m2.at(1, 1) == 1);
    CHECK(gf_apply(m, {1, 1}) == std::vector<std::uint8_t>{0, 1});
}

TEST_CASE("rule linearity: sum, product, zero") {
    // Sum rule is linear with coefficients (1,1).
    const LocalRule sum(Alphabet(2), {1, 3}, {0, 1, 1, 0});
    const auto linear = is_linear_rule(sum, kGf2);
    REQUIRE(linear.has_value());
    CHECK(linear->coefficients[0].at(0, 0) == 1);
    CHECK(linear->coefficients[1].at(0, 0) == 1);
    CHECK(linear->to_table().table == sum.table);

    // Product rule fails: mu(1,1) = 1 but mu(1,0) + mu(0,1) = 0.
    const LocalRule product(Alphabet(2), {1, 3}, {0, 0, 0, 1});
    CHECK_FALSE(is_linear_rule(product, kGf2).has_value());

    const LocalRule zero(Alphabet(2), {1, 3}, {0, 0, 0, 0});
    const auto z = is_linear_rule(zero, kGf2);
    REQUIRE(z.has_value());
    CHECK(z->coefficients[0].at(0, 0) == 0);
    CHECK(z->coefficients[1].at(0, 0) == 0);
}

TEST_CASE("census: rule linearity coincides with map linearity") {
    const GroupRef z4 = make_cyclic(4);
    const GroupHom id = GroupHom::identity(z4);
    int linear_count = 0;
    for (int code = 0; code < 16; ++code) {
        std::vector<std::uint8_t> table(4);
        for (int i = 0; i < 4; ++i)
            table[static_cast<size_t>(i)] = static_cast<std::uint8_t>((code >> i) & 1);
        const LocalRule rule(Alphabet(2), {1, 3}, std::move(table));
        const bool rule_linear = is_linear_rule(rule, kGf2).has_value();
        const bool map_linear = is_linear_ca(PhiCA(id, rule), kGf2);
        CHECK(rule_linear == map_linear);
        linear_count += rule_linear ? 1 : 0;
    }
    CHECK(linear_count == 4);
}

TEST_CASE("majority rule is not linear") {
    const GroupRef z5 = make_cyclic(5);
    // Majority over the window {4,0,1}: digit order is memory order.
    std::vector<std::uint8_t> table(8);
    for (int p = 0; p < 8; ++p) {
        const int ones = ((p >> 2) & 1) + ((p >> 1) & 1) + (p & 1);
        table[static_cast<size_t>(p)] = ones >= 2 ? 1 : 0;
    }
    const PhiCA majority(GroupHom::identity(z5),
                         LocalRule(Alphabet(2), {4, 0, 1}, std::move(table)));
    CHECK_FALSE(is_linear_ca(majority, kGf2));
}

TEST_CASE("star automata over GF(2) are linear") {
    for (const auto& [m, n] : std::vector<std::pair<int, int>>{{4, 4}, {6, 3}, {2, 4}, {5, 5}})
        for (const auto& phi : enumerate_homs(make_cyclic(m), make_cyclic(n)))
            CHECK(is_linear_ca(phi_star(phi, Alphabet(2)), kGf2));
}

TEST_CASE("matrix form of the sum rule is circulant") {
    const PhiCA t = xor_rule(4);
    const GfMatrix m = matrix_form(t, kGf2);
    REQUIRE(m.rows == 4);
    REQUIRE(m.cols == 4);
    const std::vector<std::uint8_t> first_row{0, 1, 0, 1};
    for (int c = 0; c < 4; ++c)
        CHECK(m.at(0, c) == first_row[static_cast<size_t>(c)]);
    for (int r = 1; r < 4; ++r)
        for (int c = 0; c < 4; ++c)
            CHECK(m.at(r, c) == m.at(r - 1, (c + 3) % 4));
    for (const auto& x : enumerate_configs(t.source_group(), Alphabet(2)))
        CHECK(gf_apply(m, x.values()) == apply(t, x).values());
}

TEST_CASE("matrix form of identity and zero automata") {
    const GroupRef z3 = make_cyclic(3);
    const PhiCA id(GroupHom::identity(z3), LocalRule(Alphabet(2), {0}, {0, 1}));
    const GfMatrix mid = matrix_form(id, kGf2);
    for (int r = 0; r < 3; ++r)
        for (int c = 0; c < 3; ++c)
            CHECK(mid.at(r, c) == (r == c ? 1 : 0));

    const PhiCA zero(GroupHom::identity(z3), LocalRule(Alphabet(2), {}, {0}));
    const GfMatrix mzero = matrix_form(zero, kGf2);
    CHECK(std::all_of(mzero.data.begin(), mzero.data.end(),
                      [](std::uint8_t v) { return v == 0; }));
}

TEST_CASE("matrix form rejects nonlinear automata") {
    const GroupRef z4 = make_cyclic(4);
    const PhiCA product(GroupHom::identity(z4),
                        LocalRule(Alphabet(2), {1, 3}, {0, 0, 0, 1}));
    CHECK_THROWS_AS(matrix_form(product, kGf2), DomainError);
    CHECK_THROWS_AS(dependency_set(product, kGf2), DomainError);
}

TEST_CASE("matrix form respects the hom: periodic lift on rectangular shapes") {
    const GroupHom quot = GroupHom::cyclic_hom(make_cyclic(6), make_cyclic(3), 1);
    const PhiCA star = phi_star(quot, Alphabet(2));
    const GfMatrix m = matrix_form(star, kGf2);
    CHECK(m.rows == 6);
    CHECK(m.cols == 3);
    for (const auto& x : enumerate_configs(make_cyclic(3), Alphabet(2)))
        CHECK(gf_apply(m, x.values()) == apply(star, x).values());
}

TEST_CASE("dependency sets match the subset-lattice oracle") {
    const PhiCA t = xor_rule(4);
    CHECK(dependency_set(t, kGf2) == std::vector<int>{1, 3});
    CHECK(dependency_set(t, kGf2) == oracle_dependency_set(t));

    const GroupHom quot = GroupHom::cyclic_hom(make_cyclic(6), make_cyclic(3), 1);
    const PhiCA star = phi_star(quot, Alphabet(2));
    CHECK(dependency_set(star, kGf2) == std::vector<int>{0});
    CHECK(dependency_set(star, kGf2) == oracle_dependency_set(star));

    const GroupRef z4 = make_cyclic(4);
    const PhiCA zero(GroupHom::identity(z4), LocalRule(Alphabet(2), {}, {0}));
    CHECK(dependency_set(zero, kGf2).empty());
}

TEST_CASE("dependency set reconstructs random linear automata over GF(3)") {
    const VectorAlphabet gf3(3, 1);
    std::uint32_t state = 31337;
    auto next = [&]() {
        state ^= state << 13;
        state ^= state >> 17;
        state ^= state << 5;
        return state;
    };
    for (int trial = 0; trial < 20; ++trial) {
        const int n = 1 + static_cast<int>(next() % 4);
        const GroupRef g = make_cyclic(n);
        const auto homs = enumerate_homs(g, g);
        const GroupHom phi = homs[next() % homs.size()];
        std::vector<int> memory;
        for (int s = 0; s < n; ++s)
            if (next() % 2)
                memory.push_back(s);
        LinearLocalRule linear{gf3, memory, {}};
        for (size_t i = 0; i < memory.size(); ++i) {
            GfMatrix coeff(3, 1, 1);
            coeff.at(0, 0) = static_cast<std::uint8_t>(next() % 3);
            linear.coefficients.push_back(coeff);
        }
        const PhiCA t(phi, linear.to_table());
        REQUIRE(is_linear_ca(t, gf3));
        const auto deps = dependency_set(t, gf3);
        const MapTable f = MapTable::tabulate(t);
        const LocalRule rebuilt = reconstruct_rule(f, phi, deps);
        CHECK(MapTable::tabulate(PhiCA(phi, rebuilt)) == f);
        CHECK(deps == oracle_dependency_set(t));
    }
}

TEST_CASE("a two-dimensional alphabet works end to end") {
    const VectorAlphabet gf2_2(2, 2);
    const GroupRef z3 = make_cyclic(3);
    // Swap the two coordinates of the right neighbor.
    GfMatrix swap(2, 2, 2);
    swap.at(0, 1) = 1;
    swap.at(1, 0) = 1;
    LinearLocalRule linear{gf2_2, {1}, {swap}};
    const PhiCA t(GroupHom::identity(z3), linear.to_table());
    CHECK(is_linear_ca(t, gf2_2));
    const auto rt = is_linear_rule(t.rule(), gf2_2);
    REQUIRE(rt.has_value());
    CHECK(rt->coefficients[0] == swap);
    const GfMatrix m = matrix_form(t, gf2_2);
    CHECK(m.rows == 6);
    CHECK(m.cols == 6);
    for (const auto& x : enumerate_configs(z3, gf2_2.alphabet()))
        CHECK(gf_apply(m, [&] {
                  // element-major, coordinate-minor flattening
                  std::vector<std::uint8_t> flat;
                  for (int e = 0; e < 3; ++e)
                      for (std::uint8_t c : gf2_2.decode(x.at(e)))
                          flat.push_back(c);
                  return flat;
              }()) == [&] {
            const Configuration y = apply(t, x);
            std::vector<std::uint8_t> flat;
            for (int e = 0; e < 3; ++e)
                for (std::uint8_t c : gf2_2.decode(y.at(e)))
                    flat.push_back(c);
            return flat;
        }());
}

TEST_CASE("composition of linear automata multiplies the matrices") {
    const PhiCA t1 = xor_rule(4);
    const GroupRef z4 = t1.source_group();
    // A second linear rule: left neighbor plus self.
    const PhiCA t2(GroupHom::identity(z4), LocalRule(Alphabet(2), {0, 1}, {0, 1, 1, 0}));
    const PhiCA composed = compose(t2, t1);
    CHECK(is_linear_ca(composed, kGf2));
    const GfMatrix product = gf_multiply(matrix_form(t2, kGf2), matrix_form(t1, kGf2));
    CHECK(matrix_form(composed, kGf2) == product);
}
