#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <sstream>

#include <json.hpp>

#include "gca/serialization.hpp"

using namespace gca;

namespace {

PhiCA xor_rule(int n) {
    const GroupRef g = make_cyclic(n);
    return PhiCA(GroupHom::identity(g), LocalRule(Alphabet(2), {1, n - 1}, {0, 1, 1, 0}));
}

} // namespace

TEST_CASE("group JSON forms") {
    CHECK(group_to_json(*make_cyclic(6)) == R"({"kind":"cyclic","order":6})");
    const GroupRef back = group_from_json(R"({"kind":"cyclic","order":6})");
    CHECK(*back == *make_cyclic(6));

    const GroupRef klein = make_group(
        {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}}, "V4");
    const GroupRef round = group_from_json(group_to_json(*klein));
    CHECK(*round == *klein);

    CHECK_THROWS_AS(group_from_json("{"), ParseError);
    CHECK_THROWS_AS(group_from_json(R"({"kind":"free"})"), ParseError);
    CHECK_THROWS_AS(group_from_json(R"({"kind":"cyclic","order":0})"), DomainError);
}

TEST_CASE("hom JSON forms") {
    const GroupHom f = GroupHom::cyclic_hom(make_cyclic(6), make_cyclic(4), 2);
    CHECK(hom_to_json(f) == R"({"domain":"Z6","codomain":"Z4","generator_image":2})");
    CHECK(hom_from_json(hom_to_json(f)) == f);

    // Full-map fallback parses too.
    const GroupHom g =
        hom_from_json(R"({"domain":"Z6","codomain":"Z4","map":[0,2,0,2,0,2]})");
    CHECK(g == f);

    CHECK_THROWS_AS(hom_from_json(R"({"domain":"Z6","codomain":"Z4"})"), ParseError);
    CHECK_THROWS_AS(hom_from_json(R"({"domain":"Z6","codomain":"Z4","generator_image":1})"),
                    DomainError);
}

TEST_CASE("rule JSON round-trip") {
    const PhiCA t = xor_rule(4);
    const std::string text = rule_to_json(t);
    CHECK(text.find(R"("group":"Z4")") != std::string::npos);
    CHECK(text.find(R"("memory":[1,3])") != std::string::npos);
    CHECK(text.find(R"("table":{"00":0,"01":1,"10":1,"11":0})") != std::string::npos);

    const LoadedRule back = rule_from_json(text);
    CHECK(back.automaton.phi() == t.phi());
    CHECK(back.automaton.rule().memory == t.rule().memory);
    CHECK(back.automaton.rule().table == t.rule().table);
    CHECK_FALSE(back.field.has_value());
}

TEST_CASE("linear rule JSON carries field and coefficients") {
    const PhiCA t = xor_rule(4);
    const VectorAlphabet gf2(2, 1);
    const auto linear = is_linear_rule(t.rule(), gf2);
    REQUIRE(linear.has_value());
    const std::string text = linear_rule_to_json(t, *linear);
    CHECK(text.find(R"("field":{"p":2,"d":1})") != std::string::npos);
    CHECK(text.find(R"("coefficients":{"1":[[1]],"3":[[1]]})") != std::string::npos);

    const LoadedRule back = rule_from_json(text);
    REQUIRE(back.field.has_value());
    CHECK(back.field->p == 2);
    CHECK(back.automaton.rule().table == t.rule().table);

    // Coefficients alone are enough; the table gets synthesized.
    const std::string tableless = R"({"group":"Z4","alphabet":2,
        "phi":{"domain":"Z4","codomain":"Z4","generator_image":1},
        "memory":[1,3],"field":{"p":2,"d":1},
        "coefficients":{"1":[[1]],"3":[[1]]}})";
    CHECK(rule_from_json(tableless).automaton.rule().table == t.rule().table);
}

TEST_CASE("rule JSON rejects malformed tables") {
    CHECK_THROWS_AS(rule_from_json(R"({"group":"Z4","alphabet":2,"memory":[1,3],
        "table":{"00":0}})"),
                    ParseError);
    CHECK_THROWS_AS(rule_from_json(R"({"group":"Z4","alphabet":2,"memory":[1,3],
        "table":{"00":0,"01":1,"10":1,"22":0}})"),
                    ParseError);
    CHECK_THROWS_AS(rule_from_json(R"({"group":"Z4","alphabet":2,"memory":[1,3]})"), ParseError);
    CHECK_THROWS_AS(rule_from_json("[]"), ParseError);
}

TEST_CASE("configuration text forms") {
    const GroupRef z4 = make_cyclic(4);
    const Configuration x(z4, Alphabet(2), {1, 0, 1, 0});
    CHECK(config_to_text(x) == "1,0,1,0");
    CHECK(config_from_text("1,0,1,0", z4, Alphabet(2)) == x);
    CHECK(config_from_text(" 1, 0, 1, 0 ", z4, Alphabet(2)) == x);
    CHECK_THROWS_AS(config_from_text("1,0,1", z4, Alphabet(2)), ParseError);
    CHECK_THROWS_AS(config_from_text("1,0,1,2", z4, Alphabet(2)), ParseError);
    CHECK_THROWS_AS(config_from_text("1,0,x,0", z4, Alphabet(2)), ParseError);
}

TEST_CASE("trace CSV") {
    const PhiCA t = xor_rule(4);
    const Configuration x0(t.source_group(), Alphabet(2), {1, 0, 0, 0});
    std::ostringstream out;
    write_trace_csv(out, run(t, x0, 3));
    CHECK(out.str() == "1,0,0,0\n0,1,0,1\n0,0,0,0\n0,0,0,0\n");
}

TEST_CASE("PGM golden bytes") {
    const PhiCA t = xor_rule(4);
    const Configuration x0(t.source_group(), Alphabet(2), {1, 0, 0, 0});
    std::ostringstream out;
    write_trace_pgm(out, run(t, x0, 3));
    std::string expected = "P5\n4 4\n255\n";
    const std::array<unsigned char, 16> cells = {255, 0, 0, 0, 0, 255, 0, 255,
                                                 0,   0, 0, 0, 0, 0,   0, 0};
    for (unsigned char c : cells)
        expected.push_back(static_cast<char>(c));
    CHECK(out.str() == expected);
}

TEST_CASE("three-state PGM levels are evenly spaced") {
    const GroupRef z3 = make_cyclic(3);
    const Configuration x(z3, Alphabet(3), {0, 1, 2});
    std::ostringstream out;
    write_trace_pgm(out, {x});
    const std::string bytes = out.str();
    const std::string header = "P5\n3 1\n255\n";
    REQUIRE(bytes.size() == header.size() + 3);
    CHECK(static_cast<unsigned char>(bytes[header.size()]) == 0);
    CHECK(static_cast<unsigned char>(bytes[header.size() + 1]) == 127);
    CHECK(static_cast<unsigned char>(bytes[header.size() + 2]) == 255);
}

TEST_CASE("map table CSV round-trip") {
    const PhiCA t = xor_rule(4);
    const MapTable f = MapTable::tabulate(t);
    std::stringstream buffer;
    write_map_table_csv(buffer, f);
    const std::string text = buffer.str();
    CHECK(text.rfind("input,output\n", 0) == 0);
    CHECK(text.find("\"0,0,0,1\",\"1,0,1,0\"") != std::string::npos);

    std::stringstream replay(text);
    const MapTable back =
        read_map_table_csv(replay, t.source_group(), t.target_group(), Alphabet(2));
    CHECK(back == f);

    std::stringstream truncated("input,output\n\"0,0,0,0\",\"0,0,0,0\"\n");
    CHECK_THROWS_AS(read_map_table_csv(truncated, t.source_group(), t.target_group(), Alphabet(2)),
                    ParseError);
}

TEST_CASE("graph JSON and DOT") {
    const CirculantGraph c6(make_cyclic(6), {1, 5});
    CHECK(graph_to_json(c6) == R"({"group":"Z6","connection":[1,5]})");
    const CirculantGraph back = graph_from_json(graph_to_json(c6));
    CHECK(back.connection() == c6.connection());
    CHECK(*back.group() == *c6.group());
    CHECK_THROWS_AS(graph_from_json(R"({"group":"Z6","connection":[0,1]})"), DomainError);

    const std::string dot = graph_to_dot(c6, "source");
    CHECK(dot.find("graph source {") != std::string::npos);
    CHECK(dot.find("0 -- 1;") != std::string::npos);
    CHECK(dot.find("0 -- 5;") != std::string::npos);
}

TEST_CASE("cover report JSON") {
    const GroupRef z6 = make_cyclic(6);
    const CoveringMap cover =
        quotient_cover(CirculantGraph(z6, {1, 5}), NormalSubgroup(z6, {0, 3}));
    const std::string report = cover_report_to_json(cover, true);
    const auto j = nlohmann::json::parse(report);
    CHECK(j["fold"] == 2);
    CHECK(j["verified"] == true);
    CHECK(j["induced_ca_injective"] == true);
    CHECK(j["violations"].empty());
    CHECK(j["source"]["group"] == "Z6");
    CHECK(j["target"]["connection"] == nlohmann::json::array({1, 2}));
}
