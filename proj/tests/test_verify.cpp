#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <numeric>

#include <json.hpp>

#include "gca/verify.hpp"

using namespace gca;

namespace {

VerifyOptions small_options(int max_order = 5, std::uint32_t seed = 42) {
    VerifyOptions o;
    o.max_order = max_order;
    o.seed = seed;
    return o;
}

std::uint64_t sum_gcd(int bound) {
    std::uint64_t total = 0;
    for (int m = 1; m <= bound; ++m)
        for (int n = 1; n <= bound; ++n)
            total += static_cast<std::uint64_t>(std::gcd(m, n));
    return total;
}

} // namespace

TEST_CASE("decomposition suite counts one instance per hom") {
    const SuiteResult r = verify_decomposition(small_options());
    CHECK(r.suite == "decomposition");
    CHECK(r.failed == 0);
    CHECK(r.instances == sum_gcd(5));
    CHECK(r.passed + r.failed == r.instances);
    CHECK(r.first_counterexample.empty());
}

TEST_CASE("star lemma suite counts all four parts") {
    const SuiteResult r = verify_star_lemma(small_options(4));
    CHECK(r.failed == 0);
    std::uint64_t pairs = 0, singles = 0, triples = 0;
    for (int m = 1; m <= 4; ++m)
        for (int n = 1; n <= 4; ++n) {
            const std::uint64_t g = static_cast<std::uint64_t>(std::gcd(m, n));
            pairs += g * g;
            singles += g;
            for (int k = 1; k <= 4; ++k)
                triples += g * static_cast<std::uint64_t>(std::gcd(k, m));
        }
    CHECK(r.instances == pairs + 2 * singles + triples);
}

TEST_CASE("curtis-hedlund suite runs 100 + 100 instances") {
    const SuiteResult r = verify_curtis_hedlund(small_options(4, 7));
    CHECK(r.instances == 200);
    CHECK(r.failed == 0);
}

TEST_CASE("linearity suite is clean and counts its parts") {
    const SuiteResult r = verify_linearity(small_options(4));
    CHECK(r.failed == 0);
    // 16 census rules + the census total + 7 circulant orders + 50 tables.
    CHECK(r.instances == 16 + 1 + 7 + 50);
}

TEST_CASE("covering suite is clean at order 12") {
    const SuiteResult r = verify_covering(small_options(12));
    CHECK(r.failed == 0);
    CHECK(r.instances > 0);
}

TEST_CASE("suite dispatch by name") {
    for (const auto& name : suite_names())
        CHECK_NOTHROW(run_suite(name, small_options(3, 5)));
    CHECK_THROWS_AS(run_suite("bogus", small_options()), ParseError);
}

TEST_CASE("reports are deterministic apart from wall time") {
    const SuiteResult a = verify_curtis_hedlund(small_options(4, 11));
    const SuiteResult b = verify_curtis_hedlund(small_options(4, 11));
    CHECK(a.instances == b.instances);
    CHECK(a.passed == b.passed);
    CHECK(a.failed == b.failed);
    CHECK(a.first_counterexample == b.first_counterexample);

    // Different seeds explore different instances but stay clean.
    const SuiteResult c = verify_curtis_hedlund(small_options(4, 12));
    CHECK(c.failed == 0);
}

TEST_CASE("report rendering") {
    std::vector<SuiteResult> results{verify_decomposition(small_options(3))};
    const std::string text = report_to_text(results);
    CHECK(text.find("suite=decomposition") != std::string::npos);
    CHECK(text.find("failed=0") != std::string::npos);

    const auto j = nlohmann::json::parse(report_to_json(results));
    REQUIRE(j["suites"].size() == 1);
    CHECK(j["suites"][0]["suite"] == "decomposition");
    CHECK(j["suites"][0]["failed"] == 0);
    CHECK(j["suites"][0]["first_counterexample"].is_null());
    CHECK(j["suites"][0].contains("wall_ms"));
}
