// Acceptance suite: every release gate in one binary, one line per
// criterion, nonzero exit when any gate fails.

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <numeric>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>

#include <json.hpp>

#include "gca/covering.hpp"
#include "gca/linear_ca.hpp"
#include "gca/phi_ca.hpp"
#include "gca/serialization.hpp"
#include "gca/verify.hpp"

using namespace gca;

namespace {

int g_failures = 0;

class Timer {
public:
    Timer() : start_(std::chrono::steady_clock::now()) {}
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

void report(int number, const std::string& name, bool ok, double wall_ms, double limit_ms,
            const std::string& detail) {
    const bool in_time = wall_ms < limit_ms;
    const bool pass = ok && in_time;
    if (!pass)
        ++g_failures;
    std::printf("[%s] criterion %d: %s — %s (%.1f ms < %.0f ms)\n", pass ? "PASS" : "FAIL", number,
                name.c_str(), detail.c_str(), wall_ms, limit_ms);
}

struct Rng {
    std::uint32_t state;
    explicit Rng(std::uint32_t seed) : state(seed ? seed : 1) {}
    std::uint32_t next() {
        state ^= state << 13;
        state ^= state >> 17;
        state ^= state << 5;
        return state;
    }
    int below(int n) { return static_cast<int>(next() % static_cast<std::uint32_t>(n)); }
};

void criterion_decomposition() {
    Timer timer;
    VerifyOptions o;
    o.max_order = 8;
    o.alphabet = 2;
    const SuiteResult r = verify_decomposition(o);
    std::uint64_t expected = 0;
    for (int m = 1; m <= 8; ++m)
        for (int n = 1; n <= 8; ++n)
            expected += static_cast<std::uint64_t>(std::gcd(m, n));
    const bool ok = r.failed == 0 && r.instances == expected;
    report(1, "decomposition theorem", ok, timer.ms(), 5000,
           std::to_string(r.instances) + " homs, " + std::to_string(r.failed) + " failures");
}

void criterion_star_lemma() {
    Timer timer;
    VerifyOptions o;
    o.max_order = 6;
    o.alphabet = 2;
    const SuiteResult r = verify_star_lemma(o);
    const bool ok = r.failed == 0 && r.instances > 0;
    report(2, "star lemma, four parts", ok, timer.ms(), 30000,
           std::to_string(r.instances) + " instances, " + std::to_string(r.failed) + " failures");
}

void criterion_curtis_hedlund() {
    Timer timer;
    VerifyOptions o;
    o.max_order = 6;
    o.alphabet = 2;
    o.seed = 42;
    const SuiteResult r = verify_curtis_hedlund(o);
    const bool ok = r.failed == 0 && r.instances == 200;
    report(3, "finite Curtis-Hedlund", ok, timer.ms(), 60000,
           "100 constructed + 100 rejected, " + std::to_string(r.failed) + " failures");
}

void criterion_linearity_census() {
    Timer timer;
    const VectorAlphabet gf2(2, 1);
    const GroupRef z4 = make_cyclic(4);
    const GroupHom id = GroupHom::identity(z4);
    int linear_count = 0;
    bool ok = true;
    for (int code = 0; code < 16; ++code) {
        std::vector<std::uint8_t> table(4);
        for (int i = 0; i < 4; ++i)
            table[static_cast<size_t>(i)] = static_cast<std::uint8_t>((code >> i) & 1);
        const LocalRule rule(Alphabet(2), {1, 3}, std::move(table));
        const bool rule_linear = is_linear_rule(rule, gf2).has_value();
        const bool map_linear = is_linear_ca(PhiCA(id, rule), gf2);
        ok = ok && rule_linear == map_linear;
        linear_count += rule_linear ? 1 : 0;
    }
    ok = ok && linear_count == 4;
    report(4, "linearity equivalence on the 16-rule census", ok, timer.ms(), 1000,
           std::to_string(linear_count) + " linear rules of 16");
}

void criterion_circulant_matrix() {
    Timer timer;
    const VectorAlphabet gf2(2, 1);
    bool ok = true;
    for (int n = 4; n <= 10; ++n) {
        const GroupRef zn = make_cyclic(n);
        const PhiCA t(GroupHom::identity(zn), LocalRule(Alphabet(2), {1, n - 1}, {0, 1, 1, 0}));
        const GfMatrix m = matrix_form(t, gf2);
        ok = ok && m.rows == n && m.cols == n;
        for (int c = 0; ok && c < n; ++c)
            ok = (m.at(0, c) == 1) == (c == 1 || c == n - 1);
        for (int r = 1; ok && r < n; ++r)
            for (int c = 0; ok && c < n; ++c)
                ok = m.at(r, c) == m.at(r - 1, (c - 1 + n) % n);
        for (const auto& x : enumerate_configs(zn, Alphabet(2)))
            ok = ok && gf_apply(m, x.values()) == apply(t, x).values();
    }
    report(5, "circulant matrix representation, n in 4..10", ok, timer.ms(), 5000,
           ok ? "all rows are cyclic shifts and M x = tau(x)" : "mismatch found");
}

void criterion_linear_curtis_hedlund() {
    Timer timer;
    const VectorAlphabet gf2(2, 1);
    Rng rng(42);
    bool ok = true;
    for (int instance = 0; instance < 50 && ok; ++instance) {
        const int m = 1 + rng.below(6);
        const int n = 1 + rng.below(6);
        const auto homs = enumerate_homs(make_cyclic(m), make_cyclic(n));
        const GroupHom phi = homs[static_cast<size_t>(rng.below(static_cast<int>(homs.size())))];
        const GroupRef g = phi.codomain();
        std::vector<int> memory;
        for (int s = 0; s < g->order(); ++s)
            if (rng.below(2))
                memory.push_back(s);
        LinearLocalRule linear{gf2, memory, {}};
        for (size_t i = 0; i < memory.size(); ++i) {
            GfMatrix coeff(2, 1, 1);
            coeff.at(0, 0) = static_cast<std::uint8_t>(rng.below(2));
            linear.coefficients.push_back(coeff);
        }
        const MapTable f = MapTable::tabulate(PhiCA(phi, linear.to_table()));

        std::vector<int> everything(static_cast<size_t>(g->order()));
        std::iota(everything.begin(), everything.end(), 0);
        const PhiCA full(phi, reconstruct_rule(f, phi, everything));
        ok = is_linear_ca(full, gf2);
        if (ok) {
            const std::vector<int> deps = dependency_set(full, gf2);
            ok = MapTable::tabulate(PhiCA(phi, reconstruct_rule(f, phi, deps))) == f;
        }
    }
    report(6, "linear Curtis-Hedlund on 50 seeded tables", ok, timer.ms(), 30000,
           ok ? "dependency sets reconstruct every table" : "reconstruction mismatch");
}

void criterion_covering() {
    Timer timer;
    VerifyOptions o;
    o.max_order = 24;
    o.alphabet = 2;
    const SuiteResult r = verify_covering(o);
    const bool ok = r.failed == 0 && r.instances > 0;
    report(7, "covering suite up to order 24", ok, timer.ms(), 120000,
           std::to_string(r.instances) + " (order, subgroup, connection) instances, " +
               std::to_string(r.failed) + " failures");
}

void criterion_hom_count() {
    Timer timer;
    bool ok = true;

    // Brute force: every function n^m, filtered by the hom property.
    for (int m = 1; m <= 5 && ok; ++m)
        for (int n = 1; n <= 5 && ok; ++n) {
            std::set<std::vector<int>> oracle;
            std::vector<int> map(static_cast<size_t>(m), 0);
            while (true) {
                bool hom = true;
                for (int a = 0; a < m && hom; ++a)
                    for (int b = 0; b < m && hom; ++b)
                        hom = map[static_cast<size_t>((a + b) % m)] ==
                              (map[static_cast<size_t>(a)] + map[static_cast<size_t>(b)]) % n;
                if (hom)
                    oracle.insert(map);
                int k = m - 1;
                while (k >= 0 && map[static_cast<size_t>(k)] == n - 1)
                    map[static_cast<size_t>(k--)] = 0;
                if (k < 0)
                    break;
                ++map[static_cast<size_t>(k)];
            }
            std::set<std::vector<int>> got;
            for (const auto& f : enumerate_homs(make_cyclic(m), make_cyclic(n)))
                got.insert(f.map());
            ok = got == oracle;
        }

    for (int m = 1; m <= 12 && ok; ++m)
        for (int n = 1; n <= 12 && ok; ++n)
            ok = enumerate_homs(make_cyclic(m), make_cyclic(n)).size() ==
                 static_cast<size_t>(std::gcd(m, n));

    report(8, "hom enumeration vs brute force and gcd", ok, timer.ms(), 10000,
           ok ? "exact agreement" : "mismatch found");
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void criterion_determinism(const char* cli) {
    Timer timer;
    bool ok = cli != nullptr;
    if (ok) {
        const std::string base = std::string(cli) + " verify all --max-order 6 --seed 42";
        const int s1 =
            std::system((base + " --report acceptance_run1.json > acceptance_run1.txt").c_str());
        const int s2 =
            std::system((base + " --report acceptance_run2.json > acceptance_run2.txt").c_str());
        ok = WEXITSTATUS(s1) == 0 && WEXITSTATUS(s2) == 0;
        if (ok) {
            auto ja = nlohmann::json::parse(slurp("acceptance_run1.json"));
            auto jb = nlohmann::json::parse(slurp("acceptance_run2.json"));
            for (auto* j : {&ja, &jb})
                for (auto& suite : (*j)["suites"])
                    suite.erase("wall_ms");
            ok = ja.dump() == jb.dump();
        }
    }
    report(9, "byte-identical reports modulo wall time", ok, timer.ms(), 60000,
           ok ? "two seeded runs agree" : "reports differ");
}

} // namespace

int main() {
#ifdef GCA_CLI_BIN
    const char* cli = GCA_CLI_BIN;
#else
    const char* cli = nullptr;
#endif
    criterion_decomposition();
    criterion_star_lemma();
    criterion_curtis_hedlund();
    criterion_linearity_census();
    criterion_circulant_matrix();
    criterion_linear_curtis_hedlund();
    criterion_covering();
    criterion_hom_count();
    criterion_determinism(cli);

    if (g_failures) {
        std::printf("%d criterion(s) failed\n", g_failures);
        return 1;
    }
    std::printf("all 9 criteria passed\n");
    return 0;
}
