#include "gca/verify.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <set>

#include <json.hpp>

#include "gca/covering.hpp"
#include "gca/linear_ca.hpp"
#include "gca/phi_ca.hpp"
#include "gca/serialization.hpp"

namespace gca {

namespace {

using ordered_json = nlohmann::ordered_json;

// Deterministic across platforms, unlike std::uniform_int_distribution.
class Rng {
public:
    explicit Rng(std::uint32_t seed) : state_(seed ? seed : 0x9e3779b9u) {}

    std::uint32_t next() {
        std::uint32_t x = state_;
        x ^= x << 13;
        x ^= x >> 17;
        x ^= x << 5;
        return state_ = x;
    }

    int below(int n) { return static_cast<int>(next() % static_cast<std::uint32_t>(n)); }

private:
    std::uint32_t state_;
};

class Stopwatch {
public:
    Stopwatch() : start_(std::chrono::steady_clock::now()) {}

    double elapsed_ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start_)
            .count();
    }

private:
    std::chrono::steady_clock::time_point start_;
};

struct SuiteRun {
    SuiteResult result;
    Stopwatch watch;

    explicit SuiteRun(std::string name) { result.suite = std::move(name); }

    void record(bool ok, const ordered_json& witness) {
        ++result.instances;
        if (ok) {
            ++result.passed;
        } else {
            ++result.failed;
            if (result.first_counterexample.empty())
                result.first_counterexample = witness.dump();
        }
    }

    SuiteResult finish() {
        result.wall_ms = watch.elapsed_ms();
        return result;
    }
};

ordered_json hom_witness(const GroupHom& f) { return ordered_json::parse(hom_to_json(f)); }

} // namespace

SuiteResult verify_decomposition(const VerifyOptions& options) {
    SuiteRun run("decomposition");
    const Alphabet a(options.alphabet);
    for (int m = 1; m <= options.max_order; ++m) {
        for (int n = 1; n <= options.max_order; ++n) {
            const GroupRef h = make_cyclic(m);
            const GroupRef g = make_cyclic(n);
            for (const GroupHom& phi : enumerate_homs(h, g)) {
                const PhiCA star = phi_star(phi, a);
                const CaFactorization factors = decompose_ca(phi, a);
                bool ok = true;
                ordered_json witness;
                for (const auto& x : enumerate_configs(g, a, options.budget)) {
                    if (apply(factors.outer, apply(factors.inner, x)) != apply(star, x)) {
                        ok = false;
                        witness = {{"suite", "decomposition"},
                                   {"phi", hom_witness(phi)},
                                   {"alphabet", a.size},
                                   {"input", config_to_text(x)}};
                        break;
                    }
                }
                run.record(ok, witness);
            }
        }
    }
    return run.finish();
}

SuiteResult verify_star_lemma(const VerifyOptions& options) {
    SuiteRun run("star-lemma");
    const Alphabet a(options.alphabet);

    // Parts 1, 3, 4 sweep single hom sets; tabulate each star once.
    for (int m = 1; m <= options.max_order; ++m) {
        for (int n = 1; n <= options.max_order; ++n) {
            const GroupRef h = make_cyclic(m);
            const GroupRef g = make_cyclic(n);
            const std::vector<GroupHom> homs = enumerate_homs(h, g);
            std::vector<MapTable> tables;
            tables.reserve(homs.size());
            for (const GroupHom& phi : homs)
                tables.push_back(MapTable::tabulate(phi_star(phi, a), options.budget));

            for (size_t i = 0; i < homs.size(); ++i) {
                for (size_t j = 0; j < homs.size(); ++j) {
                    const bool tables_equal = tables[i] == tables[j];
                    const bool homs_equal = homs[i] == homs[j];
                    run.record(tables_equal == homs_equal,
                               {{"suite", "star-lemma"},
                                {"part", 1},
                                {"phi", hom_witness(homs[i])},
                                {"psi", hom_witness(homs[j])}});
                }
            }
            for (size_t i = 0; i < homs.size(); ++i) {
                const PhiCA star = phi_star(homs[i], a);
                run.record(is_injective(star, options.budget) == hom_is_surjective(homs[i]),
                           {{"suite", "star-lemma"}, {"part", 3}, {"phi", hom_witness(homs[i])}});
                run.record(is_surjective(star, options.budget) == hom_is_injective(homs[i]),
                           {{"suite", "star-lemma"}, {"part", 4}, {"phi", hom_witness(homs[i])}});
            }
        }
    }

    // Part 2: contravariance over all composable pairs.
    for (int k = 1; k <= options.max_order; ++k) {
        for (int m = 1; m <= options.max_order; ++m) {
            for (int n = 1; n <= options.max_order; ++n) {
                const GroupRef kk = make_cyclic(k);
                const GroupRef h = make_cyclic(m);
                const GroupRef g = make_cyclic(n);
                for (const GroupHom& outer : enumerate_homs(h, g)) {
                    const PhiCA outer_star = phi_star(outer, a);
                    for (const GroupHom& inner : enumerate_homs(kk, h)) {
                        const PhiCA composed_star = phi_star(hom_compose(outer, inner), a);
                        const PhiCA chained = compose(phi_star(inner, a), outer_star);
                        run.record(MapTable::tabulate(composed_star, options.budget) ==
                                       MapTable::tabulate(chained, options.budget),
                                   {{"suite", "star-lemma"},
                                    {"part", 2},
                                    {"outer", hom_witness(outer)},
                                    {"inner", hom_witness(inner)}});
                    }
                }
            }
        }
    }
    return run.finish();
}

namespace {

// Independent oracle: S is a memory set iff inputs agreeing on S share
// the identity output coordinate. Pairwise, no bucketing.
bool oracle_memory_set(const MapTable& f, const std::vector<int>& support) {
    const int e_h = f.target_group()->identity();
    std::vector<Configuration> inputs;
    inputs.reserve(f.input_count());
    for (const auto& x : enumerate_configs(f.source_group(), f.alphabet(), f.input_count()))
        inputs.push_back(x);
    for (size_t i = 0; i < inputs.size(); ++i)
        for (size_t j = i + 1; j < inputs.size(); ++j)
            if (same_on(inputs[i], inputs[j], support) &&
                f.raw_outputs()[i][static_cast<size_t>(e_h)] !=
                    f.raw_outputs()[j][static_cast<size_t>(e_h)])
                return false;
    return true;
}

bool oracle_minimal_memory_set(const MapTable& f, const std::vector<int>& memory) {
    if (!oracle_memory_set(f, memory))
        return false;
    for (int s : memory) {
        std::vector<int> without;
        for (int t : memory)
            if (t != s)
                without.push_back(t);
        if (oracle_memory_set(f, without))
            return false;
    }
    return true;
}

GroupHom random_hom(Rng& rng, int max_order) {
    const int m = 1 + rng.below(max_order);
    const int n = 1 + rng.below(max_order);
    const std::vector<GroupHom> homs = enumerate_homs(make_cyclic(m), make_cyclic(n));
    return homs[static_cast<size_t>(rng.below(static_cast<int>(homs.size())))];
}

PhiCA random_automaton(Rng& rng, const GroupHom& phi, Alphabet a) {
    const int n = phi.codomain()->order();
    std::vector<int> memory;
    for (int s = 0; s < n; ++s)
        if (rng.below(2) == 1)
            memory.push_back(s);
    const std::uint64_t entries = checked_pow(a.size, static_cast<int>(memory.size()));
    std::vector<std::uint8_t> table(entries);
    for (auto& v : table)
        v = static_cast<std::uint8_t>(rng.below(a.size));
    return PhiCA(phi, LocalRule(a, std::move(memory), std::move(table)));
}

MapTable random_map_table(Rng& rng, const GroupRef& source, const GroupRef& target, Alphabet a) {
    const std::uint64_t inputs = checked_pow(a.size, source->order());
    std::vector<std::vector<std::uint8_t>> outputs(inputs);
    for (auto& out : outputs) {
        out.resize(static_cast<size_t>(target->order()));
        for (auto& v : out)
            v = static_cast<std::uint8_t>(rng.below(a.size));
    }
    return MapTable(source, target, a, std::move(outputs));
}

} // namespace

SuiteResult verify_curtis_hedlund(const VerifyOptions& options) {
    SuiteRun run("curtis-hedlund");
    const Alphabet a(options.alphabet);
    Rng rng(options.seed);

    for (int instance = 0; instance < 100; ++instance) {
        const GroupHom phi = random_hom(rng, options.max_order);
        const PhiCA t = random_automaton(rng, phi, a);
        const MapTable f = MapTable::tabulate(t, options.budget);
        const ordered_json witness = {{"suite", "curtis-hedlund"},
                                      {"part", "constructed"},
                                      {"rule", ordered_json::parse(rule_to_json(t))}};
        bool ok = check_equivariant(f, phi);
        if (ok) {
            const std::vector<int> minimal = find_memory_set(f, phi);
            ok = oracle_minimal_memory_set(f, minimal);
            if (ok) {
                const LocalRule rebuilt = reconstruct_rule(f, phi, minimal);
                ok = MapTable::tabulate(PhiCA(phi, rebuilt), options.budget) == f;
            }
        }
        run.record(ok, witness);
    }

    // Non-equivariant tables must be rejected. Target order >= 2 so that
    // non-equivariant maps exist at all.
    for (int instance = 0; instance < 100; ++instance) {
        const int m = 2 + rng.below(std::max(1, options.max_order - 1));
        const int n = 1 + rng.below(options.max_order);
        const GroupRef h = make_cyclic(m);
        const GroupRef g = make_cyclic(n);
        const std::vector<GroupHom> homs = enumerate_homs(h, g);
        const GroupHom phi = homs[static_cast<size_t>(rng.below(static_cast<int>(homs.size())))];

        bool found = false;
        bool ok = false;
        for (int attempt = 0; attempt < 1000 && !found; ++attempt) {
            const MapTable f = random_map_table(rng, g, h, a);
            if (check_equivariant(f, phi))
                continue;
            found = true;
            // The rejection path: find_memory_set must refuse.
            try {
                find_memory_set(f, phi);
                ok = false;
            } catch (const DomainError&) {
                ok = true;
            }
        }
        if (!found)
            throw InternalError("could not sample a non-equivariant table");
        run.record(ok, {{"suite", "curtis-hedlund"},
                        {"part", "rejection"},
                        {"phi", hom_witness(phi)},
                        {"instance", instance}});
    }
    return run.finish();
}

SuiteResult verify_linearity(const VerifyOptions& options) {
    SuiteRun run("linearity");
    const VectorAlphabet field(options.alphabet, 1);
    const Alphabet a = field.alphabet();

    // Census: all rules with two memory elements on Z_4 under the identity
    // hom; rule linearity must coincide with global linearity and exactly
    // the four linear combinations qualify when q = 2.
    {
        const GroupRef z4 = make_cyclic(4);
        const GroupHom id = GroupHom::identity(z4);
        const std::vector<int> memory{1, 3};
        const std::uint64_t entries = checked_pow(a.size, 2);
        const std::uint64_t rules = checked_pow(a.size, static_cast<int>(entries));
        std::uint64_t linear_count = 0;
        for (std::uint64_t code = 0; code < rules; ++code) {
            std::vector<std::uint8_t> table(entries);
            std::uint64_t rest = code;
            for (auto& v : table) {
                v = static_cast<std::uint8_t>(rest % a.size);
                rest /= static_cast<std::uint64_t>(a.size);
            }
            const LocalRule rule(a, memory, std::move(table));
            const PhiCA t(id, rule);
            const bool rule_linear = is_linear_rule(rule, field).has_value();
            const bool map_linear = is_linear_ca(t, field, options.budget);
            if (rule_linear)
                ++linear_count;
            run.record(rule_linear == map_linear,
                       {{"suite", "linearity"},
                        {"part", "rule-vs-map"},
                        {"rule", ordered_json::parse(rule_to_json(t))}});
        }
        const std::uint64_t expected = checked_pow(a.size, 2); // q^|S| linear combinations
        run.record(linear_count == expected, {{"suite", "linearity"},
                                              {"part", "census"},
                                              {"linear_rules", linear_count},
                                              {"expected", expected}});
    }

    // Circulant matrix forms of the two-neighbor sum rule.
    if (options.alphabet == 2) {
        for (int n = 4; n <= 10; ++n) {
            const GroupRef zn = make_cyclic(n);
            const GroupHom id = GroupHom::identity(zn);
            const LocalRule rule(a, {1, n - 1}, {0, 1, 1, 0});
            const PhiCA t(id, rule);
            const GfMatrix m = matrix_form(t, field, options.budget);
            bool ok = m.rows == n && m.cols == n;
            for (int c = 0; ok && c < n; ++c) {
                const bool expect_one = c == 1 || c == n - 1;
                ok = (m.at(0, c) == 1) == expect_one;
            }
            for (int r = 1; ok && r < n; ++r)
                for (int c = 0; ok && c < n; ++c)
                    ok = m.at(r, c) == m.at(r - 1, (c - 1 + n) % n);
            if (ok) {
                for (const auto& x : enumerate_configs(zn, a, options.budget)) {
                    if (gf_apply(m, x.values()) != apply(t, x).values()) {
                        ok = false;
                        break;
                    }
                }
            }
            run.record(ok, {{"suite", "linearity"}, {"part", "circulant"}, {"order", n}});
        }
    }

    // Dependency sets of random linear equivariant tables reconstruct the
    // table exactly.
    Rng rng(options.seed);
    for (int instance = 0; instance < 50; ++instance) {
        const GroupHom phi = random_hom(rng, options.max_order);
        const GroupRef g = phi.codomain();
        std::vector<int> memory;
        for (int s = 0; s < g->order(); ++s)
            if (rng.below(2) == 1)
                memory.push_back(s);
        LinearLocalRule linear{field, memory, {}};
        for (size_t s = 0; s < memory.size(); ++s) {
            GfMatrix coeff(field.p, field.d, field.d);
            coeff.at(0, 0) = static_cast<std::uint8_t>(rng.below(field.p));
            linear.coefficients.push_back(std::move(coeff));
        }
        const PhiCA secret(phi, linear.to_table());
        const MapTable f = MapTable::tabulate(secret, options.budget);

        // Recover everything from the table alone.
        std::vector<int> everything(static_cast<size_t>(g->order()));
        std::iota(everything.begin(), everything.end(), 0);
        const PhiCA full(phi, reconstruct_rule(f, phi, everything));
        bool ok = is_linear_ca(full, field, options.budget);
        if (ok) {
            const std::vector<int> deps = dependency_set(full, field, options.budget);
            const PhiCA compact(phi, reconstruct_rule(f, phi, deps));
            ok = MapTable::tabulate(compact, options.budget) == f;
        }
        run.record(ok, {{"suite", "linearity"},
                        {"part", "dependency"},
                        {"rule", ordered_json::parse(rule_to_json(secret))}});
    }
    return run.finish();
}

namespace {

std::vector<int> proper_nontrivial_subgroup_orders(int n) {
    std::vector<int> orders;
    for (int k = 2; k < n; ++k)
        if (n % k == 0)
            orders.push_back(k);
    return orders;
}

// Multiples of n/k: the unique subgroup of order k in Z_n.
std::vector<int> cyclic_subgroup_members(int n, int k) {
    std::vector<int> members;
    for (int i = 0; i < k; ++i)
        members.push_back(i * (n / k));
    std::sort(members.begin(), members.end());
    return members;
}

bool generates(int n, const std::vector<int>& s) {
    int g = n;
    for (int v : s)
        g = std::gcd(g, v);
    return g == 1;
}

} // namespace

SuiteResult verify_covering(const VerifyOptions& options) {
    SuiteRun run("covering");
    const Alphabet a(options.alphabet);

    for (int n = 2; n <= options.max_order; ++n) {
        const auto subgroup_orders = proper_nontrivial_subgroup_orders(n);
        if (subgroup_orders.empty())
            continue;
        const GroupRef zn = make_cyclic(n);

        // Symmetric loop-free sets, one mask bit per pair {s, n-s}.
        const int pairs = n / 2;
        std::vector<std::vector<int>> symmetric_sets;
        for (std::uint32_t mask = 1; mask < (std::uint32_t{1} << pairs); ++mask) {
            std::vector<int> s;
            for (int i = 1; i <= pairs; ++i)
                if (mask & (std::uint32_t{1} << (i - 1))) {
                    s.push_back(i);
                    if (i != n - i)
                        s.push_back(n - i);
                }
            std::sort(s.begin(), s.end());
            if (generates(n, s))
                symmetric_sets.push_back(std::move(s));
        }

        for (int k : subgroup_orders) {
            const NormalSubgroup sub(zn, cyclic_subgroup_members(n, k));
            for (const auto& s : symmetric_sets) {
                const CirculantGraph source(zn, s);

                // Independent admissibility scan.
                bool admissible = true;
                for (int v : s)
                    if (sub.contains(v))
                        admissible = false;
                for (size_t i = 0; i < s.size() && admissible; ++i)
                    for (size_t j = 0; j < s.size() && admissible; ++j)
                        if (i != j && sub.contains(zn->op(s[i], zn->inverse(s[j]))))
                            admissible = false;

                const ordered_json witness = {{"suite", "covering"},
                                              {"order", n},
                                              {"subgroup_order", k},
                                              {"connection", s}};
                bool ok;
                try {
                    const CoveringMap cover = quotient_cover(source, sub);
                    ok = admissible;
                    ok = ok && is_graph_hom(cover.map) && is_covering(cover.map);
                    ok = ok && fold_number(cover.map) == sub.size();
                    ok = ok && cover.map.target.connection().size() == s.size();
                    if (ok && n / k <= 10 && options.alphabet == 2) {
                        const PhiCA induced = induced_injective_ca(cover, a, options.budget);
                        ok = is_injective(induced, options.budget);
                    }
                } catch (const DomainError&) {
                    ok = !admissible;
                }
                run.record(ok, witness);
            }
        }
    }
    return run.finish();
}

std::vector<SuiteResult> verify_all(const VerifyOptions& options) {
    return {verify_decomposition(options), verify_star_lemma(options),
            verify_curtis_hedlund(options), verify_linearity(options),
            verify_covering(options)};
}

const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"decomposition", "star-lemma", "curtis-hedlund",
                                                "linearity", "covering"};
    return names;
}

SuiteResult run_suite(const std::string& name, const VerifyOptions& options) {
    if (name == "decomposition")
        return verify_decomposition(options);
    if (name == "star-lemma")
        return verify_star_lemma(options);
    if (name == "curtis-hedlund")
        return verify_curtis_hedlund(options);
    if (name == "linearity")
        return verify_linearity(options);
    if (name == "covering")
        return verify_covering(options);
    throw ParseError("unknown verification suite '" + name + "'");
}

std::string report_to_text(const std::vector<SuiteResult>& results) {
    std::string out;
    for (const auto& r : results) {
        out += "suite=" + r.suite + " instances=" + std::to_string(r.instances) +
               " passed=" + std::to_string(r.passed) + " failed=" + std::to_string(r.failed);
        if (!r.first_counterexample.empty())
            out += " first_counterexample=" + r.first_counterexample;
        out += " wall_ms=" + std::to_string(r.wall_ms) + "\n";
    }
    return out;
}

std::string report_to_json(const std::vector<SuiteResult>& results) {
    ordered_json suites = ordered_json::array();
    for (const auto& r : results) {
        ordered_json j;
        j["suite"] = r.suite;
        j["instances"] = r.instances;
        j["passed"] = r.passed;
        j["failed"] = r.failed;
        j["first_counterexample"] = r.first_counterexample.empty()
                                        ? ordered_json(nullptr)
                                        : ordered_json::parse(r.first_counterexample);
        j["wall_ms"] = r.wall_ms;
        suites.push_back(std::move(j));
    }
    ordered_json report;
    report["suites"] = std::move(suites);
    return report.dump(2);
}

} // namespace gca
