#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "gca/covering.hpp"
#include "gca/serialization.hpp"
#include "gca/verify.hpp"

namespace {

using gca::Alphabet;
using gca::Configuration;
using gca::GroupRef;

// Exit codes: 0 success, 1 usage/parse error, 2 domain precondition
// failure, 3 verification counterexample found.
constexpr int kExitOk = 0;
constexpr int kExitParse = 1;
constexpr int kExitDomain = 2;
constexpr int kExitCounterexample = 3;

GroupRef parse_group_name(const std::string& name) {
    return gca::group_from_json('"' + name + '"');
}

std::vector<int> parse_int_list(const std::string& text) {
    std::vector<int> out;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        try {
            out.push_back(std::stoi(token));
        } catch (const std::exception&) {
            throw gca::ParseError("expected a comma-separated integer list, got '" + text + "'");
        }
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw gca::ParseError("cannot open file '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void write_output(const std::string& path, const std::string& data) {
    if (path.empty()) {
        std::cout.write(data.data(), static_cast<std::streamsize>(data.size()));
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out)
        throw gca::DomainError("cannot write file '" + path + "'");
    out.write(data.data(), static_cast<std::streamsize>(data.size()));
}

// Same generator as the verification suites, so seeds are portable.
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

private:
    std::uint32_t state_;
};

Configuration initial_configuration(const std::string& init, const GroupRef& group, Alphabet a) {
    if (init.rfind("random:", 0) == 0) {
        std::uint32_t seed = 0;
        try {
            seed = static_cast<std::uint32_t>(std::stoul(init.substr(7)));
        } catch (const std::exception&) {
            throw gca::ParseError("expected random:SEED, got '" + init + "'");
        }
        Rng rng(seed);
        std::vector<std::uint8_t> values(static_cast<size_t>(group->order()));
        for (auto& v : values)
            v = static_cast<std::uint8_t>(rng.next() % static_cast<std::uint32_t>(a.size));
        return Configuration(group, a, std::move(values));
    }
    return gca::config_from_text(init, group, a);
}

struct GlobalFlags {
    std::string output;
    std::uint64_t budget = gca::kDefaultBudget;
    std::uint32_t seed = 42;
};

int cmd_run(const GlobalFlags& flags, const std::string& rule_path, const std::string& init,
            int steps, const std::string& format) {
    const gca::LoadedRule loaded = gca::rule_from_json(read_file(rule_path));
    const gca::PhiCA& t = loaded.automaton;
    const Configuration x0 = initial_configuration(init, t.source_group(), t.alphabet());
    const std::vector<Configuration> trace = gca::run(t, x0, steps);

    std::ostringstream out;
    if (format == "csv")
        gca::write_trace_csv(out, trace);
    else if (format == "pgm")
        gca::write_trace_pgm(out, trace);
    else
        throw gca::ParseError("unknown output format '" + format + "' (expected csv or pgm)");
    write_output(flags.output, out.str());
    return kExitOk;
}

int cmd_hom(const GlobalFlags& flags, const std::string& domain, const std::string& codomain) {
    const auto homs = gca::enumerate_homs(parse_group_name(domain), parse_group_name(codomain));
    nlohmann::ordered_json list = nlohmann::ordered_json::array();
    for (const auto& f : homs)
        list.push_back(nlohmann::ordered_json::parse(gca::hom_to_json(f)));
    write_output(flags.output, list.dump(2) + "\n");
    return kExitOk;
}

int cmd_cover(const GlobalFlags& flags, const std::string& group_name,
              const std::string& connection, int normal_generator, int alphabet,
              const std::string& dot_source, const std::string& dot_target) {
    const GroupRef g = parse_group_name(group_name);
    const gca::CirculantGraph source(g, parse_int_list(connection));
    const gca::NormalSubgroup n(
        gca::Subgroup::generated(g, std::vector<int>{normal_generator}));
    const gca::CoveringMap cover = gca::quotient_cover(source, n);

    bool injective = false;
    {
        const gca::PhiCA induced = gca::induced_injective_ca(cover, Alphabet(alphabet), flags.budget);
        injective = gca::is_injective(induced, flags.budget);
    }
    if (!dot_source.empty())
        write_output(dot_source, gca::graph_to_dot(cover.map.source, "source"));
    if (!dot_target.empty())
        write_output(dot_target, gca::graph_to_dot(cover.map.target, "target"));
    write_output(flags.output, gca::cover_report_to_json(cover, injective) + "\n");
    return kExitOk;
}

int cmd_verify(const GlobalFlags& flags, const std::string& suite, int max_order, int alphabet,
               const std::string& report_path) {
    gca::VerifyOptions options;
    options.max_order = max_order;
    options.alphabet = alphabet;
    options.seed = flags.seed;
    options.budget = flags.budget;

    std::vector<gca::SuiteResult> results;
    if (suite == "all") {
        results = gca::verify_all(options);
    } else {
        results.push_back(gca::run_suite(suite, options));
    }

    std::cout << gca::report_to_text(results);
    const std::string json = gca::report_to_json(results) + "\n";
    if (!report_path.empty())
        write_output(report_path, json);
    else if (!flags.output.empty())
        write_output(flags.output, json);

    for (const auto& r : results)
        if (r.failed > 0)
            return kExitCounterexample;
    return kExitOk;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"generalized cellular automata between configuration spaces over finite groups"};
    app.require_subcommand(1);
    app.fallthrough(); // global flags may follow the subcommand

    GlobalFlags flags;
    app.add_option("--output", flags.output, "write the primary result to this file");
    app.add_option("--budget", flags.budget, "maximum exhaustive enumeration size");
    app.add_option("--seed", flags.seed, "seed for randomized suites");

    auto* run_cmd = app.add_subcommand("run", "iterate an automaton and write its trace");
    std::string rule_path, init = "random:1", format = "csv";
    int steps = 0;
    run_cmd->add_option("--rule", rule_path, "rule JSON file")->required();
    run_cmd->add_option("--init", init, "initial configuration (text form or random:SEED)");
    run_cmd->add_option("--steps", steps, "number of steps")->check(CLI::NonNegativeNumber);
    run_cmd->add_option("--format", format, "trace format: csv or pgm");

    auto* hom_cmd = app.add_subcommand("hom", "enumerate homomorphisms between cyclic groups");
    std::string hom_domain, hom_codomain;
    hom_cmd->add_option("domain", hom_domain, "domain group, e.g. Z6")->required();
    hom_cmd->add_option("codomain", hom_codomain, "codomain group, e.g. Z4")->required();

    auto* cover_cmd = app.add_subcommand("cover", "build and verify a quotient cover");
    std::string cover_group, cover_connection, dot_source, dot_target;
    int normal_generator = 0;
    int cover_alphabet = 2;
    cover_cmd->add_option("group", cover_group, "cyclic group, e.g. Z6")->required();
    cover_cmd->add_option("--connection", cover_connection, "connection set, e.g. 1,5")->required();
    cover_cmd->add_option("--normal", normal_generator, "generator of the normal subgroup")
        ->required();
    cover_cmd->add_option("-q,--alphabet", cover_alphabet, "alphabet size for the induced automaton");
    cover_cmd->add_option("--dot-source", dot_source, "write the source graph as DOT");
    cover_cmd->add_option("--dot-target", dot_target, "write the target graph as DOT");

    auto* verify_cmd = app.add_subcommand("verify", "run theorem verification suites");
    std::string suite;
    int max_order = 6;
    int verify_alphabet = 2;
    std::string report_path;
    verify_cmd->add_option("suite", suite,
                           "decomposition | star-lemma | curtis-hedlund | linearity | covering | all")
        ->required();
    verify_cmd->add_option("--max-order", max_order, "largest cyclic group order swept");
    verify_cmd->add_option("-q,--alphabet", verify_alphabet, "alphabet size");
    verify_cmd->add_option("--report", report_path, "write the JSON report to this file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? kExitOk : kExitParse;
    }

    try {
        if (run_cmd->parsed())
            return cmd_run(flags, rule_path, init, steps, format);
        if (hom_cmd->parsed())
            return cmd_hom(flags, hom_domain, hom_codomain);
        if (cover_cmd->parsed())
            return cmd_cover(flags, cover_group, cover_connection, normal_generator,
                             cover_alphabet, dot_source, dot_target);
        if (verify_cmd->parsed())
            return cmd_verify(flags, suite, max_order, verify_alphabet, report_path);
    } catch (const gca::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const gca::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitDomain;
    }
    return kExitParse;
}
