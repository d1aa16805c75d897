#include "gca/serialization.hpp"

#include <algorithm>
#include <istream>
#include <ostream>
#include <sstream>

#include <json.hpp>

namespace gca {

using ordered_json = nlohmann::ordered_json;

namespace {

ordered_json parse(const std::string& text) {
    try {
        return ordered_json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("invalid JSON: ") + e.what());
    }
}

/// "Z6" -> cyclic group of order 6.
GroupRef group_from_name(const std::string& name) {
    if (name.size() < 2 || (name[0] != 'Z' && name[0] != 'z'))
        throw ParseError("expected a cyclic group name like Z6, got '" + name + "'");
    int order = 0;
    for (size_t i = 1; i < name.size(); ++i) {
        if (!std::isdigit(static_cast<unsigned char>(name[i])))
            throw ParseError("expected a cyclic group name like Z6, got '" + name + "'");
        order = order * 10 + (name[i] - '0');
        if (order > 1000000)
            throw ParseError("group order in '" + name + "' is out of range");
    }
    if (order < 1)
        throw ParseError("group order must be >= 1 in '" + name + "'");
    return make_cyclic(order);
}

ordered_json group_json(const FiniteGroup& g) {
    ordered_json j;
    if (g.cyclic_form()) {
        j["kind"] = "cyclic";
        j["order"] = g.order();
    } else {
        j["kind"] = "table";
        j["order"] = g.order();
        std::vector<std::vector<int>> table(static_cast<size_t>(g.order()),
                                            std::vector<int>(static_cast<size_t>(g.order())));
        for (int a = 0; a < g.order(); ++a)
            for (int b = 0; b < g.order(); ++b)
                table[static_cast<size_t>(a)][static_cast<size_t>(b)] = g.op(a, b);
        j["table"] = table;
        j["label"] = g.label();
    }
    return j;
}

GroupRef group_from(const ordered_json& j) {
    if (j.is_string())
        return group_from_name(j.get<std::string>());
    if (!j.is_object() || !j.contains("kind"))
        throw ParseError("group JSON must be an object with a 'kind' field or a name string");
    const auto kind = j.at("kind").get<std::string>();
    try {
        if (kind == "cyclic")
            return make_cyclic(j.at("order").get<int>());
        if (kind == "table")
            return make_group(j.at("table").get<std::vector<std::vector<int>>>(),
                              j.value("label", std::string("G")));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed group JSON: ") + e.what());
    }
    throw ParseError("unknown group kind '" + kind + "'");
}

ordered_json hom_json(const GroupHom& f) {
    ordered_json j;
    if (f.domain()->cyclic_form() && f.codomain()->cyclic_form()) {
        j["domain"] = f.domain()->label();
        j["codomain"] = f.codomain()->label();
        j["generator_image"] = f.domain()->order() > 1 ? f.map()[1] : 0;
    } else {
        j["domain"] = group_json(*f.domain());
        j["codomain"] = group_json(*f.codomain());
        j["map"] = f.map();
    }
    return j;
}

GroupHom hom_from(const ordered_json& j) {
    if (!j.is_object())
        throw ParseError("hom JSON must be an object");
    GroupRef domain, codomain;
    try {
        domain = group_from(j.at("domain"));
        codomain = group_from(j.at("codomain"));
        if (j.contains("map"))
            return GroupHom(domain, codomain, j.at("map").get<std::vector<int>>());
        if (j.contains("generator_image"))
            return GroupHom::cyclic_hom(domain, codomain, j.at("generator_image").get<int>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed hom JSON: ") + e.what());
    }
    throw ParseError("hom JSON needs either 'generator_image' or 'map'");
}

std::string pattern_key(std::uint64_t index, int q, size_t width) {
    std::string key(width, '0');
    for (size_t i = width; i-- > 0;) {
        key[i] = static_cast<char>('0' + static_cast<int>(index % q));
        index /= static_cast<std::uint64_t>(q);
    }
    return key;
}

ordered_json rule_json(const PhiCA& t) {
    ordered_json j;
    j["group"] = t.source_group()->cyclic_form() ? ordered_json(t.source_group()->label())
                                                 : group_json(*t.source_group());
    j["alphabet"] = t.alphabet().size;
    j["phi"] = hom_json(t.phi());
    j["memory"] = t.rule().memory;
    ordered_json table = ordered_json::object();
    for (std::uint64_t i = 0; i < t.rule().table.size(); ++i)
        table[pattern_key(i, t.alphabet().size, t.rule().memory.size())] =
            static_cast<int>(t.rule().table[i]);
    j["table"] = table;
    return j;
}

} // namespace

std::string group_to_json(const FiniteGroup& g) { return group_json(g).dump(); }

GroupRef group_from_json(const std::string& text) { return group_from(parse(text)); }

std::string hom_to_json(const GroupHom& f) { return hom_json(f).dump(); }

GroupHom hom_from_json(const std::string& text) { return hom_from(parse(text)); }

std::string rule_to_json(const PhiCA& t) { return rule_json(t).dump(); }

std::string linear_rule_to_json(const PhiCA& t, const LinearLocalRule& linear) {
    ordered_json j = rule_json(t);
    j["field"] = {{"p", linear.field.p}, {"d", linear.field.d}};
    ordered_json coeffs = ordered_json::object();
    for (size_t s = 0; s < linear.memory.size(); ++s) {
        const GfMatrix& m = linear.coefficients[s];
        std::vector<std::vector<int>> rows(static_cast<size_t>(m.rows),
                                           std::vector<int>(static_cast<size_t>(m.cols)));
        for (int r = 0; r < m.rows; ++r)
            for (int c = 0; c < m.cols; ++c)
                rows[static_cast<size_t>(r)][static_cast<size_t>(c)] = m.at(r, c);
        coeffs[std::to_string(linear.memory[s])] = rows;
    }
    j["coefficients"] = coeffs;
    return j.dump();
}

LoadedRule rule_from_json(const std::string& text) {
    const ordered_json j = parse(text);
    if (!j.is_object())
        throw ParseError("rule JSON must be an object");
    try {
        GroupRef universe = group_from(j.at("group"));
        const int q = j.at("alphabet").get<int>();
        GroupHom phi = j.contains("phi") ? hom_from(j.at("phi"))
                                         : GroupHom::identity(universe);
        if (*phi.codomain() != *universe)
            throw ParseError("rule's phi codomain differs from the universe group");
        std::vector<int> memory = j.at("memory").get<std::vector<int>>();

        std::optional<VectorAlphabet> field;
        if (j.contains("field")) {
            field.emplace(j.at("field").at("p").get<int>(), j.at("field").at("d").get<int>());
            if (field->size() != q)
                throw ParseError("field size p^d does not match the alphabet");
        }

        std::optional<std::vector<std::uint8_t>> table;
        if (j.contains("table")) {
            const auto& tj = j.at("table");
            const std::uint64_t entries = checked_pow(q, static_cast<int>(memory.size()));
            std::vector<std::uint8_t> t(entries, 0);
            if (tj.size() != entries)
                throw ParseError("rule table must have exactly " + std::to_string(entries) +
                                 " entries");
            for (auto it = tj.begin(); it != tj.end(); ++it) {
                const std::string& key = it.key();
                if (key.size() != memory.size())
                    throw ParseError("rule table key '" + key + "' has wrong width");
                std::uint64_t idx = 0;
                for (char ch : key) {
                    if (ch < '0' || ch >= '0' + q)
                        throw ParseError("rule table key '" + key + "' has digits outside the alphabet");
                    idx = idx * static_cast<std::uint64_t>(q) + static_cast<std::uint64_t>(ch - '0');
                }
                const int value = it.value().get<int>();
                if (value < 0 || value >= q)
                    throw ParseError("rule table value out of alphabet range");
                t[idx] = static_cast<std::uint8_t>(value);
            }
            table = std::move(t);
        }

        if (!table && j.contains("coefficients")) {
            if (!field)
                throw ParseError("linear coefficients require a 'field' entry");
            LinearLocalRule linear{*field, memory, {}};
            linear.coefficients.assign(memory.size(), GfMatrix(field->p, field->d, field->d));
            for (auto it = j.at("coefficients").begin(); it != j.at("coefficients").end(); ++it) {
                const int element = std::stoi(it.key());
                const auto pos = std::find(memory.begin(), memory.end(), element);
                if (pos == memory.end())
                    throw ParseError("coefficient for element " + it.key() +
                                     " outside the memory set");
                const auto rows = it.value().get<std::vector<std::vector<int>>>();
                GfMatrix m(field->p, field->d, field->d);
                if (static_cast<int>(rows.size()) != field->d)
                    throw ParseError("coefficient matrix for element " + it.key() +
                                     " has wrong shape");
                for (int r = 0; r < field->d; ++r) {
                    if (static_cast<int>(rows[static_cast<size_t>(r)].size()) != field->d)
                        throw ParseError("coefficient matrix for element " + it.key() +
                                         " has wrong shape");
                    for (int c = 0; c < field->d; ++c)
                        m.at(r, c) = static_cast<std::uint8_t>(
                            ((rows[static_cast<size_t>(r)][static_cast<size_t>(c)] % field->p) +
                             field->p) %
                            field->p);
                }
                linear.coefficients[static_cast<size_t>(pos - memory.begin())] = std::move(m);
            }
            table = linear.to_table().table;
        }
        if (!table)
            throw ParseError("rule JSON needs a 'table' or linear 'coefficients'");

        LocalRule rule(Alphabet(q), std::move(memory), std::move(*table));
        return {PhiCA(std::move(phi), std::move(rule)), field};
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed rule JSON: ") + e.what());
    }
}

std::string graph_to_json(const CirculantGraph& g) {
    ordered_json j;
    j["group"] = g.group()->label();
    j["connection"] = g.connection();
    return j.dump();
}

CirculantGraph graph_from_json(const std::string& text) {
    const ordered_json j = parse(text);
    try {
        GroupRef group = group_from(j.at("group"));
        return CirculantGraph(group, j.at("connection").get<std::vector<int>>());
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(std::string("malformed graph JSON: ") + e.what());
    }
}

std::string cover_report_to_json(const CoveringMap& cover, bool induced_ca_injective) {
    ordered_json j;
    j["source"] = parse(graph_to_json(cover.map.source));
    j["target"] = parse(graph_to_json(cover.map.target));
    j["fold"] = cover.fold;
    j["verified"] = is_covering(cover.map);
    j["induced_ca_injective"] = induced_ca_injective;
    j["violations"] = ordered_json::array();
    return j.dump();
}

std::string config_to_text(const Configuration& x) {
    std::string out;
    for (int k = 0; k < x.size(); ++k) {
        if (k)
            out += ',';
        out += std::to_string(x.at(k));
    }
    return out;
}

Configuration config_from_text(const std::string& text, const GroupRef& group, Alphabet a) {
    std::vector<std::uint8_t> values;
    std::stringstream ss(text);
    std::string token;
    while (std::getline(ss, token, ',')) {
        token.erase(std::remove_if(token.begin(), token.end(),
                                   [](unsigned char c) { return std::isspace(c); }),
                    token.end());
        if (token.empty())
            throw ParseError("empty state in configuration text");
        int value = 0;
        for (char ch : token) {
            if (!std::isdigit(static_cast<unsigned char>(ch)))
                throw ParseError("configuration state '" + token + "' is not a number");
            value = value * 10 + (ch - '0');
            if (value >= a.size)
                throw ParseError("configuration state '" + token + "' outside the alphabet");
        }
        values.push_back(static_cast<std::uint8_t>(value));
    }
    if (!group)
        throw DomainError("configuration requires a group");
    if (static_cast<int>(values.size()) != group->order())
        throw ParseError("configuration has " + std::to_string(values.size()) +
                         " states, expected " + std::to_string(group->order()));
    return Configuration(group, a, std::move(values));
}

void write_trace_csv(std::ostream& out, const std::vector<Configuration>& trace) {
    for (const auto& x : trace)
        out << config_to_text(x) << '\n';
}

void write_trace_pgm(std::ostream& out, const std::vector<Configuration>& trace) {
    if (trace.empty())
        throw DomainError("PGM output needs at least one configuration");
    const int width = trace.front().size();
    const int q = trace.front().alphabet().size;
    out << "P5\n" << width << ' ' << trace.size() << "\n255\n";
    for (const auto& x : trace)
        for (int k = 0; k < width; ++k) {
            const int level = x.at(k) * 255 / (q - 1);
            out.put(static_cast<char>(level));
        }
}

void write_map_table_csv(std::ostream& out, const MapTable& f) {
    out << "input,output\n";
    for (std::uint64_t i = 0; i < f.input_count(); ++i) {
        const Configuration input = config_at(f.source_group(), f.alphabet(), i);
        out << '"' << config_to_text(input) << "\",\"";
        Configuration output = f.output_at(i);
        out << config_to_text(output) << "\"\n";
    }
}

namespace {

std::vector<std::string> split_csv_row(const std::string& line) {
    std::vector<std::string> fields;
    std::string field;
    bool quoted = false;
    for (char c : line) {
        if (c == '"') {
            quoted = !quoted;
        } else if (c == ',' && !quoted) {
            fields.push_back(field);
            field.clear();
        } else {
            field += c;
        }
    }
    fields.push_back(field);
    return fields;
}

} // namespace

MapTable read_map_table_csv(std::istream& in, const GroupRef& source, const GroupRef& target,
                            Alphabet a) {
    std::string line;
    if (!std::getline(in, line) || split_csv_row(line) != std::vector<std::string>{"input", "output"})
        throw ParseError("map table CSV must start with the header 'input,output'");
    const std::uint64_t expected = checked_pow(a.size, source->order());
    std::vector<std::vector<std::uint8_t>> outputs(expected);
    std::vector<bool> seen(expected, false);
    while (std::getline(in, line)) {
        if (line.empty())
            continue;
        const auto fields = split_csv_row(line);
        if (fields.size() != 2)
            throw ParseError("map table CSV row needs exactly two fields");
        const Configuration input = config_from_text(fields[0], source, a);
        const Configuration output = config_from_text(fields[1], target, a);
        const std::uint64_t idx = config_index(input);
        if (seen[idx])
            throw ParseError("map table CSV repeats input '" + fields[0] + "'");
        seen[idx] = true;
        outputs[idx] = output.values();
    }
    if (!std::all_of(seen.begin(), seen.end(), [](bool b) { return b; }))
        throw ParseError("map table CSV does not cover every input configuration");
    return MapTable(source, target, a, std::move(outputs));
}

std::string graph_to_dot(const CirculantGraph& g, const std::string& name) {
    std::string out = "graph " + name + " {\n";
    for (int v = 0; v < g.vertex_count(); ++v)
        out += "  " + std::to_string(v) + ";\n";
    for (const auto& [u, v] : g.edges())
        out += "  " + std::to_string(u) + " -- " + std::to_string(v) + ";\n";
    out += "}\n";
    return out;
}

} // namespace gca
