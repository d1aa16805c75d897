#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "gca/covering.hpp"
#include "gca/linear_ca.hpp"
#include "gca/phi_ca.hpp"

namespace gca {

// JSON text forms. Cyclic groups are {"kind":"cyclic","order":6}; homs
// between cyclic groups are {"domain":"Z6","codomain":"Z4",
// "generator_image":2}, with a full {"map":[...]} fallback. Emitted JSON
// has a fixed key order so identical values serialize identically.

std::string group_to_json(const FiniteGroup& g);
GroupRef group_from_json(const std::string& text);

std::string hom_to_json(const GroupHom& f);
GroupHom hom_from_json(const std::string& text);

/// Rule files: {"group":"Z4","alphabet":2,"phi":{...},"memory":[1,3],
/// "table":{"00":0,...}} with pattern keys as juxtaposed state digits in
/// memory order. Linear rules may add {"field":{"p":2,"d":1},
/// "coefficients":{"1":[[1]],"3":[[1]]}}; a file with coefficients and no
/// table gets its table synthesized from the linear form.
struct LoadedRule {
    PhiCA automaton;
    std::optional<VectorAlphabet> field;
};

std::string rule_to_json(const PhiCA& t);
std::string linear_rule_to_json(const PhiCA& t, const LinearLocalRule& linear);
LoadedRule rule_from_json(const std::string& text);

std::string graph_to_json(const CirculantGraph& g);
CirculantGraph graph_from_json(const std::string& text);

/// Cover report: {"source":..., "target":..., "fold":n, "verified":bool,
/// "induced_ca_injective":bool, "violations":[]}.
std::string cover_report_to_json(const CoveringMap& cover, bool induced_ca_injective);

/// Configuration text form: comma-separated states by element index.
std::string config_to_text(const Configuration& x);
Configuration config_from_text(const std::string& text, const GroupRef& group, Alphabet a);

/// Trace CSV: one configuration text form per row.
void write_trace_csv(std::ostream& out, const std::vector<Configuration>& trace);

/// Binary P5 PGM: rows are time steps, columns cells, states mapped to
/// evenly spaced gray levels.
void write_trace_pgm(std::ostream& out, const std::vector<Configuration>& trace);

/// Map-table CSV: header "input,output", one row per input configuration
/// in lexicographic order, both columns quoted configuration text forms.
void write_map_table_csv(std::ostream& out, const MapTable& f);
MapTable read_map_table_csv(std::istream& in, const GroupRef& source, const GroupRef& target,
                            Alphabet a);

/// Undirected DOT rendering of a circulant graph.
std::string graph_to_dot(const CirculantGraph& g, const std::string& name);

} // namespace gca
