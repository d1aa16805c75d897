#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gca/config_space.hpp"

namespace gca {

struct VerifyOptions {
    int max_order = 6;       ///< largest cyclic-group order swept
    int alphabet = 2;        ///< q
    std::uint32_t seed = 42; ///< for the randomized suites
    std::uint64_t budget = kDefaultBudget;
};

/// Outcome of one suite. passed + failed = instances; the first failing
/// instance is kept as replayable JSON.
struct SuiteResult {
    std::string suite;
    std::uint64_t instances = 0;
    std::uint64_t passed = 0;
    std::uint64_t failed = 0;
    std::string first_counterexample; // empty when clean
    double wall_ms = 0.0;
};

/// Decomposition theorem: the star automata of the first-isomorphism
/// factors compose back to phi_star, for every hom between cyclic groups
/// of order <= max_order, exhaustively over inputs.
SuiteResult verify_decomposition(const VerifyOptions& options);

/// The four parts of the star lemma: phi* = psi* iff phi = psi;
/// contravariance of composition; phi surjective iff phi* injective;
/// phi injective iff phi* surjective.
SuiteResult verify_star_lemma(const VerifyOptions& options);

/// Finite Curtis-Hedlund: random automata are equivariant, their minimal
/// memory sets check out against an independent pairwise oracle and
/// round-trip through rule reconstruction; random non-equivariant tables
/// are rejected.
SuiteResult verify_curtis_hedlund(const VerifyOptions& options);

/// Linear theory: rule linearity iff global linearity on the census of
/// two-element-memory rules; circulant matrix forms; dependency sets of
/// random linear tables reconstruct the table.
SuiteResult verify_linearity(const VerifyOptions& options);

/// Quotient covers over every cyclic order <= max_order: admissible
/// connection sets verify as |N|-fold coverings with injective induced
/// automata, inadmissible ones are rejected with named violations.
SuiteResult verify_covering(const VerifyOptions& options);

/// All suites, in the order above.
std::vector<SuiteResult> verify_all(const VerifyOptions& options);

/// Run one suite by CLI name (decomposition, star-lemma, curtis-hedlund,
/// linearity, covering). Throws ParseError for unknown names.
SuiteResult run_suite(const std::string& name, const VerifyOptions& options);

/// Names accepted by run_suite, in verify_all order.
const std::vector<std::string>& suite_names();

std::string report_to_text(const std::vector<SuiteResult>& results);
std::string report_to_json(const std::vector<SuiteResult>& results);

} // namespace gca
