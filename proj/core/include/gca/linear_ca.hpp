#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "gca/phi_ca.hpp"

namespace gca {

/**
 * States as vectors in GF(p)^d, encoded as indices 0..p^d-1 with
 * coordinate 0 the least significant base-p digit. Only prime fields are
 * supported.
 */
struct VectorAlphabet {
    int p; ///< field characteristic, prime
    int d; ///< vector dimension

    VectorAlphabet(int prime, int dimension);

    int size() const;
    Alphabet alphabet() const { return Alphabet(size()); }

    std::vector<std::uint8_t> decode(int state) const;
    int encode(const std::vector<std::uint8_t>& coords) const;

    /// Componentwise sum of two states.
    int add(int a, int b) const;
    /// Scalar multiple of a state.
    int scale(int k, int a) const;
    /// State with a single 1 in the given coordinate.
    int unit(int coordinate) const;
};

/// Dense matrix over GF(p), row-major.
struct GfMatrix {
    int p = 2;
    int rows = 0;
    int cols = 0;
    std::vector<std::uint8_t> data;

    GfMatrix() = default;
    GfMatrix(int prime, int r, int c);

    std::uint8_t& at(int r, int c) { return data[static_cast<size_t>(r) * cols + c]; }
    std::uint8_t at(int r, int c) const { return data[static_cast<size_t>(r) * cols + c]; }

    bool operator==(const GfMatrix&) const = default;
};

GfMatrix gf_multiply(const GfMatrix& a, const GfMatrix& b);
std::vector<std::uint8_t> gf_apply(const GfMatrix& m, const std::vector<std::uint8_t>& v);

/**
 * A local rule in linear form: one d-by-d coefficient matrix per memory
 * element, with mu(pattern) = sum_s M_s . pattern(s).
 */
struct LinearLocalRule {
    VectorAlphabet field;
    std::vector<int> memory;
    std::vector<GfMatrix> coefficients; // one per memory element

    /// Expand to the explicit table form.
    LocalRule to_table() const;
};

/**
 * Linearity of a local rule over the given field structure. Checks that
 * the whole table matches the linear form read off the basis patterns;
 * returns the coefficient matrices on success.
 */
std::optional<LinearLocalRule> is_linear_rule(const LocalRule& rule, const VectorAlphabet& v);

/**
 * Linearity of the global map: additivity and homogeneity over all
 * configurations. Exhausts all pairs below 2^10 configurations; above
 * that, additivity is checked on the standard basis (exact for a linear
 * map) plus seeded random pairs as a tripwire.
 */
bool is_linear_ca(const PhiCA& t, const VectorAlphabet& v, std::uint64_t budget = kDefaultBudget);

/**
 * The (|H| d) x (|G| d) matrix of a linear automaton under element-major,
 * coordinate-minor flattening. For G = H = Z_n with the identity hom and
 * d = 1 the result is circulant. Throws DomainError when t is not linear.
 */
GfMatrix matrix_form(const PhiCA& t, const VectorAlphabet& v, std::uint64_t budget = kDefaultBudget);

/**
 * The minimal M with f_tau = 0 on every configuration vanishing on M.
 * For a linear automaton this is the support of the identity-coordinate
 * functional; reconstructing a rule over M is verified to succeed before
 * returning. Throws DomainError when t is not linear.
 */
std::vector<int> dependency_set(const PhiCA& t, const VectorAlphabet& v,
                                std::uint64_t budget = kDefaultBudget);

/// Componentwise sum of configurations over the field structure.
Configuration config_add(const VectorAlphabet& v, const Configuration& x, const Configuration& y);

/// Componentwise scalar multiple.
Configuration config_scale(const VectorAlphabet& v, int k, const Configuration& x);

} // namespace gca
