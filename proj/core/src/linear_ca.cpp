#include "gca/linear_ca.hpp"

#include <algorithm>
#include <random>
#include <string>

namespace gca {

namespace {

bool is_prime(int n) {
    if (n < 2)
        return false;
    for (int f = 2; f * f <= n; ++f)
        if (n % f == 0)
            return false;
    return true;
}

} // namespace

VectorAlphabet::VectorAlphabet(int prime, int dimension) : p(prime), d(dimension) {
    if (!is_prime(p))
        throw DomainError("field characteristic must be prime, got " + std::to_string(p));
    if (d < 1)
        throw DomainError("vector dimension must be >= 1");
    if (checked_pow(p, d) > 256)
        throw DomainError("vector alphabet larger than 256 states is not supported");
}

int VectorAlphabet::size() const {
    return static_cast<int>(checked_pow(p, d));
}

std::vector<std::uint8_t> VectorAlphabet::decode(int state) const {
    std::vector<std::uint8_t> coords(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i) {
        coords[static_cast<size_t>(i)] = static_cast<std::uint8_t>(state % p);
        state /= p;
    }
    return coords;
}

int VectorAlphabet::encode(const std::vector<std::uint8_t>& coords) const {
    if (static_cast<int>(coords.size()) != d)
        throw DomainError("coordinate vector has wrong dimension");
    int state = 0;
    for (int i = d - 1; i >= 0; --i)
        state = state * p + coords[static_cast<size_t>(i)];
    return state;
}

int VectorAlphabet::add(int a, int b) const {
    const auto va = decode(a);
    const auto vb = decode(b);
    std::vector<std::uint8_t> out(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i)
        out[static_cast<size_t>(i)] =
            static_cast<std::uint8_t>((va[static_cast<size_t>(i)] + vb[static_cast<size_t>(i)]) % p);
    return encode(out);
}

int VectorAlphabet::scale(int k, int a) const {
    const auto va = decode(a);
    std::vector<std::uint8_t> out(static_cast<size_t>(d));
    for (int i = 0; i < d; ++i)
        out[static_cast<size_t>(i)] =
            static_cast<std::uint8_t>((static_cast<long long>(k) * va[static_cast<size_t>(i)]) % p);
    return encode(out);
}

int VectorAlphabet::unit(int coordinate) const {
    if (coordinate < 0 || coordinate >= d)
        throw DomainError("unit coordinate out of range");
    std::vector<std::uint8_t> coords(static_cast<size_t>(d), 0);
    coords[static_cast<size_t>(coordinate)] = 1;
    return encode(coords);
}

GfMatrix::GfMatrix(int prime, int r, int c) : p(prime), rows(r), cols(c) {
    data.assign(static_cast<size_t>(r) * static_cast<size_t>(c), 0);
}

GfMatrix gf_multiply(const GfMatrix& a, const GfMatrix& b) {
    if (a.cols != b.rows || a.p != b.p)
        throw DomainError("matrix shapes or fields do not match");
    GfMatrix out(a.p, a.rows, b.cols);
    for (int i = 0; i < a.rows; ++i)
        for (int k = 0; k < a.cols; ++k) {
            const int aik = a.at(i, k);
            if (aik == 0)
                continue;
            for (int j = 0; j < b.cols; ++j)
                out.at(i, j) = static_cast<std::uint8_t>((out.at(i, j) + aik * b.at(k, j)) % a.p);
        }
    return out;
}

std::vector<std::uint8_t> gf_apply(const GfMatrix& m, const std::vector<std::uint8_t>& v) {
    if (static_cast<int>(v.size()) != m.cols)
        throw DomainError("vector length does not match matrix columns");
    std::vector<std::uint8_t> out(static_cast<size_t>(m.rows), 0);
    for (int i = 0; i < m.rows; ++i) {
        int acc = 0;
        for (int j = 0; j < m.cols; ++j)
            acc += m.at(i, j) * v[static_cast<size_t>(j)];
        out[static_cast<size_t>(i)] = static_cast<std::uint8_t>(acc % m.p);
    }
    return out;
}

LocalRule LinearLocalRule::to_table() const {
    const int q = field.size();
    const std::uint64_t patterns = checked_pow(q, static_cast<int>(memory.size()));
    std::vector<std::uint8_t> table(patterns);
    std::vector<std::uint8_t> digits(memory.size(), 0);
    for (std::uint64_t idx = 0; idx < patterns; ++idx) {
        std::vector<std::uint8_t> acc(static_cast<size_t>(field.d), 0);
        for (size_t s = 0; s < memory.size(); ++s) {
            const auto contrib = gf_apply(coefficients[s], field.decode(digits[s]));
            for (int i = 0; i < field.d; ++i)
                acc[static_cast<size_t>(i)] = static_cast<std::uint8_t>(
                    (acc[static_cast<size_t>(i)] + contrib[static_cast<size_t>(i)]) % field.p);
        }
        table[idx] = static_cast<std::uint8_t>(field.encode(acc));
        for (int k = static_cast<int>(digits.size()) - 1; k >= 0; --k) {
            if (digits[static_cast<size_t>(k)] + 1 < q) {
                ++digits[static_cast<size_t>(k)];
                break;
            }
            digits[static_cast<size_t>(k)] = 0;
        }
    }
    return LocalRule(field.alphabet(), memory, std::move(table));
}

std::optional<LinearLocalRule> is_linear_rule(const LocalRule& rule, const VectorAlphabet& v) {
    if (v.size() != rule.alphabet.size)
        throw DomainError("field structure does not match the rule alphabet");
    const size_t len = rule.memory.size();

    // Read candidate coefficients off the basis patterns.
    LinearLocalRule linear{v, rule.memory, {}};
    linear.coefficients.reserve(len);
    std::vector<std::uint8_t> zero_pattern(len, 0);
    for (size_t s = 0; s < len; ++s) {
        GfMatrix m(v.p, v.d, v.d);
        for (int j = 0; j < v.d; ++j) {
            auto pattern = zero_pattern;
            pattern[s] = static_cast<std::uint8_t>(v.unit(j));
            const auto img = v.decode(rule.evaluate(pattern));
            for (int i = 0; i < v.d; ++i)
                m.at(i, j) = img[static_cast<size_t>(i)];
        }
        linear.coefficients.push_back(std::move(m));
    }

    // The rule is linear iff the whole table equals the linear form.
    if (linear.to_table().table != rule.table)
        return std::nullopt;
    return linear;
}

namespace {

Configuration basis_config(const GroupRef& g, const VectorAlphabet& v, int element, int coord) {
    std::vector<std::uint8_t> values(static_cast<size_t>(g->order()), 0);
    values[static_cast<size_t>(element)] = static_cast<std::uint8_t>(v.unit(coord));
    return Configuration(g, v.alphabet(), std::move(values));
}

} // namespace

Configuration config_add(const VectorAlphabet& v, const Configuration& x, const Configuration& y) {
    if (*x.group() != *y.group() || x.alphabet() != y.alphabet())
        throw DomainError("config_add requires matching spaces");
    std::vector<std::uint8_t> out(static_cast<size_t>(x.size()));
    for (int k = 0; k < x.size(); ++k)
        out[static_cast<size_t>(k)] = static_cast<std::uint8_t>(v.add(x.at(k), y.at(k)));
    return Configuration(x.group(), x.alphabet(), std::move(out));
}

Configuration config_scale(const VectorAlphabet& v, int k, const Configuration& x) {
    std::vector<std::uint8_t> out(static_cast<size_t>(x.size()));
    for (int i = 0; i < x.size(); ++i)
        out[static_cast<size_t>(i)] = static_cast<std::uint8_t>(v.scale(k, x.at(i)));
    return Configuration(x.group(), x.alphabet(), std::move(out));
}

bool is_linear_ca(const PhiCA& t, const VectorAlphabet& v, std::uint64_t budget) {
    if (v.size() != t.alphabet().size)
        throw DomainError("field structure does not match the automaton alphabet");
    const auto& g = t.source_group();
    const std::uint64_t count = config_count(g->order(), t.alphabet(), budget);

    const Configuration zero = Configuration::zero(g, t.alphabet());
    if (apply(t, zero) != Configuration::zero(t.target_group(), t.alphabet()))
        return false;

    if (count <= (std::uint64_t{1} << 10)) {
        // Full exhaustion over all pairs and all scalars.
        std::vector<Configuration> inputs;
        std::vector<Configuration> images;
        inputs.reserve(count);
        images.reserve(count);
        for (const auto& x : enumerate_configs(g, t.alphabet(), budget)) {
            inputs.push_back(x);
            images.push_back(apply(t, x));
        }
        for (size_t i = 0; i < inputs.size(); ++i) {
            for (size_t j = 0; j < inputs.size(); ++j) {
                const Configuration sum = config_add(v, inputs[i], inputs[j]);
                if (apply(t, sum) != config_add(v, images[i], images[j]))
                    return false;
            }
            for (int k = 0; k < v.p; ++k)
                if (apply(t, config_scale(v, k, inputs[i])) != config_scale(v, k, images[i]))
                    return false;
        }
        return true;
    }

    // Spanning-set check: exact for additivity on the basis, plus seeded
    // random pairs.
    for (int e = 0; e < g->order(); ++e)
        for (int c = 0; c < v.d; ++c) {
            const Configuration b = basis_config(g, v, e, c);
            const Configuration tb = apply(t, b);
            for (int k = 0; k < v.p; ++k)
                if (apply(t, config_scale(v, k, b)) != config_scale(v, k, tb))
                    return false;
            // x decomposed into basis parts must map to the sum of images.
        }
    std::mt19937 rng(0x5eed);
    for (int trial = 0; trial < 64; ++trial) {
        const std::uint64_t i = rng() % count;
        const std::uint64_t j = rng() % count;
        const Configuration x = config_at(g, t.alphabet(), i);
        const Configuration y = config_at(g, t.alphabet(), j);
        if (apply(t, config_add(v, x, y)) != config_add(v, apply(t, x), apply(t, y)))
            return false;
    }
    // Every configuration is the sum of its basis components; with scalar
    // compatibility above, equality on sums of basis parts is what remains.
    for (const auto& x : enumerate_configs(g, t.alphabet(), budget)) {
        Configuration acc = Configuration::zero(t.target_group(), t.alphabet());
        for (int e = 0; e < g->order(); ++e) {
            const auto coords = v.decode(x.at(e));
            for (int c = 0; c < v.d; ++c) {
                if (coords[static_cast<size_t>(c)] == 0)
                    continue;
                const Configuration b =
                    config_scale(v, coords[static_cast<size_t>(c)], basis_config(g, v, e, c));
                acc = config_add(v, acc, apply(t, b));
            }
        }
        if (acc != apply(t, x))
            return false;
    }
    return true;
}

GfMatrix matrix_form(const PhiCA& t, const VectorAlphabet& v, std::uint64_t budget) {
    if (!is_linear_ca(t, v, budget))
        throw DomainError("matrix_form requires a linear automaton");
    const auto& g = t.source_group();
    const auto& h = t.target_group();
    GfMatrix m(v.p, h->order() * v.d, g->order() * v.d);
    for (int e = 0; e < g->order(); ++e)
        for (int c = 0; c < v.d; ++c) {
            const Configuration img = apply(t, basis_config(g, v, e, c));
            const int col = e * v.d + c;
            for (int he = 0; he < h->order(); ++he) {
                const auto coords = v.decode(img.at(he));
                for (int hc = 0; hc < v.d; ++hc)
                    m.at(he * v.d + hc, col) = coords[static_cast<size_t>(hc)];
            }
        }
    return m;
}

std::vector<int> dependency_set(const PhiCA& t, const VectorAlphabet& v, std::uint64_t budget) {
    if (!is_linear_ca(t, v, budget))
        throw DomainError("dependency_set requires a linear automaton");
    const auto& g = t.source_group();

    // Support of the identity-coordinate functional.
    std::vector<int> support;
    for (int e = 0; e < g->order(); ++e) {
        bool depends = false;
        for (int c = 0; c < v.d && !depends; ++c)
            depends = f_tau(t, basis_config(g, v, e, c)) != 0;
        if (depends)
            support.push_back(e);
    }

    // f_tau must vanish on every configuration vanishing on the support,
    // and a rule over the support must reconstruct the automaton.
    for (const auto& x : enumerate_configs(g, t.alphabet(), budget)) {
        bool vanishes = true;
        for (int m : support)
            if (x.at(m) != 0) {
                vanishes = false;
                break;
            }
        if (vanishes && f_tau(t, x) != 0)
            throw InternalError("dependency support misses a coordinate the map depends on");
    }
    const MapTable table = MapTable::tabulate(t, budget);
    reconstruct_rule(table, t.phi(), support);
    return support;
}

} // namespace gca
