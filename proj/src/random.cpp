#include "szego/random.hpp"

#include <algorithm>
#include <set>

#include "szego/grid.hpp"

namespace szego {

namespace {

std::size_t uniform_index(Rng& rng, std::size_t lo, std::size_t hi) {
    return std::uniform_int_distribution<std::size_t>(lo, hi)(rng);
}

Symbol random_terms(Rng& rng, std::size_t variables, std::span<const int> bands) {
    std::normal_distribution<double> normal(0.0, 1.0);
    Symbol s = Symbol::constant(normal(rng));
    s.declare_variables(variables);

    std::vector<int> kappa(variables, 0);
    for (std::size_t i = 0; i < variables; ++i) kappa[i] = -bands[i];
    while (true) {
        const MultiIndex k(kappa);
        if (k.lex_positive()) {
            int l1 = 0;
            for (int e : kappa) l1 += std::abs(e);
            const double scale = 1.0 / (1.0 + l1);
            s.add_term(k, Complex(normal(rng), normal(rng)) * scale);
        }
        std::size_t axis = 0;
        while (axis < variables && kappa[axis] == bands[axis]) {
            kappa[axis] = -bands[axis];
            ++axis;
        }
        if (axis == variables) break;
        ++kappa[axis];
    }
    return s;
}

Symbol make_positive(Rng& rng, Symbol s) {
    const ValueRange range = value_range(s, 64);
    const double margin = std::uniform_real_distribution<double>(0.1, 1.0)(rng);
    return s.shifted(-range.min + margin);
}

}  // namespace

Symbol random_symbol(Rng& rng, const SymbolShape& shape) {
    const std::size_t vars = uniform_index(rng, 1, std::max<std::size_t>(1, shape.max_variables));
    std::vector<int> bands(vars);
    for (auto& b : bands) b = static_cast<int>(uniform_index(rng, 1, static_cast<std::size_t>(std::max(1, shape.max_bandwidth))));
    return random_terms(rng, vars, bands);
}

Symbol random_positive_symbol(Rng& rng, const SymbolShape& shape) {
    Symbol s = random_symbol(rng, shape);
    return make_positive(rng, std::move(s));
}

Symbol random_positive_symbol(Rng& rng, std::size_t variables, int bandwidth) {
    const std::vector<int> bands(variables, bandwidth);
    Symbol s = random_terms(rng, variables, bands);
    return make_positive(rng, std::move(s));
}

IndexSet random_additive_set(Rng& rng, std::size_t d, int radius, std::size_t max_size) {
    std::uniform_int_distribution<int> coord(-radius, radius);
    const std::size_t target = uniform_index(rng, 1, max_size);
    std::set<MultiIndex> points;
    std::size_t attempts = 0;
    while (points.size() < target && attempts++ < 64 * target) {
        std::vector<int> p(d);
        for (auto& c : p) c = coord(rng);
        points.insert(MultiIndex(p));
    }
    return IndexSet::additive({points.begin(), points.end()});
}

IndexSet random_multiplicative_set(Rng& rng, std::uint64_t bound, std::size_t max_size) {
    std::uniform_int_distribution<std::uint64_t> label(1, bound);
    const std::size_t target = std::min<std::size_t>(uniform_index(rng, 1, max_size), bound);
    std::set<std::uint64_t> points;
    while (points.size() < target) points.insert(label(rng));
    return IndexSet::multiplicative({points.begin(), points.end()});
}

DilationVector random_dilation_vector(Rng& rng, Basis basis, std::uint64_t max_n, std::size_t max_terms) {
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_int_distribution<std::uint64_t> index(1, max_n);
    const std::size_t terms = std::min<std::size_t>(uniform_index(rng, 1, max_terms), max_n);
    DilationVector h;
    h.basis = basis;
    while (h.coeffs.size() < terms) {
        const std::uint64_t n = index(rng);
        if (!h.coeffs.count(n)) h.add(n, Complex(normal(rng), normal(rng)));
    }
    return h;
}

}  // namespace szego
