#pragma once

#include <cstdint>
#include <random>

#include "szego/gram.hpp"
#include "szego/index_set.hpp"
#include "szego/symbol.hpp"

namespace szego {

using Rng = std::mt19937_64;

struct SymbolShape {
    std::size_t max_variables = 2;
    int max_bandwidth = 3;
};

/// Random trigonometric polynomial (every mode in the bandwidth box, Gaussian
/// coefficients damped by 1/(1+|kappa|_1)) lifted to be positive: the constant term is
/// set to minus the minimum on a 64x oversampled grid plus a margin in [0.1, 1].
Symbol random_positive_symbol(Rng& rng, const SymbolShape& shape = {});

/// Same, in exactly `variables` variables with per-axis bandwidth exactly `bandwidth`.
Symbol random_positive_symbol(Rng& rng, std::size_t variables, int bandwidth);

/// Random real trigonometric polynomial with no positivity adjustment.
Symbol random_symbol(Rng& rng, const SymbolShape& shape = {});

/// Up to `max_size` distinct points of the box [-radius, radius]^d.
IndexSet random_additive_set(Rng& rng, std::size_t d, int radius = 4, std::size_t max_size = 24);

/// Up to `max_size` distinct integers in [1, bound].
IndexSet random_multiplicative_set(Rng& rng, std::uint64_t bound = 200, std::size_t max_size = 24);

/// Support of 1..max_terms integers in [1, max_n], complex normal coefficients.
DilationVector random_dilation_vector(Rng& rng, Basis basis, std::uint64_t max_n = 8, std::size_t max_terms = 4);

}  // namespace szego
