#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "szego/index_set.hpp"
#include "szego/multi_index.hpp"
#include "szego/primes.hpp"

namespace szego {

inline constexpr std::size_t kDefaultMaxDim = 4096;

/// E_k intersected with [1, bound]: integers coprime to the first k primes.
std::vector<std::uint64_t> coprime_residuals(std::size_t k, std::uint64_t bound, const PrimeTable& table);

/// Ascending p_1..p_k-smooth numbers <= n.
std::vector<std::uint64_t> smooth_numbers(std::size_t k, std::uint64_t n, const PrimeTable& table);

/// Y_N: exponent tuples (n_1..n_k) >= 0 with p_1^n_1 ... p_k^n_k <= N, lexicographic.
IndexSet smooth_set(std::size_t k, std::uint64_t n, const PrimeTable& table);

/// |{ n in Z_+^m : sum n_j x_j <= t }| next to the volume term t^m / (m! prod x_j).
struct LatticeCount {
    std::vector<double> weights;
    double bound = 0.0;
    std::uint64_t count = 0;
    double main_term = 0.0;

    /// Q_m(t) = 1 + t + ... + t^(m-1)
    double q_polynomial() const;
    /// |count - main_term| / Q_m(t), the smallest constant M this instance admits
    double fitted_constant() const;
};

inline constexpr std::uint64_t kDefaultLatticeCap = 100'000'000;

/// Exact count by nested enumeration. Sums within a relative 1e-12 of t count
/// as on the boundary, so logarithms of smooth numbers equal to N are included.
LatticeCount lattice_count(std::span<const double> weights, double t, std::uint64_t cap = kDefaultLatticeCap);

/// {0, ..., L-1}^d in lexicographic order.
IndexSet folner_box(std::size_t d, std::size_t side, std::size_t max_dim = kDefaultMaxDim);

/// |(shift + sigma) ∩ sigma| / |sigma| for an additive set.
double overlap_ratio(const IndexSet& sigma, const MultiIndex& shift);

/// Closed form of overlap_ratio for folner_box: prod max(0, 1 - |shift_i| / L).
double box_overlap_ratio(const MultiIndex& shift, std::size_t side);

/// {p_1^a_1 ... p_k^a_k : 0 <= a_i <= M}, ascending.
IndexSet multiplicative_folner(std::size_t k, std::size_t max_exponent, const PrimeTable& table,
                               std::size_t max_dim = kDefaultMaxDim);

/// |(q sigma) ∩ sigma| / |sigma| for a multiplicative set.
double multiplicative_overlap_ratio(const IndexSet& sigma, std::uint64_t q);

/// Closed form for the exponent box: prod max(0, 1 - b_i / (M + 1)) where q = prod p_i^b_i.
double exponent_box_overlap_ratio(const MultiIndex& multiplier, std::size_t max_exponent);

}  // namespace szego
