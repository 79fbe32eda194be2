#pragma once

#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include <json.hpp>

#include "szego/primes.hpp"
#include "szego/scalar_fn.hpp"
#include "szego/spectral.hpp"
#include "szego/symbol.hpp"

namespace szego {

/// {1..N} split into classes F_{m,N} = m * (p_1..p_k-smooth) ∩ [1, N], m in E_k.
struct BlockClass {
    std::uint64_t m = 1;
    std::vector<std::uint64_t> members;  // ascending
    std::size_t block_size = 0;          // |Y_[N/m]|
};

struct BlockDecomposition {
    std::uint64_t n = 0;
    std::size_t k = 0;
    std::vector<BlockClass> classes;                    // ascending m
    std::map<std::uint64_t, std::size_t> distinct_quotients;  // floor(N/m) -> multiplicity

    nlohmann::json to_json() const;
};

BlockDecomposition partition_classes(std::uint64_t n, std::size_t k, const PrimeTable& table);

/// Structural check: classes are disjoint, cover {1..N}, members are m times
/// a smooth number and block sizes equal |Y_[N/m]|.
bool verify_partition(const BlockDecomposition& d, const PrimeTable& table);

/// Spectrum of the truncation of phi to {1..N}, assembled from one block per
/// distinct block size and repeated with multiplicity. Rejects symbols in
/// more than k variables. logdet, when present, is the sum of block
/// Cholesky log-determinants.
SpectralSummary block_spectrum(const Symbol& s, std::uint64_t n, std::size_t k, const PrimeTable& table);

/// (1/N) Tr f(T_N phi) through the blocks, without forming the full spectrum list.
double block_normalized_trace(const Symbol& s, std::uint64_t n, std::size_t k, const ScalarFn& f,
                              const PrimeTable& table);

struct LimitMeasure {
    std::size_t k = 0;
    std::uint64_t cutoff = 0;
    double prefactor = 0.0;  // prod (1 - 1/p_j)
    double value = 0.0;      // prefactor * sum_{n <= cutoff} Tr f(T_{Y_n} phi) / (n (n+1))
    double tail_bound = 0.0; // rigorous bound on the omitted tail
    double sup_norm = 0.0;   // sup |f| on the symbol's value range
    /// (n, Tr f(T_{Y_n} phi)) at each n where Y_n grows
    std::vector<std::pair<std::uint64_t, double>> terms;
};

/// Moment of the limit spectral measure of T_N phi.
/// Tr f(T_{Y_n} phi) is constant between consecutive smooth numbers s_t <= n < s_{t+1},
/// so each run contributes a_t (1/s_t - 1/s_{t+1}) exactly. The tail is bounded by
/// prefactor * sup|f| * (|Y_C|/(C+1) + sum_{smooth s > C} 1/s), the last sum
/// being the Euler product prod (1 - 1/p_j)^{-1} minus the enumerated part.
LimitMeasure limit_measure_moment(const Symbol& s, const ScalarFn& f, std::size_t k, std::uint64_t cutoff,
                                  const PrimeTable& table);

/// sum_{n <= cutoff} |Y_n| / (n (n+1)) by direct summation over n.
double smooth_count_series(std::size_t k, std::uint64_t cutoff, const PrimeTable& table);
/// sum_{n <= cutoff} floor(log2 n) / (n (n+1)) by direct summation over n.
double log2_floor_series(std::uint64_t cutoff);

/// (1/N) sum_{m in E_k, m <= N} a[floor(N/m)]; needs a[0] = 0 and a.size() > N.
double cesaro_average(std::span<const double> a, std::size_t k, std::uint64_t n, const PrimeTable& table);
/// prefactor * sum_{n=1}^{a.size()-1} a[n] (1/n - 1/(n+1)), the integral of the step
/// function x -> a[floor(1/x)] over [1/(a.size()), 1].
double cesaro_limit(std::span<const double> a, std::size_t k, const PrimeTable& table);

struct DetRootSequence {
    std::vector<std::uint64_t> sizes;
    std::vector<double> values;  // (det T_N phi)^(1/N)
    std::vector<double> gaps;    // |v(2N) - v(N)| when sizes double, else |v_{i+1} - v_i|
};

/// (det T_N phi)^(1/N) via block log-determinants. phi must be certified positive.
double non_folner_detroot(const Symbol& s, std::uint64_t n, const PrimeTable& table);
DetRootSequence non_folner_detroot_sequence(const Symbol& s, std::span<const std::uint64_t> sizes,
                                            const PrimeTable& table);

}  // namespace szego
