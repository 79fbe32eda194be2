#pragma once

#include <cstdint>
#include <span>
#include <utility>
#include <vector>

#include "szego/multi_index.hpp"

namespace szego {

/// Smallest-prime-factor table built by a linear sieve.
///
/// Every multiplicative operation takes the table explicitly; it is immutable
/// after construction and safe to share between threads.
class PrimeTable {
public:
    static constexpr std::uint64_t kDefaultLimit = 2'000'000;

    explicit PrimeTable(std::uint64_t limit = kDefaultLimit);

    std::uint64_t limit() const noexcept { return limit_; }
    std::span<const std::uint32_t> primes() const noexcept { return primes_; }
    std::size_t prime_count() const noexcept { return primes_.size(); }

    /// p_{i+1}; index 0 is the prime 2
    std::uint64_t prime(std::size_t index) const;
    /// 0-based position of the prime p in the ordered prime sequence
    std::size_t index_of(std::uint64_t p) const;
    std::uint32_t smallest_prime_factor(std::uint64_t n) const;

    /// Throws CapacityError naming the limit needed for n.
    void require(std::uint64_t n) const;
    /// Throws CapacityError unless the first k primes are available.
    void require_primes(std::size_t k) const;

private:
    std::uint64_t limit_;
    std::vector<std::uint32_t> spf_;
    std::vector<std::uint32_t> primes_;
};

/// Prime exponent vector of n (the isomorphism alpha restricted to N).
MultiIndex factorize(std::uint64_t n, const PrimeTable& table);

/// alpha(j / i) = alpha(j) - alpha(i).
MultiIndex ratio_index(std::uint64_t j, std::uint64_t i, const PrimeTable& table);

/// Inverse of alpha: the reduced fraction (numerator, denominator) labelled by
/// `kappa`. Throws CapacityError if either part overflows 64 bits.
std::pair<std::uint64_t, std::uint64_t> to_rational(const MultiIndex& kappa, const PrimeTable& table);

/// Density of E_k: prod_{j<=k} (1 - 1/p_j).
double coprime_density(std::size_t k, const PrimeTable& table);

}  // namespace szego
