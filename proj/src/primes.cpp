#include "szego/primes.hpp"

#include <algorithm>
#include <limits>
#include <string>

#include "szego/error.hpp"

namespace szego {

PrimeTable::PrimeTable(std::uint64_t limit) : limit_(limit) {
    if (limit < 2) throw InvalidArgument("prime table limit must be at least 2");
    if (limit > std::numeric_limits<std::uint32_t>::max())
        throw CapacityError("prime table limit exceeds 32-bit sieve range", limit);
    spf_.assign(limit + 1, 0);
    for (std::uint64_t n = 2; n <= limit; ++n) {
        if (spf_[n] == 0) {
            spf_[n] = static_cast<std::uint32_t>(n);
            primes_.push_back(static_cast<std::uint32_t>(n));
        }
        for (std::uint32_t p : primes_) {
            const std::uint64_t m = n * p;
            if (p > spf_[n] || m > limit) break;
            spf_[m] = p;
        }
    }
}

std::uint64_t PrimeTable::prime(std::size_t index) const {
    require_primes(index + 1);
    return primes_[index];
}

std::size_t PrimeTable::index_of(std::uint64_t p) const {
    auto it = std::lower_bound(primes_.begin(), primes_.end(), p);
    if (it == primes_.end() || *it != p) {
        if (p > limit_) throw CapacityError("prime " + std::to_string(p) + " beyond table limit", p);
        throw InvalidArgument(std::to_string(p) + " is not prime");
    }
    return static_cast<std::size_t>(it - primes_.begin());
}

std::uint32_t PrimeTable::smallest_prime_factor(std::uint64_t n) const {
    require(n);
    if (n < 2) throw InvalidArgument("smallest prime factor needs n >= 2");
    return spf_[n];
}

void PrimeTable::require(std::uint64_t n) const {
    if (n > limit_) {
        throw CapacityError("value " + std::to_string(n) + " exceeds prime table limit " +
                                std::to_string(limit_) + "; rebuild with limit >= " + std::to_string(n),
                            n);
    }
}

void PrimeTable::require_primes(std::size_t k) const {
    if (k > primes_.size()) {
        throw CapacityError("need " + std::to_string(k) + " primes but table holds " +
                                std::to_string(primes_.size()),
                            k);
    }
}

MultiIndex factorize(std::uint64_t n, const PrimeTable& table) {
    if (n == 0) throw InvalidArgument("factorize needs a positive integer");
    table.require(n);
    std::vector<int> exps;
    while (n > 1) {
        const std::uint32_t p = table.smallest_prime_factor(n);
        const std::size_t idx = table.index_of(p);
        if (exps.size() <= idx) exps.resize(idx + 1, 0);
        while (n % p == 0) {
            n /= p;
            ++exps[idx];
        }
    }
    return MultiIndex(std::move(exps));
}

MultiIndex ratio_index(std::uint64_t j, std::uint64_t i, const PrimeTable& table) {
    return factorize(j, table) - factorize(i, table);
}

namespace {

std::uint64_t checked_power_product(std::uint64_t acc, std::uint64_t p, int e) {
    for (int t = 0; t < e; ++t) {
        if (acc > std::numeric_limits<std::uint64_t>::max() / p)
            throw CapacityError("rational label overflows 64 bits", std::numeric_limits<std::uint64_t>::max());
        acc *= p;
    }
    return acc;
}

}  // namespace

std::pair<std::uint64_t, std::uint64_t> to_rational(const MultiIndex& kappa, const PrimeTable& table) {
    table.require_primes(kappa.dimension());
    std::uint64_t num = 1, den = 1;
    for (std::size_t t = 0; t < kappa.dimension(); ++t) {
        const int e = kappa[t];
        if (e > 0) num = checked_power_product(num, table.prime(t), e);
        if (e < 0) den = checked_power_product(den, table.prime(t), -e);
    }
    return {num, den};
}

double coprime_density(std::size_t k, const PrimeTable& table) {
    table.require_primes(k);
    double d = 1.0;
    for (std::size_t j = 0; j < k; ++j) d *= 1.0 - 1.0 / static_cast<double>(table.prime(j));
    return d;
}

}  // namespace szego
