#include "szego/decompose.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <string>

#include "szego/error.hpp"
#include "szego/grid.hpp"
#include "szego/indexing.hpp"
#include "szego/toeplitz.hpp"

namespace szego {

namespace {

bool coprime_to_first(std::uint64_t m, std::size_t k, const PrimeTable& table) {
    for (std::size_t j = 0; j < k; ++j)
        if (m % table.prime(j) == 0) return false;
    return true;
}

std::size_t count_at_most(const std::vector<std::uint64_t>& sorted, std::uint64_t bound) {
    return static_cast<std::size_t>(std::upper_bound(sorted.begin(), sorted.end(), bound) - sorted.begin());
}

// Exponent tuples over the first k primes of the given smooth numbers.
std::vector<MultiIndex> smooth_exponents(std::span<const std::uint64_t> smooth, std::size_t k,
                                         const PrimeTable& table) {
    std::vector<MultiIndex> out;
    out.reserve(smooth.size());
    for (std::uint64_t v : smooth) {
        std::vector<int> e(k, 0);
        for (std::size_t j = 0; j < k; ++j) {
            const std::uint64_t p = table.prime(j);
            while (v % p == 0) {
                v /= p;
                ++e[j];
            }
        }
        out.emplace_back(std::move(e));
    }
    return out;
}

// T_{Y} phi for the first `t` smooth numbers, labelled additively by their exponents.
HermitianMatrix smooth_block(const Symbol& s, const std::vector<MultiIndex>& exponents, std::size_t t) {
    std::vector<MultiIndex> labels(exponents.begin(), exponents.begin() + static_cast<std::ptrdiff_t>(t));
    return assemble_additive(s, IndexSet::additive(std::move(labels)), std::max<std::size_t>(t, kDefaultMaxDim));
}

void require_block_structure(const Symbol& s, std::size_t k) {
    if (k == 0) throw InvalidArgument("block decomposition needs k >= 1");
    if (s.variable_count() > k) {
        throw InvalidArgument("symbol depends on " + std::to_string(s.variable_count()) +
                              " variables; block decomposition with k=" + std::to_string(k) + " is invalid");
    }
}

// Block size -> number of classes F_{m,N} of that size.
std::map<std::size_t, std::size_t> block_multiplicities(std::uint64_t n, std::size_t k,
                                                        const std::vector<std::uint64_t>& smooth,
                                                        const PrimeTable& table) {
    std::map<std::size_t, std::size_t> mult;
    for (std::uint64_t m = 1; m <= n; ++m)
        if (coprime_to_first(m, k, table)) ++mult[count_at_most(smooth, n / m)];
    return mult;
}

}  // namespace

nlohmann::json BlockDecomposition::to_json() const {
    nlohmann::json cls = nlohmann::json::array();
    for (const auto& c : classes) cls.push_back({{"m", c.m}, {"members", c.members}, {"block_size", c.block_size}});
    nlohmann::json quotients = nlohmann::json::array();
    for (const auto& [q, count] : distinct_quotients) quotients.push_back({{"quotient", q}, {"multiplicity", count}});
    return {{"N", n}, {"k", k}, {"classes", cls}, {"distinct_quotients", quotients}};
}

BlockDecomposition partition_classes(std::uint64_t n, std::size_t k, const PrimeTable& table) {
    if (n == 0) throw InvalidArgument("partition_classes needs N >= 1");
    if (k == 0) throw InvalidArgument("partition_classes needs k >= 1");
    table.require_primes(k);
    const auto smooth = smooth_numbers(k, n, table);
    BlockDecomposition d;
    d.n = n;
    d.k = k;
    for (std::uint64_t m = 1; m <= n; ++m) {
        if (!coprime_to_first(m, k, table)) continue;
        const std::uint64_t q = n / m;
        BlockClass c;
        c.m = m;
        c.block_size = count_at_most(smooth, q);
        c.members.reserve(c.block_size);
        for (std::size_t t = 0; t < c.block_size; ++t) c.members.push_back(m * smooth[t]);
        d.classes.push_back(std::move(c));
        ++d.distinct_quotients[q];
    }
    return d;
}

bool verify_partition(const BlockDecomposition& d, const PrimeTable& table) {
    // smooth[v]: v has no prime factor beyond p_k, by trial division
    std::vector<std::uint32_t> smooth_upto(d.n + 1, 0);
    std::vector<char> smooth(d.n + 1, 0);
    for (std::uint64_t v = 1; v <= d.n; ++v) {
        std::uint64_t r = v;
        for (std::size_t j = 0; j < d.k; ++j)
            while (r % table.prime(j) == 0) r /= table.prime(j);
        smooth[v] = (r == 1);
        smooth_upto[v] = smooth_upto[v - 1] + (r == 1);
    }
    std::vector<char> seen(d.n + 1, 0);
    std::size_t covered = 0;
    for (const auto& c : d.classes) {
        if (c.m == 0 || c.m > d.n || !coprime_to_first(c.m, d.k, table)) return false;
        const std::size_t expected = smooth_upto[d.n / c.m];
        if (c.block_size != expected || c.members.size() != expected) return false;
        for (std::uint64_t x : c.members) {
            if (x == 0 || x > d.n || seen[x] || x % c.m != 0 || !smooth[x / c.m]) return false;
            seen[x] = 1;
            ++covered;
        }
    }
    return covered == d.n;
}

SpectralSummary block_spectrum(const Symbol& s, std::uint64_t n, std::size_t k, const PrimeTable& table) {
    require_block_structure(s, k);
    if (n == 0) throw InvalidArgument("block_spectrum needs N >= 1");
    table.require_primes(k);
    const auto smooth = smooth_numbers(k, n, table);
    const auto exponents = smooth_exponents(smooth, k, table);
    const auto mult = block_multiplicities(n, k, smooth, table);

    std::vector<double> all;
    all.reserve(n);
    long double logdet = 0.0L;
    bool positive = true;
    for (const auto& [t, count] : mult) {
        const HermitianMatrix block = smooth_block(s, exponents, t);
        const SpectralSummary spec = eigenvalues(block);
        for (std::size_t c = 0; c < count; ++c) all.insert(all.end(), spec.eigenvalues.begin(), spec.eigenvalues.end());
        const DetRoot root = geometric_mean_det(block);
        if (root.positive_definite)
            logdet += static_cast<long double>(count) * root.logdet;
        else
            positive = false;
    }
    std::sort(all.begin(), all.end());
    SpectralSummary out;
    out.eigenvalues = std::move(all);
    if (positive) out.logdet = static_cast<double>(logdet);
    return out;
}

double block_normalized_trace(const Symbol& s, std::uint64_t n, std::size_t k, const ScalarFn& f,
                              const PrimeTable& table) {
    require_block_structure(s, k);
    if (n == 0) throw InvalidArgument("block_normalized_trace needs N >= 1");
    table.require_primes(k);
    const auto smooth = smooth_numbers(k, n, table);
    const auto exponents = smooth_exponents(smooth, k, table);
    long double acc = 0.0L;
    for (const auto& [t, count] : block_multiplicities(n, k, smooth, table)) {
        const SpectralSummary spec = eigenvalues(smooth_block(s, exponents, t));
        long double block = 0.0L;
        for (double l : spec.eigenvalues) block += f(l);
        acc += static_cast<long double>(count) * block;
    }
    return static_cast<double>(acc / static_cast<long double>(n));
}

namespace {

// sup |f| over the symbol's value range, widened by the worst deviation
// between grid samples: |phi(theta) - phi(theta_r)| <= (pi / R) sum |c| |kappa|_1.
double sup_on_range(const Symbol& s, const ScalarFn& f) {
    const ValueRange range = value_range(s, 64);
    double slope = 0.0;
    for (const auto& [kappa, c] : s.coefficients()) {
        double l1 = 0.0;
        for (int e : kappa.exponents()) l1 += std::abs(e);
        slope += std::abs(c) * l1;
    }
    const double widen = slope * M_PI / static_cast<double>(range.resolution);
    double lo = range.min - widen;
    const double hi = range.max + widen;
    if (f.needs_positive() && !(lo > 0.0)) {
        if (!(range.min > 0.0)) throw DomainError("function needs a positive symbol");
        lo = range.min * 0.5;
    }
    double sup = 0.0;
    constexpr int kSamples = 4096;
    for (int i = 0; i <= kSamples; ++i) sup = std::max(sup, std::abs(f(lo + (hi - lo) * i / kSamples)));
    return sup;
}

}  // namespace

LimitMeasure limit_measure_moment(const Symbol& s, const ScalarFn& f, std::size_t k, std::uint64_t cutoff,
                                  const PrimeTable& table) {
    require_block_structure(s, k);
    if (cutoff == 0) throw InvalidArgument("limit_measure_moment needs cutoff >= 1");
    table.require_primes(k);

    LimitMeasure lm;
    lm.k = k;
    lm.cutoff = cutoff;
    lm.prefactor = coprime_density(k, table);
    lm.sup_norm = sup_on_range(s, f);

    const auto smooth = smooth_numbers(k, cutoff, table);
    const auto exponents = smooth_exponents(smooth, k, table);
    long double series = 0.0L;
    long double reciprocal_sum = 0.0L;
    for (std::size_t t = 1; t <= smooth.size(); ++t) {
        double a = 0.0;
        if (f.kind() == ScalarFn::Kind::one) {
            a = static_cast<double>(t);
        } else {
            const SpectralSummary spec = eigenvalues(smooth_block(s, exponents, t));
            long double acc = 0.0L;
            for (double l : spec.eigenvalues) acc += f(l);
            a = static_cast<double>(acc);
        }
        lm.terms.emplace_back(smooth[t - 1], a);
        const long double lo = static_cast<long double>(smooth[t - 1]);
        const long double hi = t < smooth.size() ? static_cast<long double>(smooth[t])
                                                 : static_cast<long double>(cutoff) + 1.0L;
        series += static_cast<long double>(a) * (1.0L / lo - 1.0L / hi);
        reciprocal_sum += 1.0L / lo;
    }
    lm.value = static_cast<double>(static_cast<long double>(lm.prefactor) * series);

    long double euler = 1.0L;
    for (std::size_t j = 0; j < k; ++j) euler /= 1.0L - 1.0L / static_cast<long double>(table.prime(j));
    const long double remaining = std::max(0.0L, euler - reciprocal_sum);
    const long double head = static_cast<long double>(smooth.size()) / (static_cast<long double>(cutoff) + 1.0L);
    lm.tail_bound = static_cast<double>(static_cast<long double>(lm.prefactor) * lm.sup_norm * (head + remaining));
    return lm;
}

double smooth_count_series(std::size_t k, std::uint64_t cutoff, const PrimeTable& table) {
    const auto smooth = smooth_numbers(k, cutoff, table);
    std::size_t count = 0;
    long double acc = 0.0L;
    for (std::uint64_t n = 1; n <= cutoff; ++n) {
        while (count < smooth.size() && smooth[count] <= n) ++count;
        const long double nn = static_cast<long double>(n);
        acc += static_cast<long double>(count) / (nn * (nn + 1.0L));
    }
    return static_cast<double>(acc);
}

double log2_floor_series(std::uint64_t cutoff) {
    long double acc = 0.0L;
    for (std::uint64_t n = 1; n <= cutoff; ++n) {
        const long double nn = static_cast<long double>(n);
        acc += static_cast<long double>(std::bit_width(n) - 1) / (nn * (nn + 1.0L));
    }
    return static_cast<double>(acc);
}

double cesaro_average(std::span<const double> a, std::size_t k, std::uint64_t n, const PrimeTable& table) {
    if (n == 0) throw InvalidArgument("cesaro_average needs N >= 1");
    if (a.size() <= n) throw InvalidArgument("sequence must be defined up to N");
    if (a[0] != 0.0) throw InvalidArgument("sequence must start with a_0 = 0");
    table.require_primes(k);
    long double acc = 0.0L;
    for (std::uint64_t m = 1; m <= n; ++m)
        if (coprime_to_first(m, k, table)) acc += a[n / m];
    return static_cast<double>(acc / static_cast<long double>(n));
}

double cesaro_limit(std::span<const double> a, std::size_t k, const PrimeTable& table) {
    if (a.empty() || a[0] != 0.0) throw InvalidArgument("sequence must start with a_0 = 0");
    long double acc = 0.0L;
    for (std::size_t n = 1; n < a.size(); ++n) {
        const long double nn = static_cast<long double>(n);
        acc += static_cast<long double>(a[n]) * (1.0L / nn - 1.0L / (nn + 1.0L));
    }
    return static_cast<double>(static_cast<long double>(coprime_density(k, table)) * acc);
}

double non_folner_detroot(const Symbol& s, std::uint64_t n, const PrimeTable& table) {
    certify_positive(s);
    const std::size_t k = std::max<std::size_t>(1, s.variable_count());
    const SpectralSummary spec = block_spectrum(s, n, k, table);
    if (!spec.logdet) return 0.0;
    return std::exp(*spec.logdet / static_cast<double>(n));
}

DetRootSequence non_folner_detroot_sequence(const Symbol& s, std::span<const std::uint64_t> sizes,
                                            const PrimeTable& table) {
    DetRootSequence seq;
    for (std::uint64_t n : sizes) {
        if (!seq.sizes.empty() && n <= seq.sizes.back()) throw InvalidArgument("sizes must be strictly increasing");
        seq.sizes.push_back(n);
        seq.values.push_back(non_folner_detroot(s, n, table));
        if (seq.values.size() > 1) seq.gaps.push_back(std::abs(seq.values.back() - seq.values[seq.values.size() - 2]));
    }
    return seq;
}

}  // namespace szego
