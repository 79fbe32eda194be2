#include "szego/indexing.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>
#include <unordered_set>

#include "szego/error.hpp"

namespace szego {

std::vector<std::uint64_t> coprime_residuals(std::size_t k, std::uint64_t bound, const PrimeTable& table) {
    table.require_primes(k);
    std::vector<std::uint64_t> out;
    for (std::uint64_t m = 1; m <= bound; ++m) {
        bool ok = true;
        for (std::size_t j = 0; j < k && ok; ++j) ok = (m % table.prime(j)) != 0;
        if (ok) out.push_back(m);
    }
    return out;
}

std::vector<std::uint64_t> smooth_numbers(std::size_t k, std::uint64_t n, const PrimeTable& table) {
    table.require_primes(k);
    std::vector<std::uint64_t> out;
    if (n == 0) return out;
    out.push_back(1);
    for (std::size_t j = 0; j < k; ++j) {
        const std::uint64_t p = table.prime(j);
        const std::size_t base = out.size();
        for (std::size_t b = 0; b < base; ++b) {
            std::uint64_t v = out[b];
            while (v <= n / p) {
                v *= p;
                out.push_back(v);
            }
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

namespace {

void smooth_tuples(std::size_t axis, std::size_t k, std::uint64_t remaining, const PrimeTable& table,
                   std::vector<int>& current, std::vector<MultiIndex>& out) {
    if (axis == k) {
        out.emplace_back(current);
        return;
    }
    const std::uint64_t p = table.prime(axis);
    std::uint64_t budget = remaining;
    for (int e = 0;; ++e) {
        current[axis] = e;
        smooth_tuples(axis + 1, k, budget, table, current, out);
        if (budget < p) break;
        budget /= p;
    }
    current[axis] = 0;
}

}  // namespace

IndexSet smooth_set(std::size_t k, std::uint64_t n, const PrimeTable& table) {
    if (k == 0) throw InvalidArgument("smooth_set needs k >= 1");
    if (n == 0) throw InvalidArgument("smooth_set needs N >= 1");
    table.require_primes(k);
    std::vector<int> current(k, 0);
    std::vector<MultiIndex> out;
    // floor(floor(N / a) / b) = floor(N / (a b)), so dividing the budget is exact.
    smooth_tuples(0, k, n, table, current, out);
    return IndexSet::additive(std::move(out));
}

double LatticeCount::q_polynomial() const {
    double q = 0.0, term = 1.0;
    for (std::size_t j = 0; j < weights.size(); ++j) {
        q += term;
        term *= bound;
    }
    return q;
}

double LatticeCount::fitted_constant() const {
    return std::abs(static_cast<double>(count) - main_term) / q_polynomial();
}

namespace {

constexpr double kBoundarySlack = 1e-12;

struct LatticeEnumerator {
    std::span<const double> x;
    double slack;
    std::uint64_t cap;
    std::uint64_t count = 0;

    // Counts points of the first `m` coordinates with sum n_j x_j <= t.
    void run(std::size_t m, double t) {
        if (t < -slack) return;
        const double last = x[m - 1];
        const auto top = static_cast<std::uint64_t>(std::floor((std::max(t, 0.0) + slack) / last));
        if (m == 1) {
            count += top + 1;
            if (count > cap)
                throw CapacityError("lattice count exceeds cap " + std::to_string(cap), count);
            return;
        }
        for (std::uint64_t r = 0; r <= top; ++r) run(m - 1, t - static_cast<double>(r) * last);
    }
};

}  // namespace

LatticeCount lattice_count(std::span<const double> weights, double t, std::uint64_t cap) {
    if (weights.empty()) throw InvalidArgument("lattice_count needs at least one weight");
    if (!(t > 0.0)) throw InvalidArgument("lattice_count needs t > 0");
    for (double w : weights)
        if (!(w > 0.0)) throw InvalidArgument("lattice_count weights must be positive");

    LatticeEnumerator e{weights, kBoundarySlack * t, cap};
    e.run(weights.size(), t);

    LatticeCount out;
    out.weights.assign(weights.begin(), weights.end());
    out.bound = t;
    out.count = e.count;
    double denom = 1.0;
    for (std::size_t j = 0; j < weights.size(); ++j) denom *= static_cast<double>(j + 1) * weights[j];
    out.main_term = std::pow(t, static_cast<double>(weights.size())) / denom;
    return out;
}

IndexSet folner_box(std::size_t d, std::size_t side, std::size_t max_dim) {
    if (d == 0 || side == 0) throw InvalidArgument("folner_box needs d >= 1 and L >= 1");
    std::size_t total = 1;
    for (std::size_t i = 0; i < d; ++i) {
        if (total > max_dim / side)
            throw CapacityError("box {0..L-1}^d exceeds dimension cap " + std::to_string(max_dim),
                                static_cast<std::uint64_t>(std::pow(double(side), double(d))));
        total *= side;
    }
    std::vector<MultiIndex> labels;
    labels.reserve(total);
    std::vector<int> digits(d, 0);
    for (std::size_t n = 0; n < total; ++n) {
        labels.emplace_back(digits);
        for (std::size_t axis = d; axis-- > 0;) {
            if (++digits[axis] < static_cast<int>(side)) break;
            digits[axis] = 0;
        }
    }
    return IndexSet::additive(std::move(labels));
}

double overlap_ratio(const IndexSet& sigma, const MultiIndex& shift) {
    if (!sigma.is_additive()) throw InvalidArgument("overlap_ratio needs an additive index set");
    if (sigma.empty()) return 0.0;
    std::unordered_set<MultiIndex, MultiIndexHash> members(sigma.points().begin(), sigma.points().end());
    std::size_t hits = 0;
    for (const auto& xi : sigma.points()) hits += members.count(xi + shift);
    return static_cast<double>(hits) / static_cast<double>(sigma.size());
}

double box_overlap_ratio(const MultiIndex& shift, std::size_t side) {
    double r = 1.0;
    for (int s : shift.exponents())
        r *= std::max(0.0, 1.0 - std::abs(static_cast<double>(s)) / static_cast<double>(side));
    return r;
}

IndexSet multiplicative_folner(std::size_t k, std::size_t max_exponent, const PrimeTable& table,
                               std::size_t max_dim) {
    if (k == 0) throw InvalidArgument("multiplicative_folner needs k >= 1");
    table.require_primes(k);
    std::size_t total = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (total > max_dim / (max_exponent + 1))
            throw CapacityError("exponent box exceeds dimension cap " + std::to_string(max_dim), total);
        total *= max_exponent + 1;
    }
    std::vector<std::uint64_t> labels{1};
    for (std::size_t j = 0; j < k; ++j) {
        const std::uint64_t p = table.prime(j);
        const std::size_t base = labels.size();
        for (std::size_t b = 0; b < base; ++b) {
            std::uint64_t v = labels[b];
            for (std::size_t e = 1; e <= max_exponent; ++e) {
                if (v > std::numeric_limits<std::uint64_t>::max() / p)
                    throw CapacityError("exponent box element overflows 64 bits", v);
                v *= p;
                labels.push_back(v);
            }
        }
    }
    const std::uint64_t largest = *std::max_element(labels.begin(), labels.end());
    table.require(largest);
    return IndexSet::multiplicative(std::move(labels));
}

double multiplicative_overlap_ratio(const IndexSet& sigma, std::uint64_t q) {
    if (sigma.is_additive()) throw InvalidArgument("multiplicative_overlap_ratio needs a multiplicative set");
    if (q == 0) throw InvalidArgument("multiplier must be positive");
    if (sigma.empty()) return 0.0;
    const auto labels = sigma.integers();
    std::size_t hits = 0;
    for (std::uint64_t x : labels) {
        if (x > std::numeric_limits<std::uint64_t>::max() / q) continue;
        hits += std::binary_search(labels.begin(), labels.end(), x * q) ? 1 : 0;
    }
    return static_cast<double>(hits) / static_cast<double>(labels.size());
}

double exponent_box_overlap_ratio(const MultiIndex& multiplier, std::size_t max_exponent) {
    double r = 1.0;
    const double width = static_cast<double>(max_exponent + 1);
    for (int b : multiplier.exponents()) r *= std::max(0.0, 1.0 - std::abs(static_cast<double>(b)) / width);
    return r;
}

}  // namespace szego
