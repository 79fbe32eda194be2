#include <doctest.h>

#include <cmath>
#include <numeric>
#include <random>

#include "szego/error.hpp"
#include "szego/indexing.hpp"
#include "szego/primes.hpp"

using namespace szego;

namespace {

bool is_prime_naive(std::uint64_t n) {
    if (n < 2) return false;
    for (std::uint64_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

const PrimeTable& small_table() {
    static const PrimeTable t(100'000);
    return t;
}

}  // namespace

TEST_CASE("multi-index canonical form and arithmetic") {
    const MultiIndex a{2, 1, 0, 0};
    CHECK(a.dimension() == 2);
    CHECK(a == MultiIndex{2, 1});
    CHECK(a[5] == 0);
    CHECK((a - a).is_zero());
    CHECK((a - a).dimension() == 0);
    CHECK(-a == MultiIndex{-2, -1});
    CHECK(a.to_string() == "(2,1)");
    CHECK(MultiIndex{0, 1}.lex_positive());
    CHECK_FALSE(MultiIndex{0, -1}.lex_positive());
    CHECK(MultiIndex{1} < MultiIndex{1, 1});
    CHECK(MultiIndex::unit(2, 3) == MultiIndex{0, 0, 3});
}

TEST_CASE("sieve agrees with trial division") {
    const PrimeTable& t = small_table();
    for (std::uint64_t n = 2; n <= 100'000; ++n) {
        const auto p = t.smallest_prime_factor(n);
        REQUIRE(n % p == 0);
        REQUIRE(is_prime_naive(p));
    }
    std::vector<std::uint64_t> primes;
    for (std::uint64_t n = 2; n <= 100'000; ++n)
        if (is_prime_naive(n)) primes.push_back(n);
    REQUIRE(primes.size() == t.prime_count());
    for (std::size_t i = 0; i < primes.size(); ++i) REQUIRE(t.primes()[i] == primes[i]);
}

TEST_CASE("factorize examples") {
    const PrimeTable& t = small_table();
    CHECK(factorize(1, t).is_zero());
    CHECK(factorize(12, t) == MultiIndex{2, 1});
    std::size_t primes_upto_97 = 0;
    for (std::uint64_t n = 2; n <= 97; ++n) primes_upto_97 += is_prime_naive(n);
    const MultiIndex e = factorize(97, t);
    CHECK(e.dimension() == primes_upto_97);
    CHECK(e[primes_upto_97 - 1] == 1);
    for (std::size_t i = 0; i + 1 < primes_upto_97; ++i) CHECK(e[i] == 0);
}

TEST_CASE("factorize round-trip up to 1e5") {
    const PrimeTable& t = small_table();
    for (std::uint64_t n = 1; n <= 100'000; ++n) {
        const MultiIndex e = factorize(n, t);
        std::uint64_t back = 1;
        for (std::size_t i = 0; i < e.dimension(); ++i) {
            REQUIRE(e[i] >= 0);
            for (int r = 0; r < e[i]; ++r) back *= t.prime(i);
        }
        REQUIRE(back == n);
    }
}

TEST_CASE("factorize beyond the table is a capacity error naming the limit") {
    const PrimeTable t(1000);
    try {
        factorize(1001, t);
        FAIL("expected a capacity error");
    } catch (const CapacityError& e) {
        CHECK(e.required() == 1001);
        CHECK(std::string(e.what()).find("1001") != std::string::npos);
    }
}

TEST_CASE("ratio_index examples and group law") {
    const PrimeTable& t = small_table();
    CHECK(ratio_index(3, 2, t) == MultiIndex{-1, 1});
    CHECK(ratio_index(6, 6, t).is_zero());
    CHECK(ratio_index(8, 12, t) == MultiIndex{1, -1});

    std::mt19937_64 rng(7);
    std::uniform_int_distribution<std::uint64_t> d(1, 300);
    for (int trial = 0; trial < 2000; ++trial) {
        const std::uint64_t i = d(rng), j = d(rng), s = d(rng);
        // j/i = (j s)/(i s)
        REQUIRE(ratio_index(j, i, t) == ratio_index(j * s, i * s, t));
        const std::uint64_t g = std::gcd(i, j);
        REQUIRE(ratio_index(j, i, t) == ratio_index(j / g, i / g, t));
        REQUIRE(factorize(i * j, t) == factorize(i, t) + factorize(j, t));
    }
    const auto [num, den] = to_rational(MultiIndex{1, -1}, t);
    CHECK(num == 2);
    CHECK(den == 3);
}

TEST_CASE("coprime residuals") {
    const PrimeTable& t = small_table();
    CHECK(coprime_residuals(1, 10, t) == std::vector<std::uint64_t>{1, 3, 5, 7, 9});
    CHECK(coprime_residuals(2, 13, t) == std::vector<std::uint64_t>{1, 5, 7, 11, 13});
    CHECK(coprime_residuals(0, 3, t) == std::vector<std::uint64_t>{1, 2, 3});
}

TEST_CASE("coprime density within 1% at 1e6") {
    const PrimeTable t;
    for (std::size_t k = 1; k <= 4; ++k) {
        const double observed = double(coprime_residuals(k, 1'000'000, t).size()) / 1e6;
        CHECK(std::abs(observed / coprime_density(k, t) - 1.0) < 0.01);
    }
    CHECK(coprime_density(2, t) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
}

TEST_CASE("smooth sets") {
    const PrimeTable& t = small_table();
    const IndexSet y = smooth_set(2, 10, t);
    CHECK(y.size() == 7);
    const std::vector<std::uint64_t> three_smooth{1, 2, 3, 4, 6, 8, 9};
    CHECK(smooth_numbers(2, 10, t) == three_smooth);
    const IndexSet y1 = smooth_set(1, 10, t);
    REQUIRE(y1.size() == 4);
    for (int a = 0; a < 4; ++a) CHECK(y1.points()[std::size_t(a)] == MultiIndex{a});
    CHECK(y1.size() == std::size_t(std::floor(std::log2(10.0))) + 1);
    const IndexSet one = smooth_set(1, 1, t);
    REQUIRE(one.size() == 1);
    CHECK(one.points()[0].is_zero());
    for (std::size_t i = 1; i < y.size(); ++i) CHECK(y.points()[i - 1] < y.points()[i]);
}

TEST_CASE("lattice count examples") {
    const double one[] = {1.0};
    CHECK(lattice_count(one, 2.5).count == 3);
    const double w[] = {std::log(2.0), std::log(3.0)};
    CHECK(lattice_count(w, std::log(10.0)).count == 7);
    const LatticeCount big = lattice_count(w, std::log(1e6));
    const double closed = std::pow(6.0 * std::log(10.0), 2) / (2.0 * std::log(2.0) * std::log(3.0));
    CHECK(big.main_term == doctest::Approx(closed).epsilon(1e-12));
    CHECK(big.main_term == doctest::Approx(125.3).epsilon(1e-3));
    const double ratio = double(big.count) / big.main_term;
    CHECK(ratio >= 0.8);
    CHECK(ratio <= 1.25);
    CHECK(big.q_polynomial() == doctest::Approx(1.0 + std::log(1e6)));
}

TEST_CASE("lattice count equals smooth-set size") {
    CHECK_THROWS_AS(lattice_count(std::vector<double>{1.0}, 0.0), InvalidArgument);
    const PrimeTable& t = small_table();
    for (std::size_t k = 1; k <= 4; ++k) {
        std::vector<double> w;
        for (std::size_t j = 0; j < k; ++j) w.push_back(std::log(double(t.prime(j))));
        for (std::uint64_t n : {2ull, 10ull, 97ull, 1000ull, 65536ull, 99'999ull}) {
            CAPTURE(k);
            CAPTURE(n);
            CHECK(lattice_count(w, std::log(double(n))).count == smooth_set(k, n, t).size());
        }
    }
}

TEST_CASE("lattice count respects its cap") {
    const double w[] = {0.001, 0.001};
    CHECK_THROWS_AS(lattice_count(w, 100.0, 1000), CapacityError);
}

TEST_CASE("smooth-number ratio at 1e6") {
    const PrimeTable t;
    auto ratio = [&](std::size_t k) {
        double scale = std::tgamma(double(k) + 1.0);
        for (std::size_t j = 0; j < k; ++j) scale *= std::log(double(t.prime(j)));
        return double(smooth_numbers(k, 1'000'000, t).size()) * scale / std::pow(std::log(1e6), double(k));
    };
    CHECK(std::abs(ratio(1) - 1.0) < 0.25);
    CHECK(std::abs(ratio(2) - 1.0) < 0.25);
    // three primes: lower-order terms still dominate at this N
    CHECK(smooth_numbers(3, 1'000'000, t).size() == 507);
    CHECK(ratio(3) == doctest::Approx(1.4138).epsilon(1e-4));
}

TEST_CASE("folner boxes") {
    const IndexSet box = folner_box(1, 10);
    CHECK(box.size() == 10);
    CHECK(overlap_ratio(box, MultiIndex{1}) == doctest::Approx(0.9));
    CHECK(overlap_ratio(box, MultiIndex{10}) == 0.0);
    CHECK(folner_box(2, 4).size() == 16);
    CHECK_THROWS_AS(folner_box(3, 20, 4096), CapacityError);

    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-6, 6);
    const IndexSet cube = folner_box(3, 5);
    for (int trial = 0; trial < 50; ++trial) {
        const MultiIndex shift{d(rng), d(rng), d(rng)};
        CHECK(overlap_ratio(cube, shift) == doctest::Approx(box_overlap_ratio(shift, 5)));
    }
}

TEST_CASE("multiplicative folner family") {
    const PrimeTable& t = small_table();
    const IndexSet line = multiplicative_folner(1, 3, t);
    CHECK(std::vector<std::uint64_t>(line.integers().begin(), line.integers().end()) == std::vector<std::uint64_t>{1, 2, 4, 8});
    const IndexSet s = multiplicative_folner(2, 1, t);
    CHECK(std::vector<std::uint64_t>(s.integers().begin(), s.integers().end()) == std::vector<std::uint64_t>{1, 2, 3, 6});
    CHECK(multiplicative_overlap_ratio(multiplicative_folner(1, 9, t), 2) == doctest::Approx(0.9));
    const IndexSet box = multiplicative_folner(2, 6, t);
    for (std::uint64_t q : {2ull, 3ull, 6ull, 12ull, 18ull, 72ull}) {
        CHECK(multiplicative_overlap_ratio(box, q) == doctest::Approx(exponent_box_overlap_ratio(factorize(q, t), 6)));
    }
}
