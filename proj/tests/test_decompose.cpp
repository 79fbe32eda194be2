#include <doctest.h>

#include <chrono>
#include <cmath>

#include "szego/decompose.hpp"
#include "szego/error.hpp"
#include "szego/indexing.hpp"
#include "szego/random.hpp"

using namespace szego;

namespace {

Symbol two_plus_cos() { return Symbol::constant(2.0).add_term(MultiIndex{1}, 0.5); }

const PrimeTable& table() {
    static const PrimeTable t;
    return t;
}

std::vector<std::uint64_t> members_of(const BlockDecomposition& d, std::uint64_t m) {
    for (const auto& c : d.classes)
        if (c.m == m) return c.members;
    return {};
}

std::vector<double> direct_spectrum(const Symbol& s, std::uint64_t n) {
    return eigenvalues(assemble_multiplicative(s, IndexSet::natural(n), table())).eigenvalues;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

TEST_CASE("partition examples") {
    const BlockDecomposition d = partition_classes(10, 1, table());
    CHECK(d.classes.size() == 5);
    CHECK(members_of(d, 1) == std::vector<std::uint64_t>{1, 2, 4, 8});
    CHECK(members_of(d, 3) == std::vector<std::uint64_t>{3, 6});
    CHECK(members_of(d, 5) == std::vector<std::uint64_t>{5, 10});
    CHECK(members_of(d, 7) == std::vector<std::uint64_t>{7});
    CHECK(members_of(d, 9) == std::vector<std::uint64_t>{9});
    std::vector<std::size_t> sizes;
    for (const auto& c : d.classes) sizes.push_back(c.block_size);
    CHECK(sizes == std::vector<std::size_t>{4, 2, 2, 1, 1});
    CHECK(d.distinct_quotients == std::map<std::uint64_t, std::size_t>{{10, 1}, {3, 1}, {2, 1}, {1, 2}});

    const BlockDecomposition two = partition_classes(10, 2, table());
    CHECK(two.classes.size() == 3);
    CHECK(members_of(two, 1) == std::vector<std::uint64_t>{1, 2, 3, 4, 6, 8, 9});
    CHECK(members_of(two, 5) == std::vector<std::uint64_t>{5, 10});
    CHECK(members_of(two, 7) == std::vector<std::uint64_t>{7});

    for (std::size_t k : {1u, 2u, 5u}) {
        const BlockDecomposition one = partition_classes(1, k, table());
        REQUIRE(one.classes.size() == 1);
        CHECK(one.classes[0].members == std::vector<std::uint64_t>{1});
    }
    CHECK_THROWS_AS(partition_classes(0, 1, table()), InvalidArgument);
}

TEST_CASE("partitions verify up to 1e4") {
    for (std::size_t k = 1; k <= 3; ++k)
        for (std::uint64_t n : {1ull, 2ull, 17ull, 360ull, 1024ull, 4999ull, 10'000ull}) {
            CAPTURE(k);
            CAPTURE(n);
            const BlockDecomposition d = partition_classes(n, k, table());
            CHECK(verify_partition(d, table()));
            std::size_t total = 0;
            for (const auto& c : d.classes) {
                total += c.members.size();
                CHECK(c.block_size == smooth_numbers(k, n / c.m, table()).size());
            }
            CHECK(total == n);
        }
}

TEST_CASE("corrupted partitions are detected") {
    const BlockDecomposition good = partition_classes(60, 2, table());
    REQUIRE(verify_partition(good, table()));

    BlockDecomposition dropped = good;
    dropped.classes.back().members.pop_back();
    CHECK_FALSE(verify_partition(dropped, table()));

    BlockDecomposition duplicated = good;
    duplicated.classes[1].members.push_back(duplicated.classes[0].members.back());
    CHECK_FALSE(verify_partition(duplicated, table()));

    BlockDecomposition wrong_size = good;
    wrong_size.classes[0].block_size += 1;
    CHECK_FALSE(verify_partition(wrong_size, table()));

    BlockDecomposition wrong_member = good;
    wrong_member.classes[1].members[0] += 1;
    CHECK_FALSE(verify_partition(wrong_member, table()));
}

TEST_CASE("block spectrum matches the direct route") {
    const SpectralSummary c = block_spectrum(Symbol::constant(1.75), 100, 1, table());
    CHECK(c.dimension() == 100);
    for (double v : c.eigenvalues) CHECK(v == doctest::Approx(1.75).epsilon(1e-14));

    const SpectralSummary b = block_spectrum(two_plus_cos(), 10, 1, table());
    const std::vector<double> d = direct_spectrum(two_plus_cos(), 10);
    REQUIRE(b.dimension() == 10);
    for (std::size_t i = 0; i < 10; ++i) CHECK(std::abs(b.eigenvalues[i] - d[i]) < 1e-12);

    Rng rng(41);
    for (int trial = 0; trial < 10; ++trial) {
        const std::size_t k = 1 + std::size_t(trial % 2);
        const Symbol s = random_positive_symbol(rng, {k, 2});
        for (std::uint64_t n : {37ull, 512ull}) {
            const SpectralSummary bs = block_spectrum(s, n, k, table());
            const std::vector<double> ds = direct_spectrum(s, n);
            double dev = 0.0;
            for (std::size_t i = 0; i < ds.size(); ++i) dev = std::max(dev, std::abs(bs.eigenvalues[i] - ds[i]));
            CAPTURE(trial);
            CHECK(dev < 1e-9);
            CHECK(block_normalized_trace(s, n, k, ScalarFn::power(2), table()) ==
                  doctest::Approx(bs.moment(2)).epsilon(1e-10));
        }
    }
    const Symbol two_var = Symbol::constant(3.0).add_term(MultiIndex{0, 1}, 0.5);
    CHECK_THROWS_AS(block_spectrum(two_var, 20, 1, table()), InvalidArgument);
}

TEST_CASE("mass identity") {
    const LimitMeasure one = limit_measure_moment(Symbol::constant(1.0), ScalarFn::one(), 1, 1'000'000, table());
    CHECK(std::abs(one.value - 1.0) < 5e-5);
    CHECK(std::abs(one.value - 1.0) <= one.tail_bound * (1 + 1e-9));
    CHECK(std::abs(log2_floor_series(1'000'000) - 1.0) < 5e-5);
    // |Y_n| = floor(log2 n) + 1 for k = 1
    CHECK(log2_floor_series(1'000'000) + 1.0 - 1.0 / 1'000'001 ==
          doctest::Approx(smooth_count_series(1, 1'000'000, table())).epsilon(1e-13));

    const LimitMeasure two = limit_measure_moment(two_plus_cos(), ScalarFn::one(), 2, 100'000, table());
    CHECK(std::abs(two.value - 1.0) <= two.tail_bound * (1 + 1e-9));
    CHECK(std::abs(smooth_count_series(2, 1'000'000, table()) - 3.0) < 2e-4);
}

TEST_CASE("Cesaro averages") {
    std::vector<double> ones(1001, 1.0);
    ones[0] = 0.0;
    CHECK(cesaro_average(ones, 1, 1000, table()) == 0.5);
    std::vector<double> long_ones(2'000'001, 1.0);
    long_ones[0] = 0.0;
    CHECK(cesaro_limit(long_ones, 1, table()) == doctest::Approx(0.5).epsilon(1e-6));
    CHECK_THROWS_AS(cesaro_limit(std::vector<double>(10, 1.0), 1, table()), InvalidArgument);
    CHECK(cesaro_limit(long_ones, 2, table()) == doctest::Approx(1.0 / 3).epsilon(1e-5));
    CHECK(cesaro_average(ones, 2, 999, table()) == doctest::Approx(333.0 / 999).epsilon(1e-12));
}

TEST_CASE("Cesaro route and block traces agree") {
    const Symbol s = two_plus_cos();
    const std::uint64_t n = 2048;
    std::vector<double> a(n + 1, 0.0);
    for (std::uint64_t q = 1; q <= n; ++q) {
        const IndexSet y = IndexSet::multiplicative(smooth_numbers(1, q, table()));
        a[q] = double(y.size()) * trace_f(assemble_multiplicative(s, y, table()), ScalarFn::power(2));
    }
    const double via_average = cesaro_average(a, 1, n, table());
    CHECK(via_average == doctest::Approx(block_normalized_trace(s, n, 1, ScalarFn::power(2), table())).epsilon(1e-12));
}

TEST_CASE("limit measure moments against finite N") {
    Rng rng(42);
    for (int trial = 0; trial < 3; ++trial) {
        const Symbol s = random_positive_symbol(rng, 1, 2);
        for (int m = 1; m <= 3; ++m) {
            const LimitMeasure lm = limit_measure_moment(s, ScalarFn::power(m), 1, 10'000, table());
            const double finite = block_normalized_trace(s, 2048, 1, ScalarFn::power(m), table());
            CAPTURE(trial);
            CAPTURE(m);
            CHECK(std::abs(finite - lm.value) <= lm.tail_bound + 1e-2);
        }
    }
}

TEST_CASE("determinant roots off Folner sequences") {
    CHECK(non_folner_detroot(Symbol::constant(2.5), 300, table()) == doctest::Approx(2.5).epsilon(1e-14));
    const double direct = assemble_multiplicative(two_plus_cos(), IndexSet::natural(4), table()).data().determinant().real();
    CHECK(direct == doctest::Approx(14.0).epsilon(1e-13));
    CHECK(non_folner_detroot(two_plus_cos(), 4, table()) == doctest::Approx(std::pow(14.0, 0.25)).epsilon(1e-13));

    const std::uint64_t sizes[] = {128, 256, 512, 1024};
    const DetRootSequence seq = non_folner_detroot_sequence(two_plus_cos(), sizes, table());
    CHECK(seq.gaps.size() == 3);
    for (double g : seq.gaps) CHECK(g < 1e-10);

    CHECK_THROWS_AS(non_folner_detroot(Symbol::constant(1.0).add_term(MultiIndex{1}, 0.6), 10, table()), DomainError);
}

TEST_CASE("block route is faster at N = 2048") {
    const Symbol s = two_plus_cos();
    auto t0 = std::chrono::steady_clock::now();
    const SpectralSummary b = block_spectrum(s, 2048, 1, table());
    const double block_s = seconds_since(t0);
    t0 = std::chrono::steady_clock::now();
    const std::vector<double> d = direct_spectrum(s, 2048);
    const double direct_s = seconds_since(t0);
    double dev = 0.0;
    for (std::size_t i = 0; i < d.size(); ++i) dev = std::max(dev, std::abs(b.eigenvalues[i] - d[i]));
    CHECK(dev < 1e-9);
    CHECK(direct_s >= 10.0 * block_s);
}

TEST_CASE("decomposition JSON") {
    const nlohmann::json j = partition_classes(10, 1, table()).to_json();
    CHECK(j["N"] == 10);
    CHECK(j["classes"].size() == 5);
    CHECK(j["classes"][0]["members"] == nlohmann::json::array({1, 2, 4, 8}));
}
