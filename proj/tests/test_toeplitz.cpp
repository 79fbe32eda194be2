#include <doctest.h>

#include <sstream>

#include "szego/error.hpp"
#include "szego/indexing.hpp"
#include "szego/random.hpp"
#include "szego/toeplitz.hpp"

using namespace szego;

namespace {

Symbol two_plus_cos() { return Symbol::constant(2.0).add_term(MultiIndex{1}, 0.5); }

const PrimeTable& table() {
    static const PrimeTable t;
    return t;
}

IndexSet line(int n) {
    std::vector<MultiIndex> pts;
    for (int i = 0; i < n; ++i) pts.push_back(MultiIndex{i});
    return IndexSet::additive(pts);
}

}  // namespace

TEST_CASE("additive examples") {
    const HermitianMatrix t = assemble_additive(two_plus_cos(), line(3));
    CHECK(t.dim() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
        CHECK(t(i, i) == Complex(2.0));
        if (i + 1 < 3) {
            CHECK(t(i, i + 1) == Complex(0.5));
            CHECK(t(i + 1, i) == Complex(0.5));
        }
    }
    CHECK(t(0, 2) == Complex(0.0));

    Rng rng(1);
    const HermitianMatrix c = assemble_additive(Symbol::constant(1.5), random_additive_set(rng, 2));
    CHECK(c.data().isApprox(1.5 * Eigen::MatrixXcd::Identity(c.data().rows(), c.data().cols())));

    // |1+z|^2 = 2 + z + conj z: det T_N = N + 1, oracle = LU determinant
    const Symbol one_plus_z = Symbol::constant(2.0).add_term(MultiIndex{1}, 1.0);
    for (int n : {1, 2, 5, 9, 20}) {
        const Complex det = assemble_additive(one_plus_z, line(n)).data().determinant();
        CHECK(det.real() == doctest::Approx(n + 1).epsilon(1e-10));
    }
}

TEST_CASE("multiplicative examples") {
    const HermitianMatrix t = assemble_multiplicative(two_plus_cos(), IndexSet::natural(3), table());
    const double expected[3][3] = {{2, 0.5, 0}, {0.5, 2, 0}, {0, 0, 2}};
    for (std::size_t i = 0; i < 3; ++i)
        for (std::size_t j = 0; j < 3; ++j) CHECK(t(i, j) == Complex(expected[i][j]));
    CHECK(hs_norm_sq(t) == 12.5);

    const HermitianMatrix c = assemble_multiplicative(Symbol::constant(3.0), IndexSet::natural(17), table());
    CHECK(c.data() == (3.0 * Eigen::MatrixXcd::Identity(17, 17)));
    CHECK(hs_norm_sq(c) == 17 * 9.0);
    CHECK(hs_norm_sq(HermitianMatrix(Eigen::MatrixXcd::Zero(4, 4))) == 0.0);

    const HermitianMatrix powers = assemble_multiplicative(two_plus_cos(), IndexSet::multiplicative({1, 2, 4, 8}), table());
    CHECK(powers.data() == assemble_additive(two_plus_cos(), line(4)).data());
}

TEST_CASE("embedding of one-variable symbols") {
    Rng rng(21);
    for (int i = 0; i < 5; ++i) {
        const Symbol s = random_symbol(rng, {1, 3});
        std::vector<std::uint64_t> powers;
        for (int a = 0; a < 12; ++a) powers.push_back(std::uint64_t(1) << a);
        CHECK(assemble_multiplicative(s, IndexSet::multiplicative(powers), table()).data() ==
              assemble_additive(s, line(12)).data());
    }
}

TEST_CASE("multiplicative assembly against entrywise ratio lookup") {
    Rng rng(8);
    for (int trial = 0; trial < 10; ++trial) {
        const Symbol s = random_symbol(rng);
        const IndexSet sigma = random_multiplicative_set(rng, 400, 40);
        const HermitianMatrix t = assemble_multiplicative(s, sigma, table());
        const auto labels = sigma.integers();
        for (std::size_t a = 0; a < labels.size(); ++a)
            for (std::size_t b = 0; b < labels.size(); ++b)
                REQUIRE(t(a, b) == s.coeff(ratio_index(labels[b], labels[a], table())));
        // multiplicative Toeplitz law: entries agree whenever j k = i l
        for (std::size_t a = 0; a < labels.size(); ++a)
            for (std::size_t b = 0; b < labels.size(); ++b)
                for (std::size_t c = 0; c < labels.size(); ++c)
                    for (std::size_t d = 0; d < labels.size(); ++d)
                        if (labels[b] * labels[c] == labels[a] * labels[d]) REQUIRE(t(a, b) == t(c, d));
    }
}

TEST_CASE("additive assembly against entrywise differences") {
    Rng rng(12);
    for (int trial = 0; trial < 10; ++trial) {
        const Symbol s = random_symbol(rng);
        const IndexSet sigma = random_additive_set(rng, s.variable_count(), 3, 30);
        const HermitianMatrix t = assemble_additive(s, sigma);
        const auto pts = sigma.points();
        for (std::size_t a = 0; a < pts.size(); ++a)
            for (std::size_t b = 0; b < pts.size(); ++b) REQUIRE(t(a, b) == s.coeff(pts[b] - pts[a]));
    }
}

TEST_CASE("Hilbert-Schmidt bound") {
    Rng rng(13);
    for (int i = 0; i < 10; ++i) {
        const Symbol s = random_symbol(rng);
        for (std::uint64_t n : {1ull, 7ull, 64ull, 300ull}) {
            const double lhs = hs_norm_sq(assemble_multiplicative(s, IndexSet::natural(n), table())) / double(n);
            CHECK(lhs <= s.l2_norm_sq() * (1.0 + 1e-12));
        }
    }
}

TEST_CASE("dimension cap and Hermitian check") {
    CHECK_THROWS_AS(assemble_multiplicative(two_plus_cos(), IndexSet::natural(100), table(), 50), CapacityError);
    Eigen::MatrixXcd bad = Eigen::MatrixXcd::Zero(2, 2);
    bad(0, 1) = 1.0;
    CHECK_THROWS_AS(HermitianMatrix{bad}, InvalidArgument);
    const PrimeTable tiny(100);
    CHECK_THROWS_AS(assemble_multiplicative(two_plus_cos(), IndexSet::natural(101), tiny), CapacityError);
}

TEST_CASE("matrix CSV dump") {
    std::ostringstream os;
    write_matrix_csv(assemble_multiplicative(two_plus_cos(), IndexSet::natural(2), table()), os);
    CHECK(os.str() == "row,col,re,im\r\n0,0,2,0\r\n0,1,0.5,0\r\n1,0,0.5,0\r\n1,1,2,0\r\n");
}

TEST_CASE("difference band") {
    CHECK(difference_band(line(5), table()) == 4);
    CHECK(difference_band(IndexSet::multiplicative({1, 2, 12}), table()) == 2);
}
