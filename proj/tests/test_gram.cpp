#include <doctest.h>

#include <cmath>
#include <numbers>

#include "szego/error.hpp"
#include "szego/gram.hpp"
#include "szego/random.hpp"
#include "szego/spectral.hpp"

using namespace szego;

namespace {

const PrimeTable& table() {
    static const PrimeTable t;
    return t;
}

DilationVector outer(Basis basis = Basis::power) { return DilationVector::unit(1, basis).add(2, 0.5); }

}  // namespace

TEST_CASE("lifted symbols") {
    const Symbol one = lift_symbol(DilationVector::unit(1), table());
    CHECK(one.coefficients().size() == 1);
    CHECK(one.coeff(MultiIndex{}) == Complex(1.0));

    const Symbol s = lift_symbol(outer(), table());
    CHECK(s.coeff(MultiIndex{}) == Complex(1.25));
    CHECK(s.coeff(MultiIndex{1}) == Complex(0.5));
    CHECK(s.coeff(MultiIndex{-1}) == Complex(0.5));

    const Symbol cross = lift_symbol(DilationVector::unit(2).add(3, 1.0), table());
    CHECK(cross.coeff(MultiIndex{}) == Complex(2.0));
    CHECK(cross.coeff(MultiIndex{-1, 1}) == Complex(1.0));
    CHECK(cross.coeff(MultiIndex{1, -1}) == Complex(1.0));
    CHECK(cross.coefficients().size() == 3);
}

TEST_CASE("Gram examples") {
    for (Basis basis : {Basis::power, Basis::sine}) {
        const HermitianMatrix id = gram_matrix(DilationVector::unit(1, basis), IndexSet::natural(12), table());
        CHECK(id.data() == Eigen::MatrixXcd::Identity(12, 12));
        CHECK(geometric_mean_det(id).value == 1.0);
        CHECK(gram_matrix(DilationVector::unit(2, basis), IndexSet::natural(3), table()).data() ==
              Eigen::MatrixXcd::Identity(3, 3));
    }
    const HermitianMatrix g = gram_matrix(outer(), IndexSet::multiplicative({1, 2, 4}), table());
    Eigen::MatrixXcd expected(3, 3);
    expected << 1.25, 0.5, 0.0, 0.5, 1.25, 0.5, 0.0, 0.5, 1.25;
    CHECK(g.data() == expected);
}

TEST_CASE("Gram matrices are Toeplitz matrices of the lift") {
    Rng rng(51);
    for (int trial = 0; trial < 20; ++trial) {
        const DilationVector h = random_dilation_vector(rng, trial % 2 ? Basis::sine : Basis::power);
        const IndexSet sigma = random_multiplicative_set(rng, 120, 20);
        const HermitianMatrix direct = gram_matrix(h, sigma, table());
        const HermitianMatrix fourier = assemble_multiplicative(lift_symbol(h, table()), sigma, table());
        CHECK((direct.data() - fourier.data()).cwiseAbs().maxCoeff() <= 1e-12);
        const SpectralSummary sp = eigenvalues(direct);
        CHECK(sp.eigenvalues.front() >= -1e-9);
        if (sp.logdet) CHECK(sp.geo_mean() <= h.norm_sq() * (1 + 1e-12));
    }
}

TEST_CASE("quadrature oracles") {
    Rng rng(52);
    for (int trial = 0; trial < 6; ++trial) {
        const DilationVector h = random_dilation_vector(rng, Basis::sine, 8, 3);
        const IndexSet sigma = random_multiplicative_set(rng, 12, 5);
        const HermitianMatrix direct = gram_matrix(h, sigma, table());
        CHECK((direct.data() - gram_quadrature_oracle(h, sigma).data()).cwiseAbs().maxCoeff() < 1e-6);
    }
    for (int trial = 0; trial < 6; ++trial) {
        const DilationVector h = random_dilation_vector(rng, Basis::power, 8, 4);
        const IndexSet sigma = random_multiplicative_set(rng, 30, 8);
        const HermitianMatrix direct = gram_matrix(h, sigma, table());
        CHECK((direct.data() - gram_quadrature_oracle(h, sigma).data()).cwiseAbs().maxCoeff() < 1e-12);
    }
}

TEST_CASE("Gram bounds") {
    const GramBounds unit = gram_bounds_check(DilationVector::unit(1), IndexSet::natural(30), table());
    CHECK(unit.lower == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.middle == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(unit.upper == 1.0);
    CHECK(unit.passed);

    // midpoint rule for int log |1 + z/2|^2 dm
    long double acc = 0.0L;
    const int points = 1 << 16;
    for (int r = 0; r < points; ++r) {
        const double t = 2 * std::numbers::pi * (r + 0.5) / points;
        acc += std::log(1.25 + std::cos(t));
    }
    const double oracle = std::exp(double(acc / points));
    CHECK(oracle == doctest::Approx(1.0).epsilon(1e-12));

    std::vector<std::uint64_t> powers;
    for (int a = 0; a <= 9; ++a) powers.push_back(std::uint64_t(1) << a);
    const GramBounds b = gram_bounds_check(outer(), IndexSet::multiplicative(powers), table());
    CHECK(b.lower == doctest::Approx(oracle).epsilon(1e-9));
    CHECK(b.upper == 1.25);
    const double det = (1.0 - std::pow(0.25, 11)) / 0.75;
    CHECK(b.middle == doctest::Approx(std::pow(det, 0.1)).epsilon(1e-12));
    CHECK(b.passed);
    CHECK(b.middle - 1.0 < 0.03);

    const GramBounds zero_set = gram_bounds_check(DilationVector::unit(1).add(2, -1.0), IndexSet::natural(16), table());
    CHECK(zero_set.floored);
    CHECK(zero_set.passed);
    CHECK(zero_set.min_eigenvalue >= -1e-9);
}

TEST_CASE("dilation vector JSON") {
    const DilationVector h = outer(Basis::sine);
    const DilationVector back = DilationVector::from_json(h.to_json());
    CHECK(back.basis == Basis::sine);
    CHECK(back.coeffs == h.coeffs);
    using nlohmann::json;
    CHECK_THROWS_AS(DilationVector::from_json(json::parse(R"({"basis":"cosine","coeffs":[]})")), ConfigError);
    CHECK_THROWS_AS(DilationVector::from_json(json::parse(R"({"basis":"power","coeffs":[{"n":0,"re":1,"im":0}]})")),
                    ConfigError);
    CHECK_THROWS_AS(
        DilationVector::from_json(json::parse(R"({"basis":"power","coeffs":[{"n":2,"re":1,"im":0},{"n":2,"re":1,"im":0}]})")),
        ConfigError);
}
