#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include <Eigen/Dense>

#include "szego/grid.hpp"
#include "szego/index_set.hpp"
#include "szego/primes.hpp"
#include "szego/report.hpp"
#include "szego/scalar_fn.hpp"
#include "szego/symbol.hpp"
#include "szego/toeplitz.hpp"

namespace szego {

inline constexpr double kResidualTolerance = 1e-8;
inline constexpr double kInequalitySlack = 1e-9;

/// Sorted spectrum of a Hermitian matrix plus the statistics built from it.
struct SpectralSummary {
    std::vector<double> eigenvalues;  // ascending
    /// sum of log eigenvalues; empty when some eigenvalue is <= 0
    std::optional<double> logdet;

    std::size_t dimension() const noexcept { return eigenvalues.size(); }
    /// exp(logdet / n), or 0 with a non-positive spectrum
    double geo_mean() const;
    /// (1/n) sum f(lambda_j)
    double normalized_trace(const ScalarFn& f) const;
    /// m-th moment of the empirical spectral measure
    double moment(int m) const;
    double trace() const;

    /// Distinct eigenvalues (clustered within `tolerance`) with multiplicities.
    std::vector<std::pair<double, std::size_t>> atoms(double tolerance = 1e-9) const;

    static SpectralSummary from_eigenvalues(std::vector<double> values);
};

SpectralSummary eigenvalues(const HermitianMatrix& m);

struct EigenDecomposition {
    std::vector<double> values;
    Eigen::MatrixXcd vectors;  // column j pairs with values[j]
};

EigenDecomposition eigen_decomposition(const HermitianMatrix& m);
/// max_j ||M v_j - lambda_j v_j||
double max_residual(const HermitianMatrix& m, const EigenDecomposition& e);

struct DetRoot {
    double value = 0.0;   // (det M)^(1/n), 0 when not positive definite
    double logdet = 0.0;  // -inf when not positive definite
    bool positive_definite = false;
};

/// (det M)^(1/n) from a Cholesky factorization: logdet = 2 sum log L_ii.
DetRoot geometric_mean_det(const HermitianMatrix& m);

/// (1/n) Tr f(M) through the spectrum.
double trace_f(const HermitianMatrix& m, const ScalarFn& f);
/// (1/n) Tr M^p by repeated multiplication.
double trace_power(const HermitianMatrix& m, int p);
/// (1/n) Tr (A B^{-1})^p with B inverted through its Cholesky factor.
double inverse_product_trace(const HermitianMatrix& a, const HermitianMatrix& b, int p);

struct BoundsRecord {
    double lower = 0.0;   // exp(Haar mean of log phi)
    double middle = 0.0;  // (det T_sigma phi)^(1/|sigma|)
    double upper = 0.0;   // ||phi||_1
    bool lower_converged = false;
    bool passed = false;
};

/// exp(int log phi) <= (det T_sigma phi)^(1/|sigma|) <= ||phi||_1 for a certified positive symbol.
BoundsRecord szego_bounds_check(const Symbol& s, const IndexSet& sigma, const PrimeTable& table,
                                std::size_t max_dim = kDefaultMaxDim);

/// Normalized statistic along a sequence of truncation sets. With f = log the
/// statistic is the determinant root against exp(int log phi); otherwise it is
/// (1/|sigma|) Tr f(T_sigma phi) against int f(phi).
MomentReport folner_limit_experiment(const Symbol& s, std::span<const IndexSet> sigmas, const ScalarFn& f,
                                     const PrimeTable& table, std::size_t max_dim = kDefaultMaxDim);

/// (1/|sigma|) Tr (T psi (T phi)^{-1})^p against int (psi/phi)^p.
MomentReport ratio_trace_experiment(const Symbol& psi, const Symbol& phi, std::span<const IndexSet> sigmas, int p,
                                    const PrimeTable& table, std::size_t max_dim = kDefaultMaxDim);

struct ClampLevel {
    double level = 0.0;
    double geo_mean = 0.0;         // Delta_sigma(min(phi, level))
    double log_gap = 0.0;          // log Delta_sigma(phi) - log Delta_sigma(phi_n)
    double l1_distance = 0.0;      // ||phi - phi_n||_1
    double control_bound = 0.0;    // ||phi - phi_n||_1 / ess-inf phi_n
    double max_eigen_excess = 0.0; // max_i lambda_i(T phi_n) - lambda_i(T phi)
};

struct ClampReport {
    double geo_mean = 0.0;  // Delta_sigma(phi)
    std::size_t resolution = 0;
    std::vector<ClampLevel> levels;  // ascending level
    bool monotone = false;           // log Delta(phi_n) nondecreasing in n
    bool controlled = false;         // 0 <= log_gap <= control_bound
    bool eigen_dominated = false;    // lambda_i(T phi_n) <= lambda_i(T phi) + slack
    bool passed() const { return monotone && controlled && eigen_dominated; }
};

/// Clamping phi_n = min(phi, n) over the given levels at a fixed truncation.
/// Coefficients of phi_n come from a grid fine enough to resolve every
/// difference of labels in sigma, so T_sigma(phi - phi_n) is a nonnegative
/// combination of rank-one projections.
ClampReport clamp_limit_experiment(const Symbol& s, std::span<const double> levels, const IndexSet& sigma,
                                   const PrimeTable& table, std::size_t max_dim = kDefaultMaxDim,
                                   std::size_t min_resolution = 256);

}  // namespace szego
