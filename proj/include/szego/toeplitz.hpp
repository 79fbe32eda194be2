#pragma once

#include <cstddef>
#include <ostream>

#include <Eigen/Dense>

#include "szego/index_set.hpp"
#include "szego/indexing.hpp"
#include "szego/primes.hpp"
#include "szego/symbol.hpp"

namespace szego {

/// Dense complex Hermitian matrix; the constructor rejects non-Hermitian input.
class HermitianMatrix {
public:
    HermitianMatrix() = default;
    explicit HermitianMatrix(Eigen::MatrixXcd entries);

    static HermitianMatrix identity(std::size_t n, double c = 1.0);
    /// a on the diagonal, b on both off-diagonals
    static HermitianMatrix tridiagonal(std::size_t n, double a, double b);
    static HermitianMatrix diagonal(std::span<const double> d);

    std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
    const Eigen::MatrixXcd& data() const noexcept { return m_; }
    Complex operator()(std::size_t i, std::size_t j) const { return m_(Eigen::Index(i), Eigen::Index(j)); }

    /// every imaginary part is exactly zero
    bool is_real() const;
    double max_abs() const;

private:
    Eigen::MatrixXcd m_;
};

/// {phi^(xi_j - xi_i)} over an additive set.
HermitianMatrix assemble_additive(const Symbol& s, const IndexSet& sigma, std::size_t max_dim = kDefaultMaxDim);

/// {phi^(alpha(j / i))} over a multiplicative set.
HermitianMatrix assemble_multiplicative(const Symbol& s, const IndexSet& sigma, const PrimeTable& table,
                                        std::size_t max_dim = kDefaultMaxDim);

/// Dispatches on sigma.mode().
HermitianMatrix assemble(const Symbol& s, const IndexSet& sigma, const PrimeTable& table,
                         std::size_t max_dim = kDefaultMaxDim);

/// sum |entries|^2
double hs_norm_sq(const HermitianMatrix& m);

/// RFC 4180 CSV with header row,col,re,im; every entry, row-major.
void write_matrix_csv(const HermitianMatrix& m, std::ostream& os);

/// Largest per-axis spread of the labels' exponent vectors: the band of
/// Fourier coefficients the truncation can see.
int difference_band(const IndexSet& sigma, const PrimeTable& table);

}  // namespace szego
