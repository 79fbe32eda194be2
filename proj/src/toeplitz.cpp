#include "szego/toeplitz.hpp"

#include <algorithm>
#include <cmath>
#include <iomanip>
#include <limits>
#include <string>
#include <unordered_map>

#include "szego/error.hpp"

namespace szego {

HermitianMatrix::HermitianMatrix(Eigen::MatrixXcd entries) : m_(std::move(entries)) {
    if (m_.rows() != m_.cols()) throw InvalidArgument("Hermitian matrix must be square");
    const double tol = 1e-12 * std::max(1.0, max_abs());
    for (Eigen::Index i = 0; i < m_.rows(); ++i) {
        if (std::abs(m_(i, i).imag()) > tol) throw InvalidArgument("Hermitian matrix needs a real diagonal");
        for (Eigen::Index j = i + 1; j < m_.cols(); ++j) {
            if (std::abs(m_(i, j) - std::conj(m_(j, i))) > tol)
                throw InvalidArgument("matrix is not Hermitian at (" + std::to_string(i) + "," +
                                      std::to_string(j) + ")");
        }
    }
}

HermitianMatrix HermitianMatrix::identity(std::size_t n, double c) {
    return HermitianMatrix(Eigen::MatrixXcd::Identity(Eigen::Index(n), Eigen::Index(n)) * c);
}

HermitianMatrix HermitianMatrix::tridiagonal(std::size_t n, double a, double b) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(n), Eigen::Index(n));
    for (Eigen::Index i = 0; i < Eigen::Index(n); ++i) {
        m(i, i) = a;
        if (i + 1 < Eigen::Index(n)) m(i, i + 1) = m(i + 1, i) = b;
    }
    return HermitianMatrix(std::move(m));
}

HermitianMatrix HermitianMatrix::diagonal(std::span<const double> d) {
    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(d.size()), Eigen::Index(d.size()));
    for (std::size_t i = 0; i < d.size(); ++i) m(Eigen::Index(i), Eigen::Index(i)) = d[i];
    return HermitianMatrix(std::move(m));
}

bool HermitianMatrix::is_real() const {
    return (m_.imag().array() == 0.0).all();
}

double HermitianMatrix::max_abs() const {
    return m_.size() == 0 ? 0.0 : m_.cwiseAbs().maxCoeff();
}

namespace {

void check_dim(std::size_t n, std::size_t max_dim) {
    if (n > max_dim)
        throw CapacityError("truncation size " + std::to_string(n) + " exceeds dimension cap " +
                                std::to_string(max_dim),
                            n);
}

}  // namespace

// Entries are scattered from the symbol's support: for each label xi_i and
// frequency kappa, the column label xi_i + kappa (if present) receives coeff(kappa).
HermitianMatrix assemble_additive(const Symbol& s, const IndexSet& sigma, std::size_t max_dim) {
    if (!sigma.is_additive()) throw InvalidArgument("assemble_additive needs an additive index set");
    const std::size_t n = sigma.size();
    check_dim(n, max_dim);
    std::unordered_map<MultiIndex, Eigen::Index, MultiIndexHash> position;
    position.reserve(n);
    for (std::size_t i = 0; i < n; ++i) position.emplace(sigma.points()[i], Eigen::Index(i));

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(n), Eigen::Index(n));
    for (const auto& [kappa, c] : s.coefficients()) {
        for (std::size_t i = 0; i < n; ++i) {
            auto it = position.find(sigma.points()[i] + kappa);
            if (it != position.end()) m(Eigen::Index(i), it->second) = c;
        }
    }
    return HermitianMatrix(std::move(m));
}

HermitianMatrix assemble_multiplicative(const Symbol& s, const IndexSet& sigma, const PrimeTable& table,
                                        std::size_t max_dim) {
    if (sigma.is_additive()) throw InvalidArgument("assemble_multiplicative needs a multiplicative index set");
    const std::size_t n = sigma.size();
    check_dim(n, max_dim);
    const auto labels = sigma.integers();
    if (n > 0) table.require(labels.back());
    const std::uint64_t largest = n > 0 ? labels.back() : 1;

    Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(Eigen::Index(n), Eigen::Index(n));
    for (const auto& [kappa, c] : s.coefficients()) {
        // j / i = a / b in lowest terms; coefficients whose a or b exceed every
        // label can never appear.
        std::uint64_t a = 1, b = 1;
        bool reachable = kappa.dimension() <= table.prime_count();
        for (std::size_t t = 0; t < kappa.dimension() && reachable; ++t) {
            const std::uint64_t p = table.prime(t);
            for (int e = 0; e < std::abs(kappa[t]) && reachable; ++e) {
                std::uint64_t& side = kappa[t] > 0 ? a : b;
                if (side > largest / p) reachable = false;
                else side *= p;
            }
        }
        if (!reachable) continue;
        for (std::size_t i = 0; i < n; ++i) {
            const std::uint64_t li = labels[i];
            if (li % b != 0) continue;
            const std::uint64_t q = li / b;
            if (q > largest / a) continue;
            const std::uint64_t lj = q * a;
            auto it = std::lower_bound(labels.begin(), labels.end(), lj);
            if (it != labels.end() && *it == lj) m(Eigen::Index(i), Eigen::Index(it - labels.begin())) = c;
        }
    }
    return HermitianMatrix(std::move(m));
}

HermitianMatrix assemble(const Symbol& s, const IndexSet& sigma, const PrimeTable& table, std::size_t max_dim) {
    return sigma.is_additive() ? assemble_additive(s, sigma, max_dim)
                               : assemble_multiplicative(s, sigma, table, max_dim);
}

double hs_norm_sq(const HermitianMatrix& m) { return m.data().squaredNorm(); }

void write_matrix_csv(const HermitianMatrix& m, std::ostream& os) {
    const auto flags = os.flags();
    const auto precision = os.precision();
    os << "row,col,re,im\r\n" << std::setprecision(17);
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) os << i << ',' << j << ',' << m(i, j).real() << ',' << m(i, j).imag() << "\r\n";
    os.flags(flags);
    os.precision(precision);
}

int difference_band(const IndexSet& sigma, const PrimeTable& table) {
    std::vector<MultiIndex> pts;
    if (sigma.is_additive()) {
        pts.assign(sigma.points().begin(), sigma.points().end());
    } else {
        for (std::uint64_t x : sigma.integers()) pts.push_back(factorize(x, table));
    }
    std::size_t dims = 0;
    for (const auto& p : pts) dims = std::max(dims, p.dimension());
    int band = 0;
    for (std::size_t axis = 0; axis < dims; ++axis) {
        int lo = std::numeric_limits<int>::max(), hi = std::numeric_limits<int>::min();
        for (const auto& p : pts) {
            lo = std::min(lo, p[axis]);
            hi = std::max(hi, p[axis]);
        }
        band = std::max(band, hi - lo);
    }
    return band;
}

}  // namespace szego
