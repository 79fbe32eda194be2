#pragma once

#include <cstdint>
#include <map>

#include <json.hpp>

#include "szego/index_set.hpp"
#include "szego/primes.hpp"
#include "szego/symbol.hpp"
#include "szego/toeplitz.hpp"

namespace szego {

enum class Basis { sine, power };

/// Finitely supported h = sum c_n e_n. In sine mode e_n = sqrt(2) sin(n pi x)
/// on L^2(0,1); in power mode e_n = w^n on H^2_0(T). T_m e_n = e_{mn} in both.
struct DilationVector {
    Basis basis = Basis::power;
    std::map<std::uint64_t, Complex> coeffs;

    static DilationVector unit(std::uint64_t n, Basis basis = Basis::power);
    DilationVector& add(std::uint64_t n, Complex c);

    double norm_sq() const;
    std::uint64_t max_support() const;
    bool is_zero() const;

    nlohmann::json to_json() const;
    /// {"basis": "sine"|"power", "coeffs": [{"n": int, "re": x, "im": y}]}
    static DilationVector from_json(const nlohmann::json& j);
};

/// |Uh|^2 with U e_n = z^alpha(n): coeff(kappa) = sum_{alpha(n) - alpha(m) = kappa} c_n conj(c_m).
Symbol lift_symbol(const DilationVector& h, const PrimeTable& table);

/// {<T_i h, T_j h>}_{i,j in sigma} from the basis coefficients: sum c_n conj(c_m) over i n = j m.
HermitianMatrix gram_matrix(const DilationVector& h, const IndexSet& sigma, const PrimeTable& table,
                            std::size_t max_dim = kDefaultMaxDim);

/// The same inner products by quadrature of the functions themselves:
/// composite Simpson on int_0^1 h(ix) conj h(jx) dx in sine mode, an exact
/// equispaced rule on the circle in power mode.
HermitianMatrix gram_quadrature_oracle(const DilationVector& h, const IndexSet& sigma);

struct GramBounds {
    double lower = 0.0;   // exp(int log |Uh|^2), floored quadrature
    double middle = 0.0;  // (det G_sigma)^(1/|sigma|)
    double upper = 0.0;   // ||h||^2
    double min_eigenvalue = 0.0;
    bool floored = false;         // |Uh|^2 reached the floor on some grid
    bool lower_converged = false;
    bool passed = false;
};

inline constexpr double kLogFloor = 1e-30;

/// exp(int log |Uh|^2) <= (det G_sigma)^(1/|sigma|) <= ||h||^2.
GramBounds gram_bounds_check(const DilationVector& h, const IndexSet& sigma, const PrimeTable& table,
                             std::size_t max_dim = kDefaultMaxDim);

}  // namespace szego
