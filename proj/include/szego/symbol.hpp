#pragma once

#include <complex>
#include <cstddef>
#include <map>
#include <span>
#include <utility>
#include <vector>

#include <json.hpp>

#include "szego/multi_index.hpp"

namespace szego {

using Complex = std::complex<double>;

/// A real trigonometric polynomial on T^k (k finite, embedded in T^infinity),
/// held by its Fourier coefficients.
///
/// Every constructor keeps coeff(-kappa) == conj(coeff(kappa)), so the symbol
/// is real valued. The mirror of each term is stored explicitly.
class Symbol {
public:
    using CoefficientMap = std::map<MultiIndex, Complex>;

    Symbol() = default;
    static Symbol constant(double c);

    /// Adds c at kappa and conj(c) at -kappa. At kappa = 0 the value must be real.
    Symbol& add_term(const MultiIndex& kappa, Complex c);

    /// Declare at least `k` variables (the symbol may ignore some of them).
    Symbol& declare_variables(std::size_t k);

    Complex coeff(const MultiIndex& kappa) const;
    const CoefficientMap& coefficients() const noexcept { return coeffs_; }
    /// kappa = 0 and the lexicographically positive half of the support
    std::vector<std::pair<MultiIndex, Complex>> half_terms() const;

    /// max(declared variables, largest support dimension)
    std::size_t variable_count() const noexcept;
    /// per-axis max |kappa_i| over the support, length variable_count()
    std::vector<int> bandwidths() const;
    int bandwidth() const;

    /// Sum of coeff(kappa) e^{i kappa.theta}; `theta` needs variable_count() angles.
    double evaluate(std::span<const double> theta) const;
    Complex evaluate_complex(std::span<const double> theta) const;

    /// sum |coeff|^2 (Parseval)
    double l2_norm_sq() const;

    /// largest |coeff(kappa) - conj(coeff(-kappa))|
    double hermitian_defect() const;

    Symbol scaled(double factor) const;
    Symbol shifted(double c) const;

    nlohmann::json to_json() const;
    /// {"k": int, "coeffs": [{"kappa": [...], "re": x, "im": y}]}, one of +-kappa per entry.
    static Symbol from_json(const nlohmann::json& j);

private:
    CoefficientMap coeffs_;
    std::size_t declared_ = 0;
};

}  // namespace szego
