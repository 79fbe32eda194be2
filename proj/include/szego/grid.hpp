#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "szego/scalar_fn.hpp"
#include "szego/symbol.hpp"

namespace szego {

/// Real samples of a symbol on the uniform tensor grid theta_j = 2 pi r / R
/// over k torus variables. Point (r_0, ..., r_{k-1}) is stored at
/// r_0 R^{k-1} + ... + r_{k-1}.
class GridSymbol {
public:
    GridSymbol(std::size_t variables, std::size_t resolution, std::vector<double> values);

    std::size_t variable_count() const noexcept { return k_; }
    std::size_t resolution() const noexcept { return r_; }
    std::size_t point_count() const noexcept { return values_.size(); }
    std::span<const double> values() const noexcept { return values_; }

    double min() const;
    double max() const;

private:
    std::size_t k_;
    std::size_t r_;
    std::vector<double> values_;
};

/// Samples by inverse DFT. Needs R >= 2 * bandwidth + 1. `variables` = 0 means
/// max(1, s.variable_count()).
GridSymbol to_grid(const Symbol& s, std::size_t resolution, std::size_t variables = 0);

/// Forward DFT back to coefficients, keeping |kappa_i| <= min(band, floor((R-1)/2)).
/// A negative band keeps the full alias-free range. Coefficients with
/// magnitude <= drop_below are omitted.
Symbol from_grid(const GridSymbol& g, int band = -1, double drop_below = 0.0);

/// min(phi, level)
GridSymbol clamp_max(const GridSymbol& g, double level);
/// max(phi, floor)
GridSymbol clamp_min(const GridSymbol& g, double floor);
GridSymbol log_map(const GridSymbol& g);
GridSymbol reciprocal_map(const GridSymbol& g);
GridSymbol apply(const GridSymbol& g, const ScalarFn& f);

/// Grid average of f(values); exact for trigonometric integrands of bandwidth < R.
double mean_of(const ScalarFn& f, const GridSymbol& g);
/// grid average of |phi|
double l1_norm(const GridSymbol& g);

/// Alias-free resolution for a symbol oversampled `factor` times: factor * (2 bw + 1).
std::size_t oversampled_resolution(const Symbol& s, std::size_t factor);

struct ValueRange {
    double min = 0.0;
    double max = 0.0;
    std::size_t resolution = 0;
};

/// Min and max over the grid at 4x bandwidth oversampling.
ValueRange value_range(const Symbol& s, std::size_t oversample = 4);

/// Certifies phi > 0 by its minimum on the 4x oversampled grid; throws
/// DomainError when that minimum is below `margin`.
ValueRange certify_positive(const Symbol& s, double margin = 1e-8);

struct QuadratureOptions {
    double tolerance = 1e-10;
    std::size_t max_points = std::size_t{1} << 22;
    /// Values below the floor are replaced by it before applying f (0 = off).
    double floor = 0.0;
};

struct Quadrature {
    double value = 0.0;
    std::size_t resolution = 0;
    bool converged = false;
};

/// Haar mean of f(phi), doubling R from the oversampled alias-free grid until
/// successive means differ by less than the tolerance.
Quadrature integrate(const Symbol& s, const ScalarFn& f, const QuadratureOptions& options = {});

/// Fourier coefficients of min(phi, level) from a grid of resolution R;
/// the result keeps frequencies |kappa_i| <= band.
Symbol clamp_symbol(const Symbol& s, double level, std::size_t resolution, int band);

}  // namespace szego
