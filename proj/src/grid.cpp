#include "szego/grid.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <mutex>
#include <numeric>
#include <string>

#include <fftw3.h>

#include "szego/error.hpp"

namespace szego {

namespace {

// The FFTW planner is not re-entrant.
std::mutex& planner_mutex() {
    static std::mutex m;
    return m;
}

std::size_t checked_points(std::size_t k, std::size_t r) {
    std::size_t n = 1;
    for (std::size_t i = 0; i < k; ++i) {
        if (n > (std::size_t{1} << 40) / r) throw CapacityError("grid too large", n);
        n *= r;
    }
    return n;
}

void transform(std::vector<std::complex<double>>& data, std::size_t k, std::size_t r, int sign) {
    std::vector<int> dims(k, static_cast<int>(r));
    auto* buf = reinterpret_cast<fftw_complex*>(data.data());
    fftw_plan plan;
    {
        std::lock_guard lock(planner_mutex());
        plan = fftw_plan_dft(static_cast<int>(k), dims.data(), buf, buf, sign, FFTW_ESTIMATE);
    }
    fftw_execute(plan);
    std::lock_guard lock(planner_mutex());
    fftw_destroy_plan(plan);
}

std::size_t wrap(int kappa, std::size_t r) {
    const auto rr = static_cast<long long>(r);
    return static_cast<std::size_t>(((kappa % rr) + rr) % rr);
}

}  // namespace

GridSymbol::GridSymbol(std::size_t variables, std::size_t resolution, std::vector<double> values)
    : k_(variables), r_(resolution), values_(std::move(values)) {
    if (r_ == 0) throw InvalidArgument("grid resolution must be positive");
    if (values_.size() != checked_points(k_, r_)) throw InvalidArgument("grid value count must equal R^k");
}

double GridSymbol::min() const { return *std::min_element(values_.begin(), values_.end()); }
double GridSymbol::max() const { return *std::max_element(values_.begin(), values_.end()); }

GridSymbol to_grid(const Symbol& s, std::size_t resolution, std::size_t variables) {
    const std::size_t k = variables == 0 ? std::max<std::size_t>(1, s.variable_count()) : variables;
    if (k < s.variable_count()) throw InvalidArgument("grid has fewer variables than the symbol");
    const int bw = s.bandwidth();
    if (resolution < static_cast<std::size_t>(2 * bw + 1)) {
        throw InvalidArgument("resolution " + std::to_string(resolution) + " aliases a symbol of bandwidth " +
                              std::to_string(bw) + " (needs R >= " + std::to_string(2 * bw + 1) + ")");
    }
    const std::size_t n = checked_points(k, resolution);
    std::vector<std::complex<double>> data(n);
    for (const auto& [kappa, c] : s.coefficients()) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < k; ++i) idx = idx * resolution + wrap(kappa[i], resolution);
        data[idx] += c;
    }
    transform(data, k, resolution, FFTW_BACKWARD);
    std::vector<double> values(n);
    for (std::size_t i = 0; i < n; ++i) values[i] = data[i].real();
    return GridSymbol(k, resolution, std::move(values));
}

Symbol from_grid(const GridSymbol& g, int band, double drop_below) {
    const std::size_t k = g.variable_count();
    const std::size_t r = g.resolution();
    const int alias_free = static_cast<int>((r - 1) / 2);
    const int keep = band < 0 ? alias_free : std::min(band, alias_free);

    std::vector<std::complex<double>> data(g.values().begin(), g.values().end());
    transform(data, k, r, FFTW_FORWARD);
    const double scale = 1.0 / static_cast<double>(g.point_count());

    auto at = [&](const std::vector<int>& kappa) {
        std::size_t idx = 0;
        for (std::size_t i = 0; i < k; ++i) idx = idx * r + wrap(kappa[i], r);
        return data[idx] * scale;
    };

    Symbol s;
    s.declare_variables(k);
    std::vector<int> kappa(k, -keep);
    const std::size_t side = static_cast<std::size_t>(2 * keep + 1);
    const std::size_t total = checked_points(k, side);
    for (std::size_t n = 0; n < total; ++n) {
        MultiIndex label(kappa);
        if (label.is_zero()) {
            s.add_term(label, Complex(at(kappa).real(), 0.0));
        } else if (label.lex_positive()) {
            std::vector<int> neg(kappa);
            for (int& e : neg) e = -e;
            const Complex c = 0.5 * (at(kappa) + std::conj(at(neg)));
            if (std::abs(c) > drop_below) s.add_term(label, c);
        }
        for (std::size_t axis = k; axis-- > 0;) {
            if (++kappa[axis] <= keep) break;
            kappa[axis] = -keep;
        }
    }
    return s;
}

GridSymbol apply(const GridSymbol& g, const ScalarFn& f) {
    std::vector<double> v(g.values().begin(), g.values().end());
    for (double& x : v) x = f(x);
    return GridSymbol(g.variable_count(), g.resolution(), std::move(v));
}

GridSymbol clamp_max(const GridSymbol& g, double level) {
    std::vector<double> v(g.values().begin(), g.values().end());
    for (double& x : v) x = std::min(x, level);
    return GridSymbol(g.variable_count(), g.resolution(), std::move(v));
}

GridSymbol clamp_min(const GridSymbol& g, double floor) {
    std::vector<double> v(g.values().begin(), g.values().end());
    for (double& x : v) x = std::max(x, floor);
    return GridSymbol(g.variable_count(), g.resolution(), std::move(v));
}

namespace {

void require_positive(const GridSymbol& g, const char* what) {
    const double m = g.min();
    if (!(m > 0.0))
        throw DomainError(std::string(what) + " needs positive grid values; minimum is " + std::to_string(m));
}

}  // namespace

GridSymbol log_map(const GridSymbol& g) {
    require_positive(g, "log_map");
    return apply(g, ScalarFn::log());
}

GridSymbol reciprocal_map(const GridSymbol& g) {
    require_positive(g, "reciprocal_map");
    return apply(g, ScalarFn::reciprocal_power(1));
}

double mean_of(const ScalarFn& f, const GridSymbol& g) {
    if (f.needs_positive()) require_positive(g, f.name().c_str());
    long double acc = 0.0L;
    for (double x : g.values()) acc += f(x);
    return static_cast<double>(acc / static_cast<long double>(g.point_count()));
}

double l1_norm(const GridSymbol& g) {
    long double acc = 0.0L;
    for (double x : g.values()) acc += std::abs(x);
    return static_cast<double>(acc / static_cast<long double>(g.point_count()));
}

std::size_t oversampled_resolution(const Symbol& s, std::size_t factor) {
    return factor * static_cast<std::size_t>(2 * s.bandwidth() + 1);
}

ValueRange value_range(const Symbol& s, std::size_t oversample) {
    const std::size_t r = oversampled_resolution(s, oversample);
    const GridSymbol g = to_grid(s, r);
    return {g.min(), g.max(), r};
}

ValueRange certify_positive(const Symbol& s, double margin) {
    ValueRange range = value_range(s, 4);
    if (!(range.min >= margin)) {
        throw DomainError("symbol not certified positive: minimum " + std::to_string(range.min) +
                          " on the R=" + std::to_string(range.resolution) + " grid is below margin " +
                          std::to_string(margin));
    }
    return range;
}

Quadrature integrate(const Symbol& s, const ScalarFn& f, const QuadratureOptions& options) {
    const std::size_t k = std::max<std::size_t>(1, s.variable_count());
    std::size_t r = std::max<std::size_t>(oversampled_resolution(s, 4), 8);
    auto mean_at = [&](std::size_t res) {
        GridSymbol g = to_grid(s, res, k);
        if (options.floor > 0.0) g = clamp_min(g, options.floor);
        return mean_of(f, g);
    };

    Quadrature q;
    q.resolution = r;
    q.value = mean_at(r);
    while (true) {
        const std::size_t next = 2 * r;
        if (checked_points(k, next) > options.max_points) return q;
        const double v = mean_at(next);
        const double change = std::abs(v - q.value);
        q.value = v;
        q.resolution = next;
        r = next;
        if (change < options.tolerance) {
            q.converged = true;
            return q;
        }
    }
}

Symbol clamp_symbol(const Symbol& s, double level, std::size_t resolution, int band) {
    if (resolution < static_cast<std::size_t>(2 * band + 1))
        throw InvalidArgument("clamp_symbol resolution cannot resolve the requested band");
    return from_grid(clamp_max(to_grid(s, resolution), level), band);
}

}  // namespace szego
