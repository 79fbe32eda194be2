#include "szego/gram.hpp"

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "szego/error.hpp"
#include "szego/grid.hpp"
#include "szego/scalar_fn.hpp"
#include "szego/spectral.hpp"

namespace szego {

DilationVector DilationVector::unit(std::uint64_t n, Basis basis) {
    DilationVector h;
    h.basis = basis;
    h.add(n, 1.0);
    return h;
}

DilationVector& DilationVector::add(std::uint64_t n, Complex c) {
    if (n == 0) throw InvalidArgument("dilation vectors are indexed by n >= 1");
    if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) throw InvalidArgument("non-finite coefficient");
    coeffs[n] += c;
    if (coeffs[n] == Complex{}) coeffs.erase(n);
    return *this;
}

double DilationVector::norm_sq() const {
    long double acc = 0.0L;
    for (const auto& [n, c] : coeffs) acc += std::norm(c);
    return static_cast<double>(acc);
}

std::uint64_t DilationVector::max_support() const { return coeffs.empty() ? 0 : coeffs.rbegin()->first; }

bool DilationVector::is_zero() const { return coeffs.empty(); }

nlohmann::json DilationVector::to_json() const {
    nlohmann::json cs = nlohmann::json::array();
    for (const auto& [n, c] : coeffs) cs.push_back({{"n", n}, {"re", c.real()}, {"im", c.imag()}});
    return {{"basis", basis == Basis::sine ? "sine" : "power"}, {"coeffs", cs}};
}

DilationVector DilationVector::from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw ConfigError("dilation vector must be a JSON object");
        DilationVector h;
        const std::string basis = j.value("basis", std::string("power"));
        if (basis == "sine")
            h.basis = Basis::sine;
        else if (basis == "power")
            h.basis = Basis::power;
        else
            throw ConfigError("unknown basis '" + basis + "'");
        if (!j.contains("coeffs") || !j.at("coeffs").is_array()) throw ConfigError("dilation vector needs a coeffs array");
        for (const auto& e : j.at("coeffs")) {
            const auto& jn = e.at("n");
            if (!jn.is_number_integer() || jn.get<std::int64_t>() < 1) throw ConfigError("coefficient index n must be >= 1");
            const auto n = jn.get<std::uint64_t>();
            if (h.coeffs.count(n)) throw ConfigError("duplicate coefficient n=" + std::to_string(n));
            const double re = e.value("re", 0.0);
            const double im = e.value("im", 0.0);
            if (!std::isfinite(re) || !std::isfinite(im)) throw ConfigError("non-finite coefficient");
            if (re != 0.0 || im != 0.0) h.coeffs[n] = Complex(re, im);
        }
        return h;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed dilation vector: ") + e.what());
    }
}

Symbol lift_symbol(const DilationVector& h, const PrimeTable& table) {
    if (h.is_zero()) return Symbol::constant(0.0);
    table.require(h.max_support());
    std::vector<std::pair<MultiIndex, Complex>> alpha;
    for (const auto& [n, c] : h.coeffs) alpha.emplace_back(factorize(n, table), c);

    std::map<MultiIndex, Complex> acc;
    std::size_t vars = 0;
    for (const auto& [an, cn] : alpha) {
        vars = std::max(vars, an.dimension());
        for (const auto& [am, cm] : alpha) acc[an - am] += cn * std::conj(cm);
    }
    Symbol s;
    s.declare_variables(std::max<std::size_t>(vars, 1));
    for (const auto& [kappa, c] : acc) {
        if (kappa.is_zero())
            s.add_term(kappa, c.real());
        else if (kappa.lex_positive() && c != Complex{})
            s.add_term(kappa, c);
    }
    return s;
}

HermitianMatrix gram_matrix(const DilationVector& h, const IndexSet& sigma, const PrimeTable& table,
                            std::size_t max_dim) {
    if (sigma.is_additive()) throw InvalidArgument("gram_matrix needs a multiplicative index set");
    if (sigma.size() > max_dim)
        throw CapacityError("gram matrix of size " + std::to_string(sigma.size()) + " exceeds max_dim", sigma.size());
    const auto& labels = sigma.integers();
    if (!labels.empty() && !h.is_zero()) table.require(labels.back() * h.max_support());

    const auto n = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        const std::uint64_t i = labels[static_cast<std::size_t>(a)];
        for (Eigen::Index b = a; b < n; ++b) {
            const std::uint64_t j = labels[static_cast<std::size_t>(b)];
            Complex sum{};
            for (const auto& [nn, cn] : h.coeffs) {
                const std::uint64_t target = i * nn;
                if (target % j != 0) continue;
                const auto it = h.coeffs.find(target / j);
                if (it != h.coeffs.end()) sum += cn * std::conj(it->second);
            }
            g(a, b) = sum;
            g(b, a) = std::conj(sum);
        }
    }
    return HermitianMatrix(std::move(g));
}

namespace {

Complex sine_value(const DilationVector& h, double x) {
    Complex v{};
    for (const auto& [n, c] : h.coeffs) v += c * (M_SQRT2 * std::sin(static_cast<double>(n) * M_PI * x));
    return v;
}

Complex simpson_inner(const DilationVector& h, std::uint64_t i, std::uint64_t j) {
    // highest frequency in the integrand, in half-periods per unit
    const double freq = static_cast<double>((i + j) * h.max_support());
    std::size_t intervals = std::max<std::size_t>(4096, static_cast<std::size_t>(64.0 * freq));
    intervals += intervals % 2;
    const double step = 1.0 / static_cast<double>(intervals);
    Complex acc{};
    for (std::size_t r = 0; r <= intervals; ++r) {
        const double x = static_cast<double>(r) * step;
        const double w = (r == 0 || r == intervals) ? 1.0 : (r % 2 ? 4.0 : 2.0);
        acc += w * sine_value(h, static_cast<double>(i) * x) * std::conj(sine_value(h, static_cast<double>(j) * x));
    }
    return acc * (step / 3.0);
}

Complex circle_inner(const DilationVector& h, std::uint64_t i, std::uint64_t j) {
    // f(w^i) conj f(w^j) has frequencies in [-j M, i M]; R above the spread is exact
    const std::uint64_t nodes = (i + j) * h.max_support() + 1;
    Complex acc{};
    for (std::uint64_t r = 0; r < nodes; ++r) {
        const double theta = 2.0 * M_PI * static_cast<double>(r) / static_cast<double>(nodes);
        Complex fi{}, fj{};
        for (const auto& [n, c] : h.coeffs) {
            fi += c * std::polar(1.0, theta * static_cast<double>(i * n));
            fj += c * std::polar(1.0, theta * static_cast<double>(j * n));
        }
        acc += fi * std::conj(fj);
    }
    return acc / static_cast<double>(nodes);
}

}  // namespace

HermitianMatrix gram_quadrature_oracle(const DilationVector& h, const IndexSet& sigma) {
    if (sigma.is_additive()) throw InvalidArgument("gram oracle needs a multiplicative index set");
    const auto& labels = sigma.integers();
    const auto n = static_cast<Eigen::Index>(labels.size());
    Eigen::MatrixXcd g = Eigen::MatrixXcd::Zero(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        for (Eigen::Index b = a; b < n; ++b) {
            const auto i = labels[static_cast<std::size_t>(a)];
            const auto j = labels[static_cast<std::size_t>(b)];
            Complex v = h.basis == Basis::sine ? simpson_inner(h, i, j) : circle_inner(h, i, j);
            if (a == b) v = v.real();
            g(a, b) = v;
            g(b, a) = std::conj(v);
        }
    }
    return HermitianMatrix(std::move(g));
}

GramBounds gram_bounds_check(const DilationVector& h, const IndexSet& sigma, const PrimeTable& table,
                             std::size_t max_dim) {
    if (h.is_zero()) throw InvalidArgument("gram bounds need h != 0");
    GramBounds out;
    const Symbol lifted = lift_symbol(h, table);
    out.upper = h.norm_sq();

    const ValueRange range = value_range(lifted, 4);
    out.floored = !(range.min > kLogFloor);
    QuadratureOptions opts;
    opts.floor = kLogFloor;
    const Quadrature q = integrate(lifted, ScalarFn::log(), opts);
    out.lower = std::exp(q.value);
    out.lower_converged = q.converged;

    const HermitianMatrix g = gram_matrix(h, sigma, table, max_dim);
    const SpectralSummary spec = eigenvalues(g);
    out.min_eigenvalue = spec.eigenvalues.empty() ? 0.0 : spec.eigenvalues.front();
    const DetRoot root = geometric_mean_det(g);
    out.middle = root.value;

    const bool lower_ok = out.lower <= out.middle + kInequalitySlack * std::max(1.0, out.middle);
    const bool upper_ok = out.middle <= out.upper + kInequalitySlack;
    out.passed = lower_ok && upper_ok && out.min_eigenvalue >= -kInequalitySlack &&
                 std::isfinite(out.lower) && std::isfinite(out.middle);
    return out;
}

}  // namespace szego
