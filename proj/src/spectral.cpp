#include "szego/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include <lapacke.h>

#include "szego/error.hpp"

namespace szego {

double SpectralSummary::geo_mean() const {
    if (!logdet || eigenvalues.empty()) return 0.0;
    return std::exp(*logdet / static_cast<double>(eigenvalues.size()));
}

double SpectralSummary::normalized_trace(const ScalarFn& f) const {
    if (eigenvalues.empty()) throw InvalidArgument("normalized trace of an empty spectrum");
    long double acc = 0.0L;
    for (double l : eigenvalues) acc += f(l);
    return static_cast<double>(acc / static_cast<long double>(eigenvalues.size()));
}

double SpectralSummary::moment(int m) const { return normalized_trace(ScalarFn::power(m)); }

double SpectralSummary::trace() const {
    long double acc = 0.0L;
    for (double l : eigenvalues) acc += l;
    return static_cast<double>(acc);
}

std::vector<std::pair<double, std::size_t>> SpectralSummary::atoms(double tolerance) const {
    std::vector<std::pair<double, std::size_t>> out;
    for (double l : eigenvalues) {
        if (!out.empty() && l - out.back().first <= tolerance)
            ++out.back().second;
        else
            out.emplace_back(l, 1);
    }
    return out;
}

SpectralSummary SpectralSummary::from_eigenvalues(std::vector<double> values) {
    std::sort(values.begin(), values.end());
    SpectralSummary s;
    s.eigenvalues = std::move(values);
    if (!s.eigenvalues.empty() && s.eigenvalues.front() > 0.0) {
        long double acc = 0.0L;
        for (double l : s.eigenvalues) acc += std::log(static_cast<long double>(l));
        s.logdet = static_cast<double>(acc);
    }
    return s;
}

namespace {

std::vector<double> lapack_eigen(const HermitianMatrix& m, char jobz, Eigen::MatrixXcd* vectors) {
    const auto n = static_cast<lapack_int>(m.dim());
    std::vector<double> w(static_cast<std::size_t>(n));
    if (n == 0) return w;
    if (m.is_real()) {
        Eigen::MatrixXd a = m.data().real();
        const lapack_int info = LAPACKE_dsyevd(LAPACK_COL_MAJOR, jobz, 'L', n, a.data(), n, w.data());
        if (info != 0) throw Error("dsyevd failed with info " + std::to_string(info));
        if (vectors) *vectors = a.cast<Complex>();
    } else {
        Eigen::MatrixXcd a = m.data();
        const lapack_int info = LAPACKE_zheevd(LAPACK_COL_MAJOR, jobz, 'L', n,
                                               reinterpret_cast<lapack_complex_double*>(a.data()), n, w.data());
        if (info != 0) throw Error("zheevd failed with info " + std::to_string(info));
        if (vectors) *vectors = std::move(a);
    }
    return w;
}

// log det via Cholesky; nullopt when the factorization breaks down. Each
// pivot is taken as a_ii - sum_{k<i} |L_ik|^2 rather than L_ii^2, which is
// exact whenever the factor is (scalar matrices in particular).
std::optional<double> cholesky_logdet(const HermitianMatrix& m) {
    const auto n = static_cast<lapack_int>(m.dim());
    if (n == 0) return 0.0;
    auto log_pivots = [&](const auto& l, auto abs_sq) {
        long double acc = 0.0L;
        for (lapack_int i = 0; i < n; ++i) {
            long double pivot = m(std::size_t(i), std::size_t(i)).real();
            for (lapack_int k = 0; k < i; ++k) pivot -= abs_sq(l(i, k));
            if (!(pivot > 0.0L)) pivot = abs_sq(l(i, i));
            acc += std::log(static_cast<double>(pivot));
        }
        return static_cast<double>(acc);
    };
    if (m.is_real()) {
        Eigen::MatrixXd a = m.data().real();
        if (LAPACKE_dpotrf(LAPACK_COL_MAJOR, 'L', n, a.data(), n) != 0) return std::nullopt;
        return log_pivots(a, [](double x) { return static_cast<long double>(x) * x; });
    }
    Eigen::MatrixXcd a = m.data();
    if (LAPACKE_zpotrf(LAPACK_COL_MAJOR, 'L', n, reinterpret_cast<lapack_complex_double*>(a.data()), n) != 0)
        return std::nullopt;
    return log_pivots(a, [](Complex z) {
        return static_cast<long double>(z.real()) * z.real() + static_cast<long double>(z.imag()) * z.imag();
    });
}

}  // namespace

SpectralSummary eigenvalues(const HermitianMatrix& m) {
    return SpectralSummary::from_eigenvalues(lapack_eigen(m, 'N', nullptr));
}

EigenDecomposition eigen_decomposition(const HermitianMatrix& m) {
    EigenDecomposition e;
    e.values = lapack_eigen(m, 'V', &e.vectors);
    return e;
}

double max_residual(const HermitianMatrix& m, const EigenDecomposition& e) {
    double worst = 0.0;
    for (std::size_t j = 0; j < e.values.size(); ++j) {
        const Eigen::VectorXcd v = e.vectors.col(Eigen::Index(j));
        worst = std::max(worst, (m.data() * v - e.values[j] * v).norm());
    }
    return worst;
}

DetRoot geometric_mean_det(const HermitianMatrix& m) {
    if (m.dim() == 0) throw InvalidArgument("determinant root of an empty matrix");
    DetRoot d;
    const auto logdet = cholesky_logdet(m);
    if (!logdet) {
        d.logdet = -std::numeric_limits<double>::infinity();
        return d;
    }
    d.positive_definite = true;
    d.logdet = *logdet;
    d.value = std::exp(*logdet / static_cast<double>(m.dim()));
    return d;
}

double trace_f(const HermitianMatrix& m, const ScalarFn& f) { return eigenvalues(m).normalized_trace(f); }

double trace_power(const HermitianMatrix& m, int p) {
    if (p < 0) throw InvalidArgument("trace_power needs p >= 0");
    const auto n = static_cast<double>(m.dim());
    if (p == 0) return 1.0;
    Eigen::MatrixXcd acc = m.data();
    for (int i = 1; i < p; ++i) acc = acc * m.data();
    return acc.trace().real() / n;
}

double inverse_product_trace(const HermitianMatrix& a, const HermitianMatrix& b, int p) {
    if (a.dim() != b.dim()) throw InvalidArgument("inverse_product_trace needs equal dimensions");
    if (p < 0) throw InvalidArgument("inverse_product_trace needs p >= 0");
    if (p == 0) return 1.0;
    Eigen::LLT<Eigen::MatrixXcd> llt(b.data());
    if (llt.info() != Eigen::Success) throw DomainError("denominator matrix is not positive definite");
    // A B^{-1} = (B^{-1} A)^* since both are Hermitian.
    const Eigen::MatrixXcd c = llt.solve(a.data()).adjoint();
    Eigen::MatrixXcd acc = c;
    for (int i = 1; i < p; ++i) acc = acc * c;
    return acc.trace().real() / static_cast<double>(a.dim());
}

BoundsRecord szego_bounds_check(const Symbol& s, const IndexSet& sigma, const PrimeTable& table,
                                std::size_t max_dim) {
    const ValueRange range = certify_positive(s);
    BoundsRecord r;
    const Quadrature q = integrate(s, ScalarFn::log());
    r.lower = std::exp(q.value);
    r.lower_converged = q.converged;
    r.upper = l1_norm(to_grid(s, range.resolution));
    r.middle = geometric_mean_det(assemble(s, sigma, table, max_dim)).value;
    r.passed = r.lower - kInequalitySlack <= r.middle && r.middle <= r.upper + kInequalitySlack;
    return r;
}

MomentReport folner_limit_experiment(const Symbol& s, std::span<const IndexSet> sigmas, const ScalarFn& f,
                                     const PrimeTable& table, std::size_t max_dim) {
    if (f.is_log()) {
        certify_positive(s);
        MomentReport report("det_root", "exp(mean log phi), adaptive torus quadrature");
        const double ref = std::exp(integrate(s, ScalarFn::log()).value);
        for (const auto& sigma : sigmas)
            report.add(sigma.size(), geometric_mean_det(assemble(s, sigma, table, max_dim)).value, ref);
        return report;
    }
    MomentReport report("normalized_trace:" + f.name(), "mean " + f.name() + "(phi), adaptive torus quadrature");
    const double ref = integrate(s, f).value;
    for (const auto& sigma : sigmas) report.add(sigma.size(), trace_f(assemble(s, sigma, table, max_dim), f), ref);
    return report;
}

MomentReport ratio_trace_experiment(const Symbol& psi, const Symbol& phi, std::span<const IndexSet> sigmas, int p,
                                    const PrimeTable& table, std::size_t max_dim) {
    certify_positive(phi);
    const std::size_t k = std::max<std::size_t>({1, psi.variable_count(), phi.variable_count()});
    auto mean_at = [&](std::size_t r) {
        const GridSymbol a = to_grid(psi, r, k);
        const GridSymbol b = to_grid(phi, r, k);
        long double acc = 0.0L;
        for (std::size_t i = 0; i < a.point_count(); ++i) acc += std::pow(a.values()[i] / b.values()[i], p);
        return static_cast<double>(acc / static_cast<long double>(a.point_count()));
    };
    std::size_t r = std::max({oversampled_resolution(psi, 4), oversampled_resolution(phi, 4), std::size_t{8}});
    double ref = mean_at(r);
    for (int iter = 0; iter < 12; ++iter) {
        const double next = mean_at(2 * r);
        r *= 2;
        const bool done = std::abs(next - ref) < 1e-10;
        ref = next;
        if (done || std::pow(double(r), double(k)) > double(std::size_t{1} << 22)) break;
    }
    MomentReport report("ratio_trace:" + std::to_string(p), "mean (psi/phi)^p, adaptive torus quadrature");
    for (const auto& sigma : sigmas) {
        const auto a = assemble(psi, sigma, table, max_dim);
        const auto b = assemble(phi, sigma, table, max_dim);
        report.add(sigma.size(), inverse_product_trace(a, b, p), ref);
    }
    return report;
}

ClampReport clamp_limit_experiment(const Symbol& s, std::span<const double> levels, const IndexSet& sigma,
                                   const PrimeTable& table, std::size_t max_dim, std::size_t min_resolution) {
    certify_positive(s);
    if (sigma.empty()) throw InvalidArgument("clamp experiment needs a non-empty index set");
    std::vector<double> sorted(levels.begin(), levels.end());
    std::sort(sorted.begin(), sorted.end());

    const int band = difference_band(sigma, table);
    const std::size_t resolution =
        std::max({min_resolution, static_cast<std::size_t>(2 * band + 1), oversampled_resolution(s, 1)});
    const GridSymbol grid = to_grid(s, resolution);
    const auto n = static_cast<double>(sigma.size());

    const HermitianMatrix t_phi = assemble(s, sigma, table, max_dim);
    const SpectralSummary spec_phi = eigenvalues(t_phi);
    const DetRoot root_phi = geometric_mean_det(t_phi);

    ClampReport report;
    report.geo_mean = root_phi.value;
    report.resolution = resolution;
    report.monotone = report.controlled = report.eigen_dominated = true;

    double previous_log = -std::numeric_limits<double>::infinity();
    for (double level : sorted) {
        const GridSymbol clamped = clamp_max(grid, level);
        if (!(clamped.min() > 0.0)) throw DomainError("clamp level must stay above the symbol's minimum");
        const HermitianMatrix t_n = assemble(from_grid(clamped, band), sigma, table, max_dim);
        const SpectralSummary spec_n = eigenvalues(t_n);
        const DetRoot root_n = geometric_mean_det(t_n);

        ClampLevel row;
        row.level = level;
        row.geo_mean = root_n.value;
        row.log_gap = (root_phi.logdet - root_n.logdet) / n;
        long double diff = 0.0L;
        for (std::size_t i = 0; i < grid.point_count(); ++i) diff += grid.values()[i] - clamped.values()[i];
        row.l1_distance = static_cast<double>(diff / static_cast<long double>(grid.point_count()));
        row.control_bound = row.l1_distance / clamped.min();
        row.max_eigen_excess = -std::numeric_limits<double>::infinity();
        for (std::size_t i = 0; i < spec_n.dimension(); ++i)
            row.max_eigen_excess = std::max(row.max_eigen_excess, spec_n.eigenvalues[i] - spec_phi.eigenvalues[i]);

        const double normalized_log = root_n.logdet / n;
        if (!(normalized_log >= previous_log - kInequalitySlack)) report.monotone = false;
        previous_log = normalized_log;
        if (!(row.log_gap >= -kInequalitySlack && row.log_gap <= row.control_bound + kInequalitySlack))
            report.controlled = false;
        if (!(row.max_eigen_excess <= kInequalitySlack)) report.eigen_dominated = false;
        report.levels.push_back(row);
    }
    return report;
}

}  // namespace szego
