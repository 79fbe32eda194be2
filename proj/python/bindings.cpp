#include <pybind11/complex.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "szego/acceptance.hpp"
#include "szego/decompose.hpp"
#include "szego/error.hpp"
#include "szego/experiments.hpp"
#include "szego/gram.hpp"
#include "szego/grid.hpp"
#include "szego/indexing.hpp"
#include "szego/spectral.hpp"
#include "szego/toeplitz.hpp"

namespace py = pybind11;

namespace {

const szego::PrimeTable& table() {
    static const szego::PrimeTable t;
    return t;
}

szego::Symbol symbol_of(const std::string& json) { return szego::Symbol::from_json(nlohmann::json::parse(json)); }

szego::IndexSet multiplicative(const std::vector<std::uint64_t>& labels) { return szego::IndexSet::multiplicative(labels); }

szego::IndexSet additive(const std::vector<std::vector<int>>& labels) {
    std::vector<szego::MultiIndex> points;
    for (const auto& l : labels) points.emplace_back(l);
    return szego::IndexSet::additive(std::move(points));
}

std::vector<std::vector<std::complex<double>>> rows_of(const szego::HermitianMatrix& m) {
    std::vector<std::vector<std::complex<double>>> out(m.dim(), std::vector<std::complex<double>>(m.dim()));
    for (std::size_t i = 0; i < m.dim(); ++i)
        for (std::size_t j = 0; j < m.dim(); ++j) out[i][j] = m(i, j);
    return out;
}

}  // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "Szego limit experiments on truncated Toeplitz matrices";

    py::register_exception<szego::Error>(m, "Error", PyExc_RuntimeError);
    py::register_exception<szego::ConfigError>(m, "ConfigError", PyExc_ValueError);
    py::register_exception<szego::CapacityError>(m, "CapacityError", PyExc_RuntimeError);
    py::register_exception<szego::DomainError>(m, "DomainError", PyExc_ValueError);
    py::register_exception<szego::InvalidArgument>(m, "InvalidArgument", PyExc_ValueError);

    m.def("factorize", [](std::uint64_t n) {
        const szego::MultiIndex kappa = szego::factorize(n, table());
        return std::vector<int>(kappa.exponents().begin(), kappa.exponents().end());
    });
    m.def("smooth_numbers", [](std::size_t k, std::uint64_t n) { return szego::smooth_numbers(k, n, table()); });
    m.def("coprime_residuals", [](std::size_t k, std::uint64_t bound) { return szego::coprime_residuals(k, bound, table()); });

    m.def("multiplicative_matrix", [](const std::string& symbol, const std::vector<std::uint64_t>& labels) {
        return rows_of(szego::assemble_multiplicative(symbol_of(symbol), multiplicative(labels), table()));
    }, py::arg("symbol"), py::arg("labels"));
    m.def("additive_matrix", [](const std::string& symbol, const std::vector<std::vector<int>>& labels) {
        return rows_of(szego::assemble_additive(symbol_of(symbol), additive(labels)));
    }, py::arg("symbol"), py::arg("labels"));
    m.def("geo_mean_natural", [](const std::string& symbol, std::uint64_t n) {
        return szego::geometric_mean_det(szego::assemble_multiplicative(symbol_of(symbol), szego::IndexSet::natural(n), table())).value;
    });
    m.def("geo_mean_additive", [](const std::string& symbol, const std::vector<std::vector<int>>& labels) {
        return szego::geometric_mean_det(szego::assemble_additive(symbol_of(symbol), additive(labels))).value;
    });
    m.def("block_spectrum", [](const std::string& symbol, std::uint64_t n, std::size_t k) {
        return szego::block_spectrum(symbol_of(symbol), n, k, table()).eigenvalues;
    });
    m.def("log_mean", [](const std::string& symbol) {
        return szego::integrate(symbol_of(symbol), szego::ScalarFn::log()).value;
    });
    m.def("limit_measure_moment", [](const std::string& symbol, const std::string& f, std::size_t k, std::uint64_t cutoff) {
        const auto lm = szego::limit_measure_moment(symbol_of(symbol), szego::ScalarFn::parse(f), k, cutoff, table());
        return py::make_tuple(lm.value, lm.tail_bound);
    });
    m.def("log2_floor_series", &szego::log2_floor_series);
    m.def("gram_matrix", [](const std::string& vector, const std::vector<std::uint64_t>& labels) {
        return rows_of(szego::gram_matrix(szego::DilationVector::from_json(nlohmann::json::parse(vector)), multiplicative(labels), table()));
    });
    m.def("run_experiment", [](const std::string& config, std::uint64_t seed, std::size_t max_dim) {
        szego::RunOptions o;
        o.seed = seed;
        o.max_dim = max_dim;
        const auto result = szego::run_experiment(szego::ExperimentConfig::from_json(nlohmann::json::parse(config)), o);
        return result.summary(o).dump();
    }, py::arg("config"), py::arg("seed") = 0, py::arg("max_dim") = 2048);
    m.def("run_criterion", [](int id, std::uint64_t seed) {
        szego::AcceptanceOptions o;
        o.seed = seed;
        const auto r = szego::run_criterion(id, o);
        return py::make_tuple(r.passed, szego::format_line(r));
    }, py::arg("id"), py::arg("seed") = 0);
}
