#pragma once

#include <cstdint>
#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "szego/gram.hpp"
#include "szego/index_set.hpp"
#include "szego/report.hpp"
#include "szego/scalar_fn.hpp"
#include "szego/symbol.hpp"

namespace szego {

enum class ExperimentKind { szego_folner, szego_natural, measure_series, identity, gram, lattice, decompose_bench };

std::string to_string(ExperimentKind kind);
ExperimentKind parse_experiment_kind(const std::string& name);

struct ExperimentConfig {
    ExperimentKind kind = ExperimentKind::identity;
    std::string name;
    std::optional<Symbol> symbol;
    bool random_symbol = false;  // "symbol": "random", drawn from the run seed
    std::optional<DilationVector> vector;
    IndexMode mode = IndexMode::additive;
    std::string sigma = "natural";  // gram: "natural" or "folner"
    std::string function = "log";
    std::vector<std::uint64_t> schedule;
    double tolerance = 0.0;
    std::size_t k = 1;
    std::uint64_t cutoff = 0;
    bool dump_matrix = false;
    bool dump_decomposition = false;

    /// Relative file references resolve against `base_dir`. Throws ConfigError.
    static ExperimentConfig from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
    static ExperimentConfig load(const std::filesystem::path& path);
};

struct RunOptions {
    std::uint64_t seed = 0;
    std::size_t max_dim = 2048;
};

struct Assertion {
    std::string name;
    double value = 0.0;
    double threshold = 0.0;
    bool passed = false;
};

struct ExperimentResult {
    std::string name;
    ExperimentKind kind = ExperimentKind::identity;
    MomentReport report{"", ""};
    std::vector<Assertion> assertions;
    std::vector<double> row_seconds;
    double total_seconds = 0.0;
    nlohmann::json extra = nlohmann::json::object();
    std::optional<std::string> matrix_csv;
    std::optional<nlohmann::json> decomposition;

    bool passed() const;
    const Assertion* first_failure() const;
    nlohmann::json summary(const RunOptions& options) const;
};

/// `value <= threshold`, failing on NaN.
Assertion make_assertion(std::string name, double value, double threshold);

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options = {});

/// <dir>/<name>.csv, <dir>/<name>.json and the optional dumps.
void write_outputs(const ExperimentResult& result, const RunOptions& options, const std::filesystem::path& dir);

}  // namespace szego
