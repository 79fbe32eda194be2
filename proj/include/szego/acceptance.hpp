#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

#include "szego/symbol.hpp"

namespace szego {

struct AcceptanceOptions {
    std::uint64_t seed = 0;
    /// Multiplies every pinned tolerance; 0 forces the failure path.
    double tolerance_scale = 1.0;
    std::size_t threads = 1;
    std::size_t max_dim = 4096;
    /// Extra symbols folded into the sandwich and Hilbert-Schmidt checks.
    std::vector<Symbol> extra_symbols;
    /// Criterion ids to run; empty runs all of them.
    std::vector<int> criteria;

    /// {"tolerance_scale": x, "criteria": [ids], "symbols": [paths], "seed": n}. Throws ConfigError.
    static AcceptanceOptions from_json(const nlohmann::json& j, const std::filesystem::path& base_dir = {});
    static AcceptanceOptions load(const std::filesystem::path& path);
};

struct CriterionResult {
    int id = 0;
    std::string title;
    bool passed = false;
    double seconds = 0.0;
    double budget_seconds = 0.0;
    std::string detail;
    bool capacity_error = false;
    nlohmann::json to_json() const;
};

inline constexpr int kCriterionCount = 10;

struct ClaimRow {
    std::string claim;
    int criterion = 0;
    std::string tests;
};

const std::vector<ClaimRow>& claim_matrix();
std::string format_claim_matrix();

/// Runs one criterion; a criterion passes only within its time budget.
CriterionResult run_criterion(int id, const AcceptanceOptions& options);

/// Runs the selected criteria on a pool of options.threads workers; results in id order.
std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options);

/// "PASS c1 <title>: <detail> [0.41 s / 10 s]"
std::string format_line(const CriterionResult& r);

}  // namespace szego
