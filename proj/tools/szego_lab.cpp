#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include <CLI11.hpp>

#include "szego/acceptance.hpp"
#include "szego/error.hpp"
#include "szego/experiments.hpp"

namespace {

enum Exit { kPass = 0, kAssertion = 1, kConfig = 2, kCapacity = 3 };

std::string one_line(std::string s) {
    for (char& c : s)
        if (c == '\n' || c == '\r') c = ' ';
    return s;
}

int fail(int code, const std::string& status, const std::string& detail) {
    std::cerr << "szego_lab: status=" << status << " reason=\"" << one_line(detail) << "\"\n";
    return code;
}

std::size_t default_max_dim() {
    const char* env = std::getenv("SZEGO_LAB_MAX_DIM");
    if (!env || !*env) return 2048;
    std::size_t pos = 0;
    unsigned long long v = 0;
    try {
        v = std::stoull(env, &pos);
    } catch (const std::exception&) {
        pos = 0;
    }
    if (pos != std::string(env).size() || v == 0) throw szego::ConfigError("SZEGO_LAB_MAX_DIM must be a positive integer");
    return static_cast<std::size_t>(v);
}

int run(const std::string& config_path, const szego::RunOptions& options, const std::filesystem::path& out) {
    const auto config = szego::ExperimentConfig::load(config_path);
    const auto result = szego::run_experiment(config, options);
    szego::write_outputs(result, options, out);
    for (const auto& a : result.assertions)
        std::cout << (a.passed ? "PASS " : "FAIL ") << result.name << ' ' << a.name << " value=" << a.value
                  << " threshold=" << a.threshold << '\n';
    if (const auto* f = result.first_failure())
        return fail(kAssertion, "assertion_failed",
                    result.name + ": " + f->name + " value=" + std::to_string(f->value) +
                        " threshold=" + std::to_string(f->threshold));
    return kPass;
}

int verify_all(const std::optional<std::string>& config_path, std::optional<std::uint64_t> seed, std::size_t max_dim,
               std::size_t threads, const std::filesystem::path& out) {
    szego::AcceptanceOptions options = config_path ? szego::AcceptanceOptions::load(*config_path) : szego::AcceptanceOptions{};
    if (seed) options.seed = *seed;
    options.max_dim = max_dim;
    options.threads = threads;

    std::cout << szego::format_claim_matrix() << '\n';
    const auto results = szego::run_acceptance(options);
    nlohmann::json report = nlohmann::json::array();
    bool all = true, capacity = false;
    const szego::CriterionResult* first = nullptr;
    for (const auto& r : results) {
        std::cout << szego::format_line(r) << '\n';
        report.push_back(r.to_json());
        if (!r.passed && !first) first = &r;
        all = all && r.passed;
        capacity = capacity || r.capacity_error;
    }
    std::filesystem::create_directories(out);
    std::ofstream(out / "acceptance.json") << nlohmann::json{{"schema", 1},
                                                            {"seed", options.seed},
                                                            {"tolerance_scale", options.tolerance_scale},
                                                            {"passed", all},
                                                            {"criteria", report}}
                                                  .dump(2)
                                           << '\n';
    if (capacity) return fail(kCapacity, "capacity_error", "c" + std::to_string(first->id) + ": " + first->detail);
    if (!all) return fail(kAssertion, "assertion_failed", "c" + std::to_string(first->id) + " " + first->title);
    return kPass;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Szego limit experiments on finite truncations of Toeplitz operators"};
    app.fallthrough();
    std::optional<std::string> config;
    std::uint64_t seed = 0;
    std::string out = "szego_out";
    std::optional<std::size_t> max_dim;
    std::size_t threads = 1;
    app.add_option("--config", config, "experiment or acceptance config (JSON)");
    app.add_option("--seed", seed, "seed for randomized cases")->capture_default_str();
    app.add_option("--out", out, "output directory")->capture_default_str();
    app.add_option("--max-dim", max_dim, "largest matrix dimension (default 2048, or SZEGO_LAB_MAX_DIM)")
        ->check(CLI::PositiveNumber);
    app.add_option("--threads", threads, "worker threads for verify-all")->check(CLI::PositiveNumber)->capture_default_str();
    auto* run_cmd = app.add_subcommand("run", "run one experiment config");
    auto* verify_cmd = app.add_subcommand("verify-all", "run the acceptance suite");
    app.require_subcommand(0, 1);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        return fail(kConfig, "config_error", e.what());
    }

    try {
        szego::RunOptions options;
        options.seed = seed;
        options.max_dim = max_dim ? *max_dim : default_max_dim();
        if (verify_cmd->parsed())
            return verify_all(config, app.count("--seed") ? std::optional(seed) : std::nullopt, options.max_dim, threads, out);
        if (!config) return fail(kConfig, "config_error", run_cmd->parsed() ? "run needs --config" : "give a subcommand or --config");
        return run(*config, options, out);
    } catch (const szego::ConfigError& e) {
        return fail(kConfig, "config_error", e.what());
    } catch (const szego::CapacityError& e) {
        return fail(kCapacity, "capacity_error", std::string(e.what()) + " required=" + std::to_string(e.required()));
    } catch (const szego::InvalidArgument& e) {
        return fail(kConfig, "config_error", e.what());
    } catch (const szego::DomainError& e) {
        return fail(kConfig, "config_error", e.what());
    } catch (const std::exception& e) {
        return fail(kAssertion, "error", e.what());
    }
}
