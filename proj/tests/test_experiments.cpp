#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>

#include "szego/error.hpp"
#include "szego/experiments.hpp"

using namespace szego;
using nlohmann::json;

namespace {

ExperimentConfig parse(const char* text) { return ExperimentConfig::from_json(json::parse(text)); }

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::ostringstream os;
    os << in.rdbuf();
    return os.str();
}

const char* kConstant = R"({"experiment": "szego-folner", "name": "c",
  "symbol": {"k": 1, "coeffs": [{"kappa": [], "re": 3.0, "im": 0.0}]},
  "schedule": [4, 8, 16, 32], "tolerance": 1e-12})";

}  // namespace

TEST_CASE("config errors") {
    CHECK_THROWS_AS(parse(R"({"experiment": "nope", "schedule": [1]})"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"experiment": "identity", "schedule": [4, 2]})"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"experiment": "identity", "schedule": [0, 2]})"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"experiment": "identity", "schedule": [2], "tolerance": -1})"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"experiment": "identity", "schedule": [2], "tolerance": "x"})"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"experiment": "identity", "schedule": [2], "colour": 1})"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"experiment": "szego-folner", "schedule": [2]})"), ConfigError);
    CHECK_THROWS_AS(parse(R"({"experiment": "szego-folner", "schedule": [2], "symbol": {"k": 1, "coeffs": 3}})"),
                    ConfigError);
    CHECK_THROWS_AS(ExperimentConfig::load("/nonexistent/config.json"), ConfigError);
    CHECK_NOTHROW(parse(R"({"experiment": "identity", "schedule": [2], "tolerance": 0})"));
}

TEST_CASE("identity experiment") {
    const ExperimentResult r = run_experiment(parse(R"({"experiment": "identity", "k": 1, "schedule": [1000, 1000000], "tolerance": 5e-5})"));
    CHECK(r.passed());
    CHECK(r.report.final_gap() <= 5e-5);
    CHECK(r.report.rows().back().reference == 1.0);
    const json s = r.summary({});
    CHECK(s["schema"] == 1);
}

TEST_CASE("constant symbol has zero gaps") {
    const ExperimentResult r = run_experiment(parse(kConstant));
    CHECK(r.passed());
    REQUIRE(r.report.rows().size() == 4);
    for (const ReportRow& row : r.report.rows()) CHECK(row.gap == 0.0);
}

TEST_CASE("decompose bench") {
    const ExperimentResult r = run_experiment(parse(R"({"experiment": "decompose-bench", "k": 1,
        "symbol": {"k": 1, "coeffs": [{"kappa": [], "re": 2.0, "im": 0.0}, {"kappa": [1], "re": 0.5, "im": 0.0}]},
        "schedule": [512, 2048], "tolerance": 1e-9, "dump_decomposition": true})"));
    CHECK(r.passed());
    for (const ReportRow& row : r.report.rows()) CHECK(row.gap <= 1e-9);
    CHECK(r.decomposition.has_value());
}

TEST_CASE("zero tolerance fails") {
    const ExperimentResult r = run_experiment(parse(R"({"experiment": "identity", "k": 1, "schedule": [1000], "tolerance": 0})"));
    CHECK_FALSE(r.passed());
    REQUIRE(r.first_failure() != nullptr);
}

TEST_CASE("NaN never passes") {
    const double nan = std::numeric_limits<double>::quiet_NaN();
    CHECK_FALSE(make_assertion("x", nan, 1.0).passed);
    CHECK_FALSE(make_assertion("x", 0.0, nan).passed);
    CHECK(make_assertion("x", 1.0, 1.0).passed);
    MomentReport rep("s", "r");
    rep.add(1, nan, 0.0);
    CHECK_FALSE(rep.finite());
}

TEST_CASE("capacity limit") {
    RunOptions opts;
    opts.max_dim = 16;
    CHECK_THROWS_AS(run_experiment(parse(kConstant), opts), CapacityError);
}

TEST_CASE("outputs are byte-identical across runs") {
    const auto dir = std::filesystem::temp_directory_path() / "szego_lab_determinism";
    std::filesystem::remove_all(dir);
    const ExperimentConfig cfg = parse(R"({"experiment": "szego-natural", "name": "det", "symbol": "random",
        "schedule": [16, 32, 64], "tolerance": 1.0, "dump_matrix": true})");
    std::string first, first_matrix;
    for (int pass = 0; pass < 2; ++pass) {
        const ExperimentResult r = run_experiment(cfg, {7, 2048});
        write_outputs(r, {7, 2048}, dir);
        const std::string csv = slurp(dir / "det.csv");
        const std::string matrix = slurp(dir / "det.matrix.csv");
        CHECK(csv.rfind("size,statistic,reference,gap\r\n", 0) == 0);
        if (pass == 0) {
            first = csv;
            first_matrix = matrix;
        } else {
            CHECK(csv == first);
            CHECK(matrix == first_matrix);
        }
    }
    const json summary = json::parse(slurp(dir / "det.json"));
    CHECK(summary["schema"] == 1);
    std::filesystem::remove_all(dir);
}
