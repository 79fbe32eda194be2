#include "szego/experiments.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include "szego/decompose.hpp"
#include "szego/error.hpp"
#include "szego/grid.hpp"
#include "szego/indexing.hpp"
#include "szego/random.hpp"
#include "szego/spectral.hpp"
#include "szego/toeplitz.hpp"

namespace szego {

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

struct KindName {
    ExperimentKind kind;
    const char* name;
};

constexpr KindName kKinds[] = {
    {ExperimentKind::szego_folner, "szego-folner"},   {ExperimentKind::szego_natural, "szego-natural"},
    {ExperimentKind::measure_series, "measure-series"}, {ExperimentKind::identity, "identity"},
    {ExperimentKind::gram, "gram"},                   {ExperimentKind::lattice, "lattice"},
    {ExperimentKind::decompose_bench, "decompose-bench"},
};

double default_tolerance(ExperimentKind kind, std::size_t k) {
    switch (kind) {
        case ExperimentKind::szego_folner: return 1e-2;
        case ExperimentKind::szego_natural: return 1e-2;
        case ExperimentKind::measure_series: return 1e-9;
        case ExperimentKind::identity: return k == 1 ? 5e-5 : 2e-4;
        case ExperimentKind::gram: return 5e-2;
        case ExperimentKind::lattice: return 0.30;
        case ExperimentKind::decompose_bench: return 1e-9;
    }
    return 0.0;
}

nlohmann::json read_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    try {
        return nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed JSON in '" + path.string() + "': " + e.what());
    }
}

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& ref) {
    std::filesystem::path p(ref);
    return p.is_absolute() || base.empty() ? p : base / p;
}

std::uint64_t positive_integer(const nlohmann::json& j, const char* field) {
    if (!j.is_number_integer() || j.get<std::int64_t>() < 1)
        throw ConfigError(std::string(field) + " must be a positive integer");
    return j.get<std::uint64_t>();
}

const Symbol& require_symbol(const ExperimentConfig& c, std::optional<Symbol>& drawn, std::uint64_t seed) {
    if (c.symbol) return *c.symbol;
    if (c.random_symbol) {
        if (!drawn) {
            Rng rng(seed);
            drawn = random_positive_symbol(rng);
        }
        return *drawn;
    }
    throw ConfigError(to_string(c.kind) + " needs a symbol");
}

double max_entry_deviation(const HermitianMatrix& a, const HermitianMatrix& b) {
    if (a.dim() != b.dim()) return std::numeric_limits<double>::infinity();
    return a.dim() == 0 ? 0.0 : (a.data() - b.data()).cwiseAbs().maxCoeff();
}

double max_sorted_deviation(const std::vector<double>& a, const std::vector<double>& b) {
    if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
    double dev = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) dev = std::max(dev, std::abs(a[i] - b[i]));
    return dev;
}

std::string csv_of(const HermitianMatrix& m) {
    std::ostringstream os;
    write_matrix_csv(m, os);
    return os.str();
}

std::size_t symbol_variables(const Symbol& s) { return std::max<std::size_t>(1, s.variable_count()); }

ExperimentResult run_szego_folner(const ExperimentConfig& c, const RunOptions& o, const PrimeTable& table) {
    std::optional<Symbol> drawn;
    const Symbol& s = require_symbol(c, drawn, o.seed);
    const ScalarFn f = ScalarFn::parse(c.function);
    const std::size_t vars = symbol_variables(s);

    ExperimentResult r;
    std::optional<IndexSet> last;
    for (std::uint64_t size : c.schedule) {
        const auto start = Clock::now();
        IndexSet sigma = c.mode == IndexMode::additive ? folner_box(vars, size, o.max_dim)
                                                       : multiplicative_folner(vars, size, table, o.max_dim);
        const MomentReport one = folner_limit_experiment(s, std::span<const IndexSet>(&sigma, 1), f, table, o.max_dim);
        if (r.report.rows().empty()) r.report = MomentReport(one.statistic_name(), one.reference_source());
        const ReportRow& row = one.rows().front();
        r.report.add(row.size, row.statistic, row.reference);
        r.row_seconds.push_back(seconds_since(start));
        last = std::move(sigma);
    }
    r.assertions.push_back(make_assertion("final_gap", r.report.final_gap(), c.tolerance));
    r.extra["mode"] = c.mode == IndexMode::additive ? "additive" : "multiplicative";
    r.extra["function"] = f.name();
    r.extra["symbol"] = s.to_json();
    if (c.dump_matrix && last) r.matrix_csv = csv_of(assemble(s, *last, table, o.max_dim));
    return r;
}

ExperimentResult run_szego_natural(const ExperimentConfig& c, const RunOptions& o, const PrimeTable& table) {
    std::optional<Symbol> drawn;
    const Symbol& s = require_symbol(c, drawn, o.seed);
    const ScalarFn f = ScalarFn::parse(c.function);
    const std::size_t k = std::max(c.k, symbol_variables(s));
    const std::uint64_t cutoff = c.cutoff ? c.cutoff : c.schedule.back();

    const auto ref_start = Clock::now();
    const LimitMeasure lm = limit_measure_moment(s, f, k, cutoff, table);
    const double ref_seconds = seconds_since(ref_start);
    const bool det = f.is_log();
    const double reference = det ? std::exp(lm.value) : lm.value;
    const double reference_error = det ? reference * std::expm1(lm.tail_bound) : lm.tail_bound;

    ExperimentResult r;
    r.report = MomentReport(det ? "det_root" : "normalized_trace", det ? "exp(limit measure log moment)" : "limit measure moment");
    for (std::uint64_t n : c.schedule) {
        const auto start = Clock::now();
        const double stat = det ? non_folner_detroot(s, n, table) : block_normalized_trace(s, n, k, f, table);
        r.report.add(n, stat, reference);
        r.row_seconds.push_back(seconds_since(start));
    }
    r.assertions.push_back(make_assertion("final_gap", r.report.final_gap(), c.tolerance + reference_error));

    nlohmann::json doubling = nlohmann::json::array();
    for (std::size_t i = 1; i < r.report.rows().size(); ++i)
        doubling.push_back(std::abs(r.report.rows()[i].statistic - r.report.rows()[i - 1].statistic));
    r.extra["successive_gaps"] = doubling;
    r.extra["k"] = k;
    r.extra["cutoff"] = cutoff;
    r.extra["tail_bound"] = lm.tail_bound;
    r.extra["reference_seconds"] = ref_seconds;
    r.extra["function"] = f.name();
    r.extra["symbol"] = s.to_json();

    const std::uint64_t largest = c.schedule.back();
    if (c.dump_decomposition) r.decomposition = partition_classes(largest, k, table).to_json();
    if (c.dump_matrix) r.matrix_csv = csv_of(assemble_multiplicative(s, IndexSet::natural(largest), table, o.max_dim));
    return r;
}

ExperimentResult run_measure_series(const ExperimentConfig& c, const RunOptions& o, const PrimeTable& table) {
    std::optional<Symbol> drawn;
    const Symbol& s = require_symbol(c, drawn, o.seed);
    const ScalarFn f = ScalarFn::parse(c.function);
    const std::size_t k = std::max(c.k, symbol_variables(s));

    std::vector<LimitMeasure> series;
    ExperimentResult r;
    for (std::uint64_t cutoff : c.schedule) {
        const auto start = Clock::now();
        series.push_back(limit_measure_moment(s, f, k, cutoff, table));
        r.row_seconds.push_back(seconds_since(start));
    }
    const double reference = series.back().value;
    r.report = MomentReport("limit_measure_moment", "value at the largest cutoff");
    double excess = 0.0;
    nlohmann::json tails = nlohmann::json::array();
    for (std::size_t i = 0; i < series.size(); ++i) {
        r.report.add(c.schedule[i], series[i].value, reference);
        excess = std::max(excess, r.report.rows().back().gap - series[i].tail_bound);
        tails.push_back(series[i].tail_bound);
    }
    r.assertions.push_back(make_assertion("gap_beyond_tail_bound", excess, c.tolerance));
    r.extra["tail_bounds"] = tails;
    r.extra["prefactor"] = series.back().prefactor;
    r.extra["sup_norm"] = series.back().sup_norm;
    r.extra["k"] = k;
    r.extra["function"] = f.name();
    return r;
}

ExperimentResult run_identity(const ExperimentConfig& c, const RunOptions&, const PrimeTable& table) {
    ExperimentResult r;
    double reference = 1.0;
    if (c.k == 1) {
        r.report = MomentReport("sum floor(log2 n)/(n(n+1))", "1");
    } else {
        table.require_primes(c.k);
        long double euler = 1.0L;
        for (std::size_t j = 0; j < c.k; ++j) euler /= 1.0L - 1.0L / static_cast<long double>(table.prime(j));
        reference = static_cast<double>(euler);
        r.report = MomentReport("sum |Y_n|/(n(n+1))", "prod (1 - 1/p_j)^-1");
    }
    for (std::uint64_t cutoff : c.schedule) {
        const auto start = Clock::now();
        const double stat = c.k == 1 ? log2_floor_series(cutoff) : smooth_count_series(c.k, cutoff, table);
        r.report.add(cutoff, stat, reference);
        r.row_seconds.push_back(seconds_since(start));
    }
    r.assertions.push_back(make_assertion("final_gap", r.report.final_gap(), c.tolerance));
    r.extra["k"] = c.k;
    return r;
}

ExperimentResult run_gram(const ExperimentConfig& c, const RunOptions& o, const PrimeTable& table) {
    if (!c.vector) throw ConfigError("gram needs a vector");
    const DilationVector& h = *c.vector;
    if (h.is_zero()) throw ConfigError("gram needs a nonzero vector");
    const Symbol lifted = lift_symbol(h, table);
    const bool folner = c.sigma == "folner";

    ExperimentResult r;
    r.report = MomentReport("gram_det_root", "exp(int log |Uh|^2)");
    double representation = 0.0, upper_excess = -1.0, lower_excess = -1.0, min_eig = 0.0;
    bool floored = false;
    std::optional<IndexSet> last;
    for (std::uint64_t size : c.schedule) {
        const auto start = Clock::now();
        IndexSet sigma = folner ? multiplicative_folner(symbol_variables(lifted), size, table, o.max_dim)
                                : IndexSet::natural(size);
        const HermitianMatrix direct = gram_matrix(h, sigma, table, o.max_dim);
        const HermitianMatrix fourier = assemble_multiplicative(lifted, sigma, table, o.max_dim);
        representation = std::max(representation, max_entry_deviation(direct, fourier));
        const GramBounds b = gram_bounds_check(h, sigma, table, o.max_dim);
        upper_excess = std::max(upper_excess, b.middle - b.upper);
        lower_excess = std::max(lower_excess, b.lower - b.middle);
        min_eig = std::min(min_eig, b.min_eigenvalue);
        floored = floored || b.floored;
        r.report.add(sigma.size(), b.middle, b.lower);
        r.row_seconds.push_back(seconds_since(start));
        last = std::move(sigma);
    }
    r.assertions.push_back(make_assertion("representation", representation, 1e-12));
    r.assertions.push_back(make_assertion("upper_bound_excess", upper_excess, kInequalitySlack));
    r.assertions.push_back(make_assertion("lower_bound_excess", lower_excess, kInequalitySlack));
    r.assertions.push_back(make_assertion("negative_eigenvalue", -min_eig, kInequalitySlack));
    if (folner) r.assertions.push_back(make_assertion("final_gap", r.report.final_gap(), c.tolerance));
    r.extra["sigma"] = c.sigma;
    r.extra["norm_sq"] = h.norm_sq();
    r.extra["log_floor_hit"] = floored;
    r.extra["vector"] = h.to_json();
    r.extra["lifted_symbol"] = lifted.to_json();
    if (c.dump_matrix && last) r.matrix_csv = csv_of(gram_matrix(h, *last, table, o.max_dim));
    return r;
}

ExperimentResult run_lattice(const ExperimentConfig& c, const RunOptions&, const PrimeTable& table) {
    table.require_primes(c.k);
    std::vector<double> weights;
    for (std::size_t j = 0; j < c.k; ++j) weights.push_back(std::log(static_cast<double>(table.prime(j))));

    ExperimentResult r;
    r.report = MomentReport("|Y_N| k! prod log p_j / (log N)^k", "1");
    double disagreement = 0.0;
    nlohmann::json counts = nlohmann::json::array();
    for (std::uint64_t n : c.schedule) {
        const auto start = Clock::now();
        const LatticeCount lc = lattice_count(weights, std::log(static_cast<double>(n)));
        const std::size_t enumerated = smooth_numbers(c.k, n, table).size();
        disagreement = std::max(disagreement, std::abs(double(lc.count) - double(enumerated)));
        const double ratio = n == 1 ? 1.0 : double(enumerated) / lc.main_term;
        r.report.add(n, ratio, 1.0);
        r.row_seconds.push_back(seconds_since(start));
        counts.push_back(enumerated);
    }
    r.assertions.push_back(make_assertion("final_gap", r.report.final_gap(), c.tolerance));
    r.assertions.push_back(make_assertion("count_disagreement", disagreement, 0.0));
    r.extra["k"] = c.k;
    r.extra["counts"] = counts;
    return r;
}

ExperimentResult run_decompose_bench(const ExperimentConfig& c, const RunOptions& o, const PrimeTable& table) {
    std::optional<Symbol> drawn;
    const Symbol& s = require_symbol(c, drawn, o.seed);
    const std::size_t k = std::max(c.k, symbol_variables(s));

    ExperimentResult r;
    r.report = MomentReport("spectrum_max_deviation", "0");
    nlohmann::json direct_times = nlohmann::json::array(), block_times = nlohmann::json::array();
    double worst = 0.0;
    for (std::uint64_t n : c.schedule) {
        const auto start = Clock::now();
        const HermitianMatrix full = assemble_multiplicative(s, IndexSet::natural(n), table, o.max_dim);
        const SpectralSummary direct = eigenvalues(full);
        const double direct_seconds = seconds_since(start);
        const auto block_start = Clock::now();
        const SpectralSummary blocks = block_spectrum(s, n, k, table);
        block_times.push_back(seconds_since(block_start));
        direct_times.push_back(direct_seconds);
        const double dev = max_sorted_deviation(direct.eigenvalues, blocks.eigenvalues);
        worst = std::max(worst, dev);
        r.report.add(n, dev, 0.0);
        r.row_seconds.push_back(seconds_since(start));
        if (c.dump_matrix && n == c.schedule.back()) r.matrix_csv = csv_of(full);
    }
    r.assertions.push_back(make_assertion("spectrum_max_deviation", worst, c.tolerance));
    r.extra["k"] = k;
    r.extra["direct_seconds"] = direct_times;
    r.extra["block_seconds"] = block_times;
    if (c.dump_decomposition) r.decomposition = partition_classes(c.schedule.back(), k, table).to_json();
    return r;
}

}  // namespace

std::string to_string(ExperimentKind kind) {
    for (const auto& k : kKinds)
        if (k.kind == kind) return k.name;
    return "unknown";
}

ExperimentKind parse_experiment_kind(const std::string& name) {
    for (const auto& k : kKinds)
        if (name == k.name) return k.kind;
    throw ConfigError("unknown experiment '" + name + "'");
}

ExperimentConfig ExperimentConfig::from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    static const std::set<std::string> known = {"experiment", "name",     "symbol",   "symbol_file", "vector",
                                                "vector_file", "mode",    "sigma",    "function",    "schedule",
                                                "tolerance",  "k",        "cutoff",   "dump_matrix", "dump_decomposition"};
    try {
        if (!j.is_object()) throw ConfigError("config must be a JSON object");
        for (const auto& [key, value] : j.items())
            if (!known.count(key)) throw ConfigError("unknown config field '" + key + "'");
        if (!j.contains("experiment") || !j.at("experiment").is_string()) throw ConfigError("config needs an experiment name");

        ExperimentConfig c;
        c.kind = parse_experiment_kind(j.at("experiment").get<std::string>());
        c.name = j.value("name", to_string(c.kind));
        if (c.name.empty() || c.name.find_first_of("/\\") != std::string::npos) throw ConfigError("invalid name");

        if (j.contains("symbol") && j.contains("symbol_file")) throw ConfigError("give symbol or symbol_file, not both");
        if (j.contains("symbol")) {
            if (j.at("symbol") == "random")
                c.random_symbol = true;
            else
                c.symbol = Symbol::from_json(j.at("symbol"));
        } else if (j.contains("symbol_file")) {
            c.symbol = Symbol::from_json(read_json_file(resolve(base_dir, j.at("symbol_file").get<std::string>())));
        }
        if (j.contains("vector") && j.contains("vector_file")) throw ConfigError("give vector or vector_file, not both");
        if (j.contains("vector"))
            c.vector = DilationVector::from_json(j.at("vector"));
        else if (j.contains("vector_file"))
            c.vector = DilationVector::from_json(read_json_file(resolve(base_dir, j.at("vector_file").get<std::string>())));

        const std::string mode = j.value("mode", std::string("additive"));
        if (mode == "additive")
            c.mode = IndexMode::additive;
        else if (mode == "multiplicative")
            c.mode = IndexMode::multiplicative;
        else
            throw ConfigError("mode must be additive or multiplicative");
        c.sigma = j.value("sigma", std::string("natural"));
        if (c.sigma != "natural" && c.sigma != "folner") throw ConfigError("sigma must be natural or folner");

        const bool trace_kind = c.kind == ExperimentKind::measure_series;
        c.function = j.value("function", std::string(trace_kind ? "power:2" : "log"));
        (void)ScalarFn::parse(c.function);

        if (j.contains("k")) c.k = positive_integer(j.at("k"), "k");
        if (c.k > 64) throw ConfigError("k must be at most 64");
        if (j.contains("cutoff")) c.cutoff = positive_integer(j.at("cutoff"), "cutoff");

        if (j.contains("schedule")) {
            if (!j.at("schedule").is_array() || j.at("schedule").empty()) throw ConfigError("schedule must be a nonempty array");
            for (const auto& v : j.at("schedule")) {
                const std::uint64_t n = positive_integer(v, "schedule entries");
                if (!c.schedule.empty() && n <= c.schedule.back()) throw ConfigError("schedule must be strictly increasing");
                c.schedule.push_back(n);
            }
        } else if (c.cutoff && (c.kind == ExperimentKind::identity || trace_kind)) {
            c.schedule.push_back(c.cutoff);
        } else {
            throw ConfigError("config needs a schedule");
        }

        c.tolerance = default_tolerance(c.kind, c.k);
        if (j.contains("tolerance")) {
            const auto& t = j.at("tolerance");
            if (!t.is_number() || !std::isfinite(t.get<double>()) || t.get<double>() < 0.0)
                throw ConfigError("tolerance must be a finite number >= 0");
            c.tolerance = t.get<double>();
        }
        c.dump_matrix = j.value("dump_matrix", false);
        c.dump_decomposition = j.value("dump_decomposition", false);

        const bool needs_symbol = c.kind == ExperimentKind::szego_folner || c.kind == ExperimentKind::szego_natural ||
                                  c.kind == ExperimentKind::measure_series || c.kind == ExperimentKind::decompose_bench;
        if (needs_symbol && !c.symbol && !c.random_symbol) throw ConfigError(to_string(c.kind) + " needs a symbol");
        if (c.kind == ExperimentKind::gram && !c.vector) throw ConfigError("gram needs a vector");
        return c;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    } catch (const InvalidArgument& e) {
        throw ConfigError(e.what());
    }
}

ExperimentConfig ExperimentConfig::load(const std::filesystem::path& path) {
    return from_json(read_json_file(path), path.parent_path());
}

Assertion make_assertion(std::string name, double value, double threshold) {
    Assertion a;
    a.name = std::move(name);
    a.value = value;
    a.threshold = threshold;
    a.passed = std::isfinite(value) && std::isfinite(threshold) && value <= threshold;
    return a;
}

bool ExperimentResult::passed() const { return first_failure() == nullptr; }

const Assertion* ExperimentResult::first_failure() const {
    static const Assertion non_finite{"finite_report", std::numeric_limits<double>::quiet_NaN(), 0.0, false};
    for (const auto& a : assertions)
        if (!a.passed) return &a;
    if (!report.finite()) return &non_finite;
    return nullptr;
}

nlohmann::json ExperimentResult::summary(const RunOptions& options) const {
    nlohmann::json as = nlohmann::json::array();
    auto number = [](double v) -> nlohmann::json { return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(nullptr); };
    for (const auto& a : assertions)
        as.push_back({{"name", a.name}, {"value", number(a.value)}, {"threshold", number(a.threshold)}, {"passed", a.passed}});
    if (!report.finite()) as.push_back({{"name", "finite_report"}, {"value", nullptr}, {"threshold", 0.0}, {"passed", false}});
    return {{"schema", 1},
            {"name", name},
            {"experiment", to_string(kind)},
            {"seed", options.seed},
            {"max_dim", options.max_dim},
            {"passed", passed()},
            {"assertions", as},
            {"report", report.to_json()},
            {"wall_seconds", {{"total", total_seconds}, {"rows", row_seconds}}},
            {"details", extra}};
}

ExperimentResult run_experiment(const ExperimentConfig& config, const RunOptions& options) {
    const auto start = Clock::now();
    const PrimeTable table;
    ExperimentResult r;
    switch (config.kind) {
        case ExperimentKind::szego_folner: r = run_szego_folner(config, options, table); break;
        case ExperimentKind::szego_natural: r = run_szego_natural(config, options, table); break;
        case ExperimentKind::measure_series: r = run_measure_series(config, options, table); break;
        case ExperimentKind::identity: r = run_identity(config, options, table); break;
        case ExperimentKind::gram: r = run_gram(config, options, table); break;
        case ExperimentKind::lattice: r = run_lattice(config, options, table); break;
        case ExperimentKind::decompose_bench: r = run_decompose_bench(config, options, table); break;
    }
    r.name = config.name;
    r.kind = config.kind;
    r.total_seconds = seconds_since(start);
    return r;
}

void write_outputs(const ExperimentResult& result, const RunOptions& options, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    auto open = [&](const std::string& file) {
        std::ofstream out(dir / file, std::ios::binary);
        if (!out) throw Error("cannot write '" + (dir / file).string() + "'");
        return out;
    };
    {
        auto csv = open(result.name + ".csv");
        result.report.write_csv(csv);
    }
    {
        auto json = open(result.name + ".json");
        json << result.summary(options).dump(2) << '\n';
    }
    if (result.matrix_csv) {
        auto m = open(result.name + ".matrix.csv");
        m << *result.matrix_csv;
    }
    if (result.decomposition) {
        auto d = open(result.name + ".decomposition.json");
        d << result.decomposition->dump(2) << '\n';
    }
}

}  // namespace szego
