#include "szego/acceptance.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <sstream>
#include <thread>

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

std::string fmt(const char* format, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, format, args...);
    return buf;
}

Symbol two_plus_cos() { return Symbol::constant(2.0).add_term(MultiIndex::unit(0, 1), 0.5); }

struct Outcome {
    bool passed = false;
    std::string detail;
};

Outcome classical_szego(const AcceptanceOptions& o, const PrimeTable&) {
    const double tol = 5e-3 * o.tolerance_scale;
    // limit of D_N^(1/N) for the recurrence D_N = a D_{N-1} - b^2 D_{N-2}: its larger root
    const double a = 2.0, b = 0.5;
    const double target = (a + std::sqrt(a * a - 4.0 * b * b)) / 2.0;
    const DetRoot d = geometric_mean_det(assemble_additive(two_plus_cos(), folner_box(1, 512, o.max_dim), o.max_dim));
    const double gap = std::abs(d.value - target);
    return {gap <= tol, fmt("N=512 geo_mean=%.9f target=%.9f gap=%.3e tol=%.1e", d.value, target, gap, tol)};
}

Outcome sandwich(const AcceptanceOptions& o, const PrimeTable& table) {
    const double slack = 1e-9 * o.tolerance_scale;
    Rng rng(o.seed);
    std::vector<Symbol> symbols;
    for (int i = 0; i < 50; ++i) symbols.push_back(random_positive_symbol(rng, {2, 3}));
    symbols.insert(symbols.end(), o.extra_symbols.begin(), o.extra_symbols.end());

    std::size_t cases = 0, ok = 0, unconverged = 0;
    double worst_lower = -INFINITY, worst_upper = -INFINITY;
    for (const auto& s : symbols) {
        const std::size_t vars = std::max<std::size_t>(1, s.variable_count());
        for (int j = 0; j < 10; ++j) {
            const IndexSet sets[] = {random_additive_set(rng, vars), random_multiplicative_set(rng)};
            for (const auto& sigma : sets) {
                const BoundsRecord r = szego_bounds_check(s, sigma, table, o.max_dim);
                const double lower_excess = r.lower - r.middle, upper_excess = r.middle - r.upper;
                worst_lower = std::max(worst_lower, lower_excess);
                worst_upper = std::max(worst_upper, upper_excess);
                unconverged += !r.lower_converged;
                ++cases;
                ok += lower_excess <= slack && upper_excess <= slack && std::isfinite(r.middle);
            }
        }
    }
    return {ok == cases, fmt("%zu/%zu cases hold; max lower excess %.2e, max upper excess %.2e, slack %.0e; "
                             "%zu unconverged log integrals",
                             ok, cases, worst_lower, worst_upper, slack, unconverged)};
}

Outcome block_decomposition(const AcceptanceOptions& o, const PrimeTable& table) {
    const double tol = 1e-9 * o.tolerance_scale;
    Rng rng(o.seed);
    const Symbol s = random_positive_symbol(rng, 2, 2);
    const std::uint64_t n = 256;
    const SpectralSummary direct = eigenvalues(assemble_multiplicative(s, IndexSet::natural(n), table, o.max_dim));
    const SpectralSummary blocks = block_spectrum(s, n, 2, table);
    double dev = direct.eigenvalues.size() == blocks.eigenvalues.size() ? 0.0 : INFINITY;
    for (std::size_t i = 0; std::isfinite(dev) && i < direct.eigenvalues.size(); ++i)
        dev = std::max(dev, std::abs(direct.eigenvalues[i] - blocks.eigenvalues[i]));

    std::size_t checked = 0, bad = 0;
    for (std::size_t k = 1; k <= 3; ++k) {
        for (std::uint64_t m = 1; m <= 10'000; ++m) {
            ++checked;
            bad += !verify_partition(partition_classes(m, k, table), table);
        }
    }
    return {dev <= tol && bad == 0,
            fmt("N=256 k=2 spectrum deviation %.2e (tol %.0e); partitions N<=10^4, k=1..3: %zu/%zu valid", dev, tol,
                checked - bad, checked)};
}

Outcome identity_series(const AcceptanceOptions& o, const PrimeTable& table) {
    const double tol1 = 5e-5 * o.tolerance_scale, tol2 = 2e-4 * o.tolerance_scale;
    const double log2_sum = log2_floor_series(1'000'000);
    const double smooth_sum = smooth_count_series(2, 1'000'000, table);
    const double gap1 = std::abs(log2_sum - 1.0), gap2 = std::abs(smooth_sum - 3.0);
    return {gap1 <= tol1 && gap2 <= tol2,
            fmt("sum floor(log2 n)/(n(n+1)) = %.8f gap %.2e (tol %.0e); k=2 series %.8f gap %.2e (tol %.0e)",
                log2_sum, gap1, tol1, smooth_sum, gap2, tol2)};
}

Outcome natural_moments(const AcceptanceOptions& o, const PrimeTable& table) {
    const double tol = 1e-2 * o.tolerance_scale;
    const Symbol s = two_plus_cos();
    const ScalarFn f = ScalarFn::power(2);
    const double stat = eigenvalues(assemble_multiplicative(s, IndexSet::natural(2048), table, o.max_dim))
                            .normalized_trace(f);
    const LimitMeasure lm = limit_measure_moment(s, f, 1, 2048, table);
    const double gap = std::abs(stat - lm.value);
    return {gap <= lm.tail_bound + tol, fmt("N=2048 (1/N)Tr T^2 = %.8f, limit moment %.8f, gap %.3e <= tail %.3e + %.0e",
                                            stat, lm.value, gap, lm.tail_bound, tol)};
}

Outcome natural_det_root(const AcceptanceOptions& o, const PrimeTable& table) {
    Rng rng(o.seed);
    const std::uint64_t sizes[] = {128, 256, 512, 1024};
    std::size_t ok = 0;
    std::string gaps;
    for (int i = 0; i < 5; ++i) {
        const Symbol s = random_positive_symbol(rng, {1, 3});
        const DetRootSequence seq = non_folner_detroot_sequence(s, sizes, table);
        const auto& g = seq.gaps;
        const bool decreasing = g[0] > g[1] && g[1] > g[2];
        ok += decreasing;
        gaps += fmt(" [%.2e %.2e %.2e]%s", g[0], g[1], g[2], decreasing ? "" : "*");
    }
    return {ok == 5, fmt("%zu/5 strictly decreasing doubling gaps;", ok) + gaps};
}

Outcome hs_bound(const AcceptanceOptions& o, const PrimeTable& table) {
    const double rel = 1e-12 * o.tolerance_scale;
    Rng rng(o.seed);
    std::vector<Symbol> symbols;
    for (int i = 0; i < 20; ++i) symbols.push_back(random_symbol(rng, {2, 3}));
    symbols.insert(symbols.end(), o.extra_symbols.begin(), o.extra_symbols.end());
    const std::uint64_t n = 1024;
    std::size_t violations = 0;
    double worst = 0.0;
    for (const auto& s : symbols) {
        const double lhs = hs_norm_sq(assemble_multiplicative(s, IndexSet::natural(n), table, o.max_dim)) / double(n);
        const double rhs = s.l2_norm_sq();
        worst = std::max(worst, lhs / rhs);
        violations += !(lhs <= rhs * (1.0 + rel));
    }
    return {violations == 0, fmt("%zu symbols, N=1024: %zu violations, max ratio %.6f", symbols.size(), violations, worst)};
}

Outcome lattice_asymptotics(const AcceptanceOptions& o, const PrimeTable& table) {
    const double lo = 1.0 - 0.25 * o.tolerance_scale, hi = 1.0 + 0.30 * o.tolerance_scale;
    const std::uint64_t n = 1'000'000;
    bool ok = true;
    std::string detail = fmt("N=10^6 band [%.2f, %.2f]:", lo, hi);
    for (std::size_t k = 1; k <= 3; ++k) {
        const std::size_t count = smooth_numbers(k, n, table).size();
        std::vector<double> weights;
        double scale = std::tgamma(double(k) + 1.0);
        for (std::size_t j = 0; j < k; ++j) {
            weights.push_back(std::log(double(table.prime(j))));
            scale *= weights.back();
        }
        const LatticeCount lc = lattice_count(weights, std::log(double(n)));
        const double ratio = double(count) * scale / std::pow(std::log(double(n)), double(k));
        const bool in_band = ratio >= lo && ratio <= hi && lc.count == count;
        ok = ok && in_band;
        detail += fmt(" k=%zu |Y|=%zu ratio=%.4f%s", k, count, ratio, in_band ? "" : "*");
    }
    return {ok, detail};
}

Outcome gram_representation(const AcceptanceOptions& o, const PrimeTable& table) {
    const double tol = 1e-12 * o.tolerance_scale, slack = 1e-9 * o.tolerance_scale;
    Rng rng(o.seed);
    double dev = 0.0, upper_excess = -INFINITY;
    std::size_t lower_violations = 0;
    for (int i = 0; i < 20; ++i) {
        const DilationVector h = random_dilation_vector(rng, i % 2 ? Basis::sine : Basis::power);
        const IndexSet sigma = random_multiplicative_set(rng, 60, 16);
        const HermitianMatrix direct = gram_matrix(h, sigma, table, o.max_dim);
        const HermitianMatrix fourier = assemble_multiplicative(lift_symbol(h, table), sigma, table, o.max_dim);
        dev = std::max(dev, (direct.data() - fourier.data()).cwiseAbs().maxCoeff());
        const GramBounds b = gram_bounds_check(h, sigma, table, o.max_dim);
        upper_excess = std::max(upper_excess, b.middle - b.upper);
        lower_violations += b.lower > b.middle + slack;
    }
    const DetRoot unit = geometric_mean_det(gram_matrix(DilationVector::unit(1), IndexSet::natural(64), table));
    const bool ok = dev <= tol && upper_excess <= slack && unit.value == 1.0;
    return {ok, fmt("20 vectors: max |direct - Toeplitz| %.2e (tol %.0e), max det-root minus ||h||^2 %.2e; "
                    "h=e1 det root %.17g; %zu lower-bound violations",
                    dev, tol, upper_excess, unit.value, lower_violations)};
}

Outcome clamp_monotonicity(const AcceptanceOptions& o, const PrimeTable& table) {
    const double slack = 1e-9 * o.tolerance_scale;
    Rng rng(o.seed);
    std::size_t ok = 0, monotone = 0, controlled = 0;
    double worst = -INFINITY;
    for (int i = 0; i < 10; ++i) {
        const Symbol s = random_positive_symbol(rng, {2, 3});
        const std::size_t vars = std::max<std::size_t>(1, s.variable_count());
        const IndexSet sigma = i % 2 ? random_multiplicative_set(rng, 60, 16) : random_additive_set(rng, vars, 3, 16);
        const ValueRange range = value_range(s, 16);
        std::vector<double> levels;
        for (double t : {0.2, 0.4, 0.6, 0.8}) levels.push_back(range.min + t * (range.max - range.min));
        levels.push_back(range.max + 1.0);
        const ClampReport rep = clamp_limit_experiment(s, levels, sigma, table, o.max_dim);
        double excess = -INFINITY;
        for (const auto& l : rep.levels) excess = std::max(excess, l.max_eigen_excess);
        worst = std::max(worst, excess);
        ok += excess <= slack;
        monotone += rep.monotone;
        controlled += rep.controlled;
    }
    return {ok == 10 && monotone == 10 && controlled == 10,
            fmt("10 cases: %zu eigenvalue-dominated (max excess %.2e, slack %.0e), %zu monotone, %zu within the L1 control",
                ok, worst, slack, monotone, controlled)};
}

struct Criterion {
    const char* title;
    double budget;
    Outcome (*run)(const AcceptanceOptions&, const PrimeTable&);
};

const Criterion kCriteria[kCriterionCount] = {
    {"classical Szego limit, 2+cos, N=512", 10, classical_szego},
    {"sandwich inequality, random symbols and sets", 60, sandwich},
    {"block decomposition of T_N", 60, block_decomposition},
    {"number-theoretic identities", 30, identity_series},
    {"moments on {1..N} vs limit measure", 180, natural_moments},
    {"det root on {1..N}, doubling gaps", 120, natural_det_root},
    {"Hilbert-Schmidt bound", 20, hs_bound},
    {"smooth-number lattice asymptotics", 30, lattice_asymptotics},
    {"Gram matrices of dilation systems", 30, gram_representation},
    {"clamp monotonicity", 30, clamp_monotonicity},
};

}  // namespace

AcceptanceOptions AcceptanceOptions::from_json(const nlohmann::json& j, const std::filesystem::path& base_dir) {
    try {
        if (!j.is_object()) throw ConfigError("acceptance config must be a JSON object");
        AcceptanceOptions o;
        for (const auto& [key, value] : j.items()) {
            if (key == "tolerance_scale") {
                if (!value.is_number() || !std::isfinite(value.get<double>()) || value.get<double>() < 0.0)
                    throw ConfigError("tolerance_scale must be a finite number >= 0");
                o.tolerance_scale = value.get<double>();
            } else if (key == "criteria") {
                for (const auto& c : value) {
                    if (!c.is_number_integer() || c.get<int>() < 1 || c.get<int>() > kCriterionCount)
                        throw ConfigError("criteria must be integers in 1.." + std::to_string(kCriterionCount));
                    o.criteria.push_back(c.get<int>());
                }
            } else if (key == "symbols") {
                for (const auto& ref : value) {
                    std::filesystem::path p(ref.get<std::string>());
                    if (p.is_relative() && !base_dir.empty()) p = base_dir / p;
                    std::ifstream in(p);
                    if (!in) throw ConfigError("cannot open '" + p.string() + "'");
                    nlohmann::json sj;
                    try {
                        sj = nlohmann::json::parse(in);
                    } catch (const nlohmann::json::exception& e) {
                        throw ConfigError("malformed JSON in '" + p.string() + "': " + e.what());
                    }
                    Symbol s = Symbol::from_json(sj);
                    certify_positive(s);
                    o.extra_symbols.push_back(std::move(s));
                }
            } else if (key == "seed") {
                if (!value.is_number_integer() || value.get<std::int64_t>() < 0) throw ConfigError("seed must be >= 0");
                o.seed = value.get<std::uint64_t>();
            } else {
                throw ConfigError("unknown acceptance field '" + key + "'");
            }
        }
        return o;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed acceptance config: ") + e.what());
    } catch (const DomainError& e) {
        throw ConfigError(std::string("symbol is not positive: ") + e.what());
    }
}

AcceptanceOptions AcceptanceOptions::load(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open '" + path.string() + "'");
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError("malformed JSON in '" + path.string() + "': " + e.what());
    }
    return from_json(j, path.parent_path());
}

nlohmann::json CriterionResult::to_json() const {
    return {{"id", id}, {"title", title}, {"passed", passed}, {"seconds", seconds}, {"budget_seconds", budget_seconds},
            {"detail", detail}};
}

const std::vector<ClaimRow>& claim_matrix() {
    static const std::vector<ClaimRow> rows = {
        {"det root of T_sigma phi on Folner boxes tends to exp(int log phi)", 1, "test_spectral"},
        {"exp(int log phi) <= det root <= ||phi||_1 on every finite sigma", 2, "test_spectral"},
        {"T_N phi is a direct sum of T_{Y_[N/m]} phi over m in E_k", 3, "test_decompose"},
        {"sum floor(log2 n)/(n(n+1)) = 1 and sum |Y_n|/(n(n+1)) = prod (1-1/p_j)^-1", 4, "test_decompose"},
        {"normalized traces on {1..N} converge to moments of the limit measure", 5, "test_decompose"},
        {"(det T_N phi)^(1/N) converges on {1..N}", 6, "test_decompose"},
        {"(1/N) ||T_N phi||_HS^2 <= ||phi||_2^2", 7, "test_toeplitz"},
        {"|Y_N| ~ (log N)^k / (k! prod log p_j)", 8, "test_indexing"},
        {"Gram matrix of dilates of h is the Toeplitz matrix of |Uh|^2", 9, "test_gram"},
        {"T_sigma min(phi, n) <= T_sigma phi, eigenvalue by eigenvalue", 10, "test_spectral"},
    };
    return rows;
}

std::string format_claim_matrix() {
    std::ostringstream os;
    os << "claim | acceptance | unit tests\n";
    for (const auto& r : claim_matrix()) os << r.claim << " | c" << r.criterion << " | " << r.tests << '\n';
    return os.str();
}

CriterionResult run_criterion(int id, const AcceptanceOptions& options) {
    if (id < 1 || id > kCriterionCount) throw InvalidArgument("no criterion " + std::to_string(id));
    const Criterion& c = kCriteria[id - 1];
    CriterionResult r;
    r.id = id;
    r.title = c.title;
    r.budget_seconds = c.budget;
    const PrimeTable table;
    const auto start = Clock::now();
    Outcome out;
    try {
        out = c.run(options, table);
    } catch (const CapacityError& e) {
        r.capacity_error = true;
        out = {false, std::string("capacity: ") + e.what()};
    } catch (const std::exception& e) {
        out = {false, std::string("error: ") + e.what()};
    }
    r.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    r.passed = out.passed && r.seconds <= r.budget_seconds;
    r.detail = out.detail;
    if (out.passed && !r.passed) r.detail += " (over time budget)";
    return r;
}

std::vector<CriterionResult> run_acceptance(const AcceptanceOptions& options) {
    std::vector<int> ids = options.criteria;
    if (ids.empty())
        for (int i = 1; i <= kCriterionCount; ++i) ids.push_back(i);
    std::vector<CriterionResult> results(ids.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < ids.size(); i = next++) results[i] = run_criterion(ids[i], options);
    };
    const std::size_t threads = std::clamp<std::size_t>(options.threads, 1, ids.size());
    std::vector<std::jthread> pool;
    for (std::size_t t = 1; t < threads; ++t) pool.emplace_back(worker);
    worker();
    pool.clear();
    return results;
}

std::string format_line(const CriterionResult& r) {
    return fmt("%s c%d %s: ", r.passed ? "PASS" : "FAIL", r.id, r.title.c_str()) + r.detail +
           fmt(" [%.2f s / %.0f s]", r.seconds, r.budget_seconds);
}

}  // namespace szego
