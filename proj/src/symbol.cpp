#include "szego/symbol.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "szego/error.hpp"

namespace szego {

Symbol Symbol::constant(double c) {
    Symbol s;
    s.add_term(MultiIndex{}, Complex(c, 0.0));
    return s;
}

Symbol& Symbol::add_term(const MultiIndex& kappa, Complex c) {
    if (kappa.is_zero()) {
        if (c.imag() != 0.0)
            throw InvalidArgument("zero-frequency coefficient of a real symbol must be real");
        coeffs_[kappa] += c;
        return *this;
    }
    coeffs_[kappa] += c;
    coeffs_[-kappa] += std::conj(c);
    return *this;
}

Symbol& Symbol::declare_variables(std::size_t k) {
    declared_ = std::max(declared_, k);
    return *this;
}

Complex Symbol::coeff(const MultiIndex& kappa) const {
    auto it = coeffs_.find(kappa);
    return it == coeffs_.end() ? Complex{} : it->second;
}

std::vector<std::pair<MultiIndex, Complex>> Symbol::half_terms() const {
    std::vector<std::pair<MultiIndex, Complex>> out;
    for (const auto& [kappa, c] : coeffs_)
        if (kappa.is_zero() || kappa.lex_positive()) out.emplace_back(kappa, c);
    return out;
}

std::size_t Symbol::variable_count() const noexcept {
    std::size_t k = declared_;
    for (const auto& [kappa, c] : coeffs_) k = std::max(k, kappa.dimension());
    return k;
}

std::vector<int> Symbol::bandwidths() const {
    std::vector<int> bw(variable_count(), 0);
    for (const auto& [kappa, c] : coeffs_)
        for (std::size_t i = 0; i < kappa.dimension(); ++i) bw[i] = std::max(bw[i], std::abs(kappa[i]));
    return bw;
}

int Symbol::bandwidth() const {
    int b = 0;
    for (const auto& [kappa, c] : coeffs_) b = std::max(b, kappa.max_abs());
    return b;
}

Complex Symbol::evaluate_complex(std::span<const double> theta) const {
    if (theta.size() < variable_count())
        throw InvalidArgument("evaluate needs " + std::to_string(variable_count()) + " angles");
    Complex sum{};
    for (const auto& [kappa, c] : coeffs_) {
        double phase = 0.0;
        for (std::size_t i = 0; i < kappa.dimension(); ++i) phase += kappa[i] * theta[i];
        sum += c * std::polar(1.0, phase);
    }
    return sum;
}

double Symbol::evaluate(std::span<const double> theta) const { return evaluate_complex(theta).real(); }

double Symbol::l2_norm_sq() const {
    double s = 0.0;
    for (const auto& [kappa, c] : coeffs_) s += std::norm(c);
    return s;
}

double Symbol::hermitian_defect() const {
    double worst = 0.0;
    for (const auto& [kappa, c] : coeffs_) worst = std::max(worst, std::abs(c - std::conj(coeff(-kappa))));
    return worst;
}

Symbol Symbol::scaled(double factor) const {
    Symbol s = *this;
    for (auto& [kappa, c] : s.coeffs_) c *= factor;
    return s;
}

Symbol Symbol::shifted(double c) const {
    Symbol s = *this;
    s.coeffs_[MultiIndex{}] += Complex(c, 0.0);
    return s;
}

nlohmann::json Symbol::to_json() const {
    nlohmann::json coeffs = nlohmann::json::array();
    for (const auto& [kappa, c] : half_terms()) {
        std::vector<int> k(kappa.exponents().begin(), kappa.exponents().end());
        coeffs.push_back({{"kappa", k}, {"re", c.real()}, {"im", c.imag()}});
    }
    return {{"k", variable_count()}, {"coeffs", coeffs}};
}

Symbol Symbol::from_json(const nlohmann::json& j) {
    try {
        if (!j.is_object()) throw ConfigError("symbol must be a JSON object");
        const auto k = j.at("k").get<std::int64_t>();
        if (k < 0) throw ConfigError("symbol field 'k' must be non-negative");
        const auto& list = j.at("coeffs");
        if (!list.is_array()) throw ConfigError("symbol field 'coeffs' must be an array");
        Symbol s;
        std::map<MultiIndex, bool> seen;
        for (const auto& entry : list) {
            MultiIndex kappa(entry.at("kappa").get<std::vector<int>>());
            if (kappa.dimension() > static_cast<std::size_t>(k))
                throw ConfigError("coefficient " + kappa.to_string() + " uses more than k=" + std::to_string(k) +
                                  " variables");
            if (seen.count(kappa) || seen.count(-kappa))
                throw ConfigError("coefficient " + kappa.to_string() + " listed twice (only one of +-kappa)");
            seen[kappa] = true;
            const double re = entry.at("re").get<double>();
            const double im = entry.value("im", 0.0);
            if (!std::isfinite(re) || !std::isfinite(im))
                throw ConfigError("non-finite coefficient at " + kappa.to_string());
            if (kappa.is_zero() && im != 0.0)
                throw ConfigError("zero-frequency coefficient must be real");
            s.add_term(kappa, Complex(re, im));
        }
        s.declare_variables(static_cast<std::size_t>(k));
        return s;
    } catch (const nlohmann::json::exception& e) {
        throw ConfigError(std::string("malformed symbol JSON: ") + e.what());
    }
}

}  // namespace szego
