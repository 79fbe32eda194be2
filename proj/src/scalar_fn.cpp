#include "szego/scalar_fn.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <string>

#include "szego/error.hpp"

namespace szego {

ScalarFn ScalarFn::one() { return ScalarFn{}; }

ScalarFn ScalarFn::identity() {
    ScalarFn f;
    f.kind_ = Kind::identity;
    f.exponent_ = 1;
    f.name_ = "identity";
    return f;
}

ScalarFn ScalarFn::power(int m) {
    if (m < 0) throw InvalidArgument("power exponent must be >= 0; use reciprocal_power");
    if (m == 0) return one();
    if (m == 1) return identity();
    ScalarFn f;
    f.kind_ = Kind::power;
    f.exponent_ = m;
    f.name_ = "power:" + std::to_string(m);
    return f;
}

ScalarFn ScalarFn::log() {
    ScalarFn f;
    f.kind_ = Kind::log;
    f.name_ = "log";
    return f;
}

ScalarFn ScalarFn::log_shift(double c) {
    if (!(c > 0.0)) throw InvalidArgument("log_shift needs c > 0");
    ScalarFn f;
    f.kind_ = Kind::log_shift;
    f.shift_ = c;
    f.name_ = "log_shift:" + std::to_string(c);
    return f;
}

ScalarFn ScalarFn::reciprocal_power(int m) {
    if (m < 1) throw InvalidArgument("reciprocal_power needs m >= 1");
    ScalarFn f;
    f.kind_ = Kind::reciprocal_power;
    f.exponent_ = m;
    f.name_ = "reciprocal_power:" + std::to_string(m);
    return f;
}

ScalarFn ScalarFn::table(std::vector<double> xs, std::vector<double> ys) {
    if (xs.size() != ys.size() || xs.size() < 2) throw InvalidArgument("table needs >= 2 matching points");
    for (std::size_t i = 1; i < xs.size(); ++i)
        if (!(xs[i] > xs[i - 1])) throw InvalidArgument("table abscissae must be strictly increasing");
    ScalarFn f;
    f.kind_ = Kind::table;
    f.xs_ = std::move(xs);
    f.ys_ = std::move(ys);
    f.name_ = "table";
    return f;
}

ScalarFn ScalarFn::custom(std::string name, std::function<double(double)> fn) {
    ScalarFn f;
    f.kind_ = Kind::custom;
    f.custom_ = std::move(fn);
    f.name_ = std::move(name);
    return f;
}

namespace {

template <typename T>
T parse_number(std::string_view text, std::string_view spec) {
    T value{};
    if constexpr (std::is_same_v<T, double>) {
        try {
            std::size_t used = 0;
            value = std::stod(std::string(text), &used);
            if (used != text.size()) throw ConfigError("");
        } catch (const std::exception&) {
            throw ConfigError("bad number in function spec '" + std::string(spec) + "'");
        }
    } else {
        auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
        if (ec != std::errc{} || ptr != text.data() + text.size())
            throw ConfigError("bad number in function spec '" + std::string(spec) + "'");
    }
    return value;
}

}  // namespace

ScalarFn ScalarFn::parse(std::string_view spec) {
    const auto colon = spec.find(':');
    const std::string_view head = spec.substr(0, colon);
    const std::string_view arg = colon == std::string_view::npos ? std::string_view{} : spec.substr(colon + 1);
    if (head == "one" && arg.empty()) return one();
    if (head == "identity" && arg.empty()) return identity();
    if (head == "log" && arg.empty()) return log();
    if (head == "power") return power(parse_number<int>(arg, spec));
    if (head == "log_shift") return log_shift(parse_number<double>(arg, spec));
    if (head == "reciprocal_power") return reciprocal_power(parse_number<int>(arg, spec));
    throw ConfigError("unknown function spec '" + std::string(spec) + "'");
}

bool ScalarFn::needs_positive() const noexcept {
    return kind_ == Kind::log || kind_ == Kind::reciprocal_power;
}

double ScalarFn::operator()(double x) const {
    switch (kind_) {
        case Kind::one:
            return 1.0;
        case Kind::identity:
            return x;
        case Kind::power: {
            double r = 1.0;
            for (int i = 0; i < exponent_; ++i) r *= x;
            return r;
        }
        case Kind::log:
            if (!(x > 0.0)) throw DomainError("log evaluated at non-positive value " + std::to_string(x));
            return std::log(x);
        case Kind::log_shift:
            if (!(x + shift_ > 0.0)) throw DomainError("log_shift evaluated below -c at " + std::to_string(x));
            return std::log(x + shift_);
        case Kind::reciprocal_power: {
            if (!(x > 0.0))
                throw DomainError("reciprocal power evaluated at non-positive value " + std::to_string(x));
            double r = 1.0;
            for (int i = 0; i < exponent_; ++i) r /= x;
            return r;
        }
        case Kind::table: {
            if (x <= xs_.front()) return ys_.front();
            if (x >= xs_.back()) return ys_.back();
            const auto it = std::upper_bound(xs_.begin(), xs_.end(), x);
            const std::size_t i = static_cast<std::size_t>(it - xs_.begin());
            const double w = (x - xs_[i - 1]) / (xs_[i] - xs_[i - 1]);
            return (1.0 - w) * ys_[i - 1] + w * ys_[i];
        }
        case Kind::custom:
            return custom_(x);
    }
    return 0.0;
}

}  // namespace szego
