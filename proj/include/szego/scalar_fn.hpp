#pragma once

#include <functional>
#include <string>
#include <string_view>
#include <vector>

namespace szego {

/// A real function f applied to symbol values (Haar means of f(phi)) and to
/// eigenvalues (normalized traces Tr f(T) / n).
class ScalarFn {
public:
    enum class Kind { one, identity, power, log, log_shift, reciprocal_power, table, custom };

    static ScalarFn one();
    static ScalarFn identity();
    static ScalarFn power(int m);
    static ScalarFn log();
    /// log(x + c), c > 0
    static ScalarFn log_shift(double c);
    /// x^(-m)
    static ScalarFn reciprocal_power(int m);
    /// Piecewise linear through (xs[i], ys[i]); xs strictly increasing, constant outside.
    static ScalarFn table(std::vector<double> xs, std::vector<double> ys);
    static ScalarFn custom(std::string name, std::function<double(double)> f);

    /// "one", "identity", "log", "power:M", "log_shift:C", "reciprocal_power:M"
    static ScalarFn parse(std::string_view spec);

    /// Throws DomainError outside the domain (log at x <= 0, ...).
    double operator()(double x) const;

    Kind kind() const noexcept { return kind_; }
    int exponent() const noexcept { return exponent_; }
    bool is_log() const noexcept { return kind_ == Kind::log; }
    /// Domain requires strictly positive arguments.
    bool needs_positive() const noexcept;
    const std::string& name() const noexcept { return name_; }

private:
    Kind kind_ = Kind::one;
    int exponent_ = 0;
    double shift_ = 0.0;
    std::vector<double> xs_, ys_;
    std::function<double(double)> custom_;
    std::string name_ = "one";
};

}  // namespace szego
