#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace szego {

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

// A precondition on an argument was violated.
class InvalidArgument : public Error {
public:
    using Error::Error;
};

// A size, table or enumeration limit would be exceeded.
class CapacityError : public Error {
public:
    CapacityError(const std::string& what, std::uint64_t required)
        : Error(what), required_(required) {}

    std::uint64_t required() const noexcept { return required_; }

private:
    std::uint64_t required_;
};

// A pointwise map (log, reciprocal, positivity certificate) left its domain.
class DomainError : public Error {
public:
    using Error::Error;
};

// Malformed configuration or input file.
class ConfigError : public Error {
public:
    using Error::Error;
};

}  // namespace szego
