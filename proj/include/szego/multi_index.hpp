#pragma once

#include <compare>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <string>
#include <vector>

namespace szego {

/// A finitely supported integer vector, i.e. an element of Z^infinity.
///
/// Used both as a frequency label on the torus and, through prime exponents,
/// as a label for a positive rational. Trailing zeros are never stored, so
/// two indices are equal exactly when their stored vectors are equal.
class MultiIndex {
public:
    MultiIndex() = default;
    MultiIndex(std::initializer_list<int> exponents);
    explicit MultiIndex(std::vector<int> exponents);

    /// value at position `axis`, zero elsewhere
    static MultiIndex unit(std::size_t axis, int value = 1);

    std::size_t dimension() const noexcept { return exps_.size(); }
    bool is_zero() const noexcept { return exps_.empty(); }
    int operator[](std::size_t i) const noexcept { return i < exps_.size() ? exps_[i] : 0; }
    std::span<const int> exponents() const noexcept { return exps_; }

    int max_abs() const noexcept;
    bool all_nonnegative() const noexcept;
    /// first nonzero entry is positive (the zero index is not positive)
    bool lex_positive() const noexcept;

    MultiIndex operator-() const;
    MultiIndex& operator+=(const MultiIndex& other);
    MultiIndex& operator-=(const MultiIndex& other);
    friend MultiIndex operator+(MultiIndex a, const MultiIndex& b) { return a += b; }
    friend MultiIndex operator-(MultiIndex a, const MultiIndex& b) { return a -= b; }

    friend bool operator==(const MultiIndex&, const MultiIndex&) = default;
    /// Lexicographic order with implied trailing zeros.
    friend std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept;

    std::string to_string() const;
    std::size_t hash() const noexcept;

private:
    void trim() noexcept;

    std::vector<int> exps_;
};

struct MultiIndexHash {
    std::size_t operator()(const MultiIndex& m) const noexcept { return m.hash(); }
};

}  // namespace szego
