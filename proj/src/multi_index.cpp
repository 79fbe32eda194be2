#include "szego/multi_index.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

namespace szego {

MultiIndex::MultiIndex(std::initializer_list<int> exponents) : exps_(exponents) { trim(); }

MultiIndex::MultiIndex(std::vector<int> exponents) : exps_(std::move(exponents)) { trim(); }

MultiIndex MultiIndex::unit(std::size_t axis, int value) {
    std::vector<int> e(axis + 1, 0);
    e[axis] = value;
    return MultiIndex(std::move(e));
}

void MultiIndex::trim() noexcept {
    while (!exps_.empty() && exps_.back() == 0) exps_.pop_back();
}

int MultiIndex::max_abs() const noexcept {
    int m = 0;
    for (int e : exps_) m = std::max(m, std::abs(e));
    return m;
}

bool MultiIndex::all_nonnegative() const noexcept {
    return std::all_of(exps_.begin(), exps_.end(), [](int e) { return e >= 0; });
}

bool MultiIndex::lex_positive() const noexcept {
    for (int e : exps_) {
        if (e != 0) return e > 0;
    }
    return false;
}

MultiIndex MultiIndex::operator-() const {
    MultiIndex r = *this;
    for (int& e : r.exps_) e = -e;
    return r;
}

MultiIndex& MultiIndex::operator+=(const MultiIndex& other) {
    if (other.exps_.size() > exps_.size()) exps_.resize(other.exps_.size(), 0);
    for (std::size_t i = 0; i < other.exps_.size(); ++i) exps_[i] += other.exps_[i];
    trim();
    return *this;
}

MultiIndex& MultiIndex::operator-=(const MultiIndex& other) {
    if (other.exps_.size() > exps_.size()) exps_.resize(other.exps_.size(), 0);
    for (std::size_t i = 0; i < other.exps_.size(); ++i) exps_[i] -= other.exps_[i];
    trim();
    return *this;
}

std::strong_ordering operator<=>(const MultiIndex& a, const MultiIndex& b) noexcept {
    const std::size_t n = std::max(a.dimension(), b.dimension());
    for (std::size_t i = 0; i < n; ++i) {
        if (auto c = a[i] <=> b[i]; c != 0) return c;
    }
    return std::strong_ordering::equal;
}

std::string MultiIndex::to_string() const {
    std::ostringstream os;
    os << '(';
    for (std::size_t i = 0; i < exps_.size(); ++i) {
        if (i) os << ',';
        os << exps_[i];
    }
    os << ')';
    return os.str();
}

std::size_t MultiIndex::hash() const noexcept {
    std::size_t h = 0xcbf29ce484222325ULL;
    for (int e : exps_) {
        h ^= static_cast<std::size_t>(static_cast<unsigned>(e));
        h *= 0x100000001b3ULL;
    }
    return h;
}

}  // namespace szego
