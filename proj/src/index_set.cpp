#include "szego/index_set.hpp"

#include <algorithm>
#include <sstream>

#include "szego/error.hpp"

namespace szego {

IndexSet IndexSet::additive(std::vector<MultiIndex> labels) {
    std::sort(labels.begin(), labels.end());
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw InvalidArgument("index set labels must be distinct");
    IndexSet s;
    s.mode_ = IndexMode::additive;
    s.points_ = std::move(labels);
    return s;
}

IndexSet IndexSet::multiplicative(std::vector<std::uint64_t> labels) {
    std::sort(labels.begin(), labels.end());
    if (!labels.empty() && labels.front() == 0)
        throw InvalidArgument("multiplicative labels must be positive integers");
    if (std::adjacent_find(labels.begin(), labels.end()) != labels.end())
        throw InvalidArgument("index set labels must be distinct");
    IndexSet s;
    s.mode_ = IndexMode::multiplicative;
    s.integers_ = std::move(labels);
    return s;
}

IndexSet IndexSet::natural(std::uint64_t n) {
    std::vector<std::uint64_t> labels(n);
    for (std::uint64_t i = 0; i < n; ++i) labels[i] = i + 1;
    return multiplicative(std::move(labels));
}

std::size_t IndexSet::size() const noexcept {
    return mode_ == IndexMode::additive ? points_.size() : integers_.size();
}

std::string IndexSet::describe() const {
    std::ostringstream os;
    os << (is_additive() ? "additive" : "multiplicative") << '{';
    const std::size_t shown = std::min<std::size_t>(size(), 8);
    for (std::size_t i = 0; i < shown; ++i) {
        if (i) os << ',';
        if (is_additive())
            os << points_[i].to_string();
        else
            os << integers_[i];
    }
    if (size() > shown) os << ",...";
    os << "} |sigma|=" << size();
    return os.str();
}

}  // namespace szego
