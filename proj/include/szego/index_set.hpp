#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "szego/multi_index.hpp"

namespace szego {

enum class IndexMode { additive, multiplicative };

/// A finite truncation set: frequencies in Z^d (additive) or positive
/// integers (multiplicative). Labels are distinct and kept in lexicographic
/// (respectively ascending) order so matrix layouts are reproducible.
class IndexSet {
public:
    static IndexSet additive(std::vector<MultiIndex> labels);
    static IndexSet multiplicative(std::vector<std::uint64_t> labels);
    /// {1, ..., n}
    static IndexSet natural(std::uint64_t n);

    IndexMode mode() const noexcept { return mode_; }
    bool is_additive() const noexcept { return mode_ == IndexMode::additive; }
    std::size_t size() const noexcept;
    bool empty() const noexcept { return size() == 0; }

    /// additive labels; empty for a multiplicative set
    std::span<const MultiIndex> points() const noexcept { return points_; }
    /// multiplicative labels; empty for an additive set
    std::span<const std::uint64_t> integers() const noexcept { return integers_; }

    std::string describe() const;

private:
    IndexMode mode_ = IndexMode::additive;
    std::vector<MultiIndex> points_;
    std::vector<std::uint64_t> integers_;
};

}  // namespace szego
