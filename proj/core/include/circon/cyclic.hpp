#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circon/rational.hpp"

namespace circon {

/// Fixed-length binary string with 1-based element access.
class BinaryString {
public:
    explicit BinaryString(std::vector<bool> bits);
    static BinaryString parse(std::string_view text);  // characters '0'/'1'

    std::size_t length() const { return bits_.size(); }

    /// 1-based access, i in [1, length()].
    bool at(std::size_t i) const { return bits_[i - 1]; }

    std::size_t popcount() const;
    std::string str() const;

    const std::vector<bool>& bits() const { return bits_; }

    friend bool operator==(const BinaryString&, const BinaryString&) = default;

private:
    std::vector<bool> bits_;
};

/// One left-rotation amount per string, each reduced modulo the common length.
struct ShiftVector {
    std::vector<std::size_t> deltas;

    std::size_t size() const { return deltas.size(); }
    friend bool operator==(const ShiftVector&, const ShiftVector&) = default;
};

struct Column {
    std::size_t index = 0;
    std::vector<bool> entries;
    std::size_t weight = 0;
};

/// Circular left shift by delta (reduced mod length).
BinaryString shift(const BinaryString& s, std::size_t delta);

/// Column i (1-based) of the multiple circular shift of `strings` by `deltas`.
Column column_at(std::span<const BinaryString> strings, const ShiftVector& deltas, std::size_t i);

/// Throws InstanceError unless all strings are nonempty and share one length.
std::size_t common_length(std::span<const BinaryString> strings);

}  // namespace circon
