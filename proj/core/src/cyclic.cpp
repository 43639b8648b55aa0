#include "circon/cyclic.hpp"

#include <stdexcept>

namespace circon {

BinaryString::BinaryString(std::vector<bool> bits) : bits_(std::move(bits)) {
    if (bits_.empty()) throw InstanceError("binary string must be nonempty");
}

BinaryString BinaryString::parse(std::string_view text) {
    std::vector<bool> bits;
    bits.reserve(text.size());
    for (char ch : text) {
        if (ch != '0' && ch != '1')
            throw ParseError("binary string may contain only '0'/'1', got '" + std::string(1, ch) + "'");
        bits.push_back(ch == '1');
    }
    return BinaryString(std::move(bits));
}

std::size_t BinaryString::popcount() const {
    std::size_t w = 0;
    for (bool b : bits_) w += b;
    return w;
}

std::string BinaryString::str() const {
    std::string out;
    out.reserve(bits_.size());
    for (bool b : bits_) out.push_back(b ? '1' : '0');
    return out;
}

BinaryString shift(const BinaryString& s, std::size_t delta) {
    const std::size_t n = s.length();
    delta %= n;
    std::vector<bool> out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = s.bits()[(i + delta) % n];
    return BinaryString(std::move(out));
}

std::size_t common_length(std::span<const BinaryString> strings) {
    if (strings.empty()) throw InstanceError("instance has no strings");
    const std::size_t n = strings.front().length();
    for (const auto& s : strings)
        if (s.length() != n) throw InstanceError("strings have unequal lengths");
    return n;
}

Column column_at(std::span<const BinaryString> strings, const ShiftVector& deltas, std::size_t i) {
    const std::size_t n = common_length(strings);
    if (deltas.size() != strings.size())
        throw InstanceError("shift vector arity does not match number of strings");
    if (i < 1 || i > n) throw InstanceError("column index out of range");
    Column col;
    col.index = i;
    col.entries.reserve(strings.size());
    for (std::size_t j = 0; j < strings.size(); ++j) {
        const std::size_t d = deltas.deltas[j] % n;
        const bool v = strings[j].bits()[(i - 1 + d) % n];
        col.entries.push_back(v);
        col.weight += v;
    }
    return col;
}

}  // namespace circon
