#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace qknap {

// Basis-state index <-> bit vector. Bit q of the index is variable/qubit q,
// so vector position 0 is the least significant bit.
inline std::vector<std::uint8_t> bits_from_index(std::uint64_t index, int width) {
    std::vector<std::uint8_t> bits(static_cast<std::size_t>(width));
    for (int q = 0; q < width; ++q) {
        bits[static_cast<std::size_t>(q)] = static_cast<std::uint8_t>((index >> q) & 1u);
    }
    return bits;
}

inline std::uint64_t index_from_bits(const std::vector<std::uint8_t>& bits) {
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < bits.size(); ++q) {
        if (bits[q] != 0) {
            index |= (std::uint64_t{1} << q);
        }
    }
    return index;
}

// Qubit-0-first string rendering ("011" means qubit 0 = 0, qubit 1 = 1, ...).
inline std::string bitstring_from_index(std::uint64_t index, int width) {
    std::string s(static_cast<std::size_t>(width), '0');
    for (int q = 0; q < width; ++q) {
        if ((index >> q) & 1u) {
            s[static_cast<std::size_t>(q)] = '1';
        }
    }
    return s;
}

inline std::uint64_t index_from_bitstring(const std::string& s) {
    std::uint64_t index = 0;
    for (std::size_t q = 0; q < s.size(); ++q) {
        if (s[q] == '1') {
            index |= (std::uint64_t{1} << q);
        }
    }
    return index;
}

} // namespace qknap
