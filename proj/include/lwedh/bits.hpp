#pragma once

#include <cstdint>
#include <span>
#include <vector>

namespace lwedh {

// Byte <-> bit-vector conversions, LSB-first within each byte. This is
// the packing order used everywhere bits touch a byte stream (payload
// files, availability bitmaps, sign bitstrings).

inline std::vector<std::uint8_t> unpack_bits(std::span<const std::uint8_t> bytes) {
    std::vector<std::uint8_t> bits;
    bits.reserve(bytes.size() * 8);
    for (std::uint8_t b : bytes)
        for (int i = 0; i < 8; ++i)
            bits.push_back((b >> i) & 1u);
    return bits;
}

inline std::vector<std::uint8_t> pack_bits(std::span<const std::uint8_t> bits) {
    std::vector<std::uint8_t> bytes((bits.size() + 7) / 8, 0);
    for (std::size_t i = 0; i < bits.size(); ++i)
        if (bits[i])
            bytes[i / 8] |= static_cast<std::uint8_t>(1u << (i % 8));
    return bytes;
}

} // namespace lwedh
