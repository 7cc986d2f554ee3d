#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lwedh/image.hpp"

namespace lwedh::de {

struct PixelPair {
    int x = 0; // larger value of the pair
    int y = 0;

    bool operator==(const PixelPair&) const = default;
};

// Difference/average representation: h = x - y, l = floor((x + y) / 2).
struct HlPair {
    int h = 0;
    int l = 0;

    bool operator==(const HlPair&) const = default;
};

// Permutation applied to one row by the descending value sort:
// sorted[i] = row[order[i]]. Ties keep their original left-to-right
// order, so the permutation is canonical for a given row.
struct RowPermutation {
    std::vector<std::uint16_t> order;

    bool operator==(const RowPermutation&) const = default;
};

// Per-pair embeddability flags, row-major. h_fid is the fidelity cap on
// |h| (nullopt = uncapped).
struct AvailabilityMap {
    std::uint32_t rows = 0;
    std::uint32_t pairs_per_row = 0;
    std::optional<int> h_fid;
    std::vector<std::uint8_t> flags; // rows * pairs_per_row entries, 0/1

    bool at(std::uint32_t row, std::uint32_t pair) const {
        return flags[static_cast<std::size_t>(row) * pairs_per_row + pair] != 0;
    }
    std::size_t count_available() const;

    bool operator==(const AvailabilityMap&) const = default;
};

std::vector<std::uint8_t> pvo_sort_row(std::span<const std::uint8_t> row,
                                       RowPermutation& perm);
std::vector<std::uint8_t> pvo_unsort_row(std::span<const std::uint8_t> sorted,
                                         const RowPermutation& perm);

struct SortedImage {
    Image image;
    std::vector<RowPermutation> perms; // one per row
};

SortedImage pvo_sort_image(const Image& img);
Image pvo_unsort_image(const Image& sorted, const std::vector<RowPermutation>& perms);

HlPair pair_to_hl(int x, int y);

// Inverse transform; throws CryptoError if a reconstructed value leaves
// [0, 255] (which means an unavailable pair was processed).
PixelPair hl_to_pair(const HlPair& hl);

// True iff the pair tolerates difference expansion with either bit value
// while both the original and the expanded pair reconstruct inside
// [0, 255], and h respects the fidelity cap.
bool is_available(const HlPair& hl, std::optional<int> h_fid);

// h' = 2h + bit.
int de_embed(int h, int bit);
// bit = h' mod 2 (non-negative h').
int de_extract(int h_marked);
// h = floor(h' / 2).
int de_recover(int h_marked);

// Availability of every adjacent pair (columns 2k, 2k+1) of a sorted
// image with even width.
AvailabilityMap build_availability_map(const Image& sorted, std::optional<int> h_fid);

} // namespace lwedh::de
