#include "lwedh/de_spatial.hpp"

#include <algorithm>
#include <cstdlib>
#include <numeric>

#include "lwedh/errors.hpp"

namespace lwedh::de {

namespace {

// Floor division (C++ '/' truncates toward zero).
int floor_div(int a, int b) {
    const int quot = a / b;
    const int rem = a % b;
    return (rem != 0 && (rem < 0) != (b < 0)) ? quot - 1 : quot;
}

} // namespace

std::size_t AvailabilityMap::count_available() const {
    std::size_t n = 0;
    for (auto f : flags)
        n += f;
    return n;
}

std::vector<std::uint8_t> pvo_sort_row(std::span<const std::uint8_t> row,
                                       RowPermutation& perm) {
    if (row.size() > 0xffff)
        throw CryptoError("row too long for 16-bit permutation indices");
    perm.order.resize(row.size());
    std::iota(perm.order.begin(), perm.order.end(), std::uint16_t{0});
    std::stable_sort(perm.order.begin(), perm.order.end(),
                     [&](std::uint16_t a, std::uint16_t b) { return row[a] > row[b]; });
    std::vector<std::uint8_t> sorted(row.size());
    for (std::size_t i = 0; i < row.size(); ++i)
        sorted[i] = row[perm.order[i]];
    return sorted;
}

std::vector<std::uint8_t> pvo_unsort_row(std::span<const std::uint8_t> sorted,
                                         const RowPermutation& perm) {
    if (sorted.size() != perm.order.size())
        throw CryptoError("permutation length mismatch");
    std::vector<std::uint8_t> row(sorted.size());
    for (std::size_t i = 0; i < sorted.size(); ++i)
        row[perm.order[i]] = sorted[i];
    return row;
}

SortedImage pvo_sort_image(const Image& img) {
    SortedImage out;
    out.image.width = img.width;
    out.image.height = img.height;
    out.image.pixels.resize(img.pixels.size());
    out.perms.resize(img.height);
    for (std::uint32_t y = 0; y < img.height; ++y) {
        std::span<const std::uint8_t> row(img.pixels.data() +
                                              static_cast<std::size_t>(y) * img.width,
                                          img.width);
        auto sorted = pvo_sort_row(row, out.perms[y]);
        std::copy(sorted.begin(), sorted.end(),
                  out.image.pixels.begin() + static_cast<std::size_t>(y) * img.width);
    }
    return out;
}

Image pvo_unsort_image(const Image& sorted, const std::vector<RowPermutation>& perms) {
    if (perms.size() != sorted.height)
        throw CryptoError("permutation table height mismatch");
    Image out;
    out.width = sorted.width;
    out.height = sorted.height;
    out.pixels.resize(sorted.pixels.size());
    for (std::uint32_t y = 0; y < sorted.height; ++y) {
        std::span<const std::uint8_t> row(sorted.pixels.data() +
                                              static_cast<std::size_t>(y) * sorted.width,
                                          sorted.width);
        auto orig = pvo_unsort_row(row, perms[y]);
        std::copy(orig.begin(), orig.end(),
                  out.pixels.begin() + static_cast<std::size_t>(y) * sorted.width);
    }
    return out;
}

HlPair pair_to_hl(int x, int y) {
    if (x < 0 || x > 255 || y < 0 || y > 255)
        throw CryptoError("pixel value outside [0, 255]");
    return {x - y, floor_div(x + y, 2)};
}

PixelPair hl_to_pair(const HlPair& hl) {
    const int x = hl.l + floor_div(hl.h + 1, 2);
    const int y = hl.l - floor_div(hl.h, 2);
    if (x < 0 || x > 255 || y < 0 || y > 255)
        throw CryptoError("pair reconstruction left [0, 255]");
    return {x, y};
}

bool is_available(const HlPair& hl, std::optional<int> h_fid) {
    const int cap = std::min(2 * (255 - hl.l), 2 * hl.l + 1);
    if (std::abs(hl.h) > cap)
        return false;
    for (int b : {0, 1})
        if (std::abs(2 * hl.h + b) > cap)
            return false;
    if (h_fid && hl.h > *h_fid)
        return false;
    return true;
}

int de_embed(int h, int bit) {
    if (bit != 0 && bit != 1)
        throw CryptoError("embedded bit must be 0 or 1");
    return 2 * h + bit;
}

int de_extract(int h_marked) {
    if (h_marked < 0)
        throw CryptoError("marked difference must be non-negative");
    return h_marked & 1;
}

int de_recover(int h_marked) {
    return floor_div(h_marked, 2);
}

AvailabilityMap build_availability_map(const Image& sorted, std::optional<int> h_fid) {
    if (sorted.width == 0 || sorted.width % 2 != 0)
        throw CryptoError("image width must be even");
    AvailabilityMap map;
    map.rows = sorted.height;
    map.pairs_per_row = sorted.width / 2;
    map.h_fid = h_fid;
    map.flags.resize(static_cast<std::size_t>(map.rows) * map.pairs_per_row);
    for (std::uint32_t y = 0; y < sorted.height; ++y) {
        for (std::uint32_t k = 0; k < map.pairs_per_row; ++k) {
            const int x = sorted.at(2 * k, y);
            const int yv = sorted.at(2 * k + 1, y);
            map.flags[static_cast<std::size_t>(y) * map.pairs_per_row + k] =
                is_available(pair_to_hl(x, yv), h_fid) ? 1 : 0;
        }
    }
    return map;
}

} // namespace lwedh::de
