#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

namespace lwedh {

// 8-bit grayscale image, row-major.
struct Image {
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::vector<std::uint8_t> pixels;

    static Image constant(std::uint32_t w, std::uint32_t h, std::uint8_t value) {
        return {w, h, std::vector<std::uint8_t>(static_cast<std::size_t>(w) * h, value)};
    }

    std::uint8_t at(std::uint32_t x, std::uint32_t y) const {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }
    std::uint8_t& at(std::uint32_t x, std::uint32_t y) {
        return pixels[static_cast<std::size_t>(y) * width + x];
    }

    bool operator==(const Image&) const = default;
};

namespace io {

// Binary PGM (P5), maxval 255 only. Comments are accepted on read;
// writes are canonical ("P5\n<w> <h>\n255\n" + raw rows), so a file in
// canonical form round-trips byte-identically.
Image read_pgm(std::istream& in);
Image read_pgm(const std::string& path);
void write_pgm(const Image& img, std::ostream& out);
void write_pgm(const Image& img, const std::string& path);

} // namespace io
} // namespace lwedh
