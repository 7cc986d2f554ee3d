#include "lwedh/image.hpp"

#include <fstream>
#include <limits>

#include "lwedh/errors.hpp"

namespace lwedh::io {

namespace {

// Reads one PGM header token, skipping whitespace and '#' comments.
std::string next_token(std::istream& in) {
    std::string tok;
    int ch;
    while ((ch = in.get()) != EOF) {
        if (ch == '#') {
            in.ignore(std::numeric_limits<std::streamsize>::max(), '\n');
            continue;
        }
        if (std::isspace(ch)) {
            if (!tok.empty())
                break;
            continue;
        }
        tok.push_back(static_cast<char>(ch));
    }
    if (tok.empty())
        throw FormatError("pgm: truncated header");
    return tok;
}

std::uint32_t parse_dim(const std::string& tok) {
    std::uint32_t v = 0;
    for (char c : tok) {
        if (c < '0' || c > '9')
            throw FormatError("pgm: non-numeric header field");
        v = v * 10 + static_cast<std::uint32_t>(c - '0');
        if (v > 1u << 20)
            throw FormatError("pgm: dimension out of range");
    }
    return v;
}

} // namespace

Image read_pgm(std::istream& in) {
    if (next_token(in) != "P5")
        throw FormatError("pgm: not a binary PGM (P5) file");
    Image img;
    img.width = parse_dim(next_token(in));
    img.height = parse_dim(next_token(in));
    if (img.width == 0 || img.height == 0)
        throw FormatError("pgm: zero dimension");
    if (parse_dim(next_token(in)) != 255)
        throw FormatError("pgm: only maxval 255 is supported");
    // next_token consumed exactly one whitespace byte after the maxval
    img.pixels.resize(static_cast<std::size_t>(img.width) * img.height);
    in.read(reinterpret_cast<char*>(img.pixels.data()),
            static_cast<std::streamsize>(img.pixels.size()));
    if (static_cast<std::size_t>(in.gcount()) != img.pixels.size())
        throw FormatError("pgm: truncated pixel data");
    return img;
}

Image read_pgm(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw FormatError("cannot open " + path);
    return read_pgm(f);
}

void write_pgm(const Image& img, std::ostream& out) {
    if (img.pixels.size() != static_cast<std::size_t>(img.width) * img.height)
        throw FormatError("pgm: pixel buffer does not match dimensions");
    out << "P5\n" << img.width << ' ' << img.height << "\n255\n";
    out.write(reinterpret_cast<const char*>(img.pixels.data()),
              static_cast<std::streamsize>(img.pixels.size()));
    if (!out)
        throw FormatError("pgm: write failed");
}

void write_pgm(const Image& img, const std::string& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw FormatError("cannot open " + path + " for writing");
    write_pgm(img, f);
}

} // namespace lwedh::io
