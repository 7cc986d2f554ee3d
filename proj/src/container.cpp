#include "lwedh/container.hpp"

#include <openssl/evp.h>

#include <cstring>
#include <fstream>
#include <sstream>

#include "lwedh/bits.hpp"
#include "lwedh/errors.hpp"

namespace lwedh::io {

namespace {

constexpr char kKeyMagic[4] = {'L', 'W', 'K', 'Y'};
constexpr char kContainerMagic[4] = {'L', 'W', 'C', 'T'};
constexpr std::uint16_t kVersion = 1;

// --- primitive little-endian writers/readers -----------------------------

void put_bytes(std::ostream& out, const void* data, std::size_t len) {
    out.write(static_cast<const char*>(data), static_cast<std::streamsize>(len));
    if (!out)
        throw FormatError("write failed");
}

void put_u8(std::ostream& out, std::uint8_t v) { put_bytes(out, &v, 1); }

void put_u16(std::ostream& out, std::uint16_t v) {
    const std::uint8_t b[2] = {static_cast<std::uint8_t>(v),
                               static_cast<std::uint8_t>(v >> 8)};
    put_bytes(out, b, 2);
}

void put_u32(std::ostream& out, std::uint32_t v) {
    const std::uint8_t b[4] = {
        static_cast<std::uint8_t>(v), static_cast<std::uint8_t>(v >> 8),
        static_cast<std::uint8_t>(v >> 16), static_cast<std::uint8_t>(v >> 24)};
    put_bytes(out, b, 4);
}

void put_u64(std::ostream& out, std::uint64_t v) {
    put_u32(out, static_cast<std::uint32_t>(v));
    put_u32(out, static_cast<std::uint32_t>(v >> 32));
}

void put_f64(std::ostream& out, double v) {
    std::uint64_t bits;
    std::memcpy(&bits, &v, 8);
    put_u64(out, bits);
}

void get_bytes(std::istream& in, void* data, std::size_t len) {
    in.read(static_cast<char*>(data), static_cast<std::streamsize>(len));
    if (static_cast<std::size_t>(in.gcount()) != len)
        throw FormatError("unexpected end of file");
}

std::uint8_t get_u8(std::istream& in) {
    std::uint8_t v;
    get_bytes(in, &v, 1);
    return v;
}

std::uint16_t get_u16(std::istream& in) {
    std::uint8_t b[2];
    get_bytes(in, b, 2);
    return static_cast<std::uint16_t>(b[0] | (b[1] << 8));
}

std::uint32_t get_u32(std::istream& in) {
    std::uint8_t b[4];
    get_bytes(in, b, 4);
    return static_cast<std::uint32_t>(b[0]) | (static_cast<std::uint32_t>(b[1]) << 8) |
           (static_cast<std::uint32_t>(b[2]) << 16) |
           (static_cast<std::uint32_t>(b[3]) << 24);
}

std::uint64_t get_u64(std::istream& in) {
    const std::uint64_t lo = get_u32(in);
    const std::uint64_t hi = get_u32(in);
    return lo | (hi << 32);
}

double get_f64(std::istream& in) {
    const std::uint64_t bits = get_u64(in);
    double v;
    std::memcpy(&v, &bits, 8);
    return v;
}

// --- shared blocks --------------------------------------------------------

void put_params(std::ostream& out, const LweParams& p) {
    put_u32(out, p.n);
    put_u32(out, p.q);
    put_u32(out, p.d);
    put_f64(out, p.alpha);
    put_f64(out, p.epsilon);
}

LweParams get_params(std::istream& in) {
    LweParams p;
    p.n = get_u32(in);
    p.q = get_u32(in);
    p.d = get_u32(in);
    p.alpha = get_f64(in);
    p.epsilon = get_f64(in);
    if (p.n == 0 || p.q < 2 || p.d == 0)
        throw FormatError("degenerate parameter block");
    if (p.n > (1u << 16) || p.d > (1u << 24) || p.q >= (1u << 24))
        throw FormatError("parameter block out of supported range");
    return p;
}

void put_ciphertext(std::ostream& out, const Ciphertext& ct, std::uint32_t n) {
    if (ct.u.size() != n)
        throw FormatError("ciphertext dimension mismatch");
    for (auto v : ct.u)
        put_u32(out, v);
    put_u32(out, ct.c);
}

Ciphertext get_ciphertext(std::istream& in, std::uint32_t n, std::uint32_t q) {
    Ciphertext ct;
    ct.u.resize(n);
    for (auto& v : ct.u) {
        v = get_u32(in);
        if (v >= q)
            throw FormatError("ciphertext scalar out of range");
    }
    ct.c = get_u32(in);
    if (ct.c >= q)
        throw FormatError("ciphertext scalar out of range");
    return ct;
}

void put_header(std::ostream& out, const char magic[4], std::uint8_t kind) {
    put_bytes(out, magic, 4);
    put_u16(out, kVersion);
    put_u8(out, kind);
}

std::uint8_t get_header(std::istream& in, const char magic[4]) {
    char m[4];
    get_bytes(in, m, 4);
    if (std::memcmp(m, magic, 4) != 0)
        throw FormatError("bad magic");
    const std::uint16_t version = get_u16(in);
    if (version != kVersion)
        throw FormatError("unsupported format version");
    return get_u8(in);
}

void require_eof(std::istream& in) {
    if (in.peek() != EOF)
        throw FormatError("trailing bytes after payload");
}

template <typename T, typename Fn>
T from_file(const std::string& path, Fn&& fn) {
    std::ifstream f(path, std::ios::binary);
    if (!f)
        throw FormatError("cannot open " + path);
    return fn(f);
}

template <typename Fn>
void to_file(const std::string& path, Fn&& fn) {
    std::ofstream f(path, std::ios::binary);
    if (!f)
        throw FormatError("cannot open " + path + " for writing");
    fn(f);
    f.flush();
    if (!f)
        throw FormatError("write failed: " + path);
}

} // namespace

std::array<std::uint8_t, 8> key_digest(const PublicKey& pk) {
    std::ostringstream buf(std::ios::binary);
    put_params(buf, pk.params);
    for (auto v : pk.a)
        put_u32(buf, v);
    for (auto v : pk.p)
        put_u32(buf, v);
    const std::string bytes = buf.str();

    unsigned char md[EVP_MAX_MD_SIZE];
    unsigned int md_len = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), md, &md_len, EVP_sha256(), nullptr) != 1 ||
        md_len < 8)
        throw CryptoError("digest computation failed");
    std::array<std::uint8_t, 8> out;
    std::memcpy(out.data(), md, 8);
    return out;
}

std::string digest_hex(const std::array<std::uint8_t, 8>& digest) {
    static const char* hex = "0123456789abcdef";
    std::string s;
    s.reserve(16);
    for (auto b : digest) {
        s.push_back(hex[b >> 4]);
        s.push_back(hex[b & 0xf]);
    }
    return s;
}

void save_secret_key(std::ostream& out, const SecretKeyFile& skf) {
    if (skf.key.s.size() != skf.key.params.n)
        throw FormatError("secret key dimension mismatch");
    put_header(out, kKeyMagic, 0);
    put_params(out, skf.key.params);
    put_bytes(out, skf.pk_digest.data(), 8);
    for (auto v : skf.key.s)
        put_u32(out, v);
}

SecretKeyFile load_secret_key(std::istream& in) {
    if (get_header(in, kKeyMagic) != 0)
        throw FormatError("not a secret key file");
    SecretKeyFile skf;
    skf.key.params = get_params(in);
    get_bytes(in, skf.pk_digest.data(), 8);
    skf.key.s.resize(skf.key.params.n);
    for (auto& v : skf.key.s) {
        v = get_u32(in);
        if (v >= skf.key.params.q)
            throw FormatError("secret key scalar out of range");
    }
    require_eof(in);
    return skf;
}

void save_public_key(std::ostream& out, const PublicKey& pk) {
    const auto& pr = pk.params;
    if (pk.a.size() != static_cast<std::size_t>(pr.n) * pr.d || pk.p.size() != pr.d)
        throw FormatError("public key dimension mismatch");
    put_header(out, kKeyMagic, 1);
    put_params(out, pr);
    for (auto v : pk.a)
        put_u32(out, v);
    for (auto v : pk.p)
        put_u32(out, v);
}

PublicKey load_public_key(std::istream& in) {
    if (get_header(in, kKeyMagic) != 1)
        throw FormatError("not a public key file");
    PublicKey pk;
    pk.params = get_params(in);
    pk.a.resize(static_cast<std::size_t>(pk.params.n) * pk.params.d);
    pk.p.resize(pk.params.d);
    for (auto& v : pk.a) {
        v = get_u32(in);
        if (v >= pk.params.q)
            throw FormatError("public key scalar out of range");
    }
    for (auto& v : pk.p) {
        v = get_u32(in);
        if (v >= pk.params.q)
            throw FormatError("public key scalar out of range");
    }
    require_eof(in);
    return pk;
}

void save_image_container(std::ostream& out, const sbed::EncryptedImage& ei) {
    const std::uint32_t ppr = ei.width / 2;
    if (ei.width == 0 || ei.width % 2 != 0)
        throw FormatError("image width must be even");
    if (ei.pairs.size() != static_cast<std::size_t>(ei.height) * ppr ||
        ei.availability.flags.size() != ei.pairs.size() ||
        ei.availability.rows != ei.height || ei.availability.pairs_per_row != ppr ||
        ei.perms.size() != ei.height)
        throw FormatError("encrypted image structure is inconsistent");
    if (ei.h_fid && (*ei.h_fid < 0 || *ei.h_fid > 255))
        throw FormatError("fidelity cap out of range");

    put_header(out, kContainerMagic, 0);
    put_params(out, ei.params);
    put_bytes(out, ei.key_digest.data(), 8);
    put_u32(out, ei.width);
    put_u32(out, ei.height);
    put_u8(out, ei.h_fid ? 0 : 1);
    put_u8(out, ei.h_fid ? static_cast<std::uint8_t>(*ei.h_fid) : 0);
    put_u8(out, ei.payload_crc ? 1 : 0);
    put_u64(out, ei.payload_bits);

    const auto packed = pack_bits(ei.availability.flags);
    put_bytes(out, packed.data(), packed.size());

    for (const auto& perm : ei.perms) {
        if (perm.order.size() != ei.width)
            throw FormatError("permutation length mismatch");
        for (auto v : perm.order)
            put_u16(out, v);
    }
    for (const auto& pair : ei.pairs) {
        for (const auto& ct : pair.ch)
            put_ciphertext(out, ct, ei.params.n);
        for (const auto& ct : pair.cl)
            put_ciphertext(out, ct, ei.params.n);
    }
}

sbed::EncryptedImage load_image_container(std::istream& in) {
    if (get_header(in, kContainerMagic) != 0)
        throw FormatError("not an encrypted image container");
    sbed::EncryptedImage ei;
    ei.params = get_params(in);
    get_bytes(in, ei.key_digest.data(), 8);
    ei.width = get_u32(in);
    ei.height = get_u32(in);
    if (ei.width == 0 || ei.width % 2 != 0 || ei.height == 0 ||
        ei.width > (1u << 16) || ei.height > (1u << 20))
        throw FormatError("image dimensions out of range");
    const std::uint8_t uncapped = get_u8(in);
    const std::uint8_t cap = get_u8(in);
    if (uncapped > 1)
        throw FormatError("bad fidelity flag");
    if (!uncapped)
        ei.h_fid = cap;
    const std::uint8_t crc = get_u8(in);
    if (crc > 1)
        throw FormatError("bad checksum flag");
    ei.payload_crc = crc != 0;
    ei.payload_bits = get_u64(in);

    const std::uint32_t ppr = ei.width / 2;
    const std::size_t pair_count = static_cast<std::size_t>(ei.height) * ppr;
    ei.availability.rows = ei.height;
    ei.availability.pairs_per_row = ppr;
    ei.availability.h_fid = ei.h_fid;
    std::vector<std::uint8_t> packed((pair_count + 7) / 8);
    get_bytes(in, packed.data(), packed.size());
    auto bits = unpack_bits(packed);
    for (std::size_t i = pair_count; i < bits.size(); ++i)
        if (bits[i])
            throw FormatError("availability bitmap padding not zero");
    bits.resize(pair_count);
    ei.availability.flags = std::move(bits);
    if (ei.payload_bits > ei.availability.count_available())
        throw FormatError("payload length exceeds available pairs");

    ei.perms.resize(ei.height);
    for (auto& perm : ei.perms) {
        perm.order.resize(ei.width);
        std::vector<bool> seen(ei.width, false);
        for (auto& v : perm.order) {
            v = get_u16(in);
            if (v >= ei.width || seen[v])
                throw FormatError("row permutation is not a bijection");
            seen[v] = true;
        }
    }
    ei.pairs.resize(pair_count);
    for (auto& pair : ei.pairs) {
        for (auto& ct : pair.ch)
            ct = get_ciphertext(in, ei.params.n, ei.params.q);
        for (auto& ct : pair.cl)
            ct = get_ciphertext(in, ei.params.n, ei.params.q);
    }
    require_eof(in);
    return ei;
}

void save_bitstream_container(std::ostream& out, const BitstreamContainer& bc) {
    if (bc.pek && bc.pek->gammas.size() != bc.cts.size())
        throw FormatError("recoding key length mismatch");
    put_header(out, kContainerMagic, 1);
    put_params(out, bc.params);
    put_bytes(out, bc.key_digest.data(), 8);
    put_u64(out, bc.cts.size());
    for (const auto& ct : bc.cts)
        put_ciphertext(out, ct, bc.params.n);
    put_u8(out, bc.pek ? 1 : 0);
    if (bc.pek) {
        put_u32(out, bc.pek->q_step);
        put_u8(out, static_cast<std::uint8_t>(bc.pek->n_bits));
        std::vector<std::uint8_t> bits(bc.pek->gammas.size());
        for (std::size_t i = 0; i < bits.size(); ++i) {
            if (bc.pek->gammas[i] != 1 && bc.pek->gammas[i] != -1)
                throw FormatError("recoding sign must be +1 or -1");
            bits[i] = bc.pek->gammas[i] > 0 ? 1 : 0;
        }
        const auto packed = pack_bits(bits);
        put_bytes(out, packed.data(), packed.size());
    }
}

BitstreamContainer load_bitstream_container(std::istream& in) {
    if (get_header(in, kContainerMagic) != 1)
        throw FormatError("not a ciphertext sequence container");
    BitstreamContainer bc;
    bc.params = get_params(in);
    get_bytes(in, bc.key_digest.data(), 8);
    const std::uint64_t count = get_u64(in);
    if (count > (1ull << 32))
        throw FormatError("ciphertext count out of range");
    bc.cts.resize(count);
    for (auto& ct : bc.cts)
        ct = get_ciphertext(in, bc.params.n, bc.params.q);
    const std::uint8_t has_pek = get_u8(in);
    if (has_pek > 1)
        throw FormatError("bad recoding key flag");
    if (has_pek) {
        PekBlock pek;
        pek.q_step = get_u32(in);
        pek.n_bits = get_u8(in);
        if (pek.n_bits == 0 || pek.n_bits > 24)
            throw FormatError("recoding key width out of range");
        std::vector<std::uint8_t> packed((count + 7) / 8);
        get_bytes(in, packed.data(), packed.size());
        auto bits = unpack_bits(packed);
        for (std::size_t i = count; i < bits.size(); ++i)
            if (bits[i])
                throw FormatError("recoding sign padding not zero");
        pek.gammas.resize(count);
        for (std::size_t i = 0; i < count; ++i)
            pek.gammas[i] = bits[i] ? 1 : -1;
        bc.pek = std::move(pek);
    }
    require_eof(in);
    return bc;
}

// --- path convenience wrappers --------------------------------------------

void save_secret_key(const std::string& path, const SecretKeyFile& skf) {
    to_file(path, [&](std::ostream& out) { save_secret_key(out, skf); });
}

SecretKeyFile load_secret_key(const std::string& path) {
    return from_file<SecretKeyFile>(path,
                                    [](std::istream& in) { return load_secret_key(in); });
}

void save_public_key(const std::string& path, const PublicKey& pk) {
    to_file(path, [&](std::ostream& out) { save_public_key(out, pk); });
}

PublicKey load_public_key(const std::string& path) {
    return from_file<PublicKey>(path,
                                [](std::istream& in) { return load_public_key(in); });
}

void save_image_container(const std::string& path, const sbed::EncryptedImage& ei) {
    to_file(path, [&](std::ostream& out) { save_image_container(out, ei); });
}

sbed::EncryptedImage load_image_container(const std::string& path) {
    return from_file<sbed::EncryptedImage>(
        path, [](std::istream& in) { return load_image_container(in); });
}

void save_bitstream_container(const std::string& path, const BitstreamContainer& bc) {
    to_file(path, [&](std::ostream& out) { save_bitstream_container(out, bc); });
}

BitstreamContainer load_bitstream_container(const std::string& path) {
    return from_file<BitstreamContainer>(
        path, [](std::istream& in) { return load_bitstream_container(in); });
}

} // namespace lwedh::io
