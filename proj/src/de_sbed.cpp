#include "lwedh/de_sbed.hpp"

#include <zlib.h>

#include "lwedh/bits.hpp"
#include "lwedh/errors.hpp"

namespace lwedh::sbed {

namespace {

std::vector<std::uint8_t> crc_bits(std::span<const std::uint8_t> payload_bits) {
    const auto packed = pack_bits(payload_bits);
    const auto crc = static_cast<std::uint32_t>(
        crc32(crc32(0L, Z_NULL, 0), packed.data(), static_cast<uInt>(packed.size())));
    std::vector<std::uint8_t> bits(32);
    for (int i = 0; i < 32; ++i)
        bits[i] = (crc >> i) & 1u;
    return bits;
}

// Applies fn to the first ei.payload_bits (or `limit`) embedded pairs,
// walking available pairs in row-major order.
template <typename Fn>
void for_embedded_pairs(const EncryptedImage& ei, std::uint64_t limit, Fn&& fn) {
    std::uint64_t k = 0;
    for (std::size_t idx = 0; idx < ei.pairs.size() && k < limit; ++idx) {
        if (!ei.availability.flags[idx])
            continue;
        fn(idx, k);
        ++k;
    }
}

} // namespace

EncryptedPair encrypt_pair(const PublicKey& pk, const de::HlPair& hl, Rng& rng) {
    if (hl.h < 0 || hl.h > 255 || hl.l < 0 || hl.l > 255)
        throw CryptoError("h and l must fit in 8 bits");
    EncryptedPair ep;
    for (int i = 0; i < 8; ++i) {
        ep.ch[i] = encrypt(pk, (hl.h >> i) & 1, rng);
        ep.cl[i] = encrypt(pk, (hl.l >> i) & 1, rng);
    }
    return ep;
}

de::HlPair decrypt_pair(const SecretKey& sk, const EncryptedPair& ep) {
    de::HlPair hl;
    for (int i = 0; i < 8; ++i) {
        hl.h |= decrypt(sk, ep.ch[i]) << i;
        hl.l |= decrypt(sk, ep.cl[i]) << i;
    }
    return hl;
}

EncryptedPair embed_pair_encrypted(const PublicKey& pk, const EncryptedPair& ep,
                                   int bit, Rng& rng) {
    EncryptedPair out;
    out.cl = ep.cl;
    for (int i = 7; i >= 1; --i)
        out.ch[i] = ep.ch[i - 1];
    out.ch[0] = encrypt(pk, bit, rng);
    return out;
}

EncryptedPair recover_pair_encrypted(const PublicKey& pk, const EncryptedPair& ep,
                                     Rng& rng) {
    EncryptedPair out;
    out.cl = ep.cl;
    for (int i = 0; i < 7; ++i)
        out.ch[i] = ep.ch[i + 1];
    out.ch[7] = encrypt(pk, 0, rng);
    return out;
}

const Ciphertext& extract_bit_ciphertext(const EncryptedPair& ep) {
    return ep.ch[0];
}

EncryptedImage encrypt_image(const PublicKey& pk, const Image& img,
                             std::optional<int> h_fid, Rng& rng) {
    if (img.width == 0 || img.width % 2 != 0)
        throw CryptoError("image width must be even");
    if (h_fid && *h_fid < 0)
        throw CryptoError("fidelity cap must be non-negative");

    auto sorted = de::pvo_sort_image(img);

    EncryptedImage ei;
    ei.params = pk.params;
    ei.width = img.width;
    ei.height = img.height;
    ei.h_fid = h_fid;
    ei.availability = de::build_availability_map(sorted.image, h_fid);
    ei.perms = std::move(sorted.perms);
    ei.pairs.reserve(static_cast<std::size_t>(img.height) * (img.width / 2));
    for (std::uint32_t y = 0; y < img.height; ++y)
        for (std::uint32_t k = 0; k < img.width / 2; ++k) {
            const auto hl = de::pair_to_hl(sorted.image.at(2 * k, y),
                                           sorted.image.at(2 * k + 1, y));
            ei.pairs.push_back(encrypt_pair(pk, hl, rng));
        }
    return ei;
}

EncryptedImage embed_image(const PublicKey& pk, const EncryptedImage& ei,
                           std::span<const std::uint8_t> payload_bits, Rng& rng,
                           bool append_crc) {
    if (ei.payload_bits != 0)
        throw CryptoError("image already carries a payload");
    std::vector<std::uint8_t> bits(payload_bits.begin(), payload_bits.end());
    for (auto b : bits)
        if (b > 1)
            throw CryptoError("payload must be a bit sequence");
    if (append_crc) {
        const auto crc = crc_bits(bits);
        bits.insert(bits.end(), crc.begin(), crc.end());
    }
    if (bits.size() > ei.capacity())
        throw CryptoError("payload exceeds embedding capacity");

    EncryptedImage out = ei;
    out.payload_bits = bits.size();
    out.payload_crc = append_crc;
    for_embedded_pairs(out, bits.size(), [&](std::size_t idx, std::uint64_t k) {
        out.pairs[idx] = embed_pair_encrypted(pk, ei.pairs[idx], bits[k], rng);
    });
    return out;
}

EncryptedImage recover_image_encrypted(const PublicKey& pk, const EncryptedImage& ei,
                                       Rng& rng) {
    EncryptedImage out = ei;
    for_embedded_pairs(ei, ei.payload_bits, [&](std::size_t idx, std::uint64_t) {
        out.pairs[idx] = recover_pair_encrypted(pk, ei.pairs[idx], rng);
    });
    out.payload_bits = 0;
    out.payload_crc = false;
    return out;
}

std::vector<Ciphertext> extract_bits_encrypted(const EncryptedImage& ei) {
    std::vector<Ciphertext> cts;
    cts.reserve(ei.payload_bits);
    for_embedded_pairs(ei, ei.payload_bits, [&](std::size_t idx, std::uint64_t) {
        cts.push_back(extract_bit_ciphertext(ei.pairs[idx]));
    });
    return cts;
}

DecodeResult user_decode(const SecretKey& sk, const EncryptedImage& ei) {
    const std::uint32_t ppr = ei.width / 2;
    if (ei.pairs.size() != static_cast<std::size_t>(ei.height) * ppr ||
        ei.availability.flags.size() != ei.pairs.size() || ei.perms.size() != ei.height)
        throw CryptoError("encrypted image structure is inconsistent");

    Image marked_sorted{ei.width, ei.height, {}};
    Image recovered_sorted{ei.width, ei.height, {}};
    marked_sorted.pixels.resize(static_cast<std::size_t>(ei.width) * ei.height);
    recovered_sorted.pixels.resize(marked_sorted.pixels.size());

    std::vector<std::uint8_t> bits;
    bits.reserve(ei.payload_bits);

    std::uint64_t k = 0; // embedded pairs seen so far
    for (std::size_t idx = 0; idx < ei.pairs.size(); ++idx) {
        const auto hl = decrypt_pair(sk, ei.pairs[idx]);
        de::HlPair original = hl;
        if (ei.availability.flags[idx] && k < ei.payload_bits) {
            bits.push_back(static_cast<std::uint8_t>(de::de_extract(hl.h)));
            original.h = de::de_recover(hl.h);
            ++k;
        }
        const auto marked = de::hl_to_pair(hl);
        const auto orig = de::hl_to_pair(original);
        const std::uint32_t y = static_cast<std::uint32_t>(idx / ppr);
        const std::uint32_t p = static_cast<std::uint32_t>(idx % ppr);
        marked_sorted.at(2 * p, y) = static_cast<std::uint8_t>(marked.x);
        marked_sorted.at(2 * p + 1, y) = static_cast<std::uint8_t>(marked.y);
        recovered_sorted.at(2 * p, y) = static_cast<std::uint8_t>(orig.x);
        recovered_sorted.at(2 * p + 1, y) = static_cast<std::uint8_t>(orig.y);
    }
    if (k != ei.payload_bits)
        throw CryptoError("payload length exceeds available pairs");

    if (ei.payload_crc) {
        if (bits.size() < 32)
            throw CryptoError("payload too short to hold its checksum");
        std::vector<std::uint8_t> data(bits.begin(), bits.end() - 32);
        const auto expect = crc_bits(data);
        if (!std::equal(expect.begin(), expect.end(), bits.end() - 32))
            throw CryptoError("payload checksum mismatch");
        bits = std::move(data);
    }

    DecodeResult res;
    res.marked = de::pvo_unsort_image(marked_sorted, ei.perms);
    res.recovered = de::pvo_unsort_image(recovered_sorted, ei.perms);
    res.payload = std::move(bits);
    return res;
}

} // namespace lwedh::sbed
