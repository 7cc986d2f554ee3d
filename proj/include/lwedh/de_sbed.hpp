#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "lwedh/de_spatial.hpp"
#include "lwedh/image.hpp"
#include "lwedh/lwe.hpp"

namespace lwedh::sbed {

// One pixel pair in the encrypted domain: every bitplane of h and l is a
// separate single-bit ciphertext. Index 0 is the least significant
// bitplane. A marked pair has the same shape; after embedding, ch holds
// the bitplanes of h' = 2h + b.
struct EncryptedPair {
    std::array<Ciphertext, 8> ch;
    std::array<Ciphertext, 8> cl;

    bool operator==(const EncryptedPair&) const = default;
};

// Encrypted image container contents: per-pair ciphertexts plus the open
// side information (availability, row permutations) the embedder needs.
// payload_bits counts embedded bits, CRC included when payload_crc is set.
struct EncryptedImage {
    LweParams params;
    std::array<std::uint8_t, 8> key_digest{};
    std::uint32_t width = 0;
    std::uint32_t height = 0;
    std::optional<int> h_fid;
    bool payload_crc = false;
    std::uint64_t payload_bits = 0;
    de::AvailabilityMap availability;
    std::vector<de::RowPermutation> perms;
    std::vector<EncryptedPair> pairs; // row-major, width/2 per row

    std::size_t pair_count() const { return pairs.size(); }
    std::size_t capacity() const { return availability.count_available(); }

    bool operator==(const EncryptedImage&) const = default;
};

EncryptedPair encrypt_pair(const PublicKey& pk, const de::HlPair& hl, Rng& rng);
de::HlPair decrypt_pair(const SecretKey& sk, const EncryptedPair& ep);

// Difference expansion on ciphertexts: drops the top h bitplane, shifts
// the rest up and inserts a fresh encryption of bit at the bottom.
// Caller must ensure the pair is flagged available (so the dropped
// bitplane encrypts 0 and h' = 2h + bit fits in 8 bits).
EncryptedPair embed_pair_encrypted(const PublicKey& pk, const EncryptedPair& ep,
                                   int bit, Rng& rng);

// Inverse shift: drops the bottom h bitplane and inserts a fresh
// encryption of 0 at the top, yielding bitplanes of floor(h'/2).
EncryptedPair recover_pair_encrypted(const PublicKey& pk, const EncryptedPair& ep,
                                     Rng& rng);

// The ciphertext carrying the embedded bit. Non-destructive.
const Ciphertext& extract_bit_ciphertext(const EncryptedPair& ep);

// Full owner-side pipeline: row sort, availability, per-pair encryption.
EncryptedImage encrypt_image(const PublicKey& pk, const Image& img,
                             std::optional<int> h_fid, Rng& rng);

// Embeds payload bits into the available pairs in row-major order.
// Unavailable pairs pass through untouched (bit-identical ciphertexts).
// With append_crc a CRC-32 of the packed payload is embedded after the
// payload proper. Throws CryptoError if capacity is exceeded or the
// image already carries a payload.
EncryptedImage embed_image(const PublicKey& pk, const EncryptedImage& ei,
                           std::span<const std::uint8_t> payload_bits, Rng& rng,
                           bool append_crc = false);

// Server-side restoration without the secret key: undoes the expansion
// shift on every embedded pair. The result decrypts to the original image.
EncryptedImage recover_image_encrypted(const PublicKey& pk, const EncryptedImage& ei,
                                       Rng& rng);

// Server-side payload extraction without the secret key: the ciphertexts
// of the embedded bits, in embedding order.
std::vector<Ciphertext> extract_bits_encrypted(const EncryptedImage& ei);

struct DecodeResult {
    Image marked;                      // image carrying the payload
    Image recovered;                   // exact original
    std::vector<std::uint8_t> payload; // extracted bits (CRC verified and stripped)
};

// Owner-side decode: decrypts every pair, reconstructs the marked and the
// recovered image, and extracts the payload.
DecodeResult user_decode(const SecretKey& sk, const EncryptedImage& ei);

} // namespace lwedh::sbed
