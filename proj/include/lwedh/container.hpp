#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "lwedh/de_sbed.hpp"
#include "lwedh/lwe.hpp"

namespace lwedh::io {

// Binary formats, little-endian throughout. Z_q scalars are 32-bit,
// lengths 64-bit, bit sequences packed LSB-first.
//
// Key file ("LWKY", version 1):
//   magic, version u16, role u8 (0 secret / 1 public), params
//   (n u32, q u32, d u32, alpha f64, epsilon f64), then
//     secret: public-key digest (8 bytes), s (n u32)
//     public: A (n*d u32, column-major), p (d u32)
//
// Container file ("LWCT", version 1):
//   magic, version u16, scheme u8, params, key digest (8 bytes), then
//     scheme 0 (encrypted image): width u32, height u32, fidelity flag u8
//       (1 = uncapped) + value u8, crc flag u8, payload bit count u64,
//       availability bitmap, row permutations (width u16 per row),
//       pair ciphertexts (16 per pair, h planes then l planes, LSB first)
//     scheme 1 (ciphertext sequence): count u64, ciphertexts, pek flag u8,
//       optional recoding key block: q_step u32, n_bits u8, sign bitmap
//       (bit = 1 for gamma = +1)
//
// Every reader checks magic, version, structural lengths, and rejects
// trailing bytes. The key digest is the first 8 bytes of SHA-256 over the
// serialized parameter block and public key; it ties ciphertexts to the
// key pair that produced them.

std::array<std::uint8_t, 8> key_digest(const PublicKey& pk);

std::string digest_hex(const std::array<std::uint8_t, 8>& digest);

struct SecretKeyFile {
    SecretKey key;
    std::array<std::uint8_t, 8> pk_digest{};

    bool operator==(const SecretKeyFile&) const = default;
};

void save_secret_key(std::ostream& out, const SecretKeyFile& skf);
void save_secret_key(const std::string& path, const SecretKeyFile& skf);
SecretKeyFile load_secret_key(std::istream& in);
SecretKeyFile load_secret_key(const std::string& path);

void save_public_key(std::ostream& out, const PublicKey& pk);
void save_public_key(const std::string& path, const PublicKey& pk);
PublicKey load_public_key(std::istream& in);
PublicKey load_public_key(const std::string& path);

void save_image_container(std::ostream& out, const sbed::EncryptedImage& ei);
void save_image_container(const std::string& path, const sbed::EncryptedImage& ei);
sbed::EncryptedImage load_image_container(std::istream& in);
sbed::EncryptedImage load_image_container(const std::string& path);

// Recoding key block for a ciphertext sequence.
struct PekBlock {
    std::uint32_t q_step = 0;
    std::uint32_t n_bits = 0;
    std::vector<std::int8_t> gammas; // +1 / -1, one per ciphertext

    bool operator==(const PekBlock&) const = default;
};

struct BitstreamContainer {
    LweParams params;
    std::array<std::uint8_t, 8> key_digest{};
    std::vector<Ciphertext> cts;
    std::optional<PekBlock> pek;

    bool operator==(const BitstreamContainer&) const = default;
};

void save_bitstream_container(std::ostream& out, const BitstreamContainer& bc);
void save_bitstream_container(const std::string& path, const BitstreamContainer& bc);
BitstreamContainer load_bitstream_container(std::istream& in);
BitstreamContainer load_bitstream_container(const std::string& path);

} // namespace lwedh::io
