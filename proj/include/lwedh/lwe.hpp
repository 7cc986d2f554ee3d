#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lwedh/params.hpp"
#include "lwedh/rng.hpp"

namespace lwedh {

// Secret key: n coordinates, uniform over Z_q.
struct SecretKey {
    LweParams params;
    std::vector<std::uint32_t> s;

    bool operator==(const SecretKey&) const = default;
};

// Public key: matrix A (n x d over Z_q, stored column-major so both
// key generation and encryption walk contiguous memory) and the vector
// p = A^T s + e mod q. The noise e is consumed at generation time and
// never stored.
struct PublicKey {
    LweParams params;
    std::vector<std::uint32_t> a; // column j occupies a[j*n .. j*n+n)
    std::vector<std::uint32_t> p; // d entries

    bool operator==(const PublicKey&) const = default;
};

// Single-bit ciphertext: u = A * a_r mod q and the scalar
// c = p^T a_r + m * floor(q/2) mod q, for a fresh binary mask a_r.
struct Ciphertext {
    std::vector<std::uint32_t> u;
    std::uint32_t c = 0;

    bool operator==(const Ciphertext&) const = default;
};

// Signed representative of x mod q in (-q/2, q/2].
std::int64_t centered(std::uint32_t x, std::uint32_t q);

// One draw from the rounded Gaussian: round(q * x) mod q, x ~ N(0, alpha^2).
std::uint32_t sample_noise(const LweParams& params, Rng& rng);

SecretKey sk_gen(const LweParams& params, Rng& rng);

PublicKey pk_gen(const LweParams& params, const SecretKey& sk, Rng& rng);

// Key generation with caller-supplied noise vector (d entries). Test hook:
// lets callers observe or zero the noise that pk_gen would have drawn.
PublicKey pk_gen_with_noise(const LweParams& params, const SecretKey& sk,
                            std::span<const std::uint32_t> noise, Rng& rng);

Ciphertext encrypt(const PublicKey& pk, int bit, Rng& rng);

// Encryption with a caller-supplied binary mask a_r (d entries, each 0/1).
// Test hook for the quantization identity and distribution experiments.
Ciphertext encrypt_with_mask(const PublicKey& pk, int bit,
                             std::span<const std::uint8_t> mask);

// Rejection-sampled encryption: redraws the mask until the composite noise
// satisfies |centered(lambda - bit*floor(q/2))| < bound. Requires the
// secret key, so only the key owner can produce bounded ciphertexts.
// Throws CryptoError once max_retries draws have been rejected.
Ciphertext encrypt_bounded(const PublicKey& pk, const SecretKey& sk, int bit,
                           std::uint32_t bound, Rng& rng, int max_retries = 1000);

// lambda = c - s^T u mod q. Equals e^T a_r + bit * floor(q/2) mod q.
std::uint32_t quantize(const SecretKey& sk, const Ciphertext& ct);

// 1 iff lambda lies in [floor(q/4), floor(3q/4)), else 0. Both interval
// boundaries are half-open; lambda = floor(q/4) decrypts to 1.
int decrypt(const SecretKey& sk, const Ciphertext& ct);

} // namespace lwedh
