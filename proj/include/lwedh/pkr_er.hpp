#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "lwedh/lwe.hpp"

namespace lwedh::pkr {

// Public embedding key for one ciphertext: the recoding direction gamma
// (+1 or -1), the step size, and the number of payload bits per
// ciphertext. Knowing gamma reveals nothing about the plaintext: it only
// says on which side of its decryption region lambda fell.
struct PekEntry {
    int gamma = 1;
    std::uint32_t q_step = 0;
    std::uint32_t n_bits = 0;

    bool operator==(const PekEntry&) const = default;
};

// n_bits-wide payload chunk. bits[0] is the least significant bit of value.
struct Payload {
    std::vector<std::uint8_t> bits;
    std::uint32_t value = 0;

    static Payload from_bits(std::span<const std::uint8_t> bits);
    static Payload from_value(std::uint32_t value, std::uint32_t n_bits);

    bool operator==(const Payload&) const = default;
};

enum class PekPolicy {
    strict,     // reject ciphertexts whose noise already exceeds the step
    permissive, // accept anything (statistical experiments)
};

// floor(q / 2^(n_bits+2)); requires 1 <= n_bits and 2^(n_bits+2) <= q.
std::uint32_t q_step(const LweParams& params, std::uint32_t n_bits);

// Key-owner side: derives the recoding direction from lambda. gamma is +1
// on [0, floor(q/4)) and [floor(q/2), floor(3q/4)), -1 elsewhere (both
// interval edges half-open). In strict mode the composite noise must be
// smaller than the step, as produced by bounded encryption.
PekEntry pek_gen(const SecretKey& sk, const Ciphertext& ct, std::uint32_t n_bits,
                 PekPolicy policy = PekPolicy::strict);

// Public recoding: c' = c + value * gamma * q_step mod q. u is untouched,
// decryption of the result is unchanged, and the payload is recoverable
// by the key owner.
Ciphertext pkr_embed(const LweParams& params, const Ciphertext& ct,
                     const PekEntry& pek, const Payload& payload);

// Plain decryption of a marked (or unmarked) ciphertext.
int pkr_decrypt(const SecretKey& sk, const Ciphertext& ct);

// Key-owner side: recovers the payload from a marked ciphertext by
// inverting the recoding geometrically. The two descending regions use a
// ceiling correction; throws CryptoError if the recovered value does not
// fit in n_bits (corrupted ciphertext or wrong n_bits).
Payload pkr_extract(const SecretKey& sk, const Ciphertext& ct, std::uint32_t n_bits);

// Gaussian tail bound on P(|e^T a_r| >= q_step): the probability that the
// composite noise of an unbounded encryption is too large for marked
// decryption and extraction to be exact. Monotone in alpha and n_bits,
// clipped to [0, 1].
double error_bound(const LweParams& params, std::uint32_t n_bits);

struct AlphaBounds {
    double alpha_min = 0.0; // security floor 2*sqrt(n)/q
    double alpha_max = 0.0; // largest alpha with an error-free trial run
};

// alpha_min from the security floor; alpha_max by binary search for the
// largest alpha such that `trials` runs of the full unbounded
// encrypt -> recode -> decrypt+extract pipeline produce zero errors.
// Throws CryptoError if even alpha_min shows errors (n_bits infeasible).
AlphaBounds alpha_bounds(const LweParams& params, std::uint32_t n_bits,
                         std::uint64_t trials, Rng& rng);

// Shared trial loop: each round draws a fresh key pair, performs one
// unbounded encryption, recodes a random payload, then decrypts and
// extracts; returns how many rounds failed either check. Keys are fresh
// per round so the count estimates the error rate of the joint
// key/encryption distribution rather than of one particular key.
std::uint64_t count_pipeline_errors(const LweParams& params, std::uint32_t n_bits,
                                    std::uint64_t trials, Rng& rng);

} // namespace lwedh::pkr
