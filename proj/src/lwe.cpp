#include "lwedh/lwe.hpp"

#include <cmath>

#include "lwedh/errors.hpp"

namespace lwedh {

namespace {

void require_bit(int bit) {
    if (bit != 0 && bit != 1)
        throw CryptoError("plaintext must be 0 or 1");
}

void require_dims(const LweParams& params, const SecretKey& sk) {
    if (sk.s.size() != params.n)
        throw CryptoError("secret key dimension mismatch");
}

} // namespace

std::int64_t centered(std::uint32_t x, std::uint32_t q) {
    return x > q / 2 ? static_cast<std::int64_t>(x) - q : static_cast<std::int64_t>(x);
}

std::uint32_t sample_noise(const LweParams& params, Rng& rng) {
    if (params.alpha <= 0.0)
        return 0;
    const double x = rng.normal(params.alpha);
    const auto q = static_cast<std::int64_t>(params.q);
    std::int64_t v = std::llround(params.q * x) % q;
    if (v < 0)
        v += q;
    return static_cast<std::uint32_t>(v);
}

SecretKey sk_gen(const LweParams& params, Rng& rng) {
    SecretKey sk;
    sk.params = params;
    sk.s.resize(params.n);
    for (auto& si : sk.s)
        si = rng.uniform_below(params.q);
    return sk;
}

PublicKey pk_gen(const LweParams& params, const SecretKey& sk, Rng& rng) {
    std::vector<std::uint32_t> noise(params.d);
    for (auto& e : noise)
        e = sample_noise(params, rng);
    return pk_gen_with_noise(params, sk, noise, rng);
}

PublicKey pk_gen_with_noise(const LweParams& params, const SecretKey& sk,
                            std::span<const std::uint32_t> noise, Rng& rng) {
    require_dims(params, sk);
    if (noise.size() != params.d)
        throw CryptoError("noise vector dimension mismatch");

    PublicKey pk;
    pk.params = params;
    pk.a.resize(static_cast<std::size_t>(params.n) * params.d);
    pk.p.resize(params.d);
    for (auto& v : pk.a)
        v = rng.uniform_below(params.q);
    for (std::uint32_t j = 0; j < params.d; ++j) {
        const std::uint32_t* col = pk.a.data() + static_cast<std::size_t>(j) * params.n;
        std::uint64_t acc = 0; // n * (q-1)^2 stays below 2^64 for q < 2^24
        for (std::uint32_t i = 0; i < params.n; ++i)
            acc += static_cast<std::uint64_t>(col[i]) * sk.s[i];
        pk.p[j] = static_cast<std::uint32_t>((acc + noise[j]) % params.q);
    }
    return pk;
}

Ciphertext encrypt_with_mask(const PublicKey& pk, int bit,
                             std::span<const std::uint8_t> mask) {
    require_bit(bit);
    const LweParams& pr = pk.params;
    if (mask.size() != pr.d)
        throw CryptoError("mask dimension mismatch");

    Ciphertext ct;
    ct.u.resize(pr.n);
    std::vector<std::uint64_t> acc(pr.n, 0);
    std::uint64_t cs = 0;
    for (std::uint32_t j = 0; j < pr.d; ++j) {
        if (!mask[j])
            continue;
        const std::uint32_t* col = pk.a.data() + static_cast<std::size_t>(j) * pr.n;
        for (std::uint32_t i = 0; i < pr.n; ++i)
            acc[i] += col[i];
        cs += pk.p[j];
    }
    for (std::uint32_t i = 0; i < pr.n; ++i)
        ct.u[i] = static_cast<std::uint32_t>(acc[i] % pr.q);
    ct.c = static_cast<std::uint32_t>((cs + static_cast<std::uint64_t>(bit) * (pr.q / 2)) % pr.q);
    return ct;
}

Ciphertext encrypt(const PublicKey& pk, int bit, Rng& rng) {
    std::vector<std::uint8_t> mask(pk.params.d);
    rng.fill_bits(mask);
    return encrypt_with_mask(pk, bit, mask);
}

Ciphertext encrypt_bounded(const PublicKey& pk, const SecretKey& sk, int bit,
                           std::uint32_t bound, Rng& rng, int max_retries) {
    require_bit(bit);
    const std::uint32_t q = pk.params.q;
    if (bound == 0 || bound > q / 4)
        throw CryptoError("noise bound must lie in (0, floor(q/4)]");
    if (sk.params != pk.params)
        throw CryptoError("key pair parameter mismatch");

    for (int attempt = 0; attempt < max_retries; ++attempt) {
        Ciphertext ct = encrypt(pk, bit, rng);
        const std::uint32_t lambda = quantize(sk, ct);
        const std::uint32_t shift = static_cast<std::uint32_t>(bit) * (q / 2);
        const std::uint32_t residual = (lambda + q - shift) % q;
        const std::int64_t noise = centered(residual, q);
        if (noise < static_cast<std::int64_t>(bound) &&
            noise > -static_cast<std::int64_t>(bound))
            return ct;
    }
    throw CryptoError("bounded encryption retry limit reached");
}

std::uint32_t quantize(const SecretKey& sk, const Ciphertext& ct) {
    const LweParams& pr = sk.params;
    require_dims(pr, sk);
    if (ct.u.size() != pr.n)
        throw CryptoError("ciphertext dimension mismatch");
    std::uint64_t acc = 0;
    for (std::uint32_t i = 0; i < pr.n; ++i)
        acc += static_cast<std::uint64_t>(sk.s[i]) * ct.u[i];
    const std::uint32_t su = static_cast<std::uint32_t>(acc % pr.q);
    return (ct.c + pr.q - su) % pr.q;
}

int decrypt(const SecretKey& sk, const Ciphertext& ct) {
    const std::uint32_t lambda = quantize(sk, ct);
    const std::uint32_t q = sk.params.q;
    return (lambda >= q / 4 && lambda < (3ull * q) / 4) ? 1 : 0;
}

} // namespace lwedh
