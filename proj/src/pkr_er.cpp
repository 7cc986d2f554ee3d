#include "lwedh/pkr_er.hpp"

#include <algorithm>
#include <cmath>

#include "lwedh/errors.hpp"

namespace lwedh::pkr {

namespace {

constexpr double kPi = 3.14159265358979323846;

std::uint64_t ceil_div(std::uint64_t a, std::uint64_t b) {
    return (a + b - 1) / b;
}

} // namespace

Payload Payload::from_bits(std::span<const std::uint8_t> bits) {
    if (bits.empty() || bits.size() > 24)
        throw CryptoError("payload width must lie in [1, 24] bits");
    Payload p;
    p.bits.assign(bits.begin(), bits.end());
    for (std::size_t i = 0; i < bits.size(); ++i) {
        if (bits[i] > 1)
            throw CryptoError("payload must be a bit sequence");
        p.value |= static_cast<std::uint32_t>(bits[i]) << i;
    }
    return p;
}

Payload Payload::from_value(std::uint32_t value, std::uint32_t n_bits) {
    if (n_bits == 0 || n_bits > 24)
        throw CryptoError("payload width must lie in [1, 24] bits");
    if (value >= (1u << n_bits))
        throw CryptoError("payload value does not fit in n_bits");
    Payload p;
    p.value = value;
    p.bits.resize(n_bits);
    for (std::uint32_t i = 0; i < n_bits; ++i)
        p.bits[i] = (value >> i) & 1u;
    return p;
}

std::uint32_t q_step(const LweParams& params, std::uint32_t n_bits) {
    if (n_bits == 0 || n_bits > 24)
        throw CryptoError("n_bits must lie in [1, 24]");
    const std::uint64_t divisor = 1ull << (n_bits + 2);
    if (divisor > params.q)
        throw CryptoError("n_bits too large for modulus");
    return static_cast<std::uint32_t>(params.q / divisor);
}

PekEntry pek_gen(const SecretKey& sk, const Ciphertext& ct, std::uint32_t n_bits,
                 PekPolicy policy) {
    const std::uint32_t q = sk.params.q;
    const std::uint32_t step = q_step(sk.params, n_bits);
    const std::uint32_t lambda = quantize(sk, ct);
    const std::uint32_t q4 = q / 4;
    const std::uint32_t q2 = q / 2;
    const std::uint32_t q34 = static_cast<std::uint32_t>((3ull * q) / 4);

    PekEntry pek;
    pek.q_step = step;
    pek.n_bits = n_bits;
    pek.gamma = (lambda < q4 || (lambda >= q2 && lambda < q34)) ? 1 : -1;

    if (policy == PekPolicy::strict) {
        const std::uint32_t m = (lambda >= q4 && lambda < q34) ? 1 : 0;
        const std::int64_t noise = centered((lambda + q - m * (q / 2)) % q, q);
        if (noise >= static_cast<std::int64_t>(step) ||
            noise <= -static_cast<std::int64_t>(step))
            throw CryptoError("ciphertext noise exceeds the recoding step; "
                              "use bounded encryption");
    }
    return pek;
}

Ciphertext pkr_embed(const LweParams& params, const Ciphertext& ct,
                     const PekEntry& pek, const Payload& payload) {
    if (pek.n_bits == 0 || pek.n_bits > 24)
        throw CryptoError("recoding key width must lie in [1, 24] bits");
    if (payload.value >= (1u << pek.n_bits))
        throw CryptoError("payload value does not fit in the key's width");
    if (pek.gamma != 1 && pek.gamma != -1)
        throw CryptoError("recoding direction must be +1 or -1");
    const std::uint64_t q = params.q;
    const std::uint64_t delta =
        (static_cast<std::uint64_t>(payload.value) * pek.q_step) % q;
    Ciphertext out = ct;
    out.c = static_cast<std::uint32_t>(
        pek.gamma > 0 ? (ct.c + delta) % q : (ct.c + q - delta) % q);
    return out;
}

int pkr_decrypt(const SecretKey& sk, const Ciphertext& ct) {
    return decrypt(sk, ct);
}

Payload pkr_extract(const SecretKey& sk, const Ciphertext& ct, std::uint32_t n_bits) {
    const std::uint32_t q = sk.params.q;
    const std::uint32_t step = q_step(sk.params, n_bits);
    const std::uint32_t lambda = quantize(sk, ct);
    const std::uint32_t q4 = q / 4;
    const std::uint32_t q2 = q / 2;
    const std::uint32_t q34 = static_cast<std::uint32_t>((3ull * q) / 4);

    // Within each quarter region the recoding moved lambda away from the
    // region's plaintext anchor (0, q/2 or q) in steps of `step`; walking
    // back is a floor in the ascending regions and a ceiling - 1 in the
    // descending ones.
    std::uint64_t value;
    if (lambda < q4)
        value = lambda / step;
    else if (lambda < q2)
        value = ceil_div(q2 - lambda, step) - 1;
    else if (lambda < q34)
        value = (lambda - q2) / step;
    else
        value = ceil_div(q - lambda, step) - 1;

    if (value >= (1ull << n_bits))
        throw CryptoError("extracted value out of range; ciphertext corrupted "
                          "or wrong payload width");
    return Payload::from_value(static_cast<std::uint32_t>(value), n_bits);
}

double error_bound(const LweParams& params, std::uint32_t n_bits) {
    const std::uint32_t step = q_step(params, n_bits);
    // Composite noise e^T a_r has standard deviation sqrt(d/2) * alpha * q.
    const double sigma =
        std::sqrt(params.d / 2.0) * params.alpha * static_cast<double>(params.q);
    if (sigma <= 0.0)
        return 0.0;
    const double t = static_cast<double>(step);
    const double bound =
        std::sqrt(2.0 / kPi) * (sigma / t) * std::exp(-(t * t) / (2.0 * sigma * sigma));
    return std::clamp(bound, 0.0, 1.0);
}

std::uint64_t count_pipeline_errors(const LweParams& params, std::uint32_t n_bits,
                                    std::uint64_t trials, Rng& rng) {
    const std::uint32_t width = 1u << n_bits;
    std::uint64_t errors = 0;
    for (std::uint64_t t = 0; t < trials; ++t) {
        // A fresh key pair per round: the error-rate and balance claims are
        // about the joint key/encryption distribution. A single fixed key
        // biases the composite noise by its own noise sum.
        const auto sk = sk_gen(params, rng);
        const auto pk = pk_gen(params, sk, rng);
        const int m = rng.bit() ? 1 : 0;
        const auto payload = Payload::from_value(rng.uniform_below(width), n_bits);
        const auto ct = encrypt(pk, m, rng);
        const auto pek = pek_gen(sk, ct, n_bits, PekPolicy::permissive);
        const auto marked = pkr_embed(params, ct, pek, payload);
        bool ok = pkr_decrypt(sk, marked) == m;
        if (ok) {
            try {
                ok = pkr_extract(sk, marked, n_bits).value == payload.value;
            } catch (const CryptoError&) {
                ok = false;
            }
        }
        if (!ok)
            ++errors;
    }
    return errors;
}

AlphaBounds alpha_bounds(const LweParams& params, std::uint32_t n_bits,
                         std::uint64_t trials, Rng& rng) {
    if (trials == 0)
        throw CryptoError("trial count must be positive");
    AlphaBounds out;
    out.alpha_min = alpha_security_floor(params.n, params.q);

    auto error_free = [&](double alpha) {
        LweParams p = params;
        p.alpha = alpha;
        return count_pipeline_errors(p, n_bits, trials, rng) == 0;
    };

    if (!error_free(out.alpha_min))
        throw CryptoError("no error-free alpha at or above the security floor; "
                          "n_bits infeasible for these parameters");

    double lo = out.alpha_min;
    double hi = out.alpha_min;
    while (hi < 0.5) {
        hi *= 2.0;
        if (!error_free(hi))
            break;
        lo = hi;
    }
    while ((hi - lo) / lo > 0.005) {
        const double mid = 0.5 * (lo + hi);
        if (error_free(mid))
            lo = mid;
        else
            hi = mid;
    }
    out.alpha_max = lo;
    return out;
}

} // namespace lwedh::pkr
