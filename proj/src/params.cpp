#include "lwedh/params.hpp"

#include <cmath>

#include "lwedh/errors.hpp"

namespace lwedh {

bool is_prime(std::uint32_t x) {
    if (x < 2)
        return false;
    for (std::uint64_t f = 2; f * f <= x; ++f)
        if (x % f == 0)
            return false;
    return true;
}

std::uint32_t min_prime_in_range(std::uint64_t lo, std::uint64_t hi) {
    for (std::uint64_t v = lo; v < hi; ++v)
        if (v <= 0xffffffffull && is_prime(static_cast<std::uint32_t>(v)))
            return static_cast<std::uint32_t>(v);
    throw CryptoError("no prime in requested range");
}

std::uint32_t public_dim_lower_bound(std::uint32_t n, std::uint32_t q, double epsilon) {
    const double bound = (1.0 + epsilon) * (1.0 + n) * std::log2(static_cast<double>(q));
    return static_cast<std::uint32_t>(std::ceil(bound));
}

double alpha_security_floor(std::uint32_t n, std::uint32_t q) {
    return 2.0 * std::sqrt(static_cast<double>(n)) / static_cast<double>(q);
}

LweParams derive(std::uint32_t n, double alpha, double epsilon) {
    LweParams p;
    p.n = n;
    p.q = min_prime_in_range(static_cast<std::uint64_t>(n) * n,
                             2ull * n * n);
    p.d = public_dim_lower_bound(n, p.q, epsilon);
    p.alpha = alpha;
    p.epsilon = epsilon;
    return p;
}

ParamCheck validate(const LweParams& p) {
    ParamCheck out;
    if (p.n == 0)
        out.errors.push_back("n must be positive");
    if (!is_prime(p.q))
        out.errors.push_back("q must be prime");
    // Dot products are accumulated in 64-bit integers without intermediate
    // reduction; that strategy needs q^2 * max(n, d) < 2^64.
    if (p.q >= (1u << 24))
        out.errors.push_back("q must be below 2^24");
    if (!(p.alpha > 0.0 && p.alpha < 1.0))
        out.errors.push_back("alpha must lie in (0, 1)");
    if (p.d == 0)
        out.errors.push_back("d must be positive");
    if (!out.errors.empty())
        return out;

    if (p.d < public_dim_lower_bound(p.n, p.q, p.epsilon))
        out.errors.push_back("d below (1+epsilon)(1+n)log2(q)");

    const std::uint64_t n2 = static_cast<std::uint64_t>(p.n) * p.n;
    if (p.q < n2 || p.q >= 2 * n2)
        out.warnings.push_back("q outside the default window [n^2, 2n^2)");
    if (p.alpha * p.q <= 2.0 * std::sqrt(static_cast<double>(p.n)))
        out.warnings.push_back("alpha*q at or below the security floor 2*sqrt(n)");
    // Effective lattice dimension heuristic with delta = 1.01.
    const double dim = std::sqrt(p.n * std::log2(static_cast<double>(p.q)) / std::log2(1.01));
    if (dim < 500.0)
        out.warnings.push_back("effective lattice dimension below 500");
    return out;
}

} // namespace lwedh
