#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace lwedh {

// Parameter set for the single-bit LWE scheme.
//
//   n       secret dimension
//   q       prime modulus, chosen as the minimum prime in [n^2, 2n^2)
//           unless overridden
//   d       public dimension, at least (1+epsilon)(1+n)*log2(q)
//   alpha   relative width of the noise distribution: noise is
//           round(q*x) mod q with x ~ N(0, alpha^2)
//   epsilon slack factor used only by the d lower bound
struct LweParams {
    std::uint32_t n = 0;
    std::uint32_t q = 0;
    std::uint32_t d = 0;
    double alpha = 0.0;
    double epsilon = 0.2;

    bool operator==(const LweParams&) const = default;
};

// Working profile used throughout the documentation and benchmarks.
inline LweParams default_profile() { return {240, 57601, 4573, 6.0e-4, 0.1999}; }

// Small profile for fast tests. alpha sits far above the security floor
// on purpose: at this scale we only care about correctness.
inline LweParams toy_profile() { return {16, 257, 164, 3.0e-3, 0.2}; }

// Derives q and d from n via the default selection rules.
LweParams derive(std::uint32_t n, double alpha, double epsilon = 0.2);

struct ParamCheck {
    std::vector<std::string> errors;   // hard failures
    std::vector<std::string> warnings; // security-related advisories
    bool ok() const { return errors.empty(); }
};

// Structural validation plus security advisories. Errors make the set
// unusable; warnings flag parameter choices below the recommended
// security margins (toy profiles trip these by design).
ParamCheck validate(const LweParams& params);

bool is_prime(std::uint32_t x);

// Smallest prime in [lo, hi); throws CryptoError if none exists.
std::uint32_t min_prime_in_range(std::uint64_t lo, std::uint64_t hi);

// ceil((1+epsilon)*(1+n)*log2(q)), the minimum admissible public dimension.
std::uint32_t public_dim_lower_bound(std::uint32_t n, std::uint32_t q, double epsilon);

// Smallest alpha considered secure for the given (n, q): 2*sqrt(n)/q.
double alpha_security_floor(std::uint32_t n, std::uint32_t q);

} // namespace lwedh
