#pragma once

#include <cstdint>
#include <random>
#include <span>

#include "lwedh/errors.hpp"

namespace lwedh {

// Deterministic randomness source. Every operation that needs randomness
// takes one of these explicitly; a fixed seed makes the whole pipeline
// reproducible. Not thread-safe: use one instance per thread.
class Rng {
  public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    // Seeded from the OS entropy pool.
    static Rng from_entropy() {
        std::random_device rd;
        const std::uint64_t hi = rd();
        const std::uint64_t lo = rd();
        return Rng((hi << 32) ^ lo);
    }

    // Uniform value in [0, bound).
    std::uint32_t uniform_below(std::uint32_t bound) {
        if (bound == 0)
            throw CryptoError("uniform_below: bound must be positive");
        std::uniform_int_distribution<std::uint32_t> dist(0, bound - 1);
        return dist(engine_);
    }

    // Gaussian draw, mean 0, standard deviation sigma (> 0).
    double normal(double sigma) {
        std::normal_distribution<double> dist(0.0, sigma);
        return dist(engine_);
    }

    bool bit() { return (engine_() & 1u) != 0; }

    // Fills each element with an independent fair bit (0 or 1).
    void fill_bits(std::span<std::uint8_t> out) {
        std::uint64_t word = 0;
        int left = 0;
        for (auto& b : out) {
            if (left == 0) {
                word = engine_();
                left = 64;
            }
            b = static_cast<std::uint8_t>(word & 1u);
            word >>= 1;
            --left;
        }
    }

    std::uint64_t raw() { return engine_(); }

  private:
    std::mt19937_64 engine_;
};

} // namespace lwedh
