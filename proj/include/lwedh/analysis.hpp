#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <tuple>
#include <vector>

#include "lwedh/image.hpp"
#include "lwedh/params.hpp"
#include "lwedh/pkr_er.hpp"
#include "lwedh/rng.hpp"

namespace lwedh::stats {

// Equal-width histogram over the integer range [0, upper).
struct Histogram {
    std::uint64_t upper = 0;
    std::uint32_t bins = 0;
    std::vector<std::uint64_t> counts;

    static Histogram regular(std::uint64_t upper, std::uint32_t bins);
    void add(std::uint64_t value);
    std::uint64_t total() const;
    // Bin i covers [bin_lo(i), bin_lo(i+1)).
    std::uint64_t bin_lo(std::uint32_t i) const;
};

double mse(const Image& a, const Image& b);

// 10*log10(255^2 / MSE); +infinity for identical images.
double psnr(const Image& a, const Image& b);

// Mean structural similarity over all fully-contained 8x8 windows,
// stride 1, uniform window weights, C1 = (0.01*255)^2, C2 = (0.03*255)^2.
double ssim(const Image& a, const Image& b);

struct FidelityReport {
    double mse = 0.0;
    double psnr = 0.0;
    double ssim = 0.0;
};

FidelityReport fidelity(const Image& reference, const Image& distorted);

// Plug-in Shannon entropy (bits per symbol) of samples drawn from [0, q).
double entropy(std::span<const std::uint32_t> samples, std::uint32_t q);

// Fraction of +1 directions in a recoding key sequence.
double gamma_balance(std::span<const pkr::PekEntry> entries);

// Error rate of the unbounded encrypt -> recode -> decrypt+extract
// pipeline over `trials` rounds with a fresh key pair.
double error_experiment(const LweParams& params, std::uint32_t n_bits,
                        std::uint64_t trials, Rng& rng);

// One row per metric: metric name, key digest (or "-"), value.
// Infinities are serialized as "inf".
using MetricRow = std::tuple<std::string, std::string, double>;
void write_metrics_csv(std::ostream& out, std::span<const MetricRow> rows);
void write_histogram_csv(std::ostream& out, const Histogram& hist);

} // namespace lwedh::stats
