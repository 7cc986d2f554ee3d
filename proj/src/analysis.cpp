#include "lwedh/analysis.hpp"

#include <cmath>
#include <limits>
#include <ostream>
#include <unordered_map>

#include "lwedh/errors.hpp"

namespace lwedh::stats {

namespace {

void require_same_shape(const Image& a, const Image& b) {
    if (a.width != b.width || a.height != b.height)
        throw CryptoError("image dimension mismatch");
}

void format_value(std::ostream& out, double v) {
    if (std::isinf(v)) {
        out << (v > 0 ? "inf" : "-inf");
        return;
    }
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.10g", v);
    out << buf;
}

} // namespace

Histogram Histogram::regular(std::uint64_t upper, std::uint32_t bins) {
    if (upper == 0 || bins == 0 || bins > upper)
        throw CryptoError("histogram needs 0 < bins <= upper");
    Histogram h;
    h.upper = upper;
    h.bins = bins;
    h.counts.assign(bins, 0);
    return h;
}

void Histogram::add(std::uint64_t value) {
    if (value >= upper)
        throw CryptoError("histogram sample out of range");
    // value belongs to bin floor(value * bins / upper); the product fits
    // 64 bits for every range this toolkit produces (q < 2^24).
    ++counts[static_cast<std::size_t>(value * bins / upper)];
}

std::uint64_t Histogram::total() const {
    std::uint64_t t = 0;
    for (auto c : counts)
        t += c;
    return t;
}

std::uint64_t Histogram::bin_lo(std::uint32_t i) const {
    // Smallest value mapping to bin i.
    return (static_cast<std::uint64_t>(i) * upper + bins - 1) / bins;
}

double mse(const Image& a, const Image& b) {
    require_same_shape(a, b);
    if (a.pixels.empty())
        throw CryptoError("empty image");
    double acc = 0.0;
    for (std::size_t i = 0; i < a.pixels.size(); ++i) {
        const double d = static_cast<double>(a.pixels[i]) - b.pixels[i];
        acc += d * d;
    }
    return acc / static_cast<double>(a.pixels.size());
}

double psnr(const Image& a, const Image& b) {
    const double err = mse(a, b);
    if (err == 0.0)
        return std::numeric_limits<double>::infinity();
    return 10.0 * std::log10(255.0 * 255.0 / err);
}

double ssim(const Image& a, const Image& b) {
    require_same_shape(a, b);
    constexpr int kWin = 8;
    constexpr double kC1 = (0.01 * 255.0) * (0.01 * 255.0);
    constexpr double kC2 = (0.03 * 255.0) * (0.03 * 255.0);
    if (a.width < kWin || a.height < kWin)
        throw CryptoError("image too small for 8x8 windows");

    double acc = 0.0;
    std::size_t windows = 0;
    for (std::uint32_t y = 0; y + kWin <= a.height; ++y) {
        for (std::uint32_t x = 0; x + kWin <= a.width; ++x) {
            double sx = 0, sy = 0, sxx = 0, syy = 0, sxy = 0;
            for (int dy = 0; dy < kWin; ++dy)
                for (int dx = 0; dx < kWin; ++dx) {
                    const double va = a.at(x + dx, y + dy);
                    const double vb = b.at(x + dx, y + dy);
                    sx += va;
                    sy += vb;
                    sxx += va * va;
                    syy += vb * vb;
                    sxy += va * vb;
                }
            constexpr double kN = kWin * kWin;
            const double mx = sx / kN;
            const double my = sy / kN;
            const double vx = sxx / kN - mx * mx;
            const double vy = syy / kN - my * my;
            const double cov = sxy / kN - mx * my;
            acc += ((2 * mx * my + kC1) * (2 * cov + kC2)) /
                   ((mx * mx + my * my + kC1) * (vx + vy + kC2));
            ++windows;
        }
    }
    return acc / static_cast<double>(windows);
}

FidelityReport fidelity(const Image& reference, const Image& distorted) {
    FidelityReport r;
    r.mse = mse(reference, distorted);
    r.psnr = psnr(reference, distorted);
    r.ssim = ssim(reference, distorted);
    return r;
}

double entropy(std::span<const std::uint32_t> samples, std::uint32_t q) {
    if (samples.empty())
        throw CryptoError("entropy of an empty sample");
    std::vector<std::uint64_t> counts(q, 0);
    for (auto s : samples) {
        if (s >= q)
            throw CryptoError("sample out of range");
        ++counts[s];
    }
    const double total = static_cast<double>(samples.size());
    double h = 0.0;
    for (auto c : counts) {
        if (c == 0)
            continue;
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

double gamma_balance(std::span<const pkr::PekEntry> entries) {
    if (entries.empty())
        throw CryptoError("empty recoding key sequence");
    std::size_t plus = 0;
    for (const auto& e : entries)
        plus += e.gamma > 0;
    return static_cast<double>(plus) / static_cast<double>(entries.size());
}

double error_experiment(const LweParams& params, std::uint32_t n_bits,
                        std::uint64_t trials, Rng& rng) {
    if (trials == 0)
        throw CryptoError("trial count must be positive");
    const auto errors = pkr::count_pipeline_errors(params, n_bits, trials, rng);
    return static_cast<double>(errors) / static_cast<double>(trials);
}

void write_metrics_csv(std::ostream& out, std::span<const MetricRow> rows) {
    out << "metric,key_digest,value\n";
    for (const auto& [name, digest, value] : rows) {
        out << name << ',' << digest << ',';
        format_value(out, value);
        out << '\n';
    }
}

void write_histogram_csv(std::ostream& out, const Histogram& hist) {
    out << "bin_lo,bin_hi,count\n";
    for (std::uint32_t i = 0; i < hist.bins; ++i) {
        const std::uint64_t hi = i + 1 < hist.bins ? hist.bin_lo(i + 1) : hist.upper;
        out << hist.bin_lo(i) << ',' << hi << ',' << hist.counts[i] << '\n';
    }
}

} // namespace lwedh::stats
