// Deterministic samplers for analytic-space checks.
//
// Every sampled verdict in the library records the seed it ran under; points
// come from a uniform grid, an additive low-discrepancy sequence, and a
// seeded mersenne twister, in that order, so reports are reproducible.

#ifndef PICARD_SAMPLING_HPP
#define PICARD_SAMPLING_HPP

#include <cstdint>
#include <random>
#include <vector>

namespace picard {

struct SamplerConfig {
    std::uint64_t seed = 0xC0FFEEULL;
    std::size_t grid = 21;        // evenly spaced points across the domain
    std::size_t extra = 40;       // additional seeded uniform points
    std::size_t pairs = 10000;    // pair budget for hypothesis checks
    double line_lo = -10.0;       // sampling box used when the domain is the whole line
    double line_hi = 10.0;
};

namespace sampling {

// additive recurrence with the plastic-constant fractions; well spread in 2D
inline std::pair<double, double> r2_point(std::size_t n) {
    constexpr double a1 = 0.7548776662466927;
    constexpr double a2 = 0.5698402909980532;
    double x = 0.5 + a1 * static_cast<double>(n + 1);
    double y = 0.5 + a2 * static_cast<double>(n + 1);
    return {x - static_cast<std::int64_t>(x), y - static_cast<std::int64_t>(y)};
}

inline std::vector<double> points(double lo, double hi, const SamplerConfig& cfg) {
    std::vector<double> pts;
    pts.reserve(cfg.grid + cfg.extra);
    if (cfg.grid == 1) {
        pts.push_back((lo + hi) / 2);
    } else {
        for (std::size_t i = 0; i < cfg.grid; ++i)
            pts.push_back(lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(cfg.grid - 1));
    }
    std::mt19937_64 rng(cfg.seed);
    std::uniform_real_distribution<double> dist(lo, hi);
    for (std::size_t i = 0; i < cfg.extra; ++i) pts.push_back(dist(rng));
    return pts;
}

inline std::vector<std::pair<double, double>> point_pairs(double lo, double hi, const SamplerConfig& cfg) {
    std::vector<std::pair<double, double>> out;
    out.reserve(cfg.pairs);
    std::size_t low_disc = cfg.pairs / 2;
    for (std::size_t n = 0; n < low_disc; ++n) {
        auto [u, v] = r2_point(n);
        out.emplace_back(lo + (hi - lo) * u, lo + (hi - lo) * v);
    }
    std::mt19937_64 rng(cfg.seed ^ 0x9E3779B97F4A7C15ULL);
    std::uniform_real_distribution<double> dist(lo, hi);
    while (out.size() < cfg.pairs) out.emplace_back(dist(rng), dist(rng));
    return out;
}

} // namespace sampling

} // namespace picard

#endif
