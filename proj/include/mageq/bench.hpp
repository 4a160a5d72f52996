#pragma once

// Wall-clock measurements of the equivalence check on generated MAGs, for
// eyeballing how the cost scales with graph size. Each generated graph is
// compared against an identical copy of itself so the full two-sided test
// runs; pairs with differing skeletons would short-circuit immediately and
// time nothing interesting.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <vector>

#include "equivalence.hpp"
#include "projection.hpp"

namespace mageq {

struct BenchRow {
    std::size_t n = 0;         // observed vertices
    std::size_t edges = 0;     // edges of the generated MAG
    double avg_degree = 0.0;
    double seconds = 0.0;      // median over repeats of one full equivalence check
    bool equivalent = true;
};

struct BenchConfig {
    std::vector<std::size_t> sizes;
    double avg_degree = 3.0;   // target mean degree of the underlying DAG
    std::uint64_t seed = 1;
    int repeats = 3;
};

inline BenchRow bench_equivalence_at(std::size_t n, const BenchConfig& cfg) {
    const std::size_t latents = std::max<std::size_t>(1, n / 20);
    const double p = cfg.avg_degree / static_cast<double>(n + latents - 1);
    const MixedGraph g = random_mag(n, latents, 0, p, cfg.seed + n);
    BenchRow row;
    row.n = n;
    row.edges = g.edge_count();
    row.avg_degree = n ? 2.0 * static_cast<double>(g.edge_count()) / static_cast<double>(n) : 0.0;
    std::vector<double> times;
    for (int r = 0; r < cfg.repeats; ++r) {
        const auto t0 = std::chrono::steady_clock::now();
        const EquivalenceVerdict v = markov_equivalent(g, g);
        const auto t1 = std::chrono::steady_clock::now();
        row.equivalent = row.equivalent && v.equivalent;
        times.push_back(std::chrono::duration<double>(t1 - t0).count());
    }
    std::sort(times.begin(), times.end());
    row.seconds = times[times.size() / 2];
    return row;
}

inline std::vector<BenchRow> bench_equivalence(const BenchConfig& cfg) {
    std::vector<BenchRow> rows;
    for (std::size_t n : cfg.sizes) rows.push_back(bench_equivalence_at(n, cfg));
    return rows;
}

// Least-squares slope of log(seconds) against log(n): the empirical growth
// exponent. Sub-microsecond readings are clamped to keep the log finite.
inline double fitted_growth_exponent(const std::vector<BenchRow>& rows) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    const double k = static_cast<double>(rows.size());
    if (rows.size() < 2) return 0.0;
    for (const BenchRow& r : rows) {
        const double x = std::log(static_cast<double>(r.n));
        const double y = std::log(std::max(r.seconds, 1e-6));
        sx += x;
        sy += y;
        sxx += x * x;
        sxy += x * y;
    }
    return (k * sxy - sx * sy) / (k * sxx - sx * sx);
}

}  // namespace mageq
