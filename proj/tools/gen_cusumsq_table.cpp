// Generates the CUSUM-of-squares band half-widths embedded in
// src/cusumsq_table.inc.
//
// For m recursive residuals w_1..w_m i.i.d. normal, S_r = sum_{i<=r} w_i^2 / sum w_i^2.
// c0(m, alpha) is the (1 - alpha) quantile of max_r |S_r - r/m|, so the
// probability that the path leaves the band (r/m) +- c0 under the null is alpha.
//
//   ./gen_cusumsq_table [reps] > src/cusumsq_table.inc

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <random>
#include <vector>

int main(int argc, char** argv) {
    const int reps = argc > 1 ? std::atoi(argv[1]) : 200000;
    std::vector<int> grid;
    for (int m = 2; m <= 60; ++m) grid.push_back(m);
    for (int m = 65; m <= 100; m += 5) grid.push_back(m);
    for (int m : {120, 140, 160, 180, 200, 250, 300, 400, 500}) grid.push_back(m);

    std::printf("// Generated by tools/gen_cusumsq_table.cpp with %d replications per row.\n", reps);
    std::printf("// {m, c0(1%%), c0(5%%), c0(10%%)}\n");
    std::vector<double> stat(static_cast<std::size_t>(reps));
    std::vector<double> w;
    for (int m : grid) {
        std::mt19937_64 rng(0x5eed0000ULL + static_cast<std::uint64_t>(m));
        std::normal_distribution<double> normal;
        w.resize(static_cast<std::size_t>(m));
        for (int r = 0; r < reps; ++r) {
            double total = 0.0;
            for (auto& x : w) {
                x = normal(rng);
                x *= x;
                total += x;
            }
            double cum = 0.0;
            double dmax = 0.0;
            for (int i = 0; i < m; ++i) {
                cum += w[static_cast<std::size_t>(i)];
                dmax = std::max(dmax, std::abs(cum / total - static_cast<double>(i + 1) / m));
            }
            stat[static_cast<std::size_t>(r)] = dmax;
        }
        std::sort(stat.begin(), stat.end());
        auto q = [&](double p) {
            const double pos = p * (reps - 1);
            const auto lo = static_cast<std::size_t>(std::floor(pos));
            const double frac = pos - static_cast<double>(lo);
            return stat[lo] + frac * (stat[std::min(lo + 1, stat.size() - 1)] - stat[lo]);
        };
        std::printf("    {%d, %.5f, %.5f, %.5f},\n", m, q(0.99), q(0.95), q(0.90));
    }
    return 0;
}
