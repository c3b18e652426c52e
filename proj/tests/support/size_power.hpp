#pragma once

#include <cstdint>
#include <string>
#include <vector>

namespace support {

/// Rejection frequency of one test at 5% under one data-generating process.
struct RejectionRate {
    std::string test;
    std::string dgp;  ///< "null" or a short description of the alternative
    int T = 0;
    int reps = 0;
    double rate = 0.0;
    double lo = 0.0;  ///< acceptance band
    double hi = 1.0;
    [[nodiscard]] bool ok() const { return rate >= lo && rate <= hi; }
};

/// Sizes and powers for ADF, PP, BG, BPG, JB and RESET with fixed seeds.
std::vector<RejectionRate> size_power_suite(int reps = 2000, std::uint64_t seed = 20240917);

}  // namespace support
