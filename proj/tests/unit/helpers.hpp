#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <filesystem>
#include <random>
#include <string>
#include <vector>

#include "cointegra/config.hpp"
#include "cointegra/ingest.hpp"
#include "cointegra/series.hpp"

namespace testing {

inline std::filesystem::path source_dir() { return COINTEGRA_SOURCE_DIR; }

inline cointegra::IngestResult fixture() {
    std::vector<cointegra::RawRecord> records;
    for (const char* f : {"wdi_turkiye.csv", "evds_reer.csv"}) {
        auto r = cointegra::read_csv_file(source_dir() / "data" / "turkiye" / f);
        records.insert(records.end(), r.begin(), r.end());
    }
    return cointegra::ingest(records, cointegra::PipelineConfig{});
}

struct Rng {
    std::mt19937_64 gen;
    std::normal_distribution<double> normal{0.0, 1.0};
    explicit Rng(std::uint64_t seed) : gen(seed) {}
    double operator()() { return normal(gen); }
    Eigen::VectorXd vector(Eigen::Index n) {
        Eigen::VectorXd v(n);
        for (Eigen::Index i = 0; i < n; ++i) v(i) = normal(gen);
        return v;
    }
    std::vector<double> random_walk(int n) {
        std::vector<double> y(static_cast<std::size_t>(n));
        double level = 0.0;
        for (auto& v : y) v = (level += normal(gen));
        return y;
    }
    std::vector<double> white_noise(int n) {
        std::vector<double> y(static_cast<std::size_t>(n));
        for (auto& v : y) v = normal(gen);
        return y;
    }
};

// [1, x1..xk] with standard normal regressors.
inline Eigen::MatrixXd design(Rng& rng, int n, int k) {
    Eigen::MatrixXd X(n, k + 1);
    X.col(0).setOnes();
    for (int j = 1; j <= k; ++j) X.col(j) = rng.vector(n);
    return X;
}

inline cointegra::TimeSeries series(const std::vector<double>& v, const std::string& name = "y", int start = 1900) {
    return cointegra::TimeSeries(name, start, v);
}

}  // namespace testing
