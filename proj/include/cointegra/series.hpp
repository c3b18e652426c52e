#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace cointegra {

/**
 * Annual series with a gap-free year index: value i belongs to start_year + i.
 *
 * Immutable after construction; every transform returns a new series.
 */
class TimeSeries {
public:
    /// Throws DataError on an empty or non-finite value sequence.
    TimeSeries(std::string name, int start_year, std::vector<double> values);

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] int start_year() const noexcept { return start_year_; }
    [[nodiscard]] int end_year() const noexcept { return start_year_ + static_cast<int>(values_.size()) - 1; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] int year(std::size_t i) const noexcept { return start_year_ + static_cast<int>(i); }

    [[nodiscard]] TimeSeries renamed(std::string name) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::string name_;
    int start_year_;
    std::vector<double> values_;
};

/// Series sharing an identical year range, with unique names.
class Dataset {
public:
    Dataset() = default;
    /// Throws DataError when ranges differ or names repeat.
    explicit Dataset(std::vector<TimeSeries> series);

    [[nodiscard]] const std::vector<TimeSeries>& series() const noexcept { return series_; }
    [[nodiscard]] std::size_t num_series() const noexcept { return series_.size(); }
    [[nodiscard]] std::size_t num_obs() const noexcept { return series_.empty() ? 0 : series_.front().size(); }
    [[nodiscard]] int start_year() const noexcept { return series_.empty() ? 0 : series_.front().start_year(); }
    [[nodiscard]] bool empty() const noexcept { return series_.empty(); }

    [[nodiscard]] bool contains(const std::string& name) const noexcept;
    /// Throws ConfigError naming the missing series.
    [[nodiscard]] const TimeSeries& at(const std::string& name) const;
    [[nodiscard]] std::vector<std::string> names() const;

    /// Sub-dataset in the given order.
    [[nodiscard]] Dataset select(const std::vector<std::string>& names) const;

private:
    std::vector<TimeSeries> series_;
};

/// Base-10 logarithm of every value; name gets a "log10_" prefix.
/// Throws DomainError naming the first non-positive year.
TimeSeries log10_series(const TimeSeries& s);

/// `order`-th difference; start_year advances by `order`.
TimeSeries difference(const TimeSeries& s, int order = 1);

/// Positive k lags (value at year y is the original value at y - k), negative k leads.
/// The result covers only the years where the shifted value exists.
TimeSeries shift(const TimeSeries& s, int k);

struct SeriesSummary {
    std::string name;
    std::size_t n = 0;
    double mean = 0.0;
    double sd = 0.0;  ///< n-1 denominator; 0 when n == 1
    double min = 0.0;
    double max = 0.0;
    bool degenerate = false;  ///< sd undefined (single observation)
};

std::vector<SeriesSummary> describe(const Dataset& d);
SeriesSummary describe(const TimeSeries& s);

}  // namespace cointegra
