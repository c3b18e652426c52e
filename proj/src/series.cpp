#include "cointegra/series.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>

#include "cointegra/errors.hpp"

namespace cointegra {

TimeSeries::TimeSeries(std::string name, int start_year, std::vector<double> values)
    : name_(std::move(name)), start_year_(start_year), values_(std::move(values)) {
    if (values_.empty()) {
        throw InsufficientDataError("series '" + name_ + "' is empty");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DataError("series '" + name_ + "' has a non-finite value in " + std::to_string(year(i)));
        }
    }
}

TimeSeries TimeSeries::renamed(std::string name) const {
    return TimeSeries(std::move(name), start_year_, values_);
}

Dataset::Dataset(std::vector<TimeSeries> series) : series_(std::move(series)) {
    std::set<std::string> seen;
    for (const auto& s : series_) {
        if (!seen.insert(s.name()).second) {
            throw DataError("duplicate series name '" + s.name() + "'");
        }
        const auto& first = series_.front();
        if (s.start_year() != first.start_year() || s.size() != first.size()) {
            throw DataError("series '" + s.name() + "' covers " + std::to_string(s.start_year()) + "-" +
                            std::to_string(s.end_year()) + " but '" + first.name() + "' covers " +
                            std::to_string(first.start_year()) + "-" + std::to_string(first.end_year()));
        }
    }
}

bool Dataset::contains(const std::string& name) const noexcept {
    return std::any_of(series_.begin(), series_.end(), [&](const TimeSeries& s) { return s.name() == name; });
}

const TimeSeries& Dataset::at(const std::string& name) const {
    for (const auto& s : series_) {
        if (s.name() == name) return s;
    }
    throw ConfigError("no series named '" + name + "' in dataset");
}

std::vector<std::string> Dataset::names() const {
    std::vector<std::string> out;
    out.reserve(series_.size());
    for (const auto& s : series_) out.push_back(s.name());
    return out;
}

Dataset Dataset::select(const std::vector<std::string>& names) const {
    std::vector<TimeSeries> out;
    out.reserve(names.size());
    for (const auto& n : names) out.push_back(at(n));
    return Dataset(std::move(out));
}

TimeSeries log10_series(const TimeSeries& s) {
    std::vector<double> out(s.size());
    for (std::size_t i = 0; i < s.size(); ++i) {
        if (!(s[i] > 0.0)) {
            throw DomainError("log10 of non-positive value " + std::to_string(s[i]) + " in series '" + s.name() +
                              "', year " + std::to_string(s.year(i)));
        }
        out[i] = std::log10(s[i]);
    }
    return TimeSeries("log10_" + s.name(), s.start_year(), std::move(out));
}

TimeSeries difference(const TimeSeries& s, int order) {
    if (order < 1) {
        throw ConfigError("difference order must be positive");
    }
    if (static_cast<std::size_t>(order) >= s.size()) {
        throw InsufficientDataError("cannot take difference of order " + std::to_string(order) + " of '" +
                                    s.name() + "' with " + std::to_string(s.size()) + " observations");
    }
    std::vector<double> v(s.values().begin(), s.values().end());
    for (int d = 0; d < order; ++d) {
        for (std::size_t i = v.size() - 1; i > 0; --i) v[i] -= v[i - 1];
        v.erase(v.begin());
    }
    return TimeSeries(s.name(), s.start_year() + order, std::move(v));
}

TimeSeries shift(const TimeSeries& s, int k) {
    const auto n = static_cast<long>(s.size());
    if (std::labs(k) >= n) {
        throw InsufficientDataError("shift by " + std::to_string(k) + " of '" + s.name() + "' with " +
                                    std::to_string(n) + " observations");
    }
    auto vals = s.values();
    if (k >= 0) {
        return TimeSeries(s.name(), s.start_year() + k, std::vector<double>(vals.begin(), vals.end() - k));
    }
    return TimeSeries(s.name(), s.start_year(), std::vector<double>(vals.begin() - k, vals.end()));
}

SeriesSummary describe(const TimeSeries& s) {
    auto v = s.values();
    SeriesSummary out;
    out.name = s.name();
    out.n = v.size();
    out.mean = std::accumulate(v.begin(), v.end(), 0.0) / static_cast<double>(out.n);
    auto [lo, hi] = std::minmax_element(v.begin(), v.end());
    out.min = *lo;
    out.max = *hi;
    if (out.n < 2) {
        out.degenerate = true;
        return out;
    }
    double ss = 0.0;
    for (double x : v) ss += (x - out.mean) * (x - out.mean);
    out.sd = std::sqrt(ss / static_cast<double>(out.n - 1));
    return out;
}

std::vector<SeriesSummary> describe(const Dataset& d) {
    if (d.empty()) {
        throw InsufficientDataError("cannot describe an empty dataset");
    }
    std::vector<SeriesSummary> out;
    for (const auto& s : d.series()) out.push_back(describe(s));
    return out;
}

}  // namespace cointegra
