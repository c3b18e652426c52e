#include "cointegra/ingest.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <regex>
#include <set>

#include "cointegra/errors.hpp"

namespace cointegra {

namespace {

std::string trim(const std::string& s) {
    const auto b = s.find_first_not_of(" \t\r\n\xEF\xBB\xBF");
    if (b == std::string::npos) return {};
    const auto e = s.find_last_not_of(" \t\r\n");
    return s.substr(b, e - b + 1);
}

std::string lower(std::string s) {
    std::transform(s.begin(), s.end(), s.begin(), [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return s;
}

bool blank(const std::string& line) { return trim(line).empty(); }

std::optional<double> parse_cell(const std::string& raw, int line, const std::string& column) {
    const std::string s = trim(raw);
    if (s.empty() || s == "..") return std::nullopt;
    double v = 0.0;
    const auto* first = s.data();
    const auto* last = s.data() + s.size();
    if (*first == '+') ++first;
    const auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last || !std::isfinite(v)) {
        throw ParseError("column '" + column + "': '" + s + "' is not a number", line);
    }
    return v;
}

int parse_year(const std::string& raw, int line, const std::string& column) {
    const std::string s = trim(raw);
    static const std::regex iso(R"((\d{4})(?:[-/.](\d{1,2})(?:[-/.](\d{1,2}))?)?)");
    static const std::regex dmy(R"((\d{1,2})[-/.](\d{1,2})[-/.](\d{4}))");
    std::smatch m;
    int year = 0;
    if (std::regex_match(s, m, iso)) {
        year = std::stoi(m[1]);
    } else if (std::regex_match(s, m, dmy)) {
        year = std::stoi(m[3]);
    } else {
        throw ParseError("column '" + column + "': '" + s + "' is not a year or annual date", line);
    }
    if (year < 1900 || year > 2100) throw ParseError("year " + std::to_string(year) + " outside 1900-2100", line);
    return year;
}

// "1995 [YR1995]" or "1995"
std::optional<int> wdi_year_column(const std::string& h) {
    static const std::regex re(R"((\d{4})(?:\s*\[YR\d{4}\])?)");
    std::smatch m;
    if (std::regex_match(h, m, re)) return std::stoi(m[1]);
    return std::nullopt;
}

std::vector<RawRecord> parse_wdi(std::istream& in, const std::vector<std::string>& header) {
    std::map<std::string, std::size_t> col;
    for (std::size_t i = 0; i < header.size(); ++i) col[header[i]] = i;
    const auto code_col = col.at("Series Code");
    const auto entity_col = col.count("Country Code") ? col.at("Country Code") : header.size();
    std::vector<std::pair<std::size_t, int>> years;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (auto y = wdi_year_column(header[i])) years.emplace_back(i, *y);
    }
    if (years.empty()) throw ParseError("WDI header has no year columns", 1);

    std::vector<RawRecord> out;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        // Footer lines of a WDI DataBank export.
        if (line.rfind("Data from database", 0) == 0 || line.rfind("Last Updated", 0) == 0) break;
        const auto cells = split_csv_line(line, line_no);
        if (cells.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(cells.size()),
                             line_no);
        }
        const std::string code = trim(cells[code_col]);
        if (code.empty()) throw ParseError("empty Series Code", line_no);
        for (const auto& [i, y] : years) {
            RawRecord r;
            r.source = SourceKind::Wdi;
            r.series_code = code;
            r.entity = entity_col < cells.size() ? trim(cells[entity_col]) : std::string{};
            r.year = y;
            r.value = parse_cell(cells[i], line_no, header[i]);
            r.line = line_no;
            out.push_back(std::move(r));
        }
    }
    return out;
}

std::vector<RawRecord> parse_long(std::istream& in, const std::vector<std::string>& header, SourceKind kind,
                                  const std::string& plain_name) {
    std::vector<std::string> names(header.begin() + 1, header.end());
    if (names.empty()) throw ParseError("header has no value column", 1);
    if (kind == SourceKind::Plain && names.size() == 1 && lower(names[0]) == "value") {
        if (plain_name.empty()) throw ParseError("plain 'year,value' file needs a series name", 1);
        names[0] = plain_name;
    }
    std::vector<RawRecord> out;
    std::string line;
    int line_no = 1;
    while (std::getline(in, line)) {
        ++line_no;
        if (blank(line)) continue;
        const auto cells = split_csv_line(line, line_no);
        if (cells.size() != header.size()) {
            throw ParseError("expected " + std::to_string(header.size()) + " fields, found " +
                                 std::to_string(cells.size()),
                             line_no);
        }
        const int year = parse_year(cells[0], line_no, header[0]);
        for (std::size_t j = 0; j < names.size(); ++j) {
            RawRecord r;
            r.source = kind;
            r.series_code = names[j];
            r.year = year;
            r.value = parse_cell(cells[j + 1], line_no, header[j + 1]);
            r.line = line_no;
            out.push_back(std::move(r));
        }
    }
    return out;
}

}  // namespace

std::string to_string(SourceKind k) {
    switch (k) {
        case SourceKind::Wdi: return "wdi";
        case SourceKind::Evds: return "evds";
        case SourceKind::Plain: return "plain";
    }
    return {};
}

SourceKind source_kind_from_string(const std::string& s) {
    const auto l = lower(s);
    if (l == "wdi") return SourceKind::Wdi;
    if (l == "evds") return SourceKind::Evds;
    if (l == "plain") return SourceKind::Plain;
    throw ConfigError("unknown source kind '" + s + "' (expected wdi, evds or plain)");
}

std::vector<std::string> split_csv_line(const std::string& line, int line_no) {
    std::vector<std::string> out;
    std::string cur;
    bool quoted = false;
    for (std::size_t i = 0; i < line.size(); ++i) {
        const char c = line[i];
        if (quoted) {
            if (c == '"') {
                if (i + 1 < line.size() && line[i + 1] == '"') {
                    cur += '"';
                    ++i;
                } else {
                    quoted = false;
                }
            } else {
                cur += c;
            }
        } else if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            out.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur += c;
        }
    }
    if (quoted) throw ParseError("unterminated quoted field", line_no);
    out.push_back(cur);
    return out;
}

std::optional<SourceKind> detect_layout(const std::string& header) {
    std::vector<std::string> h;
    try {
        h = split_csv_line(header, 1);
    } catch (const ParseError&) {
        return std::nullopt;
    }
    for (auto& s : h) s = trim(s);
    if (h.size() < 2) return std::nullopt;
    if (std::find(h.begin(), h.end(), "Series Code") != h.end()) return SourceKind::Wdi;
    const auto first = lower(h[0]);
    if (first == "date" || first == "tarih") return SourceKind::Evds;
    if (first == "year") return SourceKind::Plain;
    return std::nullopt;
}

std::vector<RawRecord> parse_csv(std::istream& in, std::optional<SourceKind> kind, const std::string& plain_name) {
    std::string header_line;
    while (std::getline(in, header_line) && blank(header_line)) {
    }
    if (blank(header_line)) throw ParseError("empty input", 1);
    const auto detected = detect_layout(header_line);
    if (!detected) throw ParseError("unknown layout: header '" + trim(header_line) + "'", 1);
    if (kind && *kind != *detected) {
        throw ParseError("header looks like " + to_string(*detected) + ", expected " + to_string(*kind), 1);
    }
    auto header = split_csv_line(header_line, 1);
    for (auto& s : header) s = trim(s);
    if (*detected == SourceKind::Wdi) return parse_wdi(in, header);
    return parse_long(in, header, *detected, plain_name);
}

std::vector<RawRecord> read_csv_file(const std::filesystem::path& path, std::optional<SourceKind> kind,
                                     const std::string& plain_name) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open data file '" + path.string() + "'");
    try {
        return parse_csv(in, kind, plain_name.empty() ? path.stem().string() : plain_name);
    } catch (const ParseError& e) {
        throw ParseError(path.filename().string() + ": " + e.what(), e.line());
    }
}

std::string normalise_code(const std::string& code) {
    std::string s = lower(trim(code));
    std::replace(s.begin(), s.end(), '_', '.');
    return s;
}

IngestResult ingest(const std::vector<RawRecord>& records, const PipelineConfig& config) {
    validate(config);
    const auto roles = config.roles();
    std::map<std::string, std::string> role_of_code;
    for (const auto& role : roles) role_of_code[normalise_code(config.variable(role).code)] = role;

    IngestResult out;
    std::map<std::string, std::map<int, double>> cells;
    std::map<std::string, std::set<std::string>> entities;
    for (const auto& r : records) {
        if (!r.value) continue;
        ++out.non_missing_records;
        const auto it = role_of_code.find(normalise_code(r.series_code));
        const bool entity_ok = config.entity.empty() || r.entity.empty() || r.entity == config.entity;
        if (it == role_of_code.end() || !entity_ok || r.year < config.start_year || r.year > config.end_year) {
            ++out.rejected_cells;
            continue;
        }
        entities[it->second].insert(r.entity);
        auto [pos, inserted] = cells[it->second].emplace(r.year, *r.value);
        if (!inserted) {
            throw DataError("duplicate value for " + it->second + " (" + r.series_code + ") in " +
                            std::to_string(r.year) + " at line " + std::to_string(r.line));
        }
        ++out.used_cells;
    }
    for (const auto& [role, ents] : entities) {
        if (ents.size() > 1) {
            throw ConfigError("series for " + role + " found for several countries; set 'entity' in the config");
        }
    }

    std::vector<std::string> absent;
    for (const auto& role : roles) {
        const auto& have = cells[role];
        for (int y = config.start_year; y <= config.end_year; ++y) {
            if (!have.count(y)) absent.push_back("(" + role + ", " + std::to_string(y) + ")");
        }
    }
    if (!absent.empty()) {
        std::string msg = "missing observations:";
        for (const auto& a : absent) msg += " " + a;
        throw DataError(msg);
    }

    std::vector<TimeSeries> raw, transformed;
    for (const auto& role : roles) {
        std::vector<double> v;
        for (const auto& [y, x] : cells[role]) v.push_back(x);
        TimeSeries s(role, config.start_year, std::move(v));
        transformed.push_back(config.log10 ? log10_series(s).renamed(role) : s);
        raw.push_back(std::move(s));
    }
    out.raw = Dataset(std::move(raw));
    out.dataset = Dataset(std::move(transformed));
    return out;
}

Dataset build_dataset(const std::vector<RawRecord>& records, const PipelineConfig& config) {
    return ingest(records, config).dataset;
}

}  // namespace cointegra
