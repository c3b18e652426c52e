#pragma once

#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

#include "cointegra/config.hpp"
#include "cointegra/series.hpp"

namespace cointegra {

enum class SourceKind { Wdi, Evds, Plain };
std::string to_string(SourceKind k);
SourceKind source_kind_from_string(const std::string& s);

/// One (series, year) cell of an input file.
struct RawRecord {
    SourceKind source = SourceKind::Plain;
    std::string series_code;
    std::string entity;  ///< WDI country code, empty otherwise
    int year = 0;
    std::optional<double> value;  ///< absent for empty or ".." cells
    int line = 0;                 ///< 1-based line in the source file
};

/// Splits one CSV line, honouring double quotes ("" escapes a quote).
std::vector<std::string> split_csv_line(const std::string& line, int line_no);

/// Recognises the layout from the header row; nullopt when unknown.
std::optional<SourceKind> detect_layout(const std::string& header);

/**
 * Reads a WDI (wide, one row per series), EVDS (Date plus one column per
 * series code) or plain (year plus one column per series) CSV.
 *
 * A plain file whose only value column is named "value" takes `plain_name`.
 * Throws ParseError with the line number on malformed rows and on an
 * unrecognised header.
 */
std::vector<RawRecord> parse_csv(std::istream& in, std::optional<SourceKind> kind = std::nullopt,
                                 const std::string& plain_name = "");
/// As parse_csv; plain files default to the file stem as series name.
std::vector<RawRecord> read_csv_file(const std::filesystem::path& path, std::optional<SourceKind> kind = std::nullopt,
                                     const std::string& plain_name = "");

/// Series codes compare with '_' and '.' treated alike, case-insensitively.
std::string normalise_code(const std::string& code);

struct IngestResult {
    Dataset raw;      ///< untransformed values, named by role
    Dataset dataset;  ///< after the configured transform
    std::size_t non_missing_records = 0;
    std::size_t used_cells = 0;
    std::size_t rejected_cells = 0;  ///< non-missing records outside the roles or the year range
};

/// Filters to the configured roles and years, checks completeness, applies
/// log10 when configured. Throws DataError listing every absent (series, year).
IngestResult ingest(const std::vector<RawRecord>& records, const PipelineConfig& config);
Dataset build_dataset(const std::vector<RawRecord>& records, const PipelineConfig& config);

}  // namespace cointegra
