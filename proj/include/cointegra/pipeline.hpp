#pragma once

#include <string>
#include <vector>

#include "cointegra/config.hpp"
#include "cointegra/report.hpp"
#include "cointegra/series.hpp"

namespace cointegra {

/// Input file recorded in the report metadata.
struct Provenance {
    std::string file;    ///< file name, without directories
    std::string source;  ///< wdi, evds, plain
    std::string sha256;
};

/// SHA-256 of a canonical rendering of the dataset (names, years, %.17g values).
std::string dataset_hash(const Dataset& d);

/**
 * Runs the full analysis on the transformed dataset:
 * descriptives, ADF/PP, Zivot-Andrews, VAR lag selection, Johansen rank test,
 * DOLS and residual diagnostics, in that order. Later stages run whatever the
 * unit-root verdicts; series that are not I(1) are listed as caveats.
 *
 * Stage failures are rethrown as Error with the stage name prefixed.
 */
PaperReport run_pipeline(const Dataset& d, const PipelineConfig& config,
                         const std::vector<Provenance>& provenance = {});

}  // namespace cointegra
