#pragma once

#include "tsens/harness/config.hpp"
#include "tsens/harness/experiment.hpp"

#include <filesystem>
#include <istream>
#include <string>
#include <vector>

namespace tsens::harness {

/// Aligned text table: one row per model and combiner with test MAPE, MSE,
/// ARV and the validation SSE.
[[nodiscard]] std::string render_table(const ExperimentReport& report);

/// CSV with header `model,MAPE,MSE,ARV`, values at round-trip precision.
/// Failed combiners and the footnote appear as `#` comment lines.
[[nodiscard]] std::string render_csv(const ExperimentReport& report);

/// Writes the rendered report atomically. Throws IoError on failure.
void emit_report(const ExperimentReport& report, ReportFormat format, const std::filesystem::path& path);

struct CsvReportRow {
    std::string model;
    ErrorReport errors;
};

/// Reads back a CSV written by render_csv (comment lines skipped).
[[nodiscard]] std::vector<CsvReportRow> parse_report_csv(std::istream& in);

/// Writes `content` to a sibling temp file, then renames it over `path`.
void write_file_atomic(const std::filesystem::path& path, const std::string& content);

/// Writes the report, ensemble weights, fitted model parameters and the
/// forecast diagram under `config.output_dir`, named after the dataset.
/// Returns the paths written.
std::vector<std::filesystem::path> write_outputs(const ExperimentReport& report, const ExperimentConfig& config);

}  // namespace tsens::harness
