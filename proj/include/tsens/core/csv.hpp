#pragma once

#include <filesystem>
#include <istream>
#include <vector>

namespace tsens {

/// Reads one observation per line. A single non-numeric first line is taken
/// as a header; blank lines are skipped; surrounding whitespace is ignored.
/// Throws ParseError naming the 1-based line number of the first bad line.
[[nodiscard]] std::vector<double> read_series_csv(std::istream& in);
[[nodiscard]] std::vector<double> read_series_csv(const std::filesystem::path& path);

}  // namespace tsens
