#pragma once

#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace tsens::harness {

struct NamedSeries {
    std::string name;
    std::vector<double> values;
};

/// Long-form `index,series,value` rows: actual first, then each forecast.
[[nodiscard]] std::string render_diagram_csv(std::span<const double> actual, std::span<const NamedSeries> forecasts);

/// Self-contained SVG line chart, one polyline per series plus a legend.
[[nodiscard]] std::string render_diagram_svg(std::span<const double> actual, std::span<const NamedSeries> forecasts,
                                             const std::string& title);

/// Writes `<stem>.csv` and `<stem>.svg`. Throws SizeError if any forecast
/// length differs from the actual series.
void emit_forecast_diagram(std::span<const double> actual, std::span<const NamedSeries> forecasts,
                           const std::filesystem::path& stem, const std::string& title = "Forecast diagram");

}  // namespace tsens::harness
