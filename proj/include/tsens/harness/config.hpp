#pragma once

#include "tsens/combine/linear.hpp"
#include "tsens/combine/nonlinear.hpp"
#include "tsens/core/metrics.hpp"
#include "tsens/models/forecast.hpp"
#include "tsens/models/mlp.hpp"
#include "tsens/models/sarima.hpp"
#include "tsens/models/training_config.hpp"

#include <cstddef>
#include <cstdint>
#include <filesystem>
#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace tsens::harness {

enum class DatasetTransform { None, Log10 };

/// Scale on which test metrics are computed: the loaded series after its
/// dataset transform ("working"), or with that transform undone ("original").
enum class MetricUnits { Working, Original };

enum class ModelKind { Ar, Sarima, Mlp, Svr, Perfect };

enum class CombinerKind { SimpleAverage, Trimmed, Winsorized, Median, ErrorBased, VarianceBased, Nonlinear };

enum class ReportFormat { Table, Csv };

[[nodiscard]] std::string to_string(ModelKind kind);
[[nodiscard]] std::string to_string(CombinerKind kind);

struct ExperimentConfig {
    // [dataset]
    std::string dataset_name;
    std::filesystem::path dataset_path;
    DatasetTransform transform = DatasetTransform::None;
    std::optional<std::size_t> expected_length;
    std::optional<std::size_t> period;
    std::size_t test_size = 0;

    // [models]
    std::vector<ModelKind> models;

    // per-model settings
    std::size_t ar_order = 1;
    models::SarimaOrder sarima = models::SarimaOrder::airline(12);
    models::MlpLayout mlp_layout{1, 1, 1};
    models::TrainingConfig mlp_training;
    models::TrainingConfig svr_training;

    // [combiners]
    std::vector<CombinerKind> combiners;
    double trim_percent = 20.0;
    std::size_t winsor_count = 1;
    combine::ErrorMetric error_metric = combine::ErrorMetric::Mape;

    // [run]
    std::uint64_t seed = 42;
    models::ForecastMode mode = models::ForecastMode::Rolling;
    combine::StatsMode stats = combine::StatsMode::Frozen;
    combine::Standardization standardization = combine::Standardization::Variance;
    std::optional<double> ridge;
    ArvDenominator arv = ArvDenominator::ForecastDeviation;
    MetricUnits units = MetricUnits::Working;
    std::filesystem::path output_dir = "out";
    ReportFormat format = ReportFormat::Table;

    // [report]
    std::string mse_footnote;

    /// Reseeds every stochastic component from one base seed.
    void set_seed(std::uint64_t base);

    /// Throws ConfigError on internal inconsistencies that do not need the data.
    void validate() const;
};

/// Parses the `key = value` / `[section]` format. Relative paths resolve
/// against `base_dir`. Throws ConfigError naming the offending line.
[[nodiscard]] ExperimentConfig parse_config(std::istream& in, const std::filesystem::path& base_dir);
[[nodiscard]] ExperimentConfig load_config(const std::filesystem::path& path);

}  // namespace tsens::harness
