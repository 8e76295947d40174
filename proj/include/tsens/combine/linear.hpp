#pragma once

#include "tsens/combine/forecast_set.hpp"
#include "tsens/core/metrics.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsens::combine {

enum class LinearKind { SimpleAverage, Trimmed, Winsorized, Median, ErrorBased, VarianceBased };

[[nodiscard]] std::string to_string(LinearKind kind);

/**
 * @brief One of the fixed-rule or fitted linear combination schemes.
 *
 * Trimmed drops the floor(trim_percent% * n) models with the worst
 * validation error (model_errors) and averages the rest. Winsorized clamps
 * the winsor_count smallest and largest forecasts of each row onto the next
 * inner order statistic before averaging. ErrorBased and VarianceBased carry
 * fitted weights (VarianceBased also an intercept).
 */
struct LinearCombinerSpec {
    LinearKind kind = LinearKind::SimpleAverage;
    double trim_percent = 20.0;
    std::vector<double> model_errors;
    std::size_t winsor_count = 1;
    std::vector<double> weights;
    double intercept = 0.0;

    static LinearCombinerSpec simple_average() { return {}; }
    static LinearCombinerSpec median() {
        LinearCombinerSpec s;
        s.kind = LinearKind::Median;
        return s;
    }
    static LinearCombinerSpec trimmed(double percent, std::vector<double> validation_errors);
    static LinearCombinerSpec winsorized(std::size_t count);
    static LinearCombinerSpec error_based(std::vector<double> weights);
    static LinearCombinerSpec variance_based(double intercept, std::vector<double> weights);

    /// Throws ConfigError when the parameters do not fit n models.
    void validate(std::size_t n) const;
};

/// Row-wise application of `spec` to `forecasts`.
[[nodiscard]] std::vector<double> combine_pointwise(const ForecastSet& forecasts, const LinearCombinerSpec& spec);

/// Indices kept by model-level trimming, in original order.
[[nodiscard]] std::vector<std::size_t> trimmed_models(std::span<const double> errors, double percent);

enum class ErrorMetric { Mape, Mse, Arv };

/// Weights proportional to 1 / metric, normalized to sum to one.
/// Throws DegenerateError if any metric value is zero (a perfect model).
[[nodiscard]] std::vector<double> error_based_weights(std::span<const ErrorReport> validation_reports,
                                                      ErrorMetric metric);

struct VarianceWeights {
    double intercept = 0.0;
    std::vector<double> weights;
};

/// Ordinary least squares of `actuals` on [1 | forecasts].
/// Throws SingularityError for collinear forecast columns.
[[nodiscard]] VarianceWeights variance_based_weights(const ForecastSet& forecasts, std::span<const double> actuals);

}  // namespace tsens::combine
