#pragma once

#include <span>

namespace tsens {

/// Denominator used for the average relative variance.
enum class ArvDenominator {
    /// sum of (mu - forecast_t)^2, mu the mean of the actual window
    ForecastDeviation,
    /// sum of (actual_t - mu)^2
    ActualDeviation,
};

struct ErrorReport {
    double mape = 0.0;  ///< percent
    double mse = 0.0;
    double arv = 0.0;

    friend bool operator==(const ErrorReport&, const ErrorReport&) = default;
};

/// MAPE (percent), MSE and ARV of `forecast` against `actual`.
/// Throws SizeError on length mismatch or empty input, DomainError on a zero
/// actual value or a zero ARV denominator.
[[nodiscard]] ErrorReport evaluate(std::span<const double> actual, std::span<const double> forecast,
                                   ArvDenominator arv = ArvDenominator::ForecastDeviation);

[[nodiscard]] double mape(std::span<const double> actual, std::span<const double> forecast);
[[nodiscard]] double mse(std::span<const double> actual, std::span<const double> forecast);
[[nodiscard]] double sse(std::span<const double> actual, std::span<const double> forecast);
[[nodiscard]] double arv(std::span<const double> actual, std::span<const double> forecast,
                         ArvDenominator denominator = ArvDenominator::ForecastDeviation);

}  // namespace tsens
