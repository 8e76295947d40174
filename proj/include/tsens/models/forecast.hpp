#pragma once

#include "tsens/core/time_series.hpp"
#include "tsens/models/ar.hpp"
#include "tsens/models/mlp.hpp"
#include "tsens/models/sarima.hpp"
#include "tsens/models/svr.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <variant>
#include <vector>

namespace tsens::models {

enum class ForecastMode {
    /// Each block is forecast from actual observations up to its origin.
    Rolling,
    /// The model's own forecasts are fed back as history.
    Iterated,
};

using FittedModel = std::variant<ArModel, SarimaModel, MlpModel, SvrModel>;

/// Observations a model needs before it can forecast.
[[nodiscard]] std::size_t required_history(const FittedModel& model);

/// Values produced per forecast origin: q for a q-output network, 1 otherwise.
[[nodiscard]] std::size_t block_size(const FittedModel& model);

/**
 * @brief Forecasts the `horizon` values following `history`.
 *
 * In rolling mode `realized` supplies the actual values of the forecast
 * window; after each block the actuals (not the forecasts) are appended to
 * the history before the next block is produced. Single-output models thus
 * give one-step-ahead forecasts; a seasonal network re-anchors once per
 * season. Iterated mode ignores `realized`.
 *
 * @throws SizeError if history is too short or rolling mode runs out of realized values
 */
[[nodiscard]] std::vector<double> forecast(const FittedModel& model, const TimeSeries& history,
                                           std::size_t horizon, ForecastMode mode,
                                           std::span<const double> realized = {});

[[nodiscard]] std::string dump(const FittedModel& model);

}  // namespace tsens::models
