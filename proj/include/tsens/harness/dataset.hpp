#pragma once

#include "tsens/core/time_series.hpp"
#include "tsens/harness/config.hpp"

namespace tsens::harness {

/// Reads the configured CSV, checks its length and applies the dataset transform.
[[nodiscard]] TimeSeries load_dataset(const ExperimentConfig& config);

}  // namespace tsens::harness
