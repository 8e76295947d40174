#pragma once

#include "tsens/core/time_series.hpp"
#include "tsens/models/forecast.hpp"
#include "tsens/models/mlp.hpp"
#include "tsens/models/training_config.hpp"

#include <cstddef>
#include <functional>
#include <optional>
#include <vector>

namespace tsens::models {

enum class ModelFamily { Svr, Mlp };

/// Fits candidate `index` on a fold's training piece.
using CandidateFit = std::function<FittedModel(std::size_t index, const TimeSeries& fold_train)>;

/**
 * Chronological cross validation. The series is cut into folds + 1 equal
 * blocks (the first absorbs the remainder); fold f trains on everything
 * before block f + 1 and scores rolling one-step forecasts over that block.
 * Returns the mean validation MSE per candidate; a candidate whose fit fails
 * on any fold scores +inf.
 */
[[nodiscard]] std::vector<double> cross_validation_mse(const TimeSeries& train, std::size_t folds,
                                                       std::size_t candidates, const CandidateFit& fit);

struct HyperparameterChoice {
    std::size_t index = 0;
    double cv_mse = 0.0;
    std::optional<SvrHyper> svr;
    std::optional<MlpLayout> mlp;
};

/// Lowest mean CV MSE over cfg.svr_grid (Svr) or over cfg.hidden_grid applied
/// to `base_layout` (Mlp). Ties go to the earlier grid point.
/// @throws ConfigError on an empty grid
[[nodiscard]] HyperparameterChoice select_hyperparameters(ModelFamily family, const TimeSeries& train,
                                                          const TrainingConfig& cfg,
                                                          const MlpLayout& base_layout = {});

}  // namespace tsens::models
