#include "tsens/models/selection.hpp"

#include "tsens/core/errors.hpp"
#include "tsens/core/metrics.hpp"

#include <cmath>
#include <limits>

namespace tsens::models {

std::vector<double> cross_validation_mse(const TimeSeries& train, std::size_t folds, std::size_t candidates,
                                         const CandidateFit& fit) {
    if (folds == 0) throw ConfigError("cross validation needs at least one fold");
    const std::size_t block = train.size() / (folds + 1);
    if (block == 0) {
        throw SizeError("series of length " + std::to_string(train.size()) + " cannot be cut into " +
                        std::to_string(folds + 1) + " blocks");
    }
    std::vector<double> scores(candidates, 0.0);
    for (std::size_t f = 0; f < folds; ++f) {
        const std::size_t fit_len = train.size() - (folds - f) * block;
        auto fold_train = train.slice(0, fit_len);
        auto held_out = train.slice(fit_len, block);
        for (std::size_t c = 0; c < candidates; ++c) {
            if (!std::isfinite(scores[c])) continue;
            try {
                auto model = fit(c, fold_train);
                auto predicted = forecast(model, fold_train, block, ForecastMode::Rolling, held_out.values());
                double fold_mse = mse(held_out.values(), predicted);
                scores[c] += std::isfinite(fold_mse) ? fold_mse / static_cast<double>(folds)
                                                     : std::numeric_limits<double>::infinity();
            } catch (const Error&) {
                scores[c] = std::numeric_limits<double>::infinity();
            }
        }
    }
    return scores;
}

HyperparameterChoice select_hyperparameters(ModelFamily family, const TimeSeries& train, const TrainingConfig& cfg,
                                            const MlpLayout& base_layout) {
    cfg.validate();
    std::vector<double> scores;
    if (family == ModelFamily::Svr) {
        if (cfg.svr_grid.empty()) throw ConfigError("SVR hyperparameter grid is empty");
        scores = cross_validation_mse(train, cfg.cv_folds, cfg.svr_grid.size(),
                                      [&](std::size_t i, const TimeSeries& piece) -> FittedModel {
                                          return fit_svr(piece, cfg.svr_grid[i], cfg);
                                      });
    } else {
        if (cfg.hidden_grid.empty()) throw ConfigError("MLP hidden-node grid is empty");
        scores = cross_validation_mse(train, cfg.cv_folds, cfg.hidden_grid.size(),
                                      [&](std::size_t i, const TimeSeries& piece) -> FittedModel {
                                          auto layout = base_layout;
                                          layout.hidden = cfg.hidden_grid[i];
                                          return fit_mlp(piece, layout, cfg);
                                      });
    }

    HyperparameterChoice choice;
    choice.cv_mse = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < scores.size(); ++i) {
        if (scores[i] < choice.cv_mse) {
            choice.cv_mse = scores[i];
            choice.index = i;
        }
    }
    if (!std::isfinite(choice.cv_mse)) {
        throw OptimizationError("every hyperparameter candidate failed cross validation");
    }
    if (family == ModelFamily::Svr) {
        choice.svr = cfg.svr_grid[choice.index];
    } else {
        choice.mlp = base_layout;
        choice.mlp->hidden = cfg.hidden_grid[choice.index];
    }
    return choice;
}

}  // namespace tsens::models
