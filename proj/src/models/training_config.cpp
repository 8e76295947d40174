#include "tsens/models/training_config.hpp"

#include "tsens/core/errors.hpp"

namespace tsens::models {

void TrainingConfig::validate() const {
    if (lag == 0 || max_epochs == 0 || cv_folds == 0 || restarts == 0) {
        throw ConfigError("training counts (lag, epochs, folds, restarts) must be positive");
    }
    if (!(rprop.increase > 1.0 && rprop.decrease > 0.0 && rprop.decrease < 1.0)) {
        throw ConfigError("RProp factors must satisfy increase > 1 > decrease > 0");
    }
    if (!(rprop.initial_step > 0.0 && rprop.min_step > 0.0 && rprop.max_step >= rprop.min_step)) {
        throw ConfigError("RProp step sizes must be positive with min_step <= max_step");
    }
}

}  // namespace tsens::models
