#pragma once

#include "tsens/combine/nonlinear.hpp"
#include "tsens/core/errors.hpp"
#include "tsens/core/metrics.hpp"
#include "tsens/harness/config.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace tsens::harness {

/// An error annotated with the pipeline stage that raised it.
class StageError : public Error {
public:
    StageError(std::string stage, const std::string& message)
        : Error("stage '" + stage + "': " + message), stage_(std::move(stage)) {}

    [[nodiscard]] const std::string& stage() const noexcept { return stage_; }

private:
    std::string stage_;
};

struct ModelResult {
    std::string name;
    ErrorReport validation;
    ErrorReport test;
    double validation_sse = 0.0;
    std::vector<double> validation_forecast;
    std::vector<double> test_forecast;
    std::string parameters;  ///< key = value dump of the fitted model
};

struct CombinerResult {
    std::string name;
    bool ok = false;
    std::string error;
    ErrorReport test;
    double validation_sse = 0.0;
    std::vector<double> test_forecast;
};

struct StageTiming {
    std::string stage;
    double seconds = 0.0;
};

struct ExperimentReport {
    std::string dataset;
    std::string transform;
    std::size_t train_len = 0;
    std::size_t validation_len = 0;
    std::size_t test_len = 0;
    std::uint64_t seed = 0;
    std::string mode;
    std::string stats;
    std::string standardization;
    std::string mse_footnote;

    // Forecast vectors below are in working units; metrics follow ExperimentConfig::units.
    std::vector<double> validation_actual;
    std::vector<double> test_actual;        ///< working units
    std::vector<ModelResult> models;
    std::vector<CombinerResult> combiners;
    std::optional<combine::NonlinearEnsembleWeights> ensemble;

    /// Wall clock per stage; kept out of emitted files so they stay reproducible.
    std::vector<StageTiming> timings;
};

/**
 * Split -> fit every base model on the training window -> forecast the
 * validation window -> fit the combiners on validation forecasts ->
 * forecast the test window -> combine -> evaluate on the test window.
 *
 * Base-model failures abort with a StageError; a failing combiner is
 * recorded as failed and the others still run.
 */
[[nodiscard]] ExperimentReport run_experiment(const ExperimentConfig& config);

}  // namespace tsens::harness
