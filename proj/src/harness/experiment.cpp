#include "tsens/harness/experiment.hpp"

#include "tsens/combine/forecast_set.hpp"
#include "tsens/combine/linear.hpp"
#include "tsens/harness/dataset.hpp"
#include "tsens/models/ar.hpp"
#include "tsens/models/forecast.hpp"
#include "tsens/models/selection.hpp"

#include <chrono>
#include <cmath>
#include <functional>

namespace tsens::harness {

namespace {

using Clock = std::chrono::steady_clock;

template <class Fn>
auto timed(std::vector<StageTiming>& timings, const std::string& stage, Fn&& fn) {
    const auto start = Clock::now();
    auto finish = [&] {
        timings.push_back({stage, std::chrono::duration<double>(Clock::now() - start).count()});
    };
    try {
        if constexpr (std::is_void_v<decltype(fn())>) {
            fn();
            finish();
        } else {
            auto result = fn();
            finish();
            return result;
        }
    } catch (const StageError&) {
        throw;
    } catch (const Error& e) {
        throw StageError(stage, e.what());
    }
}

models::FittedModel fit_model(ModelKind kind, const TimeSeries& train, const ExperimentConfig& cfg) {
    switch (kind) {
        case ModelKind::Ar:
            return models::fit_ar(train, cfg.ar_order);
        case ModelKind::Sarima:
            return models::fit_sarima(train, cfg.sarima);
        case ModelKind::Mlp: {
            auto layout = cfg.mlp_layout;
            if (!cfg.mlp_training.hidden_grid.empty()) {
                layout = *models::select_hyperparameters(models::ModelFamily::Mlp, train, cfg.mlp_training, layout).mlp;
            }
            return models::fit_mlp(train, layout, cfg.mlp_training);
        }
        case ModelKind::Svr: {
            auto hyper = cfg.svr_training.svr_grid.front();
            if (cfg.svr_training.svr_grid.size() > 1) {
                hyper = *models::select_hyperparameters(models::ModelFamily::Svr, train, cfg.svr_training).svr;
            }
            return models::fit_svr(train, hyper, cfg.svr_training);
        }
        case ModelKind::Perfect:
            break;
    }
    throw ConfigError("model kind has no fitting procedure");
}

std::string mode_name(models::ForecastMode m) { return m == models::ForecastMode::Rolling ? "rolling" : "iterated"; }

}  // namespace

ExperimentReport run_experiment(const ExperimentConfig& config) {
    config.validate();
    ExperimentReport report;
    report.dataset = config.dataset_name;
    report.transform = config.transform == DatasetTransform::Log10 ? "log10" : "none";
    report.seed = config.seed;
    report.mode = mode_name(config.mode);
    report.stats = config.stats == combine::StatsMode::Frozen ? "frozen" : "recompute";
    report.standardization = config.standardization == combine::Standardization::Variance ? "variance" : "stddev";
    report.mse_footnote = config.mse_footnote;
    auto& timings = report.timings;

    const auto series = timed(timings, "load", [&] { return load_dataset(config); });
    const auto parts = timed(timings, "split", [&] {
        return split(series, SplitSpec::from_test_size(series.size(), config.test_size));
    });
    const auto& train = parts.train;
    const auto& validation = parts.validation;
    const auto& test = parts.test;
    const auto test_history = series.slice(0, train.size() + validation.size());
    report.train_len = train.size();
    report.validation_len = validation.size();
    report.test_len = test.size();

    // Metrics may be reported with the dataset transform undone.
    auto to_metric_units = [&](std::vector<double> v) {
        if (config.units == MetricUnits::Original && config.transform == DatasetTransform::Log10) {
            for (auto& x : v) x = std::pow(10.0, x);
        }
        return v;
    };
    const auto validation_actual = to_metric_units(validation.data());
    const auto test_actual = to_metric_units(test.data());
    report.validation_actual = validation.data();
    report.test_actual = test.data();

    std::vector<std::string> names;
    std::vector<std::vector<double>> validation_columns, test_columns;
    for (auto kind : config.models) {
        const auto name = to_string(kind);
        ModelResult result;
        result.name = name;
        if (kind == ModelKind::Perfect) {
            result.validation_forecast = validation.data();
            result.test_forecast = test.data();
            result.parameters = "model = perfect\n";
        } else {
            auto model = timed(timings, "train:" + name, [&] { return fit_model(kind, train, config); });
            result.parameters = models::dump(model);
            timed(timings, "forecast:" + name, [&] {
                result.validation_forecast =
                    models::forecast(model, train, validation.size(), config.mode, validation.values());
                result.test_forecast = models::forecast(model, test_history, test.size(), config.mode, test.values());
            });
        }
        timed(timings, "evaluate:" + name, [&] {
            result.validation_sse = sse(validation.values(), result.validation_forecast);
            result.validation = evaluate(validation_actual, to_metric_units(result.validation_forecast), config.arv);
            result.test = evaluate(test_actual, to_metric_units(result.test_forecast), config.arv);
        });
        names.push_back(name);
        validation_columns.push_back(result.validation_forecast);
        test_columns.push_back(result.test_forecast);
        report.models.push_back(std::move(result));
    }

    if (config.combiners.empty()) return report;
    if (names.size() < 2) {
        throw StageError("combine", "combiners need at least two base models");
    }
    const auto validation_set = combine::ForecastSet::from_columns(validation_columns, names, "validation");
    const auto test_set = combine::ForecastSet::from_columns(test_columns, names, "test");
    std::vector<ErrorReport> validation_reports;
    std::vector<double> validation_errors;
    for (const auto& m : report.models) {
        validation_reports.push_back(m.validation);
        validation_errors.push_back(config.error_metric == combine::ErrorMetric::Mape  ? m.validation.mape
                                    : config.error_metric == combine::ErrorMetric::Mse ? m.validation.mse
                                                                                       : m.validation.arv);
    }

    for (auto kind : config.combiners) {
        CombinerResult result;
        result.name = to_string(kind);
        const auto start = Clock::now();
        try {
            std::vector<double> fitted, combined;
            if (kind == CombinerKind::Nonlinear) {
                combine::NonlinearFitOptions options;
                options.ridge = config.ridge;
                options.standardization = config.standardization;
                auto weights = combine::fit_nonlinear_ensemble(validation_set, validation.values(), options);
                fitted = combine::predict_nonlinear(weights, validation_set);
                combined = combine::predict_nonlinear(weights, test_set, config.stats);
                report.ensemble = std::move(weights);
            } else {
                combine::LinearCombinerSpec spec;
                switch (kind) {
                    case CombinerKind::SimpleAverage: spec = combine::LinearCombinerSpec::simple_average(); break;
                    case CombinerKind::Median: spec = combine::LinearCombinerSpec::median(); break;
                    case CombinerKind::Trimmed:
                        spec = combine::LinearCombinerSpec::trimmed(config.trim_percent, validation_errors);
                        break;
                    case CombinerKind::Winsorized:
                        spec = combine::LinearCombinerSpec::winsorized(config.winsor_count);
                        break;
                    case CombinerKind::ErrorBased:
                        spec = combine::LinearCombinerSpec::error_based(
                            combine::error_based_weights(validation_reports, config.error_metric));
                        break;
                    case CombinerKind::VarianceBased: {
                        auto vw = combine::variance_based_weights(validation_set, validation.values());
                        spec = combine::LinearCombinerSpec::variance_based(vw.intercept, vw.weights);
                        break;
                    }
                    case CombinerKind::Nonlinear: break;
                }
                fitted = combine::combine_pointwise(validation_set, spec);
                combined = combine::combine_pointwise(test_set, spec);
            }
            result.validation_sse = sse(validation.values(), fitted);
            result.test = evaluate(test_actual, to_metric_units(combined), config.arv);
            result.test_forecast = std::move(combined);
            result.ok = true;
        } catch (const Error& e) {
            result.ok = false;
            result.error = e.what();
        }
        timings.push_back({"combine:" + result.name, std::chrono::duration<double>(Clock::now() - start).count()});
        report.combiners.push_back(std::move(result));
    }
    return report;
}

}  // namespace tsens::harness
