#pragma once

#include "tsens/core/time_series.hpp"
#include "tsens/models/min_max_scaler.hpp"
#include "tsens/models/training_config.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsens::models {

/// exp(-||a - b||^2 / (2 sigma^2))
[[nodiscard]] double rbf_kernel(std::span<const double> a, std::span<const double> b, double sigma);

struct SvrSolverOptions {
    double tolerance = 1e-3;
    /// Cap on pairwise updates is this many per training sample.
    std::size_t iterations_per_sample = 100000;
};

/// Raw dual solution over every training point.
struct SvrDualSolution {
    std::vector<double> coefficients;  // alpha_i - alpha_i^*
    double bias = 0.0;
    std::size_t iterations = 0;
};

/**
 * Solves the epsilon-insensitive SVR dual by sequential pairwise updates
 * (maximal-violating pair with second-order selection) until the KKT
 * violation drops below `options.tolerance`.
 *
 * @throws OptimizationError when the iteration cap is hit first
 */
[[nodiscard]] SvrDualSolution solve_svr_dual(const Eigen::MatrixXd& kernel, std::span<const double> targets,
                                             const SvrHyper& hyper, const SvrSolverOptions& options = {});

/**
 * @brief Kernel expansion y(x) = sum_i coef_i K(x, x_i) + b over the
 * retained support vectors.
 *
 * Inputs to decision() are in scaled units; predict_next() handles the
 * scaling for a lag window taken from the tail of a history.
 */
struct SvrModel {
    std::vector<std::vector<double>> support_vectors;
    std::vector<double> dual_coefficients;
    double bias = 0.0;
    SvrHyper hyper;
    MinMaxScaler scaler;
    std::size_t lag = 0;
    std::size_t iterations = 0;

    [[nodiscard]] double decision(std::span<const double> x) const;
    [[nodiscard]] double predict_next(std::span<const double> history) const;
};

/// Fits on explicit input rows, no scaling. Zero-coefficient points are dropped.
[[nodiscard]] SvrModel train_svr(const std::vector<std::vector<double>>& inputs,
                                 std::span<const double> targets, const SvrHyper& hyper,
                                 const SvrSolverOptions& options = {});

/// Fits on min-max scaled lag windows of length cfg.lag drawn from `train`.
[[nodiscard]] SvrModel fit_svr(const TimeSeries& train, const SvrHyper& hyper, const TrainingConfig& cfg,
                               const SvrSolverOptions& options = {});

[[nodiscard]] std::string dump(const SvrModel& model);

}  // namespace tsens::models
