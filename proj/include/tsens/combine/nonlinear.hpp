#pragma once

#include "tsens/combine/forecast_set.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace tsens::combine {

/// How a forecast column is standardized before forming cross terms:
/// v = (yhat - mean) / variance, or v = (yhat - mean) / stddev.
enum class Standardization { Variance, StdDev };

/// Which statistics standardize forecasts at prediction time.
enum class StatsMode {
    Frozen,     ///< the ones computed on the fitting window
    Recompute,  ///< recomputed from the forecasts being combined
};

struct ColumnStats {
    double mean = 0.0;
    double variance = 0.0;  ///< population variance (divides by N)
};

/// Mean and population variance of every column.
[[nodiscard]] std::vector<ColumnStats> column_stats(const ForecastSet& forecasts);

/// Unordered model pairs carrying a cross-term weight. For three models the
/// order is (0,1), (1,2), (2,0); otherwise lexicographic (i < j).
[[nodiscard]] std::vector<std::pair<std::size_t, std::size_t>> model_pairs(std::size_t n);

/// F = [1 | forecasts] (N x (n+1)); G column j = v_a .* v_b for pair j.
struct DesignMatrices {
    Eigen::MatrixXd f;
    Eigen::MatrixXd g;
};

/// Throws DegenerateError if any variance is not positive.
[[nodiscard]] DesignMatrices build_design_matrices(const ForecastSet& forecasts, std::span<const ColumnStats> stats,
                                                   Standardization standardization = Standardization::Variance);

struct NonlinearFitOptions {
    /// When set (> 0), added to the diagonal of both inverted blocks.
    std::optional<double> ridge;
    Standardization standardization = Standardization::Variance;
    /// Rounds of iterative refinement applied after the first block solve.
    std::size_t refinement_steps = 2;
};

/**
 * @brief Fitted weighted nonlinear combination
 *
 *   yhat_c = w0 + sum_i w_i yhat_i + sum_{(a,b)} theta_ab v_a v_b
 *
 * with the standardization statistics frozen from the fitting window.
 */
struct NonlinearEnsembleWeights {
    std::vector<std::string> model_names;
    double intercept = 0.0;                                 // w0
    std::vector<double> linear;                             // w1..wn
    std::vector<double> cross;                              // theta per pair
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    std::vector<ColumnStats> stats;
    Standardization standardization = Standardization::Variance;

    // diagnostics
    double validation_sse = 0.0;
    double solver_residual = 0.0;  ///< ||[F G]'(y - yhat)||_inf at the returned weights
    bool ridge_applied = false;
    double ridge = 0.0;

    /// [w0, w1..wn, theta...]
    [[nodiscard]] std::vector<double> coefficients() const;
};

/**
 * Fits the ensemble on validation forecasts by minimizing the SSE in closed
 * form. With V = F'F, Z = F'G, U = G'G, b = F'y, d = G'y:
 *
 *   theta = (U - Z' V^-1 Z)^-1 (d - Z' V^-1 b)
 *   w     = V^-1 (b - Z theta)
 *
 * Both inverses go through a diagonally equilibrated Cholesky factorization;
 * a reciprocal condition estimate below 1e-13 is treated as singular. The
 * block solve is followed by `refinement_steps` rounds of iterative
 * refinement on the same factorizations.
 *
 * @throws SizeError if N < n + 1 + C(n,2)
 * @throws DegenerateError for a constant forecast column
 * @throws SingularityError if either inverse does not exist and no ridge is given
 */
[[nodiscard]] NonlinearEnsembleWeights fit_nonlinear_ensemble(const ForecastSet& forecasts,
                                                              std::span<const double> actuals,
                                                              const NonlinearFitOptions& options = {});

/// Evaluates the fitted combination row by row.
/// @throws AlignmentError if model names or order differ from the fit
[[nodiscard]] std::vector<double> predict_nonlinear(const NonlinearEnsembleWeights& weights,
                                                    const ForecastSet& forecasts,
                                                    StatsMode stats_mode = StatsMode::Frozen);

/// d SSE / d coefficient for every entry of coefficients(), standardizing
/// with the frozen statistics.
[[nodiscard]] std::vector<double> sse_gradient(const NonlinearEnsembleWeights& weights, const ForecastSet& forecasts,
                                               std::span<const double> actuals);

/// Plain-text `key = value` dump; parse_weights() reads it back.
[[nodiscard]] std::string dump(const NonlinearEnsembleWeights& weights);
[[nodiscard]] NonlinearEnsembleWeights parse_weights(std::string_view text);

}  // namespace tsens::combine
