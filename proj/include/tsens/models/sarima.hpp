#pragma once

#include "tsens/core/time_series.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsens::models {

struct SarimaOrder {
    std::size_t p = 0, d = 1, q = 1;
    std::size_t seasonal_p = 0, seasonal_d = 1, seasonal_q = 1;
    std::size_t period = 12;

    /// (0,1,1) x (0,1,1)_s, the only configuration supported.
    [[nodiscard]] static SarimaOrder airline(std::size_t period) {
        return SarimaOrder{0, 1, 1, 0, 1, 1, period};
    }
    [[nodiscard]] bool is_airline() const noexcept {
        return p == 0 && d == 1 && q == 1 && seasonal_p == 0 && seasonal_d == 1 && seasonal_q == 1;
    }
};

/**
 * @brief Multiplicative seasonal MA model on the doubly differenced series:
 *
 *   w_t = (1 - L)(1 - L^s) y_t = (1 + theta L)(1 + Theta L^s) e_t
 *
 * fitted by conditional sum of squares with pre-sample innovations fixed at 0.
 */
struct SarimaModel {
    SarimaOrder order;
    double ma = 0.0;           // theta_1
    double seasonal_ma = 0.0;  // Theta_1
    double innovation_variance = 0.0;
    /// Set when the optimum sits within 1e-3 of the invertibility boundary.
    bool at_invertibility_boundary = false;
    std::size_t evaluations = 0;

    /// Innovations of the differenced series w computed from `series` (length
    /// series.size() - 1 - period).
    [[nodiscard]] std::vector<double> innovations(std::span<const double> series) const;

    /// One-step prediction in the units of `history`.
    [[nodiscard]] double predict_next(std::span<const double> history) const;

    [[nodiscard]] std::size_t min_history() const noexcept { return order.period + 2; }
};

/// Conditional sum of squares of the innovations for the given coefficients.
[[nodiscard]] double sarima_css(std::span<const double> differenced, std::size_t period, double ma,
                                double seasonal_ma);

/// Throws ConfigError for non-airline orders, SizeError if
/// train.size() <= 2*period + 2, OptimizationError on divergence.
[[nodiscard]] SarimaModel fit_sarima(const TimeSeries& train, const SarimaOrder& order);

[[nodiscard]] std::string dump(const SarimaModel& model);

}  // namespace tsens::models
