#pragma once

#include "tsens/core/time_series.hpp"

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsens::models {

/**
 * @brief Autoregressive model y_t = c + sum_i phi_i * y_{t-i} + e_t.
 */
struct ArModel {
    std::size_t order = 0;
    double intercept = 0.0;
    std::vector<double> coefficients;  // phi_1 .. phi_p
    /// Mean squared one-step residual on the training data.
    double residual_variance = 0.0;

    /// One-step prediction from the last `order` values of `history`.
    [[nodiscard]] double predict_next(std::span<const double> history) const;

    /// One-step residuals for t = order .. size-1.
    [[nodiscard]] std::vector<double> residuals(std::span<const double> series) const;
};

/// Conditional least squares (OLS on the lagged design with intercept).
/// Throws SizeError if train.size() <= p + 1, SingularityError if the lagged
/// design is rank deficient (e.g. a constant series).
[[nodiscard]] ArModel fit_ar(const TimeSeries& train, std::size_t p);

[[nodiscard]] std::string dump(const ArModel& model);

}  // namespace tsens::models
