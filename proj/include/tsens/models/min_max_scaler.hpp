#pragma once

#include <span>

namespace tsens::models {

/// Affine map of [min, max] onto [0, 1], fitted on training data only.
struct MinMaxScaler {
    double min = 0.0;
    double max = 1.0;

    /// A constant sample gets a unit range so the map stays invertible.
    [[nodiscard]] static MinMaxScaler fit(std::span<const double> values);

    [[nodiscard]] double range() const noexcept { return max - min; }
    [[nodiscard]] double scale(double x) const noexcept { return (x - min) / range(); }
    [[nodiscard]] double unscale(double x) const noexcept { return x * range() + min; }
};

}  // namespace tsens::models
