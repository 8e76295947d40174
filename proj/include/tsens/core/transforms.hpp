#pragma once

#include "tsens/core/time_series.hpp"

#include <cstddef>

namespace tsens {

/// A transform request. Differencing applies `order` lag-1 differences,
/// then `seasonal_order` lag-s differences (s from `period`, or the series'
/// period when `period` is 0).
struct TransformKind {
    enum class Type { Log10, Difference };

    Type type = Type::Log10;
    std::size_t order = 0;
    std::size_t seasonal_order = 0;
    std::size_t period = 0;

    static TransformKind log10() { return {Type::Log10, 0, 0, 0}; }
    static TransformKind difference(std::size_t d, std::size_t seasonal_d = 0, std::size_t s = 0) {
        return {Type::Difference, d, seasonal_d, s};
    }
};

/// Returns the transformed series with every elementary step appended to its
/// transform log. Differencing shortens the series by d + D*s.
[[nodiscard]] TimeSeries apply_transform(const TimeSeries& series, const TransformKind& kind);

/**
 * @brief Undo every step recorded in `series.transform_log()`.
 *
 * `series` is a transformed segment that directly continues `anchor`, where
 * `anchor` holds the preceding observations in untransformed units. The
 * anchor is pushed through the same steps so each difference can be
 * integrated from its own level. Returns the restored segment only (same
 * length as `series`) with an empty transform log.
 *
 * @throws SizeError if the anchor is too short to seed a differencing step
 */
[[nodiscard]] TimeSeries invert_transform(const TimeSeries& series, const TimeSeries& anchor);

/// Number of leading observations consumed by the differencing steps in `log`.
[[nodiscard]] std::size_t consumed_by(const std::vector<TransformStep>& log);

}  // namespace tsens
