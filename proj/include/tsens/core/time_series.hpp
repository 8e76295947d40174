#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace tsens {

/// One entry of a series' transform history.
struct TransformStep {
    enum class Kind { Log10, Difference };

    Kind kind = Kind::Log10;
    /// Differencing lag (1 for ordinary, s for seasonal); unused for Log10.
    std::size_t lag = 0;

    friend bool operator==(const TransformStep&, const TransformStep&) = default;
};

/**
 * @brief Ordered, finite, real-valued observations.
 *
 * Values are immutable after construction. The optional seasonal period must
 * satisfy 2 <= period < size(). The transform log records every transform
 * applied since the series was loaded, oldest first.
 */
class TimeSeries {
public:
    TimeSeries(std::vector<double> values, std::string name = {},
               std::optional<std::size_t> period = std::nullopt,
               std::vector<TransformStep> transform_log = {});

    [[nodiscard]] std::span<const double> values() const noexcept { return values_; }
    [[nodiscard]] const std::vector<double>& data() const noexcept { return values_; }
    [[nodiscard]] std::size_t size() const noexcept { return values_.size(); }
    [[nodiscard]] double operator[](std::size_t i) const { return values_[i]; }
    [[nodiscard]] double back() const { return values_.back(); }

    [[nodiscard]] const std::string& name() const noexcept { return name_; }
    [[nodiscard]] std::optional<std::size_t> period() const noexcept { return period_; }
    [[nodiscard]] const std::vector<TransformStep>& transform_log() const noexcept {
        return transform_log_;
    }

    /// Contiguous piece [first, first + count); keeps name, transform log and
    /// the period when it still fits the shorter length.
    [[nodiscard]] TimeSeries slice(std::size_t first, std::size_t count) const;

    /// Same metadata, new values.
    [[nodiscard]] TimeSeries with_values(std::vector<double> values) const;

    friend bool operator==(const TimeSeries&, const TimeSeries&) = default;

private:
    std::vector<double> values_;
    std::string name_;
    std::optional<std::size_t> period_;
    std::vector<TransformStep> transform_log_;
};

/// Chronological hold-out sizes: train | validation | test.
struct SplitSpec {
    std::size_t train_len = 0;
    std::size_t validation_len = 0;
    std::size_t test_len = 0;

    /// Equal validation/test windows carved from the end of a series of `total` points.
    [[nodiscard]] static SplitSpec from_test_size(std::size_t total, std::size_t test_len);

    /// Throws SizeError unless all parts are positive, validation_len == test_len
    /// and the parts sum to `total`.
    void validate(std::size_t total) const;
};

struct Split {
    TimeSeries train;
    TimeSeries validation;
    TimeSeries test;
};

/// Test window is the last test_len points, validation the last validation_len
/// of what remains, train everything before.
[[nodiscard]] Split split(const TimeSeries& series, const SplitSpec& spec);

}  // namespace tsens
