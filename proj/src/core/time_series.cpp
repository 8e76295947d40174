#include "tsens/core/time_series.hpp"

#include "tsens/core/errors.hpp"

#include <cmath>
#include <string>

namespace tsens {

TimeSeries::TimeSeries(std::vector<double> values, std::string name,
                       std::optional<std::size_t> period,
                       std::vector<TransformStep> transform_log)
    : values_(std::move(values)),
      name_(std::move(name)),
      period_(period),
      transform_log_(std::move(transform_log)) {
    if (values_.empty()) {
        throw SizeError("time series '" + name_ + "' has no observations");
    }
    for (std::size_t i = 0; i < values_.size(); ++i) {
        if (!std::isfinite(values_[i])) {
            throw DomainError("time series '" + name_ + "' has a non-finite value at index " +
                              std::to_string(i));
        }
    }
    if (period_ && (*period_ < 2 || *period_ >= values_.size())) {
        throw SizeError("seasonal period " + std::to_string(*period_) +
                        " must be >= 2 and < series length " + std::to_string(values_.size()));
    }
}

TimeSeries TimeSeries::slice(std::size_t first, std::size_t count) const {
    if (first > values_.size() || count > values_.size() - first) {
        throw SizeError("slice [" + std::to_string(first) + ", +" + std::to_string(count) +
                        ") exceeds series length " + std::to_string(values_.size()));
    }
    std::vector<double> piece(values_.begin() + static_cast<std::ptrdiff_t>(first),
                              values_.begin() + static_cast<std::ptrdiff_t>(first + count));
    auto period = (period_ && *period_ < count) ? period_ : std::nullopt;
    return TimeSeries(std::move(piece), name_, period, transform_log_);
}

TimeSeries TimeSeries::with_values(std::vector<double> values) const {
    auto period = (period_ && *period_ < values.size()) ? period_ : std::nullopt;
    return TimeSeries(std::move(values), name_, period, transform_log_);
}

SplitSpec SplitSpec::from_test_size(std::size_t total, std::size_t test_len) {
    if (test_len == 0 || 2 * test_len >= total) {
        throw SizeError("test size " + std::to_string(test_len) +
                        " leaves no training data in a series of " + std::to_string(total));
    }
    return SplitSpec{total - 2 * test_len, test_len, test_len};
}

void SplitSpec::validate(std::size_t total) const {
    if (train_len == 0 || validation_len == 0 || test_len == 0) {
        throw SizeError("split sizes must all be positive");
    }
    if (validation_len != test_len) {
        throw SizeError("validation size " + std::to_string(validation_len) +
                        " must equal test size " + std::to_string(test_len));
    }
    if (train_len + validation_len + test_len != total) {
        throw SizeError("split sizes " + std::to_string(train_len) + "+" +
                        std::to_string(validation_len) + "+" + std::to_string(test_len) +
                        " do not sum to series length " + std::to_string(total));
    }
}

Split split(const TimeSeries& series, const SplitSpec& spec) {
    spec.validate(series.size());
    return Split{
        series.slice(0, spec.train_len),
        series.slice(spec.train_len, spec.validation_len),
        series.slice(spec.train_len + spec.validation_len, spec.test_len),
    };
}

}  // namespace tsens
