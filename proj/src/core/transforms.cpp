#include "tsens/core/transforms.hpp"

#include "tsens/core/errors.hpp"

#include <cmath>
#include <string>

namespace tsens {

namespace {

std::vector<double> log10_values(const std::vector<double>& in) {
    std::vector<double> out(in.size());
    for (std::size_t i = 0; i < in.size(); ++i) {
        if (!(in[i] > 0.0)) {
            throw DomainError("log10 requires positive values; index " + std::to_string(i) +
                              " holds " + std::to_string(in[i]));
        }
        out[i] = std::log10(in[i]);
    }
    return out;
}

std::vector<double> difference_values(const std::vector<double>& in, std::size_t lag) {
    if (in.size() <= lag) {
        throw SizeError("lag-" + std::to_string(lag) + " difference needs more than " +
                        std::to_string(lag) + " observations, got " + std::to_string(in.size()));
    }
    std::vector<double> out(in.size() - lag);
    for (std::size_t t = lag; t < in.size(); ++t) out[t - lag] = in[t] - in[t - lag];
    return out;
}

std::vector<double> forward(const std::vector<double>& in, const TransformStep& step) {
    if (step.kind == TransformStep::Kind::Log10) return log10_values(in);
    return difference_values(in, step.lag);
}

}  // namespace

std::size_t consumed_by(const std::vector<TransformStep>& log) {
    std::size_t n = 0;
    for (const auto& step : log) {
        if (step.kind == TransformStep::Kind::Difference) n += step.lag;
    }
    return n;
}

TimeSeries apply_transform(const TimeSeries& series, const TransformKind& kind) {
    std::vector<TransformStep> steps;
    if (kind.type == TransformKind::Type::Log10) {
        steps.push_back({TransformStep::Kind::Log10, 0});
    } else {
        std::size_t s = kind.period != 0 ? kind.period : series.period().value_or(0);
        if (kind.seasonal_order > 0 && s < 2) {
            throw SizeError("seasonal differencing needs a period >= 2");
        }
        for (std::size_t i = 0; i < kind.order; ++i) steps.push_back({TransformStep::Kind::Difference, 1});
        for (std::size_t i = 0; i < kind.seasonal_order; ++i) {
            steps.push_back({TransformStep::Kind::Difference, s});
        }
        std::size_t lost = kind.order + kind.seasonal_order * s;
        if (series.size() <= lost) {
            throw SizeError("series of length " + std::to_string(series.size()) +
                            " is too short for differencing that consumes " + std::to_string(lost));
        }
    }

    std::vector<double> values = series.data();
    auto log = series.transform_log();
    for (const auto& step : steps) {
        values = forward(values, step);
        log.push_back(step);
    }
    auto period = series.period();
    if (period && *period >= values.size()) period.reset();
    return TimeSeries(std::move(values), series.name(), period, std::move(log));
}

TimeSeries invert_transform(const TimeSeries& series, const TimeSeries& anchor) {
    const auto& log = series.transform_log();
    if (log.empty()) {
        throw ConfigError("series '" + series.name() + "' carries no transform to invert");
    }

    // levels[k] is the anchor as seen at the input of step k.
    std::vector<std::vector<double>> levels;
    levels.reserve(log.size());
    std::vector<double> level = anchor.data();
    for (const auto& step : log) {
        if (step.kind == TransformStep::Kind::Difference && level.size() < step.lag) {
            throw SizeError("anchor of length " + std::to_string(anchor.size()) +
                            " is too short to invert differencing consuming " +
                            std::to_string(consumed_by(log)));
        }
        levels.push_back(level);
        if (step.kind == TransformStep::Kind::Difference && level.size() == step.lag) {
            level.clear();
        } else {
            level = forward(level, step);
        }
    }

    std::vector<double> values = series.data();
    for (std::size_t k = log.size(); k-- > 0;) {
        const auto& step = log[k];
        if (step.kind == TransformStep::Kind::Log10) {
            for (auto& v : values) v = std::pow(10.0, v);
            continue;
        }
        const auto& seed = levels[k];
        std::vector<double> joined(seed.end() - static_cast<std::ptrdiff_t>(step.lag), seed.end());
        joined.reserve(step.lag + values.size());
        for (double dv : values) joined.push_back(dv + joined[joined.size() - step.lag]);
        values.assign(joined.begin() + static_cast<std::ptrdiff_t>(step.lag), joined.end());
    }
    auto period = series.period();
    if (period && *period >= values.size()) period.reset();
    return TimeSeries(std::move(values), series.name(), period, {});
}

}  // namespace tsens
