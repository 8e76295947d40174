#include "tsens/models/sarima.hpp"

#include "tsens/core/errors.hpp"
#include "tsens/core/transforms.hpp"
#include "tsens/models/nelder_mead.hpp"

#include <cmath>
#include <sstream>

namespace tsens::models {

namespace {

constexpr double kBoundaryMargin = 1e-3;

TimeSeries difference_airline(std::span<const double> values, std::size_t period) {
    TimeSeries raw(std::vector<double>(values.begin(), values.end()));
    return apply_transform(raw, TransformKind::difference(1, 1, period));
}

std::vector<double> innovations_of(std::span<const double> w, std::size_t s, double ma, double seasonal_ma) {
    std::vector<double> e(w.size(), 0.0);
    for (std::size_t t = 0; t < w.size(); ++t) {
        double v = w[t];
        if (t >= 1) v -= ma * e[t - 1];
        if (t >= s) v -= seasonal_ma * e[t - s];
        if (t >= s + 1) v -= ma * seasonal_ma * e[t - s - 1];
        e[t] = v;
    }
    return e;
}

}  // namespace

double sarima_css(std::span<const double> differenced, std::size_t period, double ma, double seasonal_ma) {
    double total = 0.0;
    for (double e : innovations_of(differenced, period, ma, seasonal_ma)) total += e * e;
    return total;
}

std::vector<double> SarimaModel::innovations(std::span<const double> series) const {
    if (series.size() < min_history()) {
        throw SizeError("SARIMA innovations need at least " + std::to_string(min_history()) +
                        " observations, got " + std::to_string(series.size()));
    }
    auto w = difference_airline(series, order.period);
    return innovations_of(w.values(), order.period, ma, seasonal_ma);
}

double SarimaModel::predict_next(std::span<const double> history) const {
    if (history.size() < min_history()) {
        throw SizeError("SARIMA forecast needs at least " + std::to_string(min_history()) +
                        " past values, got " + std::to_string(history.size()));
    }
    const std::size_t s = order.period;
    auto w = difference_airline(history, s);
    auto e = innovations_of(w.values(), s, ma, seasonal_ma);
    const std::size_t m = e.size();
    auto lagged = [&](std::size_t k) { return k <= m ? e[m - k] : 0.0; };
    double w_next = ma * lagged(1) + seasonal_ma * lagged(s) + ma * seasonal_ma * lagged(s + 1);

    TimeSeries step({w_next}, {}, std::nullopt, w.transform_log());
    TimeSeries anchor(std::vector<double>(history.begin(), history.end()));
    return invert_transform(step, anchor)[0];
}

SarimaModel fit_sarima(const TimeSeries& train, const SarimaOrder& order) {
    if (!order.is_airline()) {
        throw ConfigError("only the (0,1,1)x(0,1,1)_s seasonal model is supported");
    }
    const std::size_t s = order.period;
    if (s < 2) throw ConfigError("seasonal period must be at least 2");
    if (train.size() <= 2 * s + 2) {
        throw SizeError("SARIMA with period " + std::to_string(s) + " needs more than " +
                        std::to_string(2 * s + 2) + " observations, got " + std::to_string(train.size()));
    }
    auto w = difference_airline(train.values(), s);
    auto objective = [&](std::span<const double> x) {
        if (std::abs(x[0]) >= 1.0 || std::abs(x[1]) >= 1.0) return HUGE_VAL;
        return sarima_css(w.values(), s, x[0], x[1]);
    };
    NelderMeadOptions options;
    options.initial_step = 0.1;
    options.value_tolerance = 1e-14;
    options.point_tolerance = 1e-9;
    options.max_evaluations = 5000;
    auto result = nelder_mead(objective, {0.1, 0.1}, options);
    if (!std::isfinite(result.value)) {
        throw OptimizationError("SARIMA conditional sum of squares diverged");
    }
    if (!result.converged) {
        throw OptimizationError("SARIMA simplex search did not converge in " +
                                std::to_string(result.evaluations) + " evaluations");
    }

    SarimaModel model;
    model.order = order;
    model.ma = result.point[0];
    model.seasonal_ma = result.point[1];
    model.innovation_variance = result.value / static_cast<double>(w.size());
    model.at_invertibility_boundary = std::abs(model.ma) > 1.0 - kBoundaryMargin ||
                                      std::abs(model.seasonal_ma) > 1.0 - kBoundaryMargin;
    model.evaluations = result.evaluations;
    return model;
}

std::string dump(const SarimaModel& model) {
    std::ostringstream out;
    out.precision(17);
    out << "model = sarima\n";
    out << "order = (0,1,1)x(0,1,1)_" << model.order.period << '\n';
    out << "ma.1 = " << model.ma << '\n';
    out << "seasonal_ma.1 = " << model.seasonal_ma << '\n';
    out << "innovation_variance = " << model.innovation_variance << '\n';
    out << "invertibility_boundary = " << (model.at_invertibility_boundary ? "true" : "false") << '\n';
    return out.str();
}

}  // namespace tsens::models
