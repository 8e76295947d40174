#include "tsens/core/metrics.hpp"

#include "tsens/core/errors.hpp"

#include <cmath>
#include <string>

namespace tsens {

namespace {

void check_lengths(std::span<const double> actual, std::span<const double> forecast) {
    if (actual.empty() || actual.size() != forecast.size()) {
        throw SizeError("metric needs equal nonzero lengths, got " + std::to_string(actual.size()) +
                        " actual and " + std::to_string(forecast.size()) + " forecast values");
    }
}

}  // namespace

double sse(std::span<const double> actual, std::span<const double> forecast) {
    check_lengths(actual, forecast);
    double total = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        double e = actual[t] - forecast[t];
        total += e * e;
    }
    return total;
}

double mse(std::span<const double> actual, std::span<const double> forecast) {
    return sse(actual, forecast) / static_cast<double>(actual.size());
}

double mape(std::span<const double> actual, std::span<const double> forecast) {
    check_lengths(actual, forecast);
    double total = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        if (actual[t] == 0.0) {
            throw DomainError("MAPE undefined: actual value at index " + std::to_string(t) + " is zero");
        }
        total += std::abs((actual[t] - forecast[t]) / actual[t]);
    }
    return total / static_cast<double>(actual.size()) * 100.0;
}

double arv(std::span<const double> actual, std::span<const double> forecast,
           ArvDenominator denominator) {
    check_lengths(actual, forecast);
    double mu = 0.0;
    for (double y : actual) mu += y;
    mu /= static_cast<double>(actual.size());

    double spread = 0.0;
    for (std::size_t t = 0; t < actual.size(); ++t) {
        double d = denominator == ArvDenominator::ForecastDeviation ? mu - forecast[t] : actual[t] - mu;
        spread += d * d;
    }
    if (spread == 0.0) {
        throw DomainError("ARV undefined: denominator is zero");
    }
    return sse(actual, forecast) / spread;
}

ErrorReport evaluate(std::span<const double> actual, std::span<const double> forecast,
                     ArvDenominator arv_kind) {
    return ErrorReport{mape(actual, forecast), mse(actual, forecast), arv(actual, forecast, arv_kind)};
}

}  // namespace tsens
