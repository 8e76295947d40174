#include "tsens/combine/linear.hpp"

#include "tsens/core/errors.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsens::combine {

std::string to_string(LinearKind kind) {
    switch (kind) {
        case LinearKind::SimpleAverage: return "simple_average";
        case LinearKind::Trimmed: return "trimmed";
        case LinearKind::Winsorized: return "winsorized";
        case LinearKind::Median: return "median";
        case LinearKind::ErrorBased: return "error_based";
        case LinearKind::VarianceBased: return "variance_based";
    }
    return "unknown";
}

LinearCombinerSpec LinearCombinerSpec::trimmed(double percent, std::vector<double> validation_errors) {
    LinearCombinerSpec s;
    s.kind = LinearKind::Trimmed;
    s.trim_percent = percent;
    s.model_errors = std::move(validation_errors);
    return s;
}

LinearCombinerSpec LinearCombinerSpec::winsorized(std::size_t count) {
    LinearCombinerSpec s;
    s.kind = LinearKind::Winsorized;
    s.winsor_count = count;
    return s;
}

LinearCombinerSpec LinearCombinerSpec::error_based(std::vector<double> weights) {
    LinearCombinerSpec s;
    s.kind = LinearKind::ErrorBased;
    s.weights = std::move(weights);
    return s;
}

LinearCombinerSpec LinearCombinerSpec::variance_based(double intercept, std::vector<double> weights) {
    LinearCombinerSpec s;
    s.kind = LinearKind::VarianceBased;
    s.intercept = intercept;
    s.weights = std::move(weights);
    return s;
}

void LinearCombinerSpec::validate(std::size_t n) const {
    switch (kind) {
        case LinearKind::Trimmed:
            if (!(trim_percent >= 0.0 && trim_percent < 50.0)) {
                throw ConfigError("trim percentage must lie in [0, 50)");
            }
            if (model_errors.size() != n) {
                throw ConfigError("trimmed combiner needs one validation error per model");
            }
            break;
        case LinearKind::Winsorized:
            if (winsor_count >= n / 2 + 1) {
                throw ConfigError("winsorizing " + std::to_string(winsor_count) + " values per side needs fewer than " +
                                  std::to_string(n / 2 + 1));
            }
            break;
        case LinearKind::ErrorBased:
        case LinearKind::VarianceBased:
            if (weights.size() != n) {
                throw ConfigError(to_string(kind) + " combiner has " + std::to_string(weights.size()) +
                                  " weights for " + std::to_string(n) + " models");
            }
            break;
        default:
            break;
    }
}

std::vector<std::size_t> trimmed_models(std::span<const double> errors, double percent) {
    const std::size_t n = errors.size();
    const auto drop = static_cast<std::size_t>(std::floor(percent / 100.0 * static_cast<double>(n)));
    if (drop >= n) throw ConfigError("trimming would exclude every model");
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    // Worst first; ties keep the later model.
    std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return errors[a] > errors[b]; });
    std::vector<std::size_t> kept(order.begin() + static_cast<std::ptrdiff_t>(drop), order.end());
    std::sort(kept.begin(), kept.end());
    return kept;
}

std::vector<double> combine_pointwise(const ForecastSet& forecasts, const LinearCombinerSpec& spec) {
    const std::size_t n = forecasts.models();
    spec.validate(n);
    std::vector<std::size_t> kept;
    if (spec.kind == LinearKind::Trimmed) kept = trimmed_models(spec.model_errors, spec.trim_percent);

    std::vector<double> out(forecasts.rows());
    std::vector<double> row(n);
    for (std::size_t k = 0; k < forecasts.rows(); ++k) {
        for (std::size_t i = 0; i < n; ++i) row[i] = forecasts(k, i);
        double value = 0.0;
        switch (spec.kind) {
            case LinearKind::SimpleAverage:
                value = std::accumulate(row.begin(), row.end(), 0.0) / static_cast<double>(n);
                break;
            case LinearKind::Trimmed:
                for (std::size_t i : kept) value += row[i];
                value /= static_cast<double>(kept.size());
                break;
            case LinearKind::Winsorized: {
                std::sort(row.begin(), row.end());
                const std::size_t c = spec.winsor_count;
                for (std::size_t i = 0; i < n; ++i) {
                    if (i < c) value += row[c];
                    else if (i + c >= n) value += row[n - 1 - c];
                    else value += row[i];
                }
                value /= static_cast<double>(n);
                break;
            }
            case LinearKind::Median: {
                std::sort(row.begin(), row.end());
                value = n % 2 == 1 ? row[n / 2] : 0.5 * (row[n / 2 - 1] + row[n / 2]);
                break;
            }
            case LinearKind::ErrorBased:
            case LinearKind::VarianceBased:
                value = spec.kind == LinearKind::VarianceBased ? spec.intercept : 0.0;
                for (std::size_t i = 0; i < n; ++i) value += spec.weights[i] * row[i];
                break;
        }
        out[k] = value;
    }
    return out;
}

std::vector<double> error_based_weights(std::span<const ErrorReport> validation_reports, ErrorMetric metric) {
    if (validation_reports.empty()) throw ConfigError("error-based weights need at least one model");
    std::vector<double> inverse(validation_reports.size());
    for (std::size_t i = 0; i < validation_reports.size(); ++i) {
        const auto& r = validation_reports[i];
        double e = metric == ErrorMetric::Mape ? r.mape : metric == ErrorMetric::Mse ? r.mse : r.arv;
        if (e == 0.0) {
            throw DegenerateError("model " + std::to_string(i) +
                                  " has zero validation error; use it outright instead of weighting");
        }
        if (!(e > 0.0) || !std::isfinite(e)) {
            throw DomainError("validation error of model " + std::to_string(i) + " must be positive and finite");
        }
        inverse[i] = 1.0 / e;
    }
    const double total = std::accumulate(inverse.begin(), inverse.end(), 0.0);
    for (auto& w : inverse) w /= total;
    return inverse;
}

VarianceWeights variance_based_weights(const ForecastSet& forecasts, std::span<const double> actuals) {
    const auto rows = static_cast<Eigen::Index>(forecasts.rows());
    const auto n = static_cast<Eigen::Index>(forecasts.models());
    if (actuals.size() != forecasts.rows()) {
        throw SizeError("variance-based weights need one actual value per forecast row");
    }
    if (rows < n + 1) throw SizeError("variance-based weights need more rows than models");
    Eigen::MatrixXd x(rows, n + 1);
    x.col(0).setOnes();
    x.rightCols(n) = forecasts.matrix();
    Eigen::Map<const Eigen::VectorXd> y(actuals.data(), rows);

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-12);
    if (qr.rank() < n + 1) {
        throw SingularityError("forecast columns are collinear; variance-based weights are not unique");
    }
    Eigen::VectorXd beta = qr.solve(y);
    return VarianceWeights{beta(0), std::vector<double>(beta.data() + 1, beta.data() + beta.size())};
}

}  // namespace tsens::combine
