#include "tsens/models/ar.hpp"

#include "tsens/core/errors.hpp"

#include <Eigen/Dense>

#include <cmath>
#include <sstream>

namespace tsens::models {

double ArModel::predict_next(std::span<const double> history) const {
    if (history.size() < order) {
        throw SizeError("AR(" + std::to_string(order) + ") needs " + std::to_string(order) +
                        " past values, got " + std::to_string(history.size()));
    }
    double y = intercept;
    const std::size_t n = history.size();
    for (std::size_t i = 0; i < order; ++i) y += coefficients[i] * history[n - 1 - i];
    return y;
}

std::vector<double> ArModel::residuals(std::span<const double> series) const {
    std::vector<double> out;
    if (series.size() <= order) return out;
    out.reserve(series.size() - order);
    for (std::size_t t = order; t < series.size(); ++t) {
        out.push_back(series[t] - predict_next(series.first(t)));
    }
    return out;
}

ArModel fit_ar(const TimeSeries& train, std::size_t p) {
    if (p == 0) throw ConfigError("AR order must be positive");
    const std::size_t n = train.size();
    if (n <= p + 1) {
        throw SizeError("AR(" + std::to_string(p) + ") needs more than " + std::to_string(p + 1) +
                        " training observations, got " + std::to_string(n));
    }
    const auto rows = static_cast<Eigen::Index>(n - p);
    const auto cols = static_cast<Eigen::Index>(p + 1);
    Eigen::MatrixXd x(rows, cols);
    Eigen::VectorXd y(rows);
    for (Eigen::Index r = 0; r < rows; ++r) {
        const std::size_t t = static_cast<std::size_t>(r) + p;
        x(r, 0) = 1.0;
        for (std::size_t i = 1; i <= p; ++i) x(r, static_cast<Eigen::Index>(i)) = train[t - i];
        y(r) = train[t];
    }

    Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
    qr.setThreshold(1e-12);
    if (rows < cols || qr.rank() < cols) {
        throw SingularityError("AR(" + std::to_string(p) + ") lagged design is rank deficient (rank " +
                               std::to_string(qr.rank()) + " of " + std::to_string(cols) + ")");
    }
    Eigen::VectorXd beta = qr.solve(y);

    ArModel model;
    model.order = p;
    model.intercept = beta(0);
    model.coefficients.assign(beta.data() + 1, beta.data() + beta.size());
    model.residual_variance = (y - x * beta).squaredNorm() / static_cast<double>(rows);
    for (double c : model.coefficients) {
        if (!std::isfinite(c)) throw SingularityError("AR fit produced non-finite coefficients");
    }
    return model;
}

std::string dump(const ArModel& model) {
    std::ostringstream out;
    out.precision(17);
    out << "model = ar\n";
    out << "order = " << model.order << '\n';
    out << "intercept = " << model.intercept << '\n';
    for (std::size_t i = 0; i < model.coefficients.size(); ++i) {
        out << "phi." << (i + 1) << " = " << model.coefficients[i] << '\n';
    }
    out << "residual_variance = " << model.residual_variance << '\n';
    return out.str();
}

}  // namespace tsens::models
