#include "tsens/combine/forecast_set.hpp"

#include "tsens/core/errors.hpp"

#include <cmath>
#include <set>

namespace tsens::combine {

ForecastSet::ForecastSet(Eigen::MatrixXd values, std::vector<std::string> names, std::string window)
    : values_(std::move(values)), names_(std::move(names)), window_(std::move(window)) {
    if (values_.cols() < 2) throw SizeError("a forecast set needs at least two models");
    if (values_.rows() < 1) throw SizeError("a forecast set needs at least one time index");
    if (names_.size() != static_cast<std::size_t>(values_.cols())) {
        throw SizeError("forecast set has " + std::to_string(values_.cols()) + " columns but " +
                        std::to_string(names_.size()) + " model names");
    }
    std::set<std::string> seen;
    for (const auto& name : names_) {
        if (name.empty() || name.find_first_of(",= \t\r\n") != std::string::npos) {
            throw ConfigError("model name '" + name + "' must be nonempty without ',', '=' or whitespace");
        }
        if (!seen.insert(name).second) throw ConfigError("duplicate model name '" + name + "'");
    }
    if (!values_.allFinite()) throw DomainError("forecast set contains non-finite values");
}

ForecastSet ForecastSet::from_columns(const std::vector<std::vector<double>>& columns, std::vector<std::string> names,
                                      std::string window) {
    if (columns.empty()) throw SizeError("a forecast set needs at least two models");
    const std::size_t rows = columns.front().size();
    Eigen::MatrixXd m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(columns.size()));
    for (std::size_t c = 0; c < columns.size(); ++c) {
        if (columns[c].size() != rows) {
            throw SizeError("forecast column " + std::to_string(c) + " has " + std::to_string(columns[c].size()) +
                            " values, expected " + std::to_string(rows));
        }
        for (std::size_t r = 0; r < rows; ++r) {
            m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = columns[c][r];
        }
    }
    return ForecastSet(std::move(m), std::move(names), std::move(window));
}

std::vector<double> ForecastSet::column(std::size_t model) const {
    const auto c = values_.col(static_cast<Eigen::Index>(model));
    return {c.data(), c.data() + c.size()};
}

ForecastSet ForecastSet::permuted(std::span<const std::size_t> order) const {
    if (order.size() != models()) throw SizeError("permutation length must equal the model count");
    Eigen::MatrixXd m(values_.rows(), values_.cols());
    std::vector<std::string> names(order.size());
    for (std::size_t i = 0; i < order.size(); ++i) {
        if (order[i] >= models()) throw SizeError("permutation index out of range");
        m.col(static_cast<Eigen::Index>(i)) = values_.col(static_cast<Eigen::Index>(order[i]));
        names[i] = names_[order[i]];
    }
    return ForecastSet(std::move(m), std::move(names), window_);
}

}  // namespace tsens::combine
