#pragma once

#include <Eigen/Dense>

#include <cstddef>
#include <span>
#include <string>
#include <vector>

namespace tsens::combine {

/**
 * @brief Aligned forecasts of n named models over one target window.
 *
 * Row k holds every model's forecast for time index k; column i belongs to
 * model names()[i]. At least two models, all entries finite, unique names.
 */
class ForecastSet {
public:
    ForecastSet(Eigen::MatrixXd values, std::vector<std::string> names, std::string window = {});

    [[nodiscard]] static ForecastSet from_columns(const std::vector<std::vector<double>>& columns,
                                                  std::vector<std::string> names, std::string window = {});

    [[nodiscard]] std::size_t rows() const noexcept { return static_cast<std::size_t>(values_.rows()); }
    [[nodiscard]] std::size_t models() const noexcept { return static_cast<std::size_t>(values_.cols()); }
    [[nodiscard]] const Eigen::MatrixXd& matrix() const noexcept { return values_; }
    [[nodiscard]] double operator()(std::size_t row, std::size_t model) const {
        return values_(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(model));
    }
    [[nodiscard]] std::vector<double> column(std::size_t model) const;
    [[nodiscard]] const std::vector<std::string>& names() const noexcept { return names_; }
    [[nodiscard]] const std::string& window() const noexcept { return window_; }

    /// Columns reordered so that new column i is old column order[i].
    [[nodiscard]] ForecastSet permuted(std::span<const std::size_t> order) const;

private:
    Eigen::MatrixXd values_;
    std::vector<std::string> names_;
    std::string window_;
};

}  // namespace tsens::combine
