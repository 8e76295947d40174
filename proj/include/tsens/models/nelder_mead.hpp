#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

namespace tsens::models {

struct NelderMeadOptions {
    double initial_step = 0.1;
    /// Stop once the simplex values span less than this (absolute + relative).
    double value_tolerance = 1e-12;
    /// ...and the simplex vertices lie within this distance of the best one.
    double point_tolerance = 1e-9;
    std::size_t max_evaluations = 20000;
};

struct NelderMeadResult {
    std::vector<double> point;
    double value = 0.0;
    std::size_t evaluations = 0;
    bool converged = false;
};

/// Derivative-free simplex minimization (standard reflection/expansion/
/// contraction/shrink coefficients 1, 2, 0.5, 0.5).
[[nodiscard]] NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                                           std::vector<double> start, const NelderMeadOptions& options = {});

}  // namespace tsens::models
