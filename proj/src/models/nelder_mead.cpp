#include "tsens/models/nelder_mead.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace tsens::models {

NelderMeadResult nelder_mead(const std::function<double(std::span<const double>)>& objective,
                             std::vector<double> start, const NelderMeadOptions& options) {
    const std::size_t n = start.size();
    std::size_t evals = 0;
    auto eval = [&](const std::vector<double>& x) {
        ++evals;
        double v = objective(x);
        return std::isnan(v) ? HUGE_VAL : v;
    };

    std::vector<std::vector<double>> simplex(n + 1, start);
    for (std::size_t i = 0; i < n; ++i) simplex[i + 1][i] += options.initial_step;
    std::vector<double> values(n + 1);
    for (std::size_t i = 0; i <= n; ++i) values[i] = eval(simplex[i]);

    std::vector<std::size_t> order(n + 1);
    bool converged = false;
    while (evals < options.max_evaluations) {
        std::iota(order.begin(), order.end(), 0);
        std::stable_sort(order.begin(), order.end(),
                         [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        const std::size_t best = order.front();
        const std::size_t worst = order.back();
        const std::size_t second_worst = order[n - 1];

        double spread = std::abs(values[worst] - values[best]);
        double size = 0.0;
        for (std::size_t i = 0; i <= n; ++i) {
            for (std::size_t k = 0; k < n; ++k) {
                size = std::max(size, std::abs(simplex[i][k] - simplex[best][k]));
            }
        }
        if (spread <= options.value_tolerance * (1.0 + std::abs(values[best])) &&
            size <= options.point_tolerance) {
            converged = true;
            break;
        }

        std::vector<double> centroid(n, 0.0);
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == worst) continue;
            for (std::size_t k = 0; k < n; ++k) centroid[k] += simplex[i][k] / static_cast<double>(n);
        }
        auto along = [&](double t) {
            std::vector<double> x(n);
            for (std::size_t k = 0; k < n; ++k) x[k] = centroid[k] + t * (simplex[worst][k] - centroid[k]);
            return x;
        };

        auto reflected = along(-1.0);
        double fr = eval(reflected);
        if (fr < values[best]) {
            auto expanded = along(-2.0);
            double fe = eval(expanded);
            if (fe < fr) {
                simplex[worst] = std::move(expanded);
                values[worst] = fe;
            } else {
                simplex[worst] = std::move(reflected);
                values[worst] = fr;
            }
            continue;
        }
        if (fr < values[second_worst]) {
            simplex[worst] = std::move(reflected);
            values[worst] = fr;
            continue;
        }
        bool outside = fr < values[worst];
        auto contracted = along(outside ? -0.5 : 0.5);
        double fc = eval(contracted);
        if (fc < (outside ? fr : values[worst])) {
            simplex[worst] = std::move(contracted);
            values[worst] = fc;
            continue;
        }
        for (std::size_t i = 0; i <= n; ++i) {
            if (i == best) continue;
            for (std::size_t k = 0; k < n; ++k) {
                simplex[i][k] = simplex[best][k] + 0.5 * (simplex[i][k] - simplex[best][k]);
            }
            values[i] = eval(simplex[i]);
        }
    }

    auto best = static_cast<std::size_t>(std::min_element(values.begin(), values.end()) - values.begin());
    return NelderMeadResult{simplex[best], values[best], evals, converged};
}

}  // namespace tsens::models
