#include "tsens/models/min_max_scaler.hpp"

#include <algorithm>

namespace tsens::models {

MinMaxScaler MinMaxScaler::fit(std::span<const double> values) {
    if (values.empty()) return {};
    auto [lo, hi] = std::minmax_element(values.begin(), values.end());
    MinMaxScaler s{*lo, *hi};
    if (!(s.max > s.min)) s.max = s.min + 1.0;
    return s;
}

}  // namespace tsens::models
