#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

namespace tsens::models {

/// Resilient propagation step-size adaptation.
struct RpropConfig {
    double initial_step = 0.1;
    double min_step = 1e-6;
    double max_step = 50.0;
    double increase = 1.2;
    double decrease = 0.5;
};

struct SvrHyper {
    double c = 1.0;        ///< box constraint
    double sigma = 1.0;    ///< RBF bandwidth
    double epsilon = 0.0;  ///< tube half-width

    friend bool operator==(const SvrHyper&, const SvrHyper&) = default;
};

struct TrainingConfig {
    std::uint64_t seed = 42;
    /// Lagged inputs per window for SVR (the MLP takes its input count from the layout).
    std::size_t lag = 12;
    RpropConfig rprop;
    std::size_t max_epochs = 1000;
    /// Training stops when the best SSE improves by less than this relative
    /// amount over `plateau_epochs` consecutive epochs.
    double plateau_tolerance = 1e-9;
    std::size_t plateau_epochs = 100;
    /// Independent random initializations; the lowest training SSE wins.
    std::size_t restarts = 1;
    std::vector<SvrHyper> svr_grid{{1.0, 1.0, 0.01}};
    std::vector<std::size_t> hidden_grid;
    std::size_t cv_folds = 3;

    /// Throws ConfigError when a count is zero or the RProp factors are not
    /// ordered increase > 1 > decrease > 0.
    void validate() const;
};

}  // namespace tsens::models
