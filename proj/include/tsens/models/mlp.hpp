#pragma once

#include "tsens/core/time_series.hpp"
#include "tsens/models/min_max_scaler.hpp"
#include "tsens/models/training_config.hpp"

#include <Eigen/Dense>

#include <cstddef>
#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace tsens::models {

/// (inputs, hidden, outputs) node counts of a single-hidden-layer perceptron.
struct MlpLayout {
    std::size_t inputs = 1;
    std::size_t hidden = 1;
    std::size_t outputs = 1;

    friend bool operator==(const MlpLayout&, const MlpLayout&) = default;
};

/**
 * @brief Single-hidden-layer perceptron with logistic hidden units and
 * identity outputs.
 *
 * Parameters flatten in the order hidden weights (row-major, hidden x inputs),
 * hidden biases, output weights (row-major, outputs x hidden), output biases.
 */
class MlpNetwork {
public:
    explicit MlpNetwork(MlpLayout layout);

    /// Uniform weights in [-0.5, 0.5] drawn from a seeded generator.
    [[nodiscard]] static MlpNetwork random(MlpLayout layout, std::uint64_t seed);

    [[nodiscard]] const MlpLayout& layout() const noexcept { return layout_; }
    [[nodiscard]] std::size_t parameter_count() const noexcept;
    [[nodiscard]] std::vector<double> parameters() const;
    void set_parameters(std::span<const double> params);

    [[nodiscard]] Eigen::VectorXd forward(const Eigen::VectorXd& input) const;

    /// Sum of squared output errors over all rows of `inputs`/`targets`; fills
    /// `gradient` (flattened as above) when non-null.
    [[nodiscard]] double sse(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
                             std::vector<double>* gradient = nullptr) const;

    const Eigen::MatrixXd& hidden_weights() const noexcept { return w1_; }
    const Eigen::VectorXd& hidden_bias() const noexcept { return b1_; }
    const Eigen::MatrixXd& output_weights() const noexcept { return w2_; }
    const Eigen::VectorXd& output_bias() const noexcept { return b2_; }

private:
    MlpLayout layout_;
    Eigen::MatrixXd w1_;
    Eigen::VectorXd b1_;
    Eigen::MatrixXd w2_;
    Eigen::VectorXd b2_;
};

struct RpropResult {
    double initial_sse = 0.0;
    double final_sse = 0.0;
    std::size_t epochs = 0;
};

/// Full-batch iRprop- on the SSE; keeps the best parameters seen.
RpropResult train_rprop(MlpNetwork& network, const Eigen::MatrixXd& inputs,
                        const Eigen::MatrixXd& targets, const TrainingConfig& cfg);

struct MlpModel {
    MlpNetwork network{MlpLayout{}};
    MinMaxScaler scaler;
    RpropResult training;

    /// Next `outputs` values following `history`, in the units of `history`.
    [[nodiscard]] std::vector<double> predict_block(std::span<const double> history) const;
};

/// Sliding windows (p lagged inputs -> q outputs) over `values`, one row per window.
void make_windows(std::span<const double> values, std::size_t inputs, std::size_t outputs,
                  Eigen::MatrixXd& x, Eigen::MatrixXd& y);

/// Trains on min-max scaled windows of `train`. Deterministic given cfg.seed.
/// Throws SizeError if train.size() <= p + q.
[[nodiscard]] MlpModel fit_mlp(const TimeSeries& train, MlpLayout layout, const TrainingConfig& cfg);

[[nodiscard]] std::string dump(const MlpModel& model);

}  // namespace tsens::models
