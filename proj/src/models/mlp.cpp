#include "tsens/models/mlp.hpp"

#include "tsens/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <sstream>

namespace tsens::models {

namespace {

Eigen::Index as_index(std::size_t n) { return static_cast<Eigen::Index>(n); }

Eigen::MatrixXd logistic(const Eigen::MatrixXd& z) {
    return z.unaryExpr([](double v) { return 1.0 / (1.0 + std::exp(-v)); });
}

}  // namespace

MlpNetwork::MlpNetwork(MlpLayout layout)
    : layout_(layout),
      w1_(Eigen::MatrixXd::Zero(as_index(layout.hidden), as_index(layout.inputs))),
      b1_(Eigen::VectorXd::Zero(as_index(layout.hidden))),
      w2_(Eigen::MatrixXd::Zero(as_index(layout.outputs), as_index(layout.hidden))),
      b2_(Eigen::VectorXd::Zero(as_index(layout.outputs))) {
    if (layout.inputs == 0 || layout.hidden == 0 || layout.outputs == 0) {
        throw ConfigError("MLP layout node counts must be positive");
    }
}

MlpNetwork MlpNetwork::random(MlpLayout layout, std::uint64_t seed) {
    MlpNetwork net(layout);
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> dist(-0.5, 0.5);
    std::vector<double> params(net.parameter_count());
    for (auto& p : params) p = dist(rng);
    net.set_parameters(params);
    return net;
}

std::size_t MlpNetwork::parameter_count() const noexcept {
    return layout_.hidden * (layout_.inputs + 1) + layout_.outputs * (layout_.hidden + 1);
}

std::vector<double> MlpNetwork::parameters() const {
    std::vector<double> out;
    out.reserve(parameter_count());
    for (Eigen::Index r = 0; r < w1_.rows(); ++r)
        for (Eigen::Index c = 0; c < w1_.cols(); ++c) out.push_back(w1_(r, c));
    for (Eigen::Index r = 0; r < b1_.size(); ++r) out.push_back(b1_(r));
    for (Eigen::Index r = 0; r < w2_.rows(); ++r)
        for (Eigen::Index c = 0; c < w2_.cols(); ++c) out.push_back(w2_(r, c));
    for (Eigen::Index r = 0; r < b2_.size(); ++r) out.push_back(b2_(r));
    return out;
}

void MlpNetwork::set_parameters(std::span<const double> params) {
    if (params.size() != parameter_count()) {
        throw SizeError("MLP expects " + std::to_string(parameter_count()) + " parameters, got " +
                        std::to_string(params.size()));
    }
    std::size_t k = 0;
    for (Eigen::Index r = 0; r < w1_.rows(); ++r)
        for (Eigen::Index c = 0; c < w1_.cols(); ++c) w1_(r, c) = params[k++];
    for (Eigen::Index r = 0; r < b1_.size(); ++r) b1_(r) = params[k++];
    for (Eigen::Index r = 0; r < w2_.rows(); ++r)
        for (Eigen::Index c = 0; c < w2_.cols(); ++c) w2_(r, c) = params[k++];
    for (Eigen::Index r = 0; r < b2_.size(); ++r) b2_(r) = params[k++];
}

Eigen::VectorXd MlpNetwork::forward(const Eigen::VectorXd& input) const {
    Eigen::VectorXd hidden = logistic(w1_ * input + b1_);
    return w2_ * hidden + b2_;
}

double MlpNetwork::sse(const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
                       std::vector<double>* gradient) const {
    Eigen::MatrixXd hidden = logistic((inputs * w1_.transpose()).rowwise() + b1_.transpose());
    Eigen::MatrixXd error = ((hidden * w2_.transpose()).rowwise() + b2_.transpose()) - targets;
    const double total = error.squaredNorm();
    if (gradient == nullptr) return total;

    Eigen::MatrixXd d_out = 2.0 * error;
    Eigen::MatrixXd g_w2 = d_out.transpose() * hidden;
    Eigen::VectorXd g_b2 = d_out.colwise().sum().transpose();
    Eigen::MatrixXd d_hidden =
        ((d_out * w2_).array() * hidden.array() * (1.0 - hidden.array())).matrix();
    Eigen::MatrixXd g_w1 = d_hidden.transpose() * inputs;
    Eigen::VectorXd g_b1 = d_hidden.colwise().sum().transpose();

    gradient->clear();
    gradient->reserve(parameter_count());
    for (Eigen::Index r = 0; r < g_w1.rows(); ++r)
        for (Eigen::Index c = 0; c < g_w1.cols(); ++c) gradient->push_back(g_w1(r, c));
    for (Eigen::Index r = 0; r < g_b1.size(); ++r) gradient->push_back(g_b1(r));
    for (Eigen::Index r = 0; r < g_w2.rows(); ++r)
        for (Eigen::Index c = 0; c < g_w2.cols(); ++c) gradient->push_back(g_w2(r, c));
    for (Eigen::Index r = 0; r < g_b2.size(); ++r) gradient->push_back(g_b2(r));
    return total;
}

RpropResult train_rprop(MlpNetwork& network, const Eigen::MatrixXd& inputs, const Eigen::MatrixXd& targets,
                        const TrainingConfig& cfg) {
    cfg.validate();
    const auto& rp = cfg.rprop;
    std::vector<double> params = network.parameters();
    std::vector<double> steps(params.size(), rp.initial_step);
    std::vector<double> previous(params.size(), 0.0);
    std::vector<double> grad;

    RpropResult result;
    std::vector<double> best = params;
    double best_sse = HUGE_VAL;
    double plateau_reference = HUGE_VAL;
    std::size_t stalled = 0;

    for (std::size_t epoch = 0; epoch < cfg.max_epochs; ++epoch) {
        double sse = network.sse(inputs, targets, &grad);
        if (epoch == 0) result.initial_sse = sse;
        if (!std::isfinite(sse)) break;
        if (sse < best_sse) {
            best_sse = sse;
            best = params;
        }
        if (best_sse < plateau_reference * (1.0 - cfg.plateau_tolerance)) {
            plateau_reference = best_sse;
            stalled = 0;
        } else if (++stalled >= cfg.plateau_epochs) {
            result.epochs = epoch;
            break;
        }

        for (std::size_t k = 0; k < params.size(); ++k) {
            double g = grad[k];
            double agreement = g * previous[k];
            if (agreement > 0.0) {
                steps[k] = std::min(steps[k] * rp.increase, rp.max_step);
            } else if (agreement < 0.0) {
                steps[k] = std::max(steps[k] * rp.decrease, rp.min_step);
                g = 0.0;
            }
            if (g > 0.0) params[k] -= steps[k];
            else if (g < 0.0) params[k] += steps[k];
            previous[k] = g;
        }
        network.set_parameters(params);
        result.epochs = epoch + 1;
    }

    double last = network.sse(inputs, targets);
    if (std::isfinite(last) && last < best_sse) {
        best_sse = last;
        best = params;
    }
    network.set_parameters(best);
    result.final_sse = best_sse;
    return result;
}

std::vector<double> MlpModel::predict_block(std::span<const double> history) const {
    const auto& layout = network.layout();
    if (history.size() < layout.inputs) {
        throw SizeError("MLP needs " + std::to_string(layout.inputs) + " past values, got " +
                        std::to_string(history.size()));
    }
    Eigen::VectorXd x(as_index(layout.inputs));
    const std::size_t offset = history.size() - layout.inputs;
    for (std::size_t i = 0; i < layout.inputs; ++i) x(as_index(i)) = scaler.scale(history[offset + i]);
    Eigen::VectorXd y = network.forward(x);
    std::vector<double> out(layout.outputs);
    for (std::size_t j = 0; j < layout.outputs; ++j) out[j] = scaler.unscale(y(as_index(j)));
    return out;
}

void make_windows(std::span<const double> values, std::size_t inputs, std::size_t outputs,
                  Eigen::MatrixXd& x, Eigen::MatrixXd& y) {
    if (values.size() < inputs + outputs) {
        throw SizeError("need at least " + std::to_string(inputs + outputs) + " values for one window, got " +
                        std::to_string(values.size()));
    }
    const std::size_t rows = values.size() - inputs - outputs + 1;
    x.resize(as_index(rows), as_index(inputs));
    y.resize(as_index(rows), as_index(outputs));
    for (std::size_t r = 0; r < rows; ++r) {
        for (std::size_t i = 0; i < inputs; ++i) x(as_index(r), as_index(i)) = values[r + i];
        for (std::size_t j = 0; j < outputs; ++j) y(as_index(r), as_index(j)) = values[r + inputs + j];
    }
}

MlpModel fit_mlp(const TimeSeries& train, MlpLayout layout, const TrainingConfig& cfg) {
    cfg.validate();
    if (train.size() <= layout.inputs + layout.outputs) {
        throw SizeError("MLP (" + std::to_string(layout.inputs) + "," + std::to_string(layout.hidden) + "," +
                        std::to_string(layout.outputs) + ") needs more than " +
                        std::to_string(layout.inputs + layout.outputs) + " training values, got " +
                        std::to_string(train.size()));
    }
    MlpModel model{MlpNetwork(layout), MinMaxScaler::fit(train.values()), {}};
    std::vector<double> scaled(train.size());
    for (std::size_t t = 0; t < train.size(); ++t) scaled[t] = model.scaler.scale(train[t]);

    Eigen::MatrixXd x, y;
    make_windows(scaled, layout.inputs, layout.outputs, x, y);

    bool first = true;
    for (std::size_t r = 0; r < cfg.restarts; ++r) {
        auto candidate = MlpNetwork::random(layout, cfg.seed + r);
        auto result = train_rprop(candidate, x, y, cfg);
        if (first || result.final_sse < model.training.final_sse) {
            model.network = std::move(candidate);
            model.training = result;
            first = false;
        }
    }
    return model;
}

std::string dump(const MlpModel& model) {
    std::ostringstream out;
    out.precision(17);
    const auto& l = model.network.layout();
    out << "model = mlp\n";
    out << "layout = " << l.inputs << ',' << l.hidden << ',' << l.outputs << '\n';
    out << "scaler.min = " << model.scaler.min << '\n';
    out << "scaler.max = " << model.scaler.max << '\n';
    out << "training.initial_sse = " << model.training.initial_sse << '\n';
    out << "training.final_sse = " << model.training.final_sse << '\n';
    out << "training.epochs = " << model.training.epochs << '\n';
    auto params = model.network.parameters();
    for (std::size_t k = 0; k < params.size(); ++k) out << "param." << k << " = " << params[k] << '\n';
    return out.str();
}

}  // namespace tsens::models
