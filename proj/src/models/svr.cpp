#include "tsens/models/svr.hpp"

#include "tsens/core/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace tsens::models {

namespace {

constexpr double kTau = 1e-12;

// Working state for the 2l-variable form of the dual:
//   min 0.5 a'Qa + p'a   s.t.  y'a = 0,  0 <= a <= C
// with a = [alpha; alpha*], y = [+1..; -1..], Q_ij = y_i y_j K(i mod l, j mod l),
// p_i = eps - z_i (first half) and eps + z_i (second half).
class DualSolver {
public:
    DualSolver(const Eigen::MatrixXd& kernel, std::span<const double> targets, const SvrHyper& hyper)
        : kernel_(kernel), l_(targets.size()), c_(hyper.c), alpha_(2 * l_, 0.0), grad_(2 * l_), sign_(2 * l_) {
        for (std::size_t i = 0; i < l_; ++i) {
            sign_[i] = 1;
            sign_[i + l_] = -1;
            grad_[i] = hyper.epsilon - targets[i];
            grad_[i + l_] = hyper.epsilon + targets[i];
        }
    }

    std::size_t run(double tolerance, std::size_t max_iterations) {
        for (std::size_t it = 0; it < max_iterations; ++it) {
            std::size_t i = 0, j = 0;
            if (!select(tolerance, i, j)) return it;
            update(i, j);
        }
        throw OptimizationError("SVR dual solver hit its cap of " + std::to_string(max_iterations) +
                                " iterations before reaching KKT tolerance " + std::to_string(tolerance));
    }

    std::vector<double> coefficients() const {
        std::vector<double> out(l_);
        for (std::size_t i = 0; i < l_; ++i) out[i] = alpha_[i] - alpha_[i + l_];
        return out;
    }

    // Decision function offset: bias = -rho.
    double bias() const {
        double ub = std::numeric_limits<double>::infinity();
        double lb = -ub;
        double free_sum = 0.0;
        std::size_t free_count = 0;
        for (std::size_t t = 0; t < 2 * l_; ++t) {
            double yg = sign_[t] * grad_[t];
            if (at_upper(t)) {
                if (sign_[t] < 0) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else if (at_lower(t)) {
                if (sign_[t] > 0) ub = std::min(ub, yg);
                else lb = std::max(lb, yg);
            } else {
                free_sum += yg;
                ++free_count;
            }
        }
        double rho = free_count > 0 ? free_sum / static_cast<double>(free_count) : (ub + lb) / 2.0;
        return -rho;
    }

private:
    double q(std::size_t a, std::size_t b) const {
        return sign_[a] * sign_[b] * kernel_(static_cast<Eigen::Index>(a % l_), static_cast<Eigen::Index>(b % l_));
    }
    double qd(std::size_t a) const {
        auto k = static_cast<Eigen::Index>(a % l_);
        return kernel_(k, k);
    }
    bool at_upper(std::size_t t) const { return alpha_[t] >= c_; }
    bool at_lower(std::size_t t) const { return alpha_[t] <= 0.0; }

    // Maximal violating index i, then j by the second-order gain.
    bool select(double tolerance, std::size_t& out_i, std::size_t& out_j) const {
        double gmax = -std::numeric_limits<double>::infinity();
        std::size_t i = 2 * l_;
        for (std::size_t t = 0; t < 2 * l_; ++t) {
            if (sign_[t] > 0) {
                if (!at_upper(t) && -grad_[t] >= gmax) {
                    gmax = -grad_[t];
                    i = t;
                }
            } else if (!at_lower(t) && grad_[t] >= gmax) {
                gmax = grad_[t];
                i = t;
            }
        }
        double gmax2 = -std::numeric_limits<double>::infinity();
        double best_gain = std::numeric_limits<double>::infinity();
        std::size_t j = 2 * l_;
        for (std::size_t t = 0; t < 2 * l_; ++t) {
            if (sign_[t] > 0) {
                if (at_lower(t)) continue;
                double diff = gmax + grad_[t];
                gmax2 = std::max(gmax2, grad_[t]);
                if (diff > 0.0 && i < 2 * l_) {
                    double quad = qd(i) + qd(t) - 2.0 * sign_[i] * q(i, t);
                    double gain = -(diff * diff) / (quad > 0.0 ? quad : kTau);
                    if (gain <= best_gain) {
                        best_gain = gain;
                        j = t;
                    }
                }
            } else {
                if (at_upper(t)) continue;
                double diff = gmax - grad_[t];
                gmax2 = std::max(gmax2, -grad_[t]);
                if (diff > 0.0 && i < 2 * l_) {
                    double quad = qd(i) + qd(t) + 2.0 * sign_[i] * q(i, t);
                    double gain = -(diff * diff) / (quad > 0.0 ? quad : kTau);
                    if (gain <= best_gain) {
                        best_gain = gain;
                        j = t;
                    }
                }
            }
        }
        if (gmax + gmax2 < tolerance || i == 2 * l_ || j == 2 * l_) return false;
        out_i = i;
        out_j = j;
        return true;
    }

    void update(std::size_t i, std::size_t j) {
        const double old_i = alpha_[i];
        const double old_j = alpha_[j];
        const double qij = q(i, j);
        if (sign_[i] != sign_[j]) {
            double quad = qd(i) + qd(j) + 2.0 * qij;
            if (quad <= 0.0) quad = kTau;
            double delta = (-grad_[i] - grad_[j]) / quad;
            double diff = alpha_[i] - alpha_[j];
            alpha_[i] += delta;
            alpha_[j] += delta;
            if (diff > 0.0) {
                if (alpha_[j] < 0.0) {
                    alpha_[j] = 0.0;
                    alpha_[i] = diff;
                }
            } else if (alpha_[i] < 0.0) {
                alpha_[i] = 0.0;
                alpha_[j] = -diff;
            }
            if (diff > 0.0) {
                if (alpha_[i] > c_) {
                    alpha_[i] = c_;
                    alpha_[j] = c_ - diff;
                }
            } else if (alpha_[j] > c_) {
                alpha_[j] = c_;
                alpha_[i] = c_ + diff;
            }
        } else {
            double quad = qd(i) + qd(j) - 2.0 * qij;
            if (quad <= 0.0) quad = kTau;
            double delta = (grad_[i] - grad_[j]) / quad;
            double sum = alpha_[i] + alpha_[j];
            alpha_[i] -= delta;
            alpha_[j] += delta;
            if (sum > c_) {
                if (alpha_[i] > c_) {
                    alpha_[i] = c_;
                    alpha_[j] = sum - c_;
                }
            } else if (alpha_[j] < 0.0) {
                alpha_[j] = 0.0;
                alpha_[i] = sum;
            }
            if (sum > c_) {
                if (alpha_[j] > c_) {
                    alpha_[j] = c_;
                    alpha_[i] = sum - c_;
                }
            } else if (alpha_[i] < 0.0) {
                alpha_[i] = 0.0;
                alpha_[j] = sum;
            }
        }
        const double di = alpha_[i] - old_i;
        const double dj = alpha_[j] - old_j;
        for (std::size_t t = 0; t < 2 * l_; ++t) grad_[t] += q(t, i) * di + q(t, j) * dj;
    }

    const Eigen::MatrixXd& kernel_;
    std::size_t l_;
    double c_;
    std::vector<double> alpha_;
    std::vector<double> grad_;
    std::vector<int> sign_;
};

void check_hyper(const SvrHyper& h) {
    if (!(h.c > 0.0) || !(h.sigma > 0.0) || !(h.epsilon >= 0.0)) {
        throw ConfigError("SVR needs C > 0, sigma > 0 and epsilon >= 0");
    }
}

}  // namespace

double rbf_kernel(std::span<const double> a, std::span<const double> b, double sigma) {
    double d2 = 0.0;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double d = a[k] - b[k];
        d2 += d * d;
    }
    return std::exp(-d2 / (2.0 * sigma * sigma));
}

SvrDualSolution solve_svr_dual(const Eigen::MatrixXd& kernel, std::span<const double> targets,
                               const SvrHyper& hyper, const SvrSolverOptions& options) {
    check_hyper(hyper);
    if (targets.empty() || kernel.rows() != kernel.cols() ||
        static_cast<std::size_t>(kernel.rows()) != targets.size()) {
        throw SizeError("SVR kernel matrix must be square and match the target count");
    }
    DualSolver solver(kernel, targets, hyper);
    SvrDualSolution out;
    out.iterations = solver.run(options.tolerance, options.iterations_per_sample * targets.size());
    out.coefficients = solver.coefficients();
    out.bias = solver.bias();
    return out;
}

double SvrModel::decision(std::span<const double> x) const {
    double y = bias;
    for (std::size_t i = 0; i < support_vectors.size(); ++i) {
        y += dual_coefficients[i] * rbf_kernel(x, support_vectors[i], hyper.sigma);
    }
    return y;
}

double SvrModel::predict_next(std::span<const double> history) const {
    if (history.size() < lag) {
        throw SizeError("SVR needs " + std::to_string(lag) + " past values, got " + std::to_string(history.size()));
    }
    std::vector<double> x(lag);
    const std::size_t offset = history.size() - lag;
    for (std::size_t i = 0; i < lag; ++i) x[i] = scaler.scale(history[offset + i]);
    return scaler.unscale(decision(x));
}

SvrModel train_svr(const std::vector<std::vector<double>>& inputs, std::span<const double> targets,
                   const SvrHyper& hyper, const SvrSolverOptions& options) {
    check_hyper(hyper);
    if (inputs.size() != targets.size() || inputs.empty()) {
        throw SizeError("SVR needs one target per input row");
    }
    const auto n = static_cast<Eigen::Index>(inputs.size());
    Eigen::MatrixXd kernel(n, n);
    for (Eigen::Index a = 0; a < n; ++a) {
        kernel(a, a) = 1.0;
        for (Eigen::Index b = 0; b < a; ++b) {
            double k = rbf_kernel(inputs[static_cast<std::size_t>(a)], inputs[static_cast<std::size_t>(b)],
                                  hyper.sigma);
            kernel(a, b) = k;
            kernel(b, a) = k;
        }
    }
    auto solution = solve_svr_dual(kernel, targets, hyper, options);

    SvrModel model;
    model.hyper = hyper;
    model.bias = solution.bias;
    model.iterations = solution.iterations;
    model.lag = inputs.front().size();
    for (std::size_t i = 0; i < inputs.size(); ++i) {
        if (solution.coefficients[i] != 0.0) {
            model.support_vectors.push_back(inputs[i]);
            model.dual_coefficients.push_back(solution.coefficients[i]);
        }
    }
    return model;
}

SvrModel fit_svr(const TimeSeries& train, const SvrHyper& hyper, const TrainingConfig& cfg,
                 const SvrSolverOptions& options) {
    cfg.validate();
    const std::size_t lag = cfg.lag;
    if (train.size() <= lag) {
        throw SizeError("SVR with lag " + std::to_string(lag) + " needs more than " + std::to_string(lag) +
                        " training values, got " + std::to_string(train.size()));
    }
    auto scaler = MinMaxScaler::fit(train.values());
    std::vector<double> scaled(train.size());
    for (std::size_t t = 0; t < train.size(); ++t) scaled[t] = scaler.scale(train[t]);

    std::vector<std::vector<double>> inputs;
    std::vector<double> targets;
    for (std::size_t t = lag; t < scaled.size(); ++t) {
        inputs.emplace_back(scaled.begin() + static_cast<std::ptrdiff_t>(t - lag),
                            scaled.begin() + static_cast<std::ptrdiff_t>(t));
        targets.push_back(scaled[t]);
    }
    auto model = train_svr(inputs, targets, hyper, options);
    model.scaler = scaler;
    return model;
}

std::string dump(const SvrModel& model) {
    std::ostringstream out;
    out.precision(17);
    out << "model = svr\n";
    out << "C = " << model.hyper.c << '\n';
    out << "sigma = " << model.hyper.sigma << '\n';
    out << "epsilon = " << model.hyper.epsilon << '\n';
    out << "lag = " << model.lag << '\n';
    out << "bias = " << model.bias << '\n';
    out << "scaler.min = " << model.scaler.min << '\n';
    out << "scaler.max = " << model.scaler.max << '\n';
    out << "support_vectors = " << model.support_vectors.size() << '\n';
    for (std::size_t i = 0; i < model.dual_coefficients.size(); ++i) {
        out << "coef." << i << " = " << model.dual_coefficients[i] << '\n';
    }
    return out.str();
}

}  // namespace tsens::models
