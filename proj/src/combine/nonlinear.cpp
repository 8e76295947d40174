#include "tsens/combine/nonlinear.hpp"

#include "tsens/core/errors.hpp"

#include <charconv>
#include <cmath>
#include <map>
#include <sstream>

namespace tsens::combine {

namespace {

constexpr double kMinReciprocalCondition = 1e-13;

Eigen::Index idx(std::size_t i) { return static_cast<Eigen::Index>(i); }

// Cholesky solve of a symmetric positive definite block after symmetric
// diagonal equilibration, so the condition test sees collinearity rather
// than column scale.
class EquilibratedCholesky {
public:
    EquilibratedCholesky(const Eigen::MatrixXd& a, const std::string& block) {
        Eigen::VectorXd diag = a.diagonal();
        if ((diag.array() <= 0.0).any() || !diag.allFinite()) {
            throw SingularityError(block + " has a non-positive diagonal entry; " + kExistence);
        }
        scale_ = diag.cwiseSqrt().cwiseInverse();
        llt_.compute(scale_.asDiagonal() * a * scale_.asDiagonal());
        if (llt_.info() != Eigen::Success || !(llt_.rcond() >= kMinReciprocalCondition)) {
            throw SingularityError(block + " is singular to working precision; " + kExistence);
        }
    }

    Eigen::MatrixXd solve(const Eigen::MatrixXd& rhs) const {
        return scale_.asDiagonal() * llt_.solve(scale_.asDiagonal() * rhs);
    }

private:
    static constexpr const char* kExistence =
        "the optimal weights exist only when V = F'F and U - Z'V^-1 Z are both invertible";

    Eigen::VectorXd scale_;
    Eigen::LLT<Eigen::MatrixXd> llt_;
};

// The coupled system [V Z; Z' U] [w; theta] = [b; d] solved through the
// Schur complement of V.
class SchurBlockSolver {
public:
    SchurBlockSolver(const Eigen::MatrixXd& v, const Eigen::MatrixXd& z, const Eigen::MatrixXd& u, double ridge)
        : z_(z),
          v_inv_(regularized(v, ridge), "V = F'F"),
          v_inv_z_(v_inv_.solve(z)),
          s_inv_(regularized(u - z.transpose() * v_inv_z_, ridge), "the Schur complement U - Z'V^-1 Z") {}

    void solve(const Eigen::VectorXd& b, const Eigen::VectorXd& d, Eigen::VectorXd& w, Eigen::VectorXd& theta) const {
        Eigen::VectorXd v_inv_b = v_inv_.solve(b);
        theta = s_inv_.solve(d - z_.transpose() * v_inv_b);
        w = v_inv_.solve(b - z_ * theta);
    }

private:
    static Eigen::MatrixXd regularized(const Eigen::MatrixXd& a, double ridge) {
        if (ridge == 0.0) return a;
        return a + ridge * Eigen::MatrixXd::Identity(a.rows(), a.cols());
    }

    Eigen::MatrixXd z_;
    EquilibratedCholesky v_inv_;
    Eigen::MatrixXd v_inv_z_;
    EquilibratedCholesky s_inv_;
};

double divisor(const ColumnStats& s, Standardization mode) {
    return mode == Standardization::Variance ? s.variance : std::sqrt(s.variance);
}

void check_alignment(const NonlinearEnsembleWeights& weights, const ForecastSet& forecasts) {
    if (forecasts.names() != weights.model_names) {
        std::string got, want;
        for (const auto& n : forecasts.names()) got += (got.empty() ? "" : ",") + n;
        for (const auto& n : weights.model_names) want += (want.empty() ? "" : ",") + n;
        throw AlignmentError("forecast columns (" + got + ") do not match the fitted models (" + want + ")");
    }
}

std::string standardization_name(Standardization s) {
    return s == Standardization::Variance ? "variance" : "stddev";
}

}  // namespace

std::vector<ColumnStats> column_stats(const ForecastSet& forecasts) {
    std::vector<ColumnStats> stats(forecasts.models());
    const double n = static_cast<double>(forecasts.rows());
    for (std::size_t i = 0; i < forecasts.models(); ++i) {
        const auto col = forecasts.matrix().col(idx(i));
        const double mean = col.sum() / n;
        stats[i] = ColumnStats{mean, (col.array() - mean).square().sum() / n};
    }
    return stats;
}

std::vector<std::pair<std::size_t, std::size_t>> model_pairs(std::size_t n) {
    if (n == 3) return {{0, 1}, {1, 2}, {2, 0}};
    std::vector<std::pair<std::size_t, std::size_t>> pairs;
    for (std::size_t a = 0; a < n; ++a)
        for (std::size_t b = a + 1; b < n; ++b) pairs.emplace_back(a, b);
    return pairs;
}

DesignMatrices build_design_matrices(const ForecastSet& forecasts, std::span<const ColumnStats> stats,
                                     Standardization standardization) {
    const std::size_t n = forecasts.models();
    if (stats.size() != n) throw SizeError("one (mean, variance) pair is needed per model");
    for (std::size_t i = 0; i < n; ++i) {
        if (!(stats[i].variance > 0.0)) {
            throw DegenerateError("forecast column '" + forecasts.names()[i] +
                                  "' has zero variance; its cross terms are undefined");
        }
    }
    const auto rows = idx(forecasts.rows());
    DesignMatrices m;
    m.f.resize(rows, idx(n + 1));
    m.f.col(0).setOnes();
    m.f.rightCols(idx(n)) = forecasts.matrix();

    Eigen::MatrixXd v(rows, idx(n));
    for (std::size_t i = 0; i < n; ++i) {
        v.col(idx(i)) = (forecasts.matrix().col(idx(i)).array() - stats[i].mean) / divisor(stats[i], standardization);
    }
    const auto pairs = model_pairs(n);
    m.g.resize(rows, idx(pairs.size()));
    for (std::size_t j = 0; j < pairs.size(); ++j) {
        m.g.col(idx(j)) = v.col(idx(pairs[j].first)).cwiseProduct(v.col(idx(pairs[j].second)));
    }
    return m;
}

std::vector<double> NonlinearEnsembleWeights::coefficients() const {
    std::vector<double> out;
    out.reserve(1 + linear.size() + cross.size());
    out.push_back(intercept);
    out.insert(out.end(), linear.begin(), linear.end());
    out.insert(out.end(), cross.begin(), cross.end());
    return out;
}

NonlinearEnsembleWeights fit_nonlinear_ensemble(const ForecastSet& forecasts, std::span<const double> actuals,
                                                const NonlinearFitOptions& options) {
    const std::size_t n = forecasts.models();
    const auto pairs = model_pairs(n);
    const std::size_t unknowns = n + 1 + pairs.size();
    if (actuals.size() != forecasts.rows()) {
        throw SizeError("ensemble fit needs one actual value per forecast row");
    }
    if (forecasts.rows() < unknowns) {
        throw SizeError("ensemble of " + std::to_string(n) + " models has " + std::to_string(unknowns) +
                        " weights but only " + std::to_string(forecasts.rows()) + " fitting points");
    }
    const double ridge = options.ridge.value_or(0.0);
    if (ridge < 0.0) throw ConfigError("ridge must be nonnegative");

    NonlinearEnsembleWeights result;
    result.model_names = forecasts.names();
    result.pairs = pairs;
    result.stats = column_stats(forecasts);
    result.standardization = options.standardization;
    result.ridge_applied = ridge > 0.0;
    result.ridge = ridge;

    const auto design = build_design_matrices(forecasts, result.stats, options.standardization);
    const Eigen::MatrixXd& f = design.f;
    const Eigen::MatrixXd& g = design.g;
    Eigen::Map<const Eigen::VectorXd> y(actuals.data(), idx(actuals.size()));

    const SchurBlockSolver solver(f.transpose() * f, f.transpose() * g, g.transpose() * g, ridge);
    Eigen::VectorXd w, theta;
    solver.solve(f.transpose() * y, g.transpose() * y, w, theta);

    for (std::size_t step = 0; step < options.refinement_steps; ++step) {
        Eigen::VectorXd r = y - f * w - g * theta;
        Eigen::VectorXd rb = f.transpose() * r - ridge * w;
        Eigen::VectorXd rd = g.transpose() * r - ridge * theta;
        Eigen::VectorXd dw, dtheta;
        solver.solve(rb, rd, dw, dtheta);
        w += dw;
        theta += dtheta;
    }
    if (!w.allFinite() || !theta.allFinite()) {
        throw SingularityError("ensemble weight solve produced non-finite values");
    }

    result.intercept = w(0);
    result.linear.assign(w.data() + 1, w.data() + w.size());
    result.cross.assign(theta.data(), theta.data() + theta.size());

    const Eigen::VectorXd r = y - f * w - g * theta;
    Eigen::VectorXd normal(f.cols() + g.cols());
    normal << f.transpose() * r, g.transpose() * r;
    result.solver_residual = normal.cwiseAbs().maxCoeff();

    const auto fitted = predict_nonlinear(result, forecasts);
    double total = 0.0;
    for (std::size_t k = 0; k < actuals.size(); ++k) {
        const double e = actuals[k] - fitted[k];
        total += e * e;
    }
    result.validation_sse = total;
    return result;
}

std::vector<double> predict_nonlinear(const NonlinearEnsembleWeights& weights, const ForecastSet& forecasts,
                                      StatsMode stats_mode) {
    check_alignment(weights, forecasts);
    const auto stats = stats_mode == StatsMode::Frozen ? weights.stats : column_stats(forecasts);
    const std::size_t n = forecasts.models();
    for (std::size_t i = 0; i < n; ++i) {
        if (!(stats[i].variance > 0.0)) {
            throw DegenerateError("forecast column '" + forecasts.names()[i] + "' has zero variance");
        }
    }

    std::vector<double> out(forecasts.rows());
    std::vector<double> v(n);
    for (std::size_t k = 0; k < forecasts.rows(); ++k) {
        double value = weights.intercept;
        for (std::size_t i = 0; i < n; ++i) {
            const double yhat = forecasts(k, i);
            value += weights.linear[i] * yhat;
            v[i] = (yhat - stats[i].mean) / divisor(stats[i], weights.standardization);
        }
        for (std::size_t j = 0; j < weights.pairs.size(); ++j) {
            value += weights.cross[j] * v[weights.pairs[j].first] * v[weights.pairs[j].second];
        }
        out[k] = value;
    }
    return out;
}

std::vector<double> sse_gradient(const NonlinearEnsembleWeights& weights, const ForecastSet& forecasts,
                                 std::span<const double> actuals) {
    check_alignment(weights, forecasts);
    if (actuals.size() != forecasts.rows()) throw SizeError("one actual value is needed per forecast row");
    const auto design = build_design_matrices(forecasts, weights.stats, weights.standardization);
    const auto fitted = predict_nonlinear(weights, forecasts);
    Eigen::VectorXd r(idx(actuals.size()));
    for (std::size_t k = 0; k < actuals.size(); ++k) r(idx(k)) = actuals[k] - fitted[k];
    Eigen::VectorXd grad(design.f.cols() + design.g.cols());
    grad << -2.0 * (design.f.transpose() * r), -2.0 * (design.g.transpose() * r);
    return {grad.data(), grad.data() + grad.size()};
}

std::string dump(const NonlinearEnsembleWeights& weights) {
    std::ostringstream out;
    out.precision(17);
    std::string models;
    for (const auto& name : weights.model_names) models += (models.empty() ? "" : ",") + name;
    const auto& names = weights.model_names;
    out << "models = " << models << '\n';
    out << "standardization = " << standardization_name(weights.standardization) << '\n';
    out << "w0 = " << weights.intercept << '\n';
    for (std::size_t i = 0; i < names.size(); ++i) out << "w." << names[i] << " = " << weights.linear[i] << '\n';
    for (std::size_t j = 0; j < weights.pairs.size(); ++j) {
        out << "theta." << names[weights.pairs[j].first] << ':' << names[weights.pairs[j].second] << " = "
            << weights.cross[j] << '\n';
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << "stats." << names[i] << ".mean = " << weights.stats[i].mean << '\n';
        out << "stats." << names[i] << ".variance = " << weights.stats[i].variance << '\n';
    }
    out << "validation_sse = " << weights.validation_sse << '\n';
    out << "solver_residual = " << weights.solver_residual << '\n';
    out << "ridge_applied = " << (weights.ridge_applied ? "true" : "false") << '\n';
    out << "ridge = " << weights.ridge << '\n';
    return out.str();
}

NonlinearEnsembleWeights parse_weights(std::string_view text) {
    std::map<std::string, std::string, std::less<>> kv;
    std::size_t line_no = 0;
    while (!text.empty()) {
        ++line_no;
        auto nl = text.find('\n');
        std::string_view line = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        auto first = line.find_first_not_of(" \t\r");
        if (first == std::string_view::npos || line[first] == '#') continue;
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ParseError("weights line " + std::to_string(line_no) + " has no '='");
        }
        auto trim = [](std::string_view s) {
            auto b = s.find_first_not_of(" \t\r");
            auto e = s.find_last_not_of(" \t\r");
            return b == std::string_view::npos ? std::string{} : std::string(s.substr(b, e - b + 1));
        };
        kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
    }
    auto get = [&](const std::string& key) -> const std::string& {
        auto it = kv.find(key);
        if (it == kv.end()) throw ParseError("weights dump is missing '" + key + "'");
        return it->second;
    };
    auto number = [&](const std::string& key) {
        const auto& s = get(key);
        double v = 0.0;
        auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
        if (ec != std::errc{} || ptr != s.data() + s.size()) {
            throw ParseError("weights key '" + key + "' is not a number: " + s);
        }
        return v;
    };

    NonlinearEnsembleWeights w;
    std::stringstream names(get("models"));
    for (std::string name; std::getline(names, name, ',');) w.model_names.push_back(name);
    const auto& mode = get("standardization");
    if (mode != "variance" && mode != "stddev") throw ParseError("unknown standardization '" + mode + "'");
    w.standardization = mode == "variance" ? Standardization::Variance : Standardization::StdDev;
    w.pairs = model_pairs(w.model_names.size());
    w.intercept = number("w0");
    for (const auto& name : w.model_names) {
        w.linear.push_back(number("w." + name));
        w.stats.push_back({number("stats." + name + ".mean"), number("stats." + name + ".variance")});
    }
    for (const auto& [a, b] : w.pairs) {
        w.cross.push_back(number("theta." + w.model_names[a] + ":" + w.model_names[b]));
    }
    w.validation_sse = number("validation_sse");
    w.solver_residual = number("solver_residual");
    w.ridge_applied = get("ridge_applied") == "true";
    w.ridge = number("ridge");
    return w;
}

}  // namespace tsens::combine
