#include "catch_amalgamated.hpp"

#include "tsens/core/errors.hpp"
#include "tsens/models/svr.hpp"

#include <cmath>
#include <numeric>
#include <random>

using Catch::Matchers::WithinAbs;
using tsens::TimeSeries;
namespace mdl = tsens::models;

namespace {

struct Problem {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    Eigen::MatrixXd kernel;
};

Problem noisy_sine(std::uint64_t seed, std::size_t n, double sigma) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    std::normal_distribution<double> z(0.0, 0.1);
    Problem p;
    for (std::size_t i = 0; i < n; ++i) {
        double a = u(rng), b = u(rng);
        p.x.push_back({a, b});
        p.y.push_back(std::sin(4.0 * a) + b * b + z(rng));
    }
    p.kernel.resize(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(n));
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            p.kernel(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = mdl::rbf_kernel(p.x[i], p.x[j], sigma);
    return p;
}

double expansion(const Problem& p, const mdl::SvrDualSolution& s, std::size_t row) {
    double f = s.bias;
    for (std::size_t j = 0; j < p.y.size(); ++j)
        f += s.coefficients[j] * p.kernel(static_cast<Eigen::Index>(row), static_cast<Eigen::Index>(j));
    return f;
}

}  // namespace

TEST_CASE("rbf kernel values") {
    std::vector<double> a{0.0, 0.0}, b{1.0, 1.0};
    CHECK(mdl::rbf_kernel(a, a, 0.7) == 1.0);
    CHECK_THAT(mdl::rbf_kernel(a, b, 1.0), WithinAbs(std::exp(-1.0), 1e-15));
    CHECK_THAT(mdl::rbf_kernel(a, b, 2.0), WithinAbs(std::exp(-2.0 / 8.0), 1e-15));
}

TEST_CASE("y = x on 20 points stays inside the tube") {
    std::vector<std::vector<double>> x;
    std::vector<double> y;
    for (int i = 0; i < 20; ++i) {
        double v = i / 19.0;
        x.push_back({v});
        y.push_back(v);
    }
    mdl::SvrHyper hyper{1000.0, 1.0, 0.01};
    auto m = mdl::train_svr(x, y, hyper);
    for (std::size_t i = 0; i < x.size(); ++i) CHECK(std::fabs(m.decision(x[i]) - y[i]) <= 0.01 + 1e-3);
}

TEST_CASE("KKT conditions of the dual solution") {
    for (std::uint64_t seed : {1u, 2u, 3u, 4u}) {
        auto p = noisy_sine(seed, 60, 0.5);
        for (mdl::SvrHyper hyper : {mdl::SvrHyper{1.0, 0.5, 0.05}, mdl::SvrHyper{10.0, 0.5, 0.1},
                                   mdl::SvrHyper{0.1, 0.5, 0.0}}) {
            mdl::SvrSolverOptions options;
            auto s = mdl::solve_svr_dual(p.kernel, p.y, hyper, options);
            REQUIRE(s.coefficients.size() == p.y.size());
            double total = std::accumulate(s.coefficients.begin(), s.coefficients.end(), 0.0);
            CHECK(std::fabs(total) < 1e-9 * hyper.c * 60);
            const double slack = 2.0 * options.tolerance;
            for (std::size_t i = 0; i < p.y.size(); ++i) {
                const double c = s.coefficients[i];
                const double r = p.y[i] - expansion(p, s, i);
                REQUIRE(std::fabs(c) <= hyper.c * (1.0 + 1e-12));
                if (std::fabs(r) < hyper.epsilon - slack) REQUIRE(c == 0.0);
                if (c > 0.0) REQUIRE(r >= hyper.epsilon - slack);
                if (c < 0.0) REQUIRE(r <= -hyper.epsilon + slack);
                if (std::fabs(c) > 0.0 && std::fabs(c) < hyper.c) REQUIRE(std::fabs(std::fabs(r) - hyper.epsilon) <= slack);
                if (c == 0.0) REQUIRE(std::fabs(r) <= hyper.epsilon + slack);
            }
        }
    }
}

TEST_CASE("retained vectors reproduce the kernel expansion exactly") {
    auto p = noisy_sine(8, 40, 0.5);
    mdl::SvrHyper hyper{5.0, 0.5, 0.05};
    auto m = mdl::train_svr(p.x, p.y, hyper);
    auto s = mdl::solve_svr_dual(p.kernel, p.y, hyper);
    std::size_t nonzero = 0;
    for (double c : s.coefficients) nonzero += c != 0.0;
    CHECK(m.support_vectors.size() == nonzero);
    CHECK(m.support_vectors.size() < p.y.size());
    for (double c : m.dual_coefficients) {
        CHECK(c != 0.0);
        CHECK(std::fabs(c) <= hyper.c);
    }
    for (std::size_t i = 0; i < p.x.size(); ++i) {
        double f = m.bias;
        for (std::size_t j = 0; j < m.support_vectors.size(); ++j)
            f += m.dual_coefficients[j] * mdl::rbf_kernel(p.x[i], m.support_vectors[j], hyper.sigma);
        REQUIRE(m.decision(p.x[i]) == f);
    }
}

TEST_CASE("hand-built model with two support vectors") {
    mdl::SvrModel m;
    m.support_vectors = {{0.2, 0.9}, {1.0, -0.5}};
    m.dual_coefficients = {1.0, -1.0};
    m.bias = 0.0;
    m.hyper = {1.0, 1.0, 0.1};
    double dist2 = 0.8 * 0.8 + 1.4 * 1.4;
    CHECK_THAT(m.decision(m.support_vectors[0]), WithinAbs(1.0 - std::exp(-dist2 / 2.0), 1e-15));
}

TEST_CASE("fit_svr scales lag windows and unscales forecasts") {
    std::vector<double> v;
    for (int k = 0; k < 80; ++k) v.push_back(50.0 + 10.0 * std::sin(k * 0.5));
    mdl::TrainingConfig cfg;
    cfg.lag = 4;
    auto m = mdl::fit_svr(TimeSeries(v), {10.0, 1.0, 0.01}, cfg);
    CHECK(m.lag == 4);
    CHECK_THAT(m.scaler.min, WithinAbs(40.0, 0.2));
    double next = m.predict_next(v);
    CHECK_THAT(next, WithinAbs(50.0 + 10.0 * std::sin(80 * 0.5), 0.5));
    CHECK_THROWS_AS(m.predict_next(std::vector<double>{1.0, 2.0}), tsens::SizeError);
}

TEST_CASE("SVR errors") {
    mdl::TrainingConfig cfg;
    cfg.lag = 5;
    CHECK_THROWS_AS(mdl::fit_svr(TimeSeries({1, 2, 3, 4, 5}), {1.0, 1.0, 0.1}, cfg), tsens::SizeError);
    CHECK_THROWS_AS(mdl::fit_svr(TimeSeries(std::vector<double>(20, 1.0)), {0.0, 1.0, 0.1}, cfg), tsens::ConfigError);
    CHECK_THROWS_AS(mdl::fit_svr(TimeSeries(std::vector<double>(20, 1.0)), {1.0, 1.0, -0.1}, cfg), tsens::ConfigError);
    auto p = noisy_sine(2, 30, 0.5);
    mdl::SvrSolverOptions tight;
    tight.iterations_per_sample = 0;
    CHECK_THROWS_AS(mdl::solve_svr_dual(p.kernel, p.y, {100.0, 0.5, 0.0}, tight), tsens::OptimizationError);
}
