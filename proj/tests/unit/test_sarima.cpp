#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "tsens/core/csv.hpp"
#include "tsens/core/errors.hpp"
#include "tsens/models/sarima.hpp"

#include <cmath>
#include <filesystem>
#include <numeric>
#include <random>

using Catch::Matchers::WithinAbs;
using tsens::TimeSeries;
namespace mdl = tsens::models;

TEST_CASE("simulate then refit recovers (0.3, 0.5)") {
    auto y = tsens::testing::simulate_airline(240, 12, 0.3, 0.5, 1);
    auto m = mdl::fit_sarima(TimeSeries(y, "sim", 12), mdl::SarimaOrder::airline(12));
    CHECK_THAT(m.ma, WithinAbs(0.3, 0.1));
    CHECK_THAT(m.seasonal_ma, WithinAbs(0.5, 0.1));
    CHECK_FALSE(m.at_invertibility_boundary);
}

TEST_CASE("refits average out to the simulated coefficients") {
    // one path of length 240 holds only ~19 seasonal cycles, so single fits scatter
    double ma = 0.0, seasonal = 0.0;
    const int runs = 40;
    for (int seed = 1; seed <= runs; ++seed) {
        auto y = tsens::testing::simulate_airline(240, 12, 0.3, 0.5, static_cast<std::uint64_t>(seed));
        auto m = mdl::fit_sarima(TimeSeries(y, "sim", 12), mdl::SarimaOrder::airline(12));
        ma += m.ma / runs;
        seasonal += m.seasonal_ma / runs;
    }
    CHECK_THAT(ma, WithinAbs(0.3, 0.03));
    CHECK_THAT(seasonal, WithinAbs(0.5, 0.03));
}

TEST_CASE("pure seasonal random walk refits near zero") {
    auto y = tsens::testing::simulate_airline(240, 12, 0.0, 0.0, 17);
    auto m = mdl::fit_sarima(TimeSeries(y, "rw", 12), mdl::SarimaOrder::airline(12));
    CHECK_THAT(m.ma, WithinAbs(0.0, 0.1));
    CHECK_THAT(m.seasonal_ma, WithinAbs(0.0, 0.1));
}

TEST_CASE("fitted coefficients minimize the conditional sum of squares locally") {
    auto y = tsens::testing::simulate_airline(200, 4, -0.4, 0.6, 8);
    auto m = mdl::fit_sarima(TimeSeries(y, "q", 4), mdl::SarimaOrder::airline(4));
    TimeSeries series(y);
    std::vector<double> w;
    for (std::size_t t = 5; t < y.size(); ++t) w.push_back(y[t] - y[t - 1] - y[t - 4] + y[t - 5]);
    double best = mdl::sarima_css(w, 4, m.ma, m.seasonal_ma);
    for (double da : {-1e-3, 0.0, 1e-3})
        for (double db : {-1e-3, 0.0, 1e-3}) CHECK(mdl::sarima_css(w, 4, m.ma + da, m.seasonal_ma + db) >= best - 1e-9);
    CHECK_THAT(m.innovation_variance, WithinAbs(best / static_cast<double>(w.size()), 1e-12));
}

TEST_CASE("over-differenced white noise stays invertible and the boundary flag follows the margin") {
    std::mt19937_64 rng(3);
    std::normal_distribution<double> z;
    std::vector<double> y(240);
    for (auto& v : y) v = z(rng);
    auto m = mdl::fit_sarima(TimeSeries(y, "wn", 12), mdl::SarimaOrder::airline(12));
    CHECK(std::fabs(m.ma) < 1.0);
    CHECK(std::fabs(m.seasonal_ma) < 1.0);
    CHECK(m.ma < -0.5);
    CHECK(m.seasonal_ma < -0.5);
    bool near = std::fabs(m.ma) > 1.0 - 1e-3 || std::fabs(m.seasonal_ma) > 1.0 - 1e-3;
    CHECK(m.at_invertibility_boundary == near);
}

TEST_CASE("airline series fits with near-zero innovation mean") {
    auto raw = tsens::read_series_csv(std::filesystem::path(TSENS_DATA_DIR) / "airline.csv");
    TimeSeries train(std::vector<double>(raw.begin(), raw.begin() + 120), "airline", 12);
    auto m = mdl::fit_sarima(train, mdl::SarimaOrder::airline(12));
    auto e = m.innovations(train.data());
    REQUIRE(e.size() == 120 - 13);
    double mean = std::accumulate(e.begin(), e.end(), 0.0) / static_cast<double>(e.size());
    double sd = std::sqrt(m.innovation_variance);
    CHECK(std::fabs(mean) < 0.2 * sd);
    CHECK(std::fabs(m.ma) < 1.0);
    CHECK(std::fabs(m.seasonal_ma) < 1.0);
}

TEST_CASE("zero coefficients forecast by the seasonal naive recursion") {
    mdl::SarimaModel m;
    m.order = mdl::SarimaOrder::airline(4);
    std::vector<double> h{5, 1, 4, 2, 8, 3, 6, 7};
    // y_{t+1} = y_t + y_{t+1-s} - y_{t-s}
    CHECK_THAT(m.predict_next(h), WithinAbs(7.0 + 8.0 - 2.0, 1e-12));
}

TEST_CASE("one-step forecast uses the last innovations") {
    mdl::SarimaModel m;
    m.order = mdl::SarimaOrder::airline(2);
    m.ma = 0.5;
    m.seasonal_ma = -0.2;
    std::vector<double> h{1, 4, 2, 7, 3, 9, 6};
    std::vector<double> w;
    for (std::size_t t = 3; t < h.size(); ++t) w.push_back(h[t] - h[t - 1] - h[t - 2] + h[t - 3]);
    std::vector<double> e(w.size());
    for (std::size_t t = 0; t < w.size(); ++t) {
        e[t] = w[t] - (t >= 1 ? 0.5 * e[t - 1] : 0.0) - (t >= 2 ? -0.2 * e[t - 2] : 0.0) -
               (t >= 3 ? -0.1 * e[t - 3] : 0.0);
    }
    const std::size_t n = e.size();
    double w_next = 0.5 * e[n - 1] - 0.2 * e[n - 2] - 0.1 * e[n - 3];
    double want = h[6] + h[5] - h[4] + w_next;
    CHECK_THAT(m.predict_next(h), WithinAbs(want, 1e-12));
    CHECK(m.innovations(h) == e);
}

TEST_CASE("SARIMA errors") {
    std::vector<double> y(26, 1.0);
    for (std::size_t i = 0; i < y.size(); ++i) y[i] = static_cast<double>(i % 5);
    CHECK_THROWS_AS(mdl::fit_sarima(TimeSeries(y), mdl::SarimaOrder::airline(12)), tsens::SizeError);
    mdl::SarimaOrder bad = mdl::SarimaOrder::airline(12);
    bad.p = 1;
    CHECK_THROWS_AS(mdl::fit_sarima(TimeSeries(std::vector<double>(100, 1.0)), bad), tsens::ConfigError);
    mdl::SarimaModel m;
    CHECK_THROWS_AS(m.predict_next(std::vector<double>(5, 1.0)), tsens::SizeError);
}
