#include "catch_amalgamated.hpp"

#include "oracles.hpp"
#include "tsens/core/csv.hpp"
#include "tsens/core/errors.hpp"
#include "tsens/core/transforms.hpp"
#include "tsens/models/ar.hpp"

#include <cmath>
#include <filesystem>
#include <numeric>

using Catch::Matchers::WithinAbs;
using tsens::TimeSeries;
namespace mdl = tsens::models;

TEST_CASE("noiseless y_t = 0.5 y_{t-1} is recovered") {
    std::vector<double> y{1.0};
    for (int t = 1; t < 50; ++t) y.push_back(0.5 * y.back());
    auto m = mdl::fit_ar(TimeSeries(y), 1);
    REQUIRE(m.coefficients.size() == 1);
    CHECK_THAT(m.coefficients[0], WithinAbs(0.5, 1e-8));
    CHECK_THAT(m.intercept, WithinAbs(0.0, 1e-8));
}

TEST_CASE("noiseless AR(2) with intercept") {
    std::vector<double> y{1.0, 2.0};
    for (int t = 2; t < 80; ++t) y.push_back(3.0 + 0.6 * y[t - 1] - 0.3 * y[t - 2]);
    auto m = mdl::fit_ar(TimeSeries(y), 2);
    CHECK_THAT(m.intercept, WithinAbs(3.0, 1e-6));
    CHECK_THAT(m.coefficients[0], WithinAbs(0.6, 1e-6));
    CHECK_THAT(m.coefficients[1], WithinAbs(-0.3, 1e-6));
}

TEST_CASE("residuals are orthogonal to every regressor") {
    for (std::uint64_t seed = 1; seed <= 10; ++seed) {
        auto y = tsens::testing::simulate_ar2(300, 0.5, 0.4, 0.2, seed);
        for (std::size_t p : {1u, 3u, 6u}) {
            auto m = mdl::fit_ar(TimeSeries(y), p);
            auto r = m.residuals(y);
            REQUIRE(r.size() == y.size() - p);
            const double n = static_cast<double>(y.size());
            double ones = std::accumulate(r.begin(), r.end(), 0.0);
            REQUIRE(std::fabs(ones) <= 1e-6 * n);
            for (std::size_t lag = 1; lag <= p; ++lag) {
                double dot = 0.0;
                for (std::size_t k = 0; k < r.size(); ++k) dot += y[p + k - lag] * r[k];
                REQUIRE(std::fabs(dot) <= 1e-6 * n);
            }
        }
    }
}

TEST_CASE("AR(2) OLS agrees with a gradient-free minimizer of the residual SSE") {
    auto y = tsens::testing::simulate_ar2(200, 1.0, 0.5, -0.25, 99);
    auto m = mdl::fit_ar(TimeSeries(y), 2);

    auto sse = [&](std::span<const long double> b) {
        long double s = 0.0L;
        for (std::size_t t = 2; t < y.size(); ++t) {
            long double e = y[t] - b[0] - b[1] * y[t - 1] - b[2] * y[t - 2];
            s += e * e;
        }
        return s;
    };
    std::vector<double> start{0.0, 0.0, 0.0};
    auto brute = tsens::testing::powell_minimize(sse, start);
    CHECK_THAT(m.intercept, WithinAbs(brute[0], 1e-6));
    CHECK_THAT(m.coefficients[0], WithinAbs(brute[1], 1e-6));
    CHECK_THAT(m.coefficients[1], WithinAbs(brute[2], 1e-6));
}

TEST_CASE("predict_next applies the recursion to the tail") {
    mdl::ArModel m;
    m.order = 2;
    m.intercept = 1.0;
    m.coefficients = {0.5, 0.25};
    std::vector<double> h{9.0, 4.0, 8.0};
    CHECK(m.predict_next(h) == 1.0 + 0.5 * 8.0 + 0.25 * 4.0);
    CHECK_THROWS_AS(m.predict_next(std::vector<double>{1.0}), tsens::SizeError);
}

TEST_CASE("lynx AR(12) fits with near-zero residual mean") {
    auto raw = tsens::read_series_csv(std::filesystem::path(TSENS_DATA_DIR) / "lynx.csv");
    auto lynx = tsens::apply_transform(TimeSeries(raw, "lynx"), tsens::TransformKind::log10());
    auto m = mdl::fit_ar(lynx.slice(0, 86), 12);
    auto r = m.residuals(lynx.slice(0, 86).data());
    double mean = std::accumulate(r.begin(), r.end(), 0.0) / static_cast<double>(r.size());
    CHECK(std::fabs(mean) < 1e-10);
    CHECK(m.coefficients.size() == 12);
    CHECK(m.residual_variance > 0.0);
}

TEST_CASE("AR errors") {
    CHECK_THROWS_AS(mdl::fit_ar(TimeSeries({1, 2, 3}), 2), tsens::SizeError);
    CHECK_THROWS_AS(mdl::fit_ar(TimeSeries(std::vector<double>(30, 4.0)), 2), tsens::SingularityError);
}

TEST_CASE("AR dump lists every coefficient") {
    auto y = tsens::testing::simulate_ar2(100, 0.0, 0.3, 0.1, 5);
    auto text = mdl::dump(mdl::fit_ar(TimeSeries(y), 3));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("order = 3"));
    CHECK_THAT(text, Catch::Matchers::ContainsSubstring("phi.3"));
}
