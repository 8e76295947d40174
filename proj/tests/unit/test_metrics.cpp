#include "catch_amalgamated.hpp"

#include "tsens/core/errors.hpp"
#include "tsens/core/metrics.hpp"

#include <cmath>
#include <random>
#include <vector>

using Catch::Matchers::WithinAbs;
using Catch::Matchers::WithinRel;
using tsens::ArvDenominator;

TEST_CASE("hand example: actual (1,2), forecast (2,2)") {
    std::vector<double> a{1, 2}, f{2, 2};
    auto r = tsens::evaluate(a, f);
    CHECK_THAT(r.mape, WithinAbs(50.0, 1e-12));
    CHECK_THAT(r.mse, WithinAbs(0.5, 1e-12));
    CHECK_THAT(r.arv, WithinAbs(2.0, 1e-12));
}

TEST_CASE("hand example: actual (10), forecast (8)") {
    std::vector<double> a{10}, f{8};
    auto r = tsens::evaluate(a, f);
    CHECK_THAT(r.mape, WithinAbs(20.0, 1e-12));
    CHECK_THAT(r.mse, WithinAbs(4.0, 1e-12));
    CHECK_THAT(r.arv, WithinAbs(1.0, 1e-12));
}

TEST_CASE("conventional ARV denominator") {
    std::vector<double> a{1, 2, 3}, f{1, 2, 4};
    // sum (y - mu)^2 = 2, sum (y - yhat)^2 = 1, N cancels
    CHECK_THAT(tsens::arv(a, f, ArvDenominator::ActualDeviation), WithinAbs(0.5, 1e-15));
    // sum (mu - yhat)^2 = 1 + 0 + 4
    CHECK_THAT(tsens::arv(a, f), WithinAbs(0.2, 1e-15));
}

TEST_CASE("perfect forecast gives exact zeros") {
    std::vector<double> a{3.5, 1.25, 7.0, 2.0};
    auto r = tsens::evaluate(a, a);
    CHECK(r.mape == 0.0);
    CHECK(r.mse == 0.0);
    CHECK(r.arv == 0.0);
}

TEST_CASE("metric errors") {
    std::vector<double> a{1, 2}, b{1};
    CHECK_THROWS_AS(tsens::evaluate(a, b), tsens::SizeError);
    CHECK_THROWS_AS(tsens::evaluate(std::vector<double>{}, std::vector<double>{}), tsens::SizeError);
    CHECK_THROWS_AS(tsens::mape(std::vector<double>{0, 1}, std::vector<double>{1, 1}), tsens::DomainError);
    // forecast constant at the actual mean: printed ARV denominator is zero
    CHECK_THROWS_AS(tsens::arv(std::vector<double>{1, 3}, std::vector<double>{2, 2}), tsens::DomainError);
    CHECK_THROWS_AS(tsens::arv(std::vector<double>{2, 2}, std::vector<double>{1, 3}, ArvDenominator::ActualDeviation),
                    tsens::DomainError);
}

TEST_CASE("scaling leaves MAPE and ARV unchanged and MSE grows by c^2") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> u(1.0, 10.0), c_dist(0.1, 50.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(15), f(15);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = u(rng);
            f[i] = u(rng);
        }
        double c = c_dist(rng);
        std::vector<double> ac(a), fc(f);
        for (auto& x : ac) x *= c;
        for (auto& x : fc) x *= c;
        auto r = tsens::evaluate(a, f);
        auto rc = tsens::evaluate(ac, fc);
        REQUIRE_THAT(rc.mape, WithinRel(r.mape, 1e-12));
        REQUIRE_THAT(rc.arv, WithinRel(r.arv, 1e-12));
        REQUIRE_THAT(rc.mse, WithinRel(r.mse * c * c, 1e-12));
    }
}

TEST_CASE("translation leaves MSE unchanged") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> u(1.0, 10.0);
    for (int trial = 0; trial < 100; ++trial) {
        std::vector<double> a(9), f(9);
        for (std::size_t i = 0; i < a.size(); ++i) {
            a[i] = u(rng);
            f[i] = u(rng);
        }
        std::vector<double> as(a), fs(f);
        for (auto& x : as) x += 100.0;
        for (auto& x : fs) x += 100.0;
        REQUIRE_THAT(tsens::mse(as, fs), WithinRel(tsens::mse(a, f), 1e-9));
        REQUIRE_THAT(tsens::sse(as, fs), WithinRel(tsens::mse(a, f) * 9.0, 1e-9));
    }
}

TEST_CASE("zero metrics only for a perfect forecast") {
    std::vector<double> a{1, 2, 3}, f{1, 2, 3.000001};
    auto r = tsens::evaluate(a, f);
    CHECK(r.mape > 0.0);
    CHECK(r.mse > 0.0);
    CHECK(r.arv > 0.0);
}
