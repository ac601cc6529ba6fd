#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <vector>

#include "icct/errors.hpp"
#include "icct/fit.hpp"
#include "icct/md/rng.hpp"

using namespace icct;

TEST_CASE("noiseless line is recovered exactly") {
    std::vector<double> t, v;
    for (int i = 0; i <= 30; ++i) {
        t.push_back(i * 1.0);
        v.push_back(3200.0 * t.back());
    }
    const LinearFit fit = fit_linear(t, v);
    CHECK(fit.slope == doctest::Approx(3200.0).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
    CHECK(fit.slope_err == doctest::Approx(0.0).scale(1.0).epsilon(1e-9));
}

TEST_CASE("seeded loading-rate series recovers 3200 ions/s") {
    md::Rng rng(2024);
    std::vector<double> t, v;
    for (int i = 0; i <= 60; ++i) {
        t.push_back(0.5 * i);  // 30 s span
        v.push_back(3200.0 * t.back() + 500.0 * rng.normal());
    }
    const LinearFit fit = fit_linear(t, v);
    CHECK(fit.slope_err > 0.0);
    CHECK(std::abs(fit.slope - 3200.0) < 3.0 * fit.slope_err);
}

TEST_CASE("pzt calibration recovers 82 MHz/V") {
    md::Rng rng(7);
    std::vector<double> volts, detuning;
    for (int i = 0; i <= 12; ++i) {
        volts.push_back(i * 10.0);
        detuning.push_back(82e6 * volts.back() + 40e6 * rng.normal());
    }
    const LinearFit fit = fit_linear(volts, detuning);
    CHECK(std::abs(fit.slope - 82e6) < 2e6);

    // zero-slope data
    std::vector<double> flat(volts.size(), 5.0);
    const LinearFit zero = fit_linear(volts, flat);
    CHECK(zero.slope == 0.0);
}

TEST_CASE("fit preconditions") {
    std::vector<double> two_t = {0.0, 1.0};
    std::vector<double> two_v = {0.0, 3200.0};
    CHECK_THROWS_AS(fit_linear(two_t, two_v), InfeasibleError);

    std::vector<double> same_x = {2.0, 2.0, 2.0};
    std::vector<double> y = {1.0, 2.0, 3.0};
    CHECK_THROWS_WITH_AS(fit_linear(same_x, y), "fit: degenerate abscissa", InfeasibleError);
}

TEST_CASE("weighted fit discounts noisy points") {
    std::vector<double> x = {0.0, 1.0, 2.0, 3.0, 4.0};
    std::vector<double> y = {1.0, 6.0, 11.0, 16.0, 500.0};  // last point is junk
    std::vector<double> sigma = {0.1, 0.1, 0.1, 0.1, 1e6};
    const LinearFit fit = fit_linear_weighted(x, y, sigma);
    CHECK(fit.slope == doctest::Approx(5.0).epsilon(1e-6));
    CHECK(fit.intercept == doctest::Approx(1.0).epsilon(1e-5));

    std::vector<double> bad_sigma = {0.1, 0.1, 0.1, 0.1, 0.0};
    CHECK_THROWS_AS(fit_linear_weighted(x, y, bad_sigma), ConfigError);
}

TEST_CASE("series csv parsing") {
    const auto series = parse_time_series_csv("t_s,value\n0,1.5\n1,2.5\n2,3.5\n");
    REQUIRE(series.t.size() == 3);
    CHECK_FALSE(series.has_sigma());
    CHECK(series.value[2] == 3.5);

    const auto with_sigma =
        parse_time_series_csv("t_s,value,sigma\n0,1,0.1\n1,2,0.2\n");
    CHECK(with_sigma.has_sigma());
    CHECK(with_sigma.sigma[1] == 0.2);

    CHECK_THROWS_AS(parse_time_series_csv("t_s,value\n1,1\n1,2\n"), ConfigError);
    CHECK_THROWS_AS(parse_time_series_csv("t_s,value\n0,abc\n"), ConfigError);
    CHECK_THROWS_AS(parse_time_series_csv("t_s,value\n0,1,9\n"), ConfigError);
    CHECK_THROWS_AS(parse_time_series_csv("t,v,s,extra\n"), ConfigError);
}
