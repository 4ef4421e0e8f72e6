#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "doctest.h"

#include "fvol/experiments.hpp"

using namespace fvol;

TEST_SUITE("experiments") {

TEST_CASE("sweep configuration is validated") {
    SweepConfig config;
    config.harmonics = {8, 16};
    CHECK_NOTHROW(config.validate());
    config.replicates = 29;
    CHECK_THROWS(config.validate());
    config.replicates = 30;
    config.harmonics = {16, 8};
    CHECK_THROWS(config.validate());
    config.harmonics = {8, 16};
    config.coupling.r = 0.5;
    CHECK_THROWS(config.validate());
    config.coupling.r = 0.4;
    config.harmonics = {};
    CHECK_THROWS(config.validate());
}

TEST_CASE("zero volatility sweep has zero errors") {
    SweepConfig config;
    config.harmonics = {4, 8, 16, 32};
    config.grid = Partition::regular(256);
    config.model = VolatilityModel::constant(0.0);
    const auto sweep = coefficient_error_sweep(config);
    REQUIRE(sweep.rows.size() == 4);
    for (const auto& row : sweep.rows) {
        CHECK(row.mean_error == 0.0);
        CHECK(row.std_error == 0.0);
        CHECK(row.degree == coupled_degree(row.harmonics));
    }
}

TEST_CASE("rate regression") {
    const std::vector<double> n{16, 32, 64, 128, 256};
    std::vector<double> e;
    for (double x : n) e.push_back(1.0 / std::sqrt(x));
    auto fit = rate_regression(n, e);
    CHECK(fit.slope == doctest::Approx(-0.5).epsilon(1e-12));
    CHECK(fit.r_squared == doctest::Approx(1.0).epsilon(1e-12));
    e.clear();
    for (double x : n) e.push_back(3.0 * std::pow(x, -0.3));
    fit = rate_regression(n, e);
    CHECK(fit.slope == doctest::Approx(-0.3).epsilon(1e-12));
    CHECK(fit.intercept == doctest::Approx(std::log(3.0)).epsilon(1e-12));
    CHECK_THROWS(rate_regression(std::vector<double>{1, 2, 3}, std::vector<double>{1, 1, 1}));
    CHECK_THROWS(rate_regression(std::vector<double>{1, 2, 3, 4}, std::vector<double>{1, 0, 1, 1}));
}

TEST_CASE("empirical quantile") {
    CHECK(empirical_quantile({3.0, 1.0, 2.0}, 0.5) == 2.0);
    CHECK(empirical_quantile({0.0, 10.0}, 0.95) == doctest::Approx(9.5));
    CHECK_THROWS(empirical_quantile({}, 0.5));
    CHECK_THROWS(empirical_quantile({1.0}, 1.5));
}

TEST_CASE("constant volatility sweep: decreasing errors and event frequencies") {
    SweepConfig config;
    config.harmonics = {8, 16, 32, 64, 128, 256};
    config.grid = Partition::regular(16384);
    config.seed = 5;
    const auto sweep = coefficient_error_sweep(config);
    int decreasing = 0;
    for (std::size_t k = 1; k < sweep.rows.size(); ++k) decreasing += sweep.rows[k].mean_error < sweep.rows[k - 1].mean_error;
    CHECK(decreasing >= 4);
    CHECK(sweep.rows.back().mean_error < 0.5 * sweep.rows.front().mean_error);
    const auto fit = rate_regression(sweep.rows);
    CHECK(fit.slope < -0.25);

    const auto never = error_event_frequency(sweep, [](int) { return std::numeric_limits<double>::infinity(); });
    const auto always = error_event_frequency(sweep, [](int) { return 0.0; });
    for (std::size_t k = 0; k < never.size(); ++k) {
        CHECK(never[k].frequency == 0.0);
        CHECK(always[k].frequency == 1.0);
    }
    const auto events = error_event_frequency(sweep, default_threshold_schedule(sweep));
    int non_increasing = 0;
    for (std::size_t k = 1; k < events.size(); ++k) non_increasing += events[k].frequency <= events[k - 1].frequency;
    CHECK(non_increasing >= 4);
    CHECK_THROWS(error_event_frequency(sweep, ThresholdSchedule{}));
}

TEST_CASE("sweep with jumps measures against variance plus jump coefficients") {
    SweepConfig config;
    config.harmonics = {16, 64, 256, 1024};
    config.grid = Partition::regular(8192);
    config.model = VolatilityModel::sinusoidal_shift(0.5);
    config.jumps = JumpModel{2.0, MarkLaw::uniform, true};
    config.seed = 9;
    const auto sweep = coefficient_error_sweep(config);
    CHECK(sweep.rows.back().mean_error < sweep.rows.front().mean_error);
    CHECK(rate_regression(sweep.rows).slope < 0.0);
}

TEST_CASE("jump recovery on a reduced grid") {
    JumpRecoveryConfig config;
    config.grid_points = 20000;
    config.degrees = {10, 700};
    config.eval_points = 401;
    const auto result = jump_recovery_experiment(config, 3);
    REQUIRE(result.estimates.size() == 2);
    REQUIRE(result.summaries.size() == 2);
    CHECK(result.estimates[1].kind == EstimateKind::quadratic_jumps);
    CHECK(result.estimates[1].config.harmonics == 10000);
    REQUIRE_FALSE(result.jumps.empty());
    for (const auto& s : result.summaries) CHECK(s.values_at_jumps.size() == result.jumps.size());
    CHECK(result.summaries[0].half_max_width > result.summaries[1].half_max_width);
    for (double v : result.summaries[1].values_at_jumps) CHECK(std::abs(v - 1.0) < 0.35);
    CHECK_THROWS(jump_recovery_experiment(JumpRecoveryConfig{.grid_points = 1}, 1));
}

TEST_CASE("inversion bound sweep") {
    const std::vector<int> ns{8, 16, 32, 64, 128, 256, 512, 1024};
    const auto t_grid = linspace_grid(64);
    SUBCASE("empty record passes trivially") {
        const std::vector<JumpRecord> sets{JumpRecord()};
        const auto result = inversion_bound_sweep(sets, ns, t_grid);
        CHECK(result.all_pass);
        CHECK(result.rows.size() == ns.size() * 64);
    }
    SUBCASE("unit jump and two-jump record") {
        const std::vector<JumpRecord> sets{JumpRecord({{0.0, 1.0}}), JumpRecord({{-1.0, 0.5}, {0.7, -1.0}})};
        const auto result = inversion_bound_sweep(sets, ns, t_grid);
        CHECK(result.all_pass);
        for (const auto& row : result.rows) CHECK(row.pass);
    }
}

}  // TEST_SUITE
