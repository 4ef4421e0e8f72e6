#include "fvol/experiments.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>
#include <string>

#include "fvol/parallel.hpp"

namespace fvol {

void SweepConfig::validate() const {
    if (harmonics.empty()) throw std::invalid_argument("SweepConfig: N_values is empty");
    for (std::size_t i = 0; i < harmonics.size(); ++i) {
        if (harmonics[i] < 1) throw std::invalid_argument("SweepConfig: N values must be positive");
        if (i > 0 && harmonics[i] <= harmonics[i - 1]) {
            throw std::invalid_argument("SweepConfig: N values must be strictly increasing");
        }
    }
    if (!(coupling.c > 0.0)) throw std::invalid_argument("SweepConfig: coupling c must be > 0");
    if (!(coupling.r > 0.0 && coupling.r < 0.5)) {
        throw std::invalid_argument("SweepConfig: coupling exponent r must lie in (0, 1/2)");
    }
    if (replicates < 30) {
        throw std::invalid_argument("SweepConfig: at least 30 replicates are required, got " +
                                    std::to_string(replicates));
    }
    if (jumps) jumps->validate();
}

SweepResult coefficient_error_sweep(const SweepConfig& config) {
    config.validate();
    const std::size_t rows = config.harmonics.size();
    std::vector<int> degrees(rows);
    int band = 0;
    int max_degree = 0;
    for (std::size_t k = 0; k < rows; ++k) {
        degrees[k] = config.coupling.degree(config.harmonics[k]);
        band = std::max(band, config.harmonics[k] + degrees[k]);
        max_degree = std::max(max_degree, degrees[k]);
    }

    SweepResult result;
    result.errors.assign(rows, std::vector<double>(static_cast<std::size_t>(config.replicates)));
    const PathConfig path_config{config.grid, config.model, config.jumps};

    parallel_for(static_cast<std::size_t>(config.replicates), [&](std::size_t rep) {
        const SamplePath path = simulate_path(path_config, config.seed, rep);
        const auto obs = ObservedIncrements::from_levels(path.times, path.price);
        const auto increments = increment_coefficients(obs, band);
        auto target = function_coefficients(path.times, path.variance, max_degree);
        if (config.jumps) target = target + jump_coefficients(path.jump_record, max_degree);
        for (std::size_t k = 0; k < rows; ++k) {
            const auto estimate = estimate_coefficients(increments, config.harmonics[k], degrees[k]);
            result.errors[k][rep] = estimate.sup_distance(target.truncated(degrees[k]));
        }
    });

    result.rows.resize(rows);
    const double n = static_cast<double>(config.replicates);
    for (std::size_t k = 0; k < rows; ++k) {
        const auto& e = result.errors[k];
        const double mean = std::accumulate(e.begin(), e.end(), 0.0) / n;
        double ss = 0.0;
        for (double x : e) ss += (x - mean) * (x - mean);
        result.rows[k] = {config.harmonics[k], degrees[k], mean, std::sqrt(ss / (n - 1.0))};
    }
    return result;
}

RateFit rate_regression(std::span<const double> harmonics, std::span<const double> errors) {
    if (harmonics.size() != errors.size()) throw std::invalid_argument("rate_regression: length mismatch");
    if (harmonics.size() < 4) throw std::invalid_argument("rate_regression: need at least 4 points");
    const std::size_t n = harmonics.size();
    std::vector<double> x(n), y(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (!(harmonics[i] > 0.0)) throw std::invalid_argument("rate_regression: N must be positive");
        if (!(errors[i] > 0.0)) {
            throw std::invalid_argument("rate_regression: errors must be positive, got " + std::to_string(errors[i]));
        }
        x[i] = std::log(harmonics[i]);
        y[i] = std::log(errors[i]);
    }
    const double mx = std::accumulate(x.begin(), x.end(), 0.0) / static_cast<double>(n);
    const double my = std::accumulate(y.begin(), y.end(), 0.0) / static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
        syy += (y[i] - my) * (y[i] - my);
    }
    if (sxx == 0.0) throw std::invalid_argument("rate_regression: N values must not all coincide");
    RateFit fit;
    fit.slope = sxy / sxx;
    fit.intercept = my - fit.slope * mx;
    double ss_res = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - (fit.intercept + fit.slope * x[i]);
        ss_res += r * r;
    }
    fit.r_squared = syy == 0.0 ? 1.0 : std::clamp(1.0 - ss_res / syy, 0.0, 1.0);
    return fit;
}

RateFit rate_regression(std::span<const SweepRow> rows) {
    std::vector<double> n, e;
    for (const auto& row : rows) {
        n.push_back(row.harmonics);
        e.push_back(row.mean_error);
    }
    return rate_regression(n, e);
}

double empirical_quantile(std::vector<double> values, double p) {
    if (values.empty()) throw std::invalid_argument("empirical_quantile: no values");
    if (!(p >= 0.0 && p <= 1.0)) throw std::invalid_argument("empirical_quantile: p must lie in [0, 1]");
    std::sort(values.begin(), values.end());
    const double h = p * static_cast<double>(values.size() - 1);
    const auto lo = static_cast<std::size_t>(std::floor(h));
    const std::size_t hi = std::min(lo + 1, values.size() - 1);
    return values[lo] + (h - static_cast<double>(lo)) * (values[hi] - values[lo]);
}

ThresholdSchedule default_threshold_schedule(const SweepResult& sweep, double exponent, double quantile) {
    if (sweep.rows.empty()) throw std::invalid_argument("default_threshold_schedule: empty sweep");
    const double anchor = empirical_quantile(sweep.errors.front(), quantile);
    const double n_min = sweep.rows.front().harmonics;
    return [anchor, n_min, exponent](int harmonics) {
        return anchor * std::pow(static_cast<double>(harmonics) / n_min, exponent);
    };
}

std::vector<EventRow> error_event_frequency(const SweepResult& sweep, const ThresholdSchedule& threshold) {
    if (!threshold) throw std::invalid_argument("error_event_frequency: missing threshold schedule");
    std::vector<EventRow> out;
    out.reserve(sweep.rows.size());
    for (std::size_t k = 0; k < sweep.rows.size(); ++k) {
        const int n = sweep.rows[k].harmonics;
        const double tau = threshold(n);
        if (!(tau >= 0.0)) throw std::invalid_argument("error_event_frequency: threshold must be >= 0");
        const auto& e = sweep.errors[k];
        const auto hits = std::count_if(e.begin(), e.end(), [tau](double x) { return x >= tau; });
        out.push_back({n, tau, static_cast<double>(hits) / static_cast<double>(e.size())});
    }
    return out;
}

std::vector<EventRow> error_event_frequency(const SweepConfig& config, const ThresholdSchedule& threshold) {
    return error_event_frequency(coefficient_error_sweep(config), threshold);
}

namespace {

double half_max_width(const CoefficientTable& coeffs, int degree, double center) {
    const double scale = kTwoPi / degree;
    const double peak = scale * fejer_polynomial(coeffs, degree, center);
    const double half = 0.5 * peak;
    const double step = kPi / (20.0 * degree);
    const auto reach = [&](double direction) {
        for (double d = step; d <= kPi; d += step) {
            if (scale * fejer_polynomial(coeffs, degree, center + direction * d) < half) return d;
        }
        return kPi;
    };
    return reach(-1.0) + reach(1.0);
}

}  // namespace

JumpRecoveryResult jump_recovery_experiment(const JumpRecoveryConfig& config, std::uint64_t seed) {
    if (config.degrees.empty()) throw std::invalid_argument("jump_recovery_experiment: no degrees");
    if (config.grid_points < 2) throw std::invalid_argument("jump_recovery_experiment: need >= 2 grid points");
    PathConfig path_config{Partition::regular(config.grid_points), VolatilityModel::sinusoidal_shift(config.sigma),
                           JumpModel{config.intensity, MarkLaw::unit, true}};
    const SamplePath path = simulate_path(path_config, seed, 0);
    const auto obs = ObservedIncrements::from_levels(path.times, path.price);
    const int harmonics = config.harmonics > 0 ? config.harmonics : std::max(1, static_cast<int>(obs.size() / 2));
    const int max_degree = *std::max_element(config.degrees.begin(), config.degrees.end());
    const auto increments = increment_coefficients(obs, harmonics + max_degree);
    const auto grid = linspace_grid(config.eval_points);

    JumpRecoveryResult result;
    result.jumps = path.jump_record;
    const auto events = path.jump_record.events();
    for (int degree : config.degrees) {
        EstimatorConfig est{harmonics, degree, true, grid};
        result.estimates.push_back(estimate_from_increments(increments, est));
        const auto& estimate = result.estimates.back();

        const auto coeffs = estimate_coefficients(increments, harmonics, degree);
        const double scale = kTwoPi / degree;
        JumpRecoverySummary summary;
        summary.degree = degree;
        for (const auto& e : events) summary.values_at_jumps.push_back(scale * fejer_polynomial(coeffs, degree, e.time));
        for (std::size_t k = 0; k < estimate.times.size(); ++k) {
            const double t = estimate.times[k];
            const bool far = std::all_of(events.begin(), events.end(),
                                         [&](const JumpEvent& e) { return std::abs(e.time - t) >= config.exclusion; });
            if (far) summary.off_jump_values.push_back(estimate.values[k]);
        }
        if (!summary.off_jump_values.empty()) {
            summary.max_off_jump = *std::max_element(summary.off_jump_values.begin(), summary.off_jump_values.end());
        }
        if (!events.empty()) {
            const auto largest = std::max_element(events.begin(), events.end(), [](const JumpEvent& a, const JumpEvent& b) {
                return std::abs(a.size) < std::abs(b.size);
            });
            summary.half_max_width = half_max_width(coeffs, degree, largest->time);
        }
        result.summaries.push_back(std::move(summary));
    }
    return result;
}

InversionSweepResult inversion_bound_sweep(std::span<const JumpRecord> jump_sets, std::span<const int> harmonics,
                                           std::span<const double> t_grid, double slack) {
    InversionSweepResult result;
    for (std::size_t s = 0; s < jump_sets.size(); ++s) {
        for (int n : harmonics) {
            for (double t : t_grid) {
                InversionRow row{s, n, t, fejer_inversion_bound_check(jump_sets[s], n, t), false};
                row.pass = row.check.holds(slack);
                result.all_pass = result.all_pass && row.pass;
                result.rows.push_back(row);
            }
        }
    }
    return result;
}

}  // namespace fvol
