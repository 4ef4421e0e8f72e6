#include "fvol/estimator.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fvol/kernels.hpp"
#include "fvol/market_sim.hpp"
#include "fvol/partition.hpp"

namespace fvol {

void EstimatorConfig::validate() const {
    if (harmonics < 1) throw std::invalid_argument("EstimatorConfig: harmonics N must be >= 1");
    if (degree < 1) throw std::invalid_argument("EstimatorConfig: degree M must be >= 1");
    if (eval_grid.empty()) throw std::invalid_argument("EstimatorConfig: evaluation grid is empty");
    for (std::size_t i = 0; i < eval_grid.size(); ++i) {
        if (!(eval_grid[i] >= -kPi && eval_grid[i] <= kPi)) {
            throw std::invalid_argument("EstimatorConfig: evaluation time outside [-pi, pi]");
        }
        if (i > 0 && !(eval_grid[i - 1] < eval_grid[i])) {
            throw std::invalid_argument("EstimatorConfig: evaluation grid not strictly increasing");
        }
    }
}

const char* to_string(EstimateKind kind) {
    return kind == EstimateKind::volatility ? "volatility" : "quadratic_jumps";
}

int default_harmonics(std::size_t observations) {
    const std::size_t half = observations / 2;
    return static_cast<int>(std::clamp<std::size_t>(half, 1, 4096));
}

int coupled_degree(int harmonics, double c, double r) {
    if (harmonics < 1) throw std::invalid_argument("coupled_degree: N must be >= 1");
    if (!(c > 0.0) || !(r > 0.0)) throw std::invalid_argument("coupled_degree: need c > 0 and r > 0");
    const double m = std::floor(c * std::pow(static_cast<double>(harmonics), r) + 1e-12);
    return std::max(1, static_cast<int>(m));
}

CoefficientTable estimate_coefficients(const CoefficientTable& increments, int harmonics, int q_max) {
    if (harmonics < 1) throw std::invalid_argument("estimate_coefficients: N must be >= 1");
    if (q_max < 0) throw std::invalid_argument("estimate_coefficients: Q must be >= 0");
    std::vector<Complex> nonnegative(static_cast<std::size_t>(q_max) + 1);
    for (int q = 1; q <= q_max; ++q) {
        nonnegative[static_cast<std::size_t>(q)] = kTwoPi * bohr_partial(increments, increments, q, harmonics);
    }
    // validates the band for q = 0 as well
    (void)bohr_partial(increments, increments, 0, harmonics);
    double power = 0.0;
    for (int l = -harmonics; l <= harmonics; ++l) power += std::norm(increments[l]);
    nonnegative[0] = Complex(kTwoPi * power / (2 * harmonics + 1), 0.0);
    return CoefficientTable::from_nonnegative(std::move(nonnegative));
}

CoefficientTable estimate_coefficients(const ObservedIncrements& obs, int harmonics, int q_max) {
    if (harmonics < 1) throw std::invalid_argument("estimate_coefficients: N must be >= 1");
    if (q_max < 0) throw std::invalid_argument("estimate_coefficients: Q must be >= 0");
    return estimate_coefficients(increment_coefficients(obs, harmonics + q_max), harmonics, q_max);
}

Complex double_sum_oracle(const ObservedIncrements& obs, int harmonics, int q) {
    const KernelOrder order(harmonics);
    const auto t = obs.times();
    const auto dx = obs.increments();
    Complex sum = 0.0;
    for (std::size_t j = 0; j < t.size(); ++j) {
        double inner = 0.0;
        for (std::size_t i = 0; i < t.size(); ++i) inner += dirichlet_rescaled(order, t[i] - t[j]) * dx[i];
        sum += std::polar(inner * dx[j], -q * t[j]);
    }
    return sum / kTwoPi;
}

SpotEstimate estimate_from_increments(const CoefficientTable& increments, const EstimatorConfig& config) {
    config.validate();
    const auto coeffs = estimate_coefficients(increments, config.harmonics, config.degree);
    SpotEstimate out;
    out.times = config.eval_grid;
    out.values = fejer_polynomial(coeffs, config.degree, std::span<const double>(config.eval_grid));
    out.config = config;
    out.kind = config.rescale_jumps ? EstimateKind::quadratic_jumps : EstimateKind::volatility;
    if (config.rescale_jumps) {
        const double scale = kTwoPi / config.degree;
        for (auto& v : out.values) v *= scale;
    }
    return out;
}

SpotEstimate estimate_spot_path(const ObservedIncrements& obs, const EstimatorConfig& config) {
    config.validate();
    if (config.rescale_jumps) {
        throw std::invalid_argument("estimate_spot_path: rescale_jumps is set, use estimate_jump_squares");
    }
    return estimate_from_increments(increment_coefficients(obs, config.increment_band()), config);
}

SpotEstimate estimate_jump_squares(const ObservedIncrements& obs, const EstimatorConfig& config) {
    config.validate();
    if (!config.rescale_jumps) {
        throw std::invalid_argument("estimate_jump_squares: rescale_jumps must be set");
    }
    return estimate_from_increments(increment_coefficients(obs, config.increment_band()), config);
}

CoefficientTable residual_diagnostic(const ObservedIncrements& obs, std::span<const double> true_times,
                                     std::span<const double> true_variance, int harmonics, int q_max) {
    return estimate_coefficients(obs, harmonics, q_max) - function_coefficients(true_times, true_variance, q_max);
}

InversionCheck fejer_inversion_bound_check(const JumpRecord& jumps, int harmonics, double t) {
    if (harmonics < 1) throw std::invalid_argument("fejer_inversion_bound_check: N must be >= 1");
    if (!(t >= -kPi && t <= kPi)) throw std::invalid_argument("fejer_inversion_bound_check: t outside [-pi, pi]");
    InversionCheck check;
    if (jumps.empty()) return check;
    const auto coeffs = jump_coefficients(jumps, harmonics);
    const double rescaled = kTwoPi / harmonics * fejer_polynomial(coeffs, harmonics, t);
    check.error = std::abs(rescaled - jumps.squared_jump_at(t));
    const double delta = 1.0 / std::sqrt(static_cast<double>(harmonics));
    check.bound = local_jump_mass(jumps, t, delta) + jumps.quadratic_variation() * kPi * kPi / harmonics;
    return check;
}

}  // namespace fvol
