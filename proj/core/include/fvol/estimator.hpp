#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "fvol/fourier_series.hpp"
#include "fvol/jump_record.hpp"

namespace fvol {

/**
 * Parameters of the spot estimator.
 *
 * `harmonics` is the Bohr cutoff N, `degree` the Fejer degree M. The
 * increment coefficients are needed on the band N + M.
 */
struct EstimatorConfig {
    int harmonics = 1;
    int degree = 1;
    bool rescale_jumps = false;
    std::vector<double> eval_grid;

    void validate() const;
    int increment_band() const { return harmonics + degree; }
};

enum class EstimateKind { volatility, quadratic_jumps };

const char* to_string(EstimateKind kind);

struct SpotEstimate {
    std::vector<double> times;
    std::vector<double> values;
    EstimatorConfig config;
    EstimateKind kind = EstimateKind::volatility;
};

/// min(floor(m / 2), 4096), floored at 1.
int default_harmonics(std::size_t observations);

/// floor(c * N^r), floored at 1.
int coupled_degree(int harmonics, double c = 1.0, double r = 0.4);

/**
 * Bohr-convolution estimates 2pi (F ⊛_N F)(q) for |q| <= Q, where F are the
 * increment coefficients on the band N + Q. The q = 0 entry is the real sum
 * (2pi / (2N+1)) sum_{|l|<=N} |F(l)|^2.
 */
CoefficientTable estimate_coefficients(const ObservedIncrements& obs, int harmonics, int q_max);

/// Same estimate from precomputed increment coefficients (band >= N + Q).
CoefficientTable estimate_coefficients(const CoefficientTable& increments, int harmonics, int q_max);

/// O(m^2) double sum (1/2pi) sum_{i,j} e^{-i q t_j} D~_N(t_i - t_j) dX_i dX_j.
Complex double_sum_oracle(const ObservedIncrements& obs, int harmonics, int q);

/// Fejer reconstruction of the spot volatility over config.eval_grid.
SpotEstimate estimate_spot_path(const ObservedIncrements& obs, const EstimatorConfig& config);

/// (2pi / M) times the Fejer reconstruction, which tends to the squared jumps.
SpotEstimate estimate_jump_squares(const ObservedIncrements& obs, const EstimatorConfig& config);

/// Reconstruction from precomputed increment coefficients; the kind follows
/// config.rescale_jumps.
SpotEstimate estimate_from_increments(const CoefficientTable& increments, const EstimatorConfig& config);

/// estimate_coefficients minus the left-Riemann coefficients of the true
/// variance samples. On jump paths the jump term is left in the residual.
CoefficientTable residual_diagnostic(const ObservedIncrements& obs, std::span<const double> true_times,
                                     std::span<const double> true_variance, int harmonics, int q_max);

struct InversionCheck {
    double error = 0.0;
    double bound = 0.0;
    bool holds(double slack = 1e-9) const { return error <= bound + slack; }
};

/**
 * Deterministic Fejer inversion of a jump function at t:
 * error = |(2pi/N) T_N[dJ^2](t) - dJ_t^2| and
 * bound = M_t(N^{-1/2}) + [J] pi^2 / N.
 */
InversionCheck fejer_inversion_bound_check(const JumpRecord& jumps, int harmonics, double t);

}  // namespace fvol
