#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <vector>

#include "fvol/estimator.hpp"
#include "fvol/jump_record.hpp"
#include "fvol/market_sim.hpp"
#include "fvol/partition.hpp"

namespace fvol {

/// Fejer degree as a function of the Bohr cutoff: M(N) = floor(c N^r).
struct Coupling {
    double c = 1.0;
    double r = 0.4;

    int degree(int harmonics) const { return coupled_degree(harmonics, c, r); }
};

/// Monte Carlo convergence sweep over increasing Bohr cutoffs.
struct SweepConfig {
    std::vector<int> harmonics;
    Coupling coupling;
    Partition grid = Partition::regular(1024);
    VolatilityModel model = VolatilityModel::constant(1.0);
    std::optional<JumpModel> jumps;
    int replicates = 30;
    std::uint64_t seed = 1;

    /// Throws unless N values increase, r lies in (0, 1/2) and there are at
    /// least 30 replicates.
    void validate() const;
};

struct SweepRow {
    int harmonics = 0;
    int degree = 0;
    double mean_error = 0.0;
    double std_error = 0.0;  ///< sample standard deviation across replicates
};

struct SweepResult {
    std::vector<SweepRow> rows;
    /// errors[row][replicate]: sup_{|q|<=M} |target(q) - estimate(q)|
    std::vector<std::vector<double>> errors;
};

/**
 * For each N and replicate, the sup over |q| <= M(N) of the distance between
 * the Bohr estimate and the left-Riemann coefficients of the true variance
 * (plus the jump coefficients when jumps are simulated).
 */
SweepResult coefficient_error_sweep(const SweepConfig& config);

struct RateFit {
    double slope = 0.0;
    double intercept = 0.0;
    double r_squared = 0.0;
};

/// Least squares fit of log(error) against log(N); needs >= 4 positive rows.
RateFit rate_regression(std::span<const SweepRow> rows);
RateFit rate_regression(std::span<const double> harmonics, std::span<const double> errors);

using ThresholdSchedule = std::function<double(int harmonics)>;

struct EventRow {
    int harmonics = 0;
    double threshold = 0.0;
    double frequency = 0.0;
};

/// Empirical quantile at the smallest N scaled by (N / N_min)^exponent.
ThresholdSchedule default_threshold_schedule(const SweepResult& sweep, double exponent = -0.25,
                                             double quantile = 0.95);

/// Fraction of replicates whose sup-error reaches the threshold, per N.
std::vector<EventRow> error_event_frequency(const SweepResult& sweep, const ThresholdSchedule& threshold);
std::vector<EventRow> error_event_frequency(const SweepConfig& config, const ThresholdSchedule& threshold);

/// Quantile with linear interpolation between order statistics.
double empirical_quantile(std::vector<double> values, double p);

struct JumpRecoveryConfig {
    std::size_t grid_points = 100000;
    std::vector<int> degrees{10, 50, 100, 700};
    /// Bohr cutoff; 0 selects floor(grid_points / 2), the Nyquist cutoff of the
    /// regular grid. Degree 700 is far beyond N^r for any cutoff below that.
    int harmonics = 0;
    double intensity = 2.0;
    double sigma = 1.0;
    std::size_t eval_points = 2001;
    double exclusion = 0.1;  ///< off-jump points keep at least this distance to every jump
};

struct JumpRecoverySummary {
    int degree = 0;
    std::vector<double> values_at_jumps;
    std::vector<double> off_jump_values;
    double max_off_jump = 0.0;
    /// Width around the largest jump where the estimate stays above half its peak.
    double half_max_width = 0.0;
};

struct JumpRecoveryResult {
    JumpRecord jumps;
    std::vector<SpotEstimate> estimates;
    std::vector<JumpRecoverySummary> summaries;
};

/// Volatility sigma (sin t + 2) plus compensated unit-mark Poisson jumps,
/// reconstructed with the rescaled estimator for every configured degree.
JumpRecoveryResult jump_recovery_experiment(const JumpRecoveryConfig& config, std::uint64_t seed);

struct InversionRow {
    std::size_t jump_set = 0;
    int harmonics = 0;
    double t = 0.0;
    InversionCheck check;
    bool pass = false;
};

struct InversionSweepResult {
    std::vector<InversionRow> rows;
    bool all_pass = true;
};

InversionSweepResult inversion_bound_sweep(std::span<const JumpRecord> jump_sets, std::span<const int> harmonics,
                                           std::span<const double> t_grid, double slack = 1e-9);

}  // namespace fvol
