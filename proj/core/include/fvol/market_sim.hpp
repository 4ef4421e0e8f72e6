#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <variant>
#include <vector>

#include "fvol/fourier_series.hpp"
#include "fvol/jump_record.hpp"
#include "fvol/partition.hpp"

namespace fvol {

/**
 * Diffusion coefficient sigma(t, x) of dH = sigma dW on [-pi, pi].
 *
 * Three families are supported: a constant level, the shifted sinusoid
 * scale * (sin t + 2), and a user supplied state-dependent function that must
 * satisfy the linear growth bound |sigma(t,x)|^2 <= K^2 (1 + x^2) and a
 * Lipschitz condition in x. The state-dependent conditions are probed on a
 * grid at construction and violations throw std::invalid_argument.
 */
class VolatilityModel {
public:
    struct Constant {
        double level;
    };
    struct SinusoidalShift {
        double scale;
    };
    struct StateDependent {
        std::function<double(double, double)> sigma;
        double lipschitz;
        double growth;
        std::string label;
    };

    static VolatilityModel constant(double level);
    static VolatilityModel sinusoidal_shift(double scale);
    static VolatilityModel state_dependent(std::function<double(double, double)> sigma, double lipschitz,
                                           double growth, std::string label = "state-dependent",
                                           double probe_radius = 10.0);

    double sigma(double t, double x) const;
    double variance(double t, double x) const {
        const double s = sigma(t, x);
        return s * s;
    }
    std::string describe() const;

    const std::variant<Constant, SinusoidalShift, StateDependent>& spec() const { return spec_; }

private:
    explicit VolatilityModel(std::variant<Constant, SinusoidalShift, StateDependent> spec)
        : spec_(std::move(spec)) {}

    std::variant<Constant, SinusoidalShift, StateDependent> spec_;
};

/// Distribution of the jump marks; every law is bounded by 1 in absolute value.
enum class MarkLaw {
    unit,        ///< Y = 1
    rademacher,  ///< Y = +-1 with probability 1/2
    uniform,     ///< Y uniform on (-1, 1)
};

double mark_mean(MarkLaw law);

/// Compound Poisson jumps with bounded marks, optionally compensated so the
/// jump part is a martingale started at zero at -pi.
struct JumpModel {
    double intensity = 1.0;
    MarkLaw marks = MarkLaw::unit;
    bool compensate = true;

    void validate() const;
    /// lambda * E[Y], the drift removed by compensation.
    double compensator_rate() const { return compensate ? intensity * mark_mean(marks) : 0.0; }
};

struct DiffusionSample {
    std::vector<double> levels;    ///< H at the grid points, H(-pi) = 0
    std::vector<double> variance;  ///< sigma^2(t_i, H_i)
};

struct JumpSample {
    std::vector<double> levels;  ///< J at the grid points
    JumpRecord record;           ///< exact jump times and sizes
};

/// Ground truth for one simulated price path.
struct SamplePath {
    std::vector<double> times;
    std::vector<double> diffusion;  ///< H
    std::vector<double> jumps;      ///< J
    std::vector<double> price;      ///< P = H + J
    std::vector<double> variance;   ///< V = sigma^2
    JumpRecord jump_record;
};

struct PathConfig {
    Partition grid = Partition::regular(1024);
    VolatilityModel model = VolatilityModel::constant(1.0);
    std::optional<JumpModel> jumps;
};

/// Euler-Maruyama without drift: H_{i+1} = H_i + sigma(t_i, H_i) sqrt(dt_i) Z_i.
DiffusionSample simulate_diffusion(const VolatilityModel& model, const Partition& grid, std::uint64_t seed,
                                   std::uint64_t substream = 0);

/// Compound Poisson path with exponential inter-arrival times started at -pi.
JumpSample simulate_cpp(const JumpModel& model, const Partition& grid, std::uint64_t seed,
                        std::uint64_t substream = 1);

std::vector<double> combine_price(std::span<const double> diffusion, std::span<const double> jumps);

/// Full path for a replicate; diffusion and jumps draw from the substreams
/// 2 * replicate and 2 * replicate + 1 of the seed.
SamplePath simulate_path(const PathConfig& config, std::uint64_t seed, std::uint64_t replicate = 0);

/**
 * Increments of the price between consecutive coarse grid points, stamped
 * with their left endpoint. Coarse points that are not on the fine grid are
 * snapped to the closest fine point on the left.
 */
ObservedIncrements subsample(const SamplePath& path, const Partition& coarse);

/// Sum of dJ_z^2 over jumps with 0 < |t - z| < delta.
double local_jump_mass(const JumpRecord& jumps, double t, double delta);

}  // namespace fvol
