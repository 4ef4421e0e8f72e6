#pragma once

#include <cstddef>
#include <numbers>
#include <span>
#include <vector>

namespace fvol {

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kTwoPi = 2.0 * std::numbers::pi;

/**
 * Observation grid on [-pi, pi].
 *
 * Both endpoints are always part of the grid, times are strictly increasing
 * and the norm is the largest gap between consecutive points. A regular grid
 * with m cells has m + 1 points.
 */
class Partition {
public:
    static Partition regular(std::size_t cells);
    static Partition explicit_times(std::vector<double> times);

    std::span<const double> times() const { return times_; }
    std::size_t cells() const { return times_.size() - 1; }
    std::size_t points() const { return times_.size(); }
    double norm() const { return norm_; }
    bool is_regular() const { return regular_; }

    /// Index of the closest grid point from the left: max{i : times[i] <= t}.
    /// Times below -pi clamp to 0.
    std::size_t left_index(double t) const;

    /// Left projection of t onto the grid.
    double floor(double t) const { return times_[left_index(t)]; }

private:
    Partition(std::vector<double> times, bool regular);

    std::vector<double> times_;
    double norm_ = 0.0;
    bool regular_ = false;
};

/// k equally spaced points from -pi to pi inclusive (k == 1 gives {0}).
std::vector<double> linspace_grid(std::size_t k);

}  // namespace fvol
