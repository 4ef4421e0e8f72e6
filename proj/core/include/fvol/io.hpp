#pragma once

#include <filesystem>
#include <functional>
#include <ostream>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "fvol/estimator.hpp"
#include "fvol/experiments.hpp"
#include "fvol/fourier_series.hpp"
#include "fvol/jump_record.hpp"
#include "fvol/market_sim.hpp"

namespace fvol {

/// Shortest decimal text that parses back to the same double; locale independent.
std::string format_double(double value);

/// Strict parse of a whole field; throws std::invalid_argument.
double parse_double(std::string_view text);

void write_coefficients_csv(std::ostream& out, const CoefficientTable& table);
void write_estimate_csv(std::ostream& out, const SpotEstimate& estimate);
void write_path_csv(std::ostream& out, const SamplePath& path);
void write_jumps_csv(std::ostream& out, const JumpRecord& jumps);

CoefficientTable read_coefficients_csv(const std::filesystem::path& file);
JumpRecord read_jumps_csv(const std::filesystem::path& file);

/// Writes through a temporary stream and fails loudly if the file cannot be written.
void write_file(const std::filesystem::path& file, const std::function<void(std::ostream&)>& body);

/**
 * Tick data mapped affinely onto [-pi, pi].
 *
 * The first tick maps to -pi and the last to pi. When the raw timestamps
 * already span exactly [-pi, pi] the map is the identity.
 */
struct TickSeries {
    std::vector<double> raw_times;
    std::vector<double> log_prices;
    std::vector<double> times;
    double origin = 0.0;   ///< t0
    double horizon = 0.0;  ///< T
    std::size_t duplicates_collapsed = 0;

    /// (T - t0) / 2pi, the factor between rescaled and raw-time volatility.
    double volatility_scale() const { return (horizon - origin) / kTwoPi; }
    ObservedIncrements increments() const;
};

/// Builds a TickSeries from raw ticks; duplicate timestamps keep the last price.
TickSeries make_tick_series(std::vector<double> raw_times, std::vector<double> log_prices);

/**
 * Reads `t,logprice` rows. With a header, a path export (`t,H,J,P,V`) is
 * also accepted and its P column is used. Malformed rows are reported with
 * their 1-based line number.
 */
TickSeries ingest_csv(const std::filesystem::path& file, bool has_header);

/// `constant:c`, `sinshift:s0` or `affine:a,b` (sigma(t, x) = a + b x).
VolatilityModel parse_volatility_model(std::string_view spec);

/// `lambda=2,marks=unit[,compensate=1]`; marks are unit, sign or uniform.
JumpModel parse_jump_model(std::string_view spec);

/**
 * Sweep configuration from JSON:
 *   {"model": "constant:1", "jumps": "lambda=2,marks=unit", "grid_points": 100000,
 *    "N_values": [16, 32], "coupling": {"c": 1, "r": 0.4}, "replicates": 50, "seed": 7}
 * `jumps` and `coupling` are optional.
 */
SweepConfig parse_sweep_config(std::string_view json_text);
SweepConfig load_sweep_config(const std::filesystem::path& file);

/// Parses `8,16,32` or an elided progression `8,16,...,1024` (geometric when
/// the second term is an integer multiple of the first, arithmetic otherwise).
std::vector<int> parse_int_list(std::string_view text);

struct PlotSeries {
    std::string label;
    std::vector<double> x;
    std::vector<double> y;
};

/// Static SVG line chart; log axes take log10 of positive values.
void write_svg_plot(std::ostream& out, std::string_view title, std::span<const PlotSeries> series,
                    bool log_x = false, bool log_y = false);

}  // namespace fvol
