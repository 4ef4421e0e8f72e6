// fvol: simulate paths, estimate spot volatility / squared jumps, and run the
// Monte Carlo verification experiments from the command line.

#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "fvol/estimator.hpp"
#include "fvol/experiments.hpp"
#include "fvol/io.hpp"
#include "fvol/market_sim.hpp"

namespace fs = std::filesystem;
using nlohmann::ordered_json;

namespace {

struct SimulateArgs {
    std::string model;
    std::string jumps;
    std::size_t grid_points = 10000;
    std::uint64_t seed = 0;
    std::string out;
    std::string jumps_out;
};

struct EstimateArgs {
    std::string input;
    bool no_header = false;
    int harmonics = 0;
    int degree = 0;
    bool rescale_jumps = false;
    std::size_t eval_points = 512;
    std::string out;
    std::string coefficients_out;
};

struct SweepArgs {
    std::string config;
    std::string out_dir;
    double event_exponent = -0.25;
};

struct JumpsDemoArgs {
    std::string out_dir;
    std::uint64_t seed = 20240607;
    std::size_t grid_points = 100000;
    int harmonics = 0;
};

struct InversionArgs {
    std::string jumps;
    std::string n_list = "8,16,...,1024";
    std::size_t t_points = 64;
    std::string out;
};

void write_json(const fs::path& file, const ordered_json& doc) {
    fvol::write_file(file, [&](std::ostream& os) { os << doc.dump(2) << '\n'; });
}

int run_simulate(const SimulateArgs& args) {
    fvol::PathConfig config{fvol::Partition::regular(args.grid_points), fvol::parse_volatility_model(args.model),
                            std::nullopt};
    if (!args.jumps.empty()) config.jumps = fvol::parse_jump_model(args.jumps);
    const auto path = fvol::simulate_path(config, args.seed, 0);
    fvol::write_file(args.out, [&](std::ostream& os) { fvol::write_path_csv(os, path); });
    if (config.jumps) {
        const std::string jumps_out = args.jumps_out.empty() ? args.out + ".jumps.csv" : args.jumps_out;
        fvol::write_file(jumps_out, [&](std::ostream& os) { fvol::write_jumps_csv(os, path.jump_record); });
        std::cout << "wrote " << args.out << " (" << path.times.size() << " points) and " << jumps_out << " ("
                  << path.jump_record.size() << " jumps)\n";
    } else {
        std::cout << "wrote " << args.out << " (" << path.times.size() << " points)\n";
    }
    return 0;
}

int run_estimate(const EstimateArgs& args) {
    const auto ticks = fvol::ingest_csv(args.input, !args.no_header);
    const auto obs = ticks.increments();
    fvol::EstimatorConfig config;
    config.harmonics = args.harmonics > 0 ? args.harmonics : fvol::default_harmonics(obs.size());
    config.degree = args.degree > 0 ? args.degree : fvol::coupled_degree(config.harmonics);
    config.rescale_jumps = args.rescale_jumps;
    config.eval_grid = fvol::linspace_grid(args.eval_points);
    if (config.degree > config.harmonics) {
        std::cerr << "error: Fejer degree M=" << config.degree << " exceeds the Bohr cutoff N=" << config.harmonics
                  << ".\nhint: raise --harmonics to at least " << config.degree
                  << " or lower --degree (the default couples M = floor(N^0.4)).\n";
        return 2;
    }
    const auto increments = fvol::increment_coefficients(obs, config.increment_band());
    const auto estimate = fvol::estimate_from_increments(increments, config);
    fvol::write_file(args.out, [&](std::ostream& os) { fvol::write_estimate_csv(os, estimate); });
    if (!args.coefficients_out.empty()) {
        const auto coeffs = fvol::estimate_coefficients(increments, config.harmonics, config.degree);
        fvol::write_file(args.coefficients_out, [&](std::ostream& os) { fvol::write_coefficients_csv(os, coeffs); });
    }
    ordered_json meta;
    meta["input"] = args.input;
    meta["kind"] = fvol::to_string(estimate.kind);
    meta["observations"] = obs.size();
    meta["harmonics"] = config.harmonics;
    meta["degree"] = config.degree;
    meta["eval_points"] = args.eval_points;
    meta["time_origin"] = ticks.origin;
    meta["time_horizon"] = ticks.horizon;
    meta["volatility_scale"] = ticks.volatility_scale();
    meta["duplicates_collapsed"] = ticks.duplicates_collapsed;
    write_json(args.out + ".meta.json", meta);
    std::cout << "wrote " << args.out << " (" << fvol::to_string(estimate.kind) << ", N=" << config.harmonics
              << ", M=" << config.degree << ")\n";
    return 0;
}

int run_sweep(const SweepArgs& args) {
    const auto config = fvol::load_sweep_config(args.config);
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);
    const auto sweep = fvol::coefficient_error_sweep(config);

    fvol::write_file(dir / "sweep_errors.csv", [&](std::ostream& os) {
        os << "N,M,mean_error,std_error\n";
        for (const auto& row : sweep.rows) {
            os << row.harmonics << ',' << row.degree << ',' << fvol::format_double(row.mean_error) << ','
               << fvol::format_double(row.std_error) << '\n';
        }
    });
    fvol::write_file(dir / "replicate_errors.csv", [&](std::ostream& os) {
        os << "N,replicate,error\n";
        for (std::size_t k = 0; k < sweep.rows.size(); ++k) {
            for (std::size_t r = 0; r < sweep.errors[k].size(); ++r) {
                os << sweep.rows[k].harmonics << ',' << r << ',' << fvol::format_double(sweep.errors[k][r]) << '\n';
            }
        }
    });
    const auto events = fvol::error_event_frequency(sweep, fvol::default_threshold_schedule(sweep, args.event_exponent));
    fvol::write_file(dir / "event_frequency.csv", [&](std::ostream& os) {
        os << "N,threshold,frequency\n";
        for (const auto& e : events) {
            os << e.harmonics << ',' << fvol::format_double(e.threshold) << ',' << fvol::format_double(e.frequency)
               << '\n';
        }
    });
    std::vector<fvol::PlotSeries> series(1);
    series[0].label = "mean sup-error";
    for (const auto& row : sweep.rows) {
        series[0].x.push_back(row.harmonics);
        series[0].y.push_back(row.mean_error);
    }
    fvol::write_file(dir / "error_vs_N.svg",
                     [&](std::ostream& os) { fvol::write_svg_plot(os, "coefficient error vs N", series, true, true); });

    ordered_json fit_doc;
    if (sweep.rows.size() >= 4) {
        try {
            const auto fit = fvol::rate_regression(sweep.rows);
            fit_doc["slope"] = fit.slope;
            fit_doc["intercept"] = fit.intercept;
            fit_doc["r_squared"] = fit.r_squared;
        } catch (const std::invalid_argument& e) {
            fit_doc["error"] = e.what();
        }
    } else {
        fit_doc["error"] = "rate fit needs at least 4 N values";
    }
    write_json(dir / "rate_fit.json", fit_doc);
    std::cout << "sweep over " << sweep.rows.size() << " N values written to " << dir.string() << '\n';
    if (fit_doc.contains("slope")) {
        std::cout << "fitted slope " << fit_doc["slope"].get<double>() << ", r^2 " << fit_doc["r_squared"].get<double>()
                  << '\n';
    }
    return 0;
}

int run_jumps_demo(const JumpsDemoArgs& args) {
    fvol::JumpRecoveryConfig config;
    config.grid_points = args.grid_points;
    config.harmonics = args.harmonics;
    const auto result = fvol::jump_recovery_experiment(config, args.seed);
    const fs::path dir(args.out_dir);
    fs::create_directories(dir);

    std::vector<fvol::PlotSeries> series;
    for (const auto& estimate : result.estimates) {
        const int degree = estimate.config.degree;
        fvol::write_file(dir / ("estimate_M" + std::to_string(degree) + ".csv"),
                         [&](std::ostream& os) { fvol::write_estimate_csv(os, estimate); });
        series.push_back({"M=" + std::to_string(degree), estimate.times, estimate.values});
    }
    fvol::write_file(dir / "jumps.csv", [&](std::ostream& os) { fvol::write_jumps_csv(os, result.jumps); });
    fvol::write_file(dir / "summary.csv", [&](std::ostream& os) {
        os << "M,jump_index,tau,value\n";
        for (const auto& s : result.summaries) {
            for (std::size_t j = 0; j < s.values_at_jumps.size(); ++j) {
                os << s.degree << ',' << j << ',' << fvol::format_double(result.jumps.events()[j].time) << ','
                   << fvol::format_double(s.values_at_jumps[j]) << '\n';
            }
        }
    });
    ordered_json summary;
    summary["seed"] = args.seed;
    summary["grid_points"] = config.grid_points;
    summary["intensity"] = config.intensity;
    summary["sigma"] = config.sigma;
    summary["harmonics"] = result.estimates.empty() ? 0 : result.estimates.front().config.harmonics;
    summary["jumps"] = result.jumps.size();
    for (const auto& s : result.summaries) {
        ordered_json entry;
        entry["M"] = s.degree;
        entry["values_at_jumps"] = s.values_at_jumps;
        entry["max_off_jump"] = s.max_off_jump;
        entry["half_max_width"] = s.half_max_width;
        summary["degrees"].push_back(entry);
    }
    write_json(dir / "summary.json", summary);
    fvol::write_file(dir / "estimates.svg", [&](std::ostream& os) {
        fvol::write_svg_plot(os, "rescaled estimate (2pi/M) T_M vs t", series);
    });
    std::cout << "jump recovery demo: " << result.jumps.size() << " jumps, outputs in " << dir.string() << '\n';
    for (const auto& s : result.summaries) {
        std::cout << "  M=" << s.degree << " max off-jump value " << s.max_off_jump << ", half-max width "
                  << s.half_max_width << '\n';
    }
    return 0;
}

int run_inversion_check(const InversionArgs& args) {
    const auto jumps = fvol::read_jumps_csv(args.jumps);
    const auto harmonics = fvol::parse_int_list(args.n_list);
    for (int n : harmonics) {
        if (n < 1) throw std::invalid_argument("--n-list values must be positive");
    }
    const auto grid = fvol::linspace_grid(args.t_points);
    const std::vector<fvol::JumpRecord> sets{jumps};
    const auto result = fvol::inversion_bound_sweep(sets, harmonics, grid);
    fvol::write_file(args.out, [&](std::ostream& os) {
        os << "N,t,error,bound,pass\n";
        for (const auto& row : result.rows) {
            os << row.harmonics << ',' << fvol::format_double(row.t) << ',' << fvol::format_double(row.check.error)
               << ',' << fvol::format_double(row.check.bound) << ',' << (row.pass ? 1 : 0) << '\n';
        }
    });
    std::cout << (result.all_pass ? "all" : "NOT all") << " of " << result.rows.size()
              << " inversion bound checks hold; table in " << args.out << '\n';
    return result.all_pass ? 0 : 3;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Fourier estimation of spot volatility and squared jumps"};
    app.require_subcommand(1);

    SimulateArgs sim;
    auto* simulate = app.add_subcommand("simulate", "Simulate a diffusion (+ jumps) path on [-pi, pi]");
    simulate->add_option("--model", sim.model, "constant:c | sinshift:s0 | affine:a,b")->required();
    simulate->add_option("--jumps", sim.jumps, "lambda=L,marks=unit|sign|uniform[,compensate=1]");
    simulate->add_option("--grid-points", sim.grid_points, "Number of grid cells")->check(CLI::PositiveNumber);
    simulate->add_option("--seed", sim.seed, "Random seed")->required();
    simulate->add_option("--out", sim.out, "Path CSV (t,H,J,P,V)")->required();
    simulate->add_option("--jumps-out", sim.jumps_out, "Jump record CSV (default: <out>.jumps.csv)");

    EstimateArgs est;
    auto* estimate = app.add_subcommand("estimate", "Estimate the spot volatility (or squared jumps) from a CSV");
    estimate->add_option("--input", est.input, "CSV with t,logprice (or a simulate export)")
        ->required()
        ->check(CLI::ExistingFile);
    estimate->add_flag("--no-header", est.no_header, "Input has no header row");
    estimate->add_option("--harmonics", est.harmonics, "Bohr cutoff N (default min(m/2, 4096))")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--degree", est.degree, "Fejer degree M (default floor(N^0.4))")->check(CLI::PositiveNumber);
    estimate->add_flag("--rescale-jumps", est.rescale_jumps, "Reconstruct squared jumps with the 2pi/M rescaling");
    estimate->add_option("--eval-points", est.eval_points, "Evaluation points on [-pi, pi]")
        ->check(CLI::PositiveNumber);
    estimate->add_option("--out", est.out, "Estimate CSV (t,value)")->required();
    estimate->add_option("--coefficients-out", est.coefficients_out, "Coefficient CSV (q,re,im)");

    SweepArgs sw;
    auto* sweep = app.add_subcommand("sweep", "Monte Carlo coefficient-error sweep over N");
    sweep->add_option("--config", sw.config, "JSON sweep configuration")->required()->check(CLI::ExistingFile);
    sweep->add_option("--out-dir", sw.out_dir, "Output directory")->required();
    sweep->add_option("--event-exponent", sw.event_exponent, "Exponent of the default error-event threshold");

    JumpsDemoArgs demo;
    auto* jumps_demo = app.add_subcommand("jumps-demo", "Jump recovery with degrees 10, 50, 100, 700");
    jumps_demo->add_option("--out-dir", demo.out_dir, "Output directory")->required();
    jumps_demo->add_option("--seed", demo.seed, "Random seed");
    jumps_demo->add_option("--grid-points", demo.grid_points, "Grid cells (default 100000)")
        ->check(CLI::PositiveNumber);
    jumps_demo->add_option("--harmonics", demo.harmonics, "Bohr cutoff N (default floor(m/2))")
        ->check(CLI::PositiveNumber);

    InversionArgs inv;
    auto* inversion = app.add_subcommand("inversion-check", "Deterministic Fejer inversion bound on a jump record");
    inversion->add_option("--jumps", inv.jumps, "Jump record CSV (tau,delta_j)")->required()->check(CLI::ExistingFile);
    inversion->add_option("--n-list", inv.n_list, "N values, e.g. 8,16,...,1024");
    inversion->add_option("--t-points", inv.t_points, "Evaluation points on [-pi, pi]")->check(CLI::PositiveNumber);
    inversion->add_option("--out", inv.out, "Result CSV")->required();

    CLI11_PARSE(app, argc, argv);

    try {
        if (*simulate) return run_simulate(sim);
        if (*estimate) return run_estimate(est);
        if (*sweep) return run_sweep(sw);
        if (*jumps_demo) return run_jumps_demo(demo);
        if (*inversion) return run_inversion_check(inv);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
    return 1;
}
