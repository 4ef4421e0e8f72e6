#include "fvol/market_sim.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>
#include <stdexcept>

#include "fvol/rng.hpp"

namespace fvol {
namespace {

template <class... Ts>
struct Overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
Overloaded(Ts...) -> Overloaded<Ts...>;

}  // namespace

VolatilityModel VolatilityModel::constant(double level) {
    // zero is allowed: the degenerate model gives a flat path
    if (!(level >= 0.0) || !std::isfinite(level)) {
        throw std::invalid_argument("VolatilityModel::constant: level must be finite and >= 0");
    }
    return VolatilityModel(Constant{level});
}

VolatilityModel VolatilityModel::sinusoidal_shift(double scale) {
    if (!(scale > 0.0) || !std::isfinite(scale)) {
        throw std::invalid_argument("VolatilityModel::sinusoidal_shift: scale must be finite and > 0");
    }
    return VolatilityModel(SinusoidalShift{scale});
}

VolatilityModel VolatilityModel::state_dependent(std::function<double(double, double)> sigma, double lipschitz,
                                                 double growth, std::string label, double probe_radius) {
    if (!sigma) throw std::invalid_argument("VolatilityModel::state_dependent: empty function");
    if (!(lipschitz >= 0.0) || !(growth > 0.0)) {
        throw std::invalid_argument("VolatilityModel::state_dependent: need lipschitz >= 0 and growth > 0");
    }
    constexpr int kTimeProbes = 33;
    constexpr int kStateProbes = 201;
    const double dx = 2.0 * probe_radius / (kStateProbes - 1);
    for (int a = 0; a < kTimeProbes; ++a) {
        const double t = -kPi + kTwoPi * a / (kTimeProbes - 1);
        double previous = 0.0;
        for (int b = 0; b < kStateProbes; ++b) {
            const double x = -probe_radius + dx * b;
            const double s = sigma(t, x);
            if (!std::isfinite(s)) {
                throw std::invalid_argument("VolatilityModel::state_dependent: sigma is not finite at probe");
            }
            if (s * s > growth * growth * (1.0 + x * x) * (1.0 + 1e-12)) {
                std::ostringstream msg;
                msg << "VolatilityModel::state_dependent: growth bound violated at t=" << t << ", x=" << x;
                throw std::invalid_argument(msg.str());
            }
            if (b > 0 && std::abs(s - previous) > lipschitz * dx * (1.0 + 1e-9) + 1e-15) {
                std::ostringstream msg;
                msg << "VolatilityModel::state_dependent: Lipschitz bound violated near t=" << t << ", x=" << x;
                throw std::invalid_argument(msg.str());
            }
            previous = s;
        }
    }
    return VolatilityModel(StateDependent{std::move(sigma), lipschitz, growth, std::move(label)});
}

double VolatilityModel::sigma(double t, double x) const {
    return std::visit(Overloaded{
                          [](const Constant& c) { return c.level; },
                          [t](const SinusoidalShift& s) { return s.scale * (std::sin(t) + 2.0); },
                          [t, x](const StateDependent& s) { return s.sigma(t, x); },
                      },
                      spec_);
}

std::string VolatilityModel::describe() const {
    std::ostringstream out;
    out.precision(17);
    std::visit(Overloaded{
                   [&](const Constant& c) { out << "constant:" << c.level; },
                   [&](const SinusoidalShift& s) { out << "sinshift:" << s.scale; },
                   [&](const StateDependent& s) { out << s.label; },
               },
               spec_);
    return out.str();
}

double mark_mean(MarkLaw law) {
    switch (law) {
        case MarkLaw::unit:
            return 1.0;
        case MarkLaw::rademacher:
        case MarkLaw::uniform:
            return 0.0;
    }
    return 0.0;
}

void JumpModel::validate() const {
    if (!(intensity > 0.0) || !std::isfinite(intensity)) {
        throw std::invalid_argument("JumpModel: intensity must be finite and > 0");
    }
}

DiffusionSample simulate_diffusion(const VolatilityModel& model, const Partition& grid, std::uint64_t seed,
                                   std::uint64_t substream) {
    const auto times = grid.times();
    DiffusionSample out;
    out.levels.resize(times.size());
    out.variance.resize(times.size());
    RandomStream stream(seed, substream);
    double h = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        const double s = model.sigma(times[i], h);
        out.levels[i] = h;
        out.variance[i] = s * s;
        if (i + 1 < times.size()) {
            h += s * std::sqrt(times[i + 1] - times[i]) * stream.normal();
        }
    }
    return out;
}

namespace {

double draw_mark(MarkLaw law, RandomStream& stream) {
    switch (law) {
        case MarkLaw::unit:
            return 1.0;
        case MarkLaw::rademacher:
            return stream.uniform() < 0.5 ? -1.0 : 1.0;
        case MarkLaw::uniform:
            // the open-interval uniform never returns exactly 0.5
            return 2.0 * stream.uniform() - 1.0;
    }
    return 1.0;
}

}  // namespace

JumpSample simulate_cpp(const JumpModel& model, const Partition& grid, std::uint64_t seed, std::uint64_t substream) {
    model.validate();
    RandomStream stream(seed, substream);
    std::vector<JumpEvent> events;
    double tau = -kPi;
    while (true) {
        const double next = tau + stream.exponential(model.intensity);
        if (next > kPi) break;
        const double mark = draw_mark(model.marks, stream);
        if (next > tau && mark != 0.0) events.push_back({next, mark});
        tau = next;
    }

    const auto times = grid.times();
    JumpSample out;
    out.levels.resize(times.size());
    const double drift = model.compensator_rate();
    std::size_t k = 0;
    double cumulative = 0.0;
    for (std::size_t i = 0; i < times.size(); ++i) {
        while (k < events.size() && events[k].time <= times[i]) cumulative += events[k++].size;
        out.levels[i] = cumulative - drift * (times[i] + kPi);
    }
    out.record = JumpRecord(std::move(events));
    return out;
}

std::vector<double> combine_price(std::span<const double> diffusion, std::span<const double> jumps) {
    if (diffusion.size() != jumps.size()) {
        throw std::invalid_argument("combine_price: diffusion and jump samples differ in length");
    }
    std::vector<double> out(diffusion.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = diffusion[i] + jumps[i];
    return out;
}

SamplePath simulate_path(const PathConfig& config, std::uint64_t seed, std::uint64_t replicate) {
    SamplePath path;
    const auto times = config.grid.times();
    path.times.assign(times.begin(), times.end());
    auto diffusion = simulate_diffusion(config.model, config.grid, seed, 2 * replicate);
    path.diffusion = std::move(diffusion.levels);
    path.variance = std::move(diffusion.variance);
    if (config.jumps) {
        auto jumps = simulate_cpp(*config.jumps, config.grid, seed, 2 * replicate + 1);
        path.jumps = std::move(jumps.levels);
        path.jump_record = std::move(jumps.record);
    } else {
        path.jumps.assign(times.size(), 0.0);
    }
    path.price = combine_price(path.diffusion, path.jumps);
    return path;
}

ObservedIncrements subsample(const SamplePath& path, const Partition& coarse) {
    const auto& fine = path.times;
    if (fine.size() < 2 || path.price.size() != fine.size()) {
        throw std::invalid_argument("subsample: path has inconsistent samples");
    }
    const auto points = coarse.times();
    std::vector<std::size_t> index;
    index.reserve(points.size());
    for (double t : points) {
        if (t < fine.front() || t > fine.back()) {
            throw std::invalid_argument("subsample: coarse grid not covered by the fine grid");
        }
        auto it = std::upper_bound(fine.begin(), fine.end(), t);
        const auto i = static_cast<std::size_t>(std::distance(fine.begin(), it) - 1);
        if (!index.empty() && index.back() >= i) {
            throw std::invalid_argument("subsample: two coarse points snap to the same fine point");
        }
        index.push_back(i);
    }
    std::vector<double> times(index.size() - 1), increments(index.size() - 1);
    for (std::size_t k = 0; k + 1 < index.size(); ++k) {
        times[k] = fine[index[k]];
        increments[k] = path.price[index[k + 1]] - path.price[index[k]];
    }
    return ObservedIncrements(std::move(times), std::move(increments));
}

double local_jump_mass(const JumpRecord& jumps, double t, double delta) {
    if (!(delta > 0.0 && delta < kPi)) throw std::invalid_argument("local_jump_mass: delta must lie in (0, pi)");
    double mass = 0.0;
    for (const auto& e : jumps.events()) {
        const double gap = std::abs(t - e.time);
        if (e.time != t && gap > 0.0 && gap < delta) mass += e.size * e.size;
    }
    return mass;
}

}  // namespace fvol
