#include "fvol/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "json.hpp"

namespace fvol {
namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    return s;
}

std::vector<std::string_view> split(std::string_view line, char sep) {
    std::vector<std::string_view> out;
    std::size_t start = 0;
    while (true) {
        const auto pos = line.find(sep, start);
        out.push_back(trim(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) break;
        start = pos + 1;
    }
    return out;
}

std::vector<std::string> read_lines(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::vector<std::string> lines;
    std::string line;
    while (std::getline(in, line)) lines.push_back(line);
    return lines;
}

[[noreturn]] void row_error(const std::filesystem::path& file, std::size_t line, const std::string& what) {
    throw std::runtime_error(file.string() + ":" + std::to_string(line) + ": " + what);
}

}  // namespace

std::string format_double(double value) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof(buf), value);
    if (res.ec != std::errc{}) throw std::runtime_error("format_double: conversion failed");
    return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
    text = trim(text);
    if (!text.empty() && text.front() == '+') text.remove_prefix(1);
    double value = 0.0;
    const auto res = std::from_chars(text.data(), text.data() + text.size(), value);
    if (text.empty() || res.ec != std::errc{} || res.ptr != text.data() + text.size()) {
        throw std::invalid_argument("not a number: '" + std::string(text) + "'");
    }
    return value;
}

void write_coefficients_csv(std::ostream& out, const CoefficientTable& table) {
    out << "q,re,im\n";
    for (int q = -table.q_max(); q <= table.q_max(); ++q) {
        out << q << ',' << format_double(table[q].real()) << ',' << format_double(table[q].imag()) << '\n';
    }
}

void write_estimate_csv(std::ostream& out, const SpotEstimate& estimate) {
    out << "t,value\n";
    for (std::size_t k = 0; k < estimate.times.size(); ++k) {
        out << format_double(estimate.times[k]) << ',' << format_double(estimate.values[k]) << '\n';
    }
}

void write_path_csv(std::ostream& out, const SamplePath& path) {
    out << "t,H,J,P,V\n";
    for (std::size_t i = 0; i < path.times.size(); ++i) {
        out << format_double(path.times[i]) << ',' << format_double(path.diffusion[i]) << ','
            << format_double(path.jumps[i]) << ',' << format_double(path.price[i]) << ','
            << format_double(path.variance[i]) << '\n';
    }
}

void write_jumps_csv(std::ostream& out, const JumpRecord& jumps) {
    out << "tau,delta_j\n";
    for (const auto& e : jumps.events()) out << format_double(e.time) << ',' << format_double(e.size) << '\n';
}

CoefficientTable read_coefficients_csv(const std::filesystem::path& file) {
    const auto lines = read_lines(file);
    if (lines.empty() || trim(lines[0]) != "q,re,im") row_error(file, 1, "expected header 'q,re,im'");
    std::vector<Complex> values;
    int expected_q = 0;
    bool first = true;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const auto fields = split(lines[i], ',');
        if (fields.size() != 3) row_error(file, i + 1, "expected 3 fields");
        try {
            const double qd = parse_double(fields[0]);
            const int q = static_cast<int>(qd);
            if (static_cast<double>(q) != qd) row_error(file, i + 1, "q must be an integer");
            if (first) {
                expected_q = q;
                first = false;
            }
            if (q != expected_q) row_error(file, i + 1, "rows must be ordered q = -Q..Q");
            ++expected_q;
            values.emplace_back(parse_double(fields[1]), parse_double(fields[2]));
        } catch (const std::invalid_argument& e) {
            row_error(file, i + 1, e.what());
        }
    }
    if (values.empty() || values.size() % 2 == 0) row_error(file, lines.size(), "band must contain 2Q+1 rows");
    const int q_max = static_cast<int>(values.size() / 2);
    if (expected_q - 1 != q_max) row_error(file, lines.size(), "rows must run from -Q to Q");
    return CoefficientTable(q_max, std::move(values));
}

JumpRecord read_jumps_csv(const std::filesystem::path& file) {
    const auto lines = read_lines(file);
    if (lines.empty() || trim(lines[0]) != "tau,delta_j") row_error(file, 1, "expected header 'tau,delta_j'");
    std::vector<JumpEvent> events;
    for (std::size_t i = 1; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const auto fields = split(lines[i], ',');
        if (fields.size() != 2) row_error(file, i + 1, "expected 2 fields");
        try {
            events.push_back({parse_double(fields[0]), parse_double(fields[1])});
        } catch (const std::invalid_argument& e) {
            row_error(file, i + 1, e.what());
        }
    }
    try {
        return JumpRecord(std::move(events));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(file.string() + ": " + e.what());
    }
}

void write_file(const std::filesystem::path& file, const std::function<void(std::ostream&)>& body) {
    if (file.has_parent_path()) std::filesystem::create_directories(file.parent_path());
    std::ofstream out(file, std::ios::binary | std::ios::trunc);
    if (!out) throw std::runtime_error("cannot write " + file.string());
    out.imbue(std::locale::classic());
    body(out);
    out.flush();
    if (!out) throw std::runtime_error("write failed for " + file.string());
}

ObservedIncrements TickSeries::increments() const { return ObservedIncrements::from_levels(times, log_prices); }

TickSeries make_tick_series(std::vector<double> raw_times, std::vector<double> log_prices) {
    if (raw_times.size() != log_prices.size()) throw std::invalid_argument("tick series: length mismatch");
    TickSeries series;
    for (std::size_t i = 0; i < raw_times.size(); ++i) {
        if (!std::isfinite(raw_times[i]) || !std::isfinite(log_prices[i])) {
            throw std::invalid_argument("tick series: non-finite value at tick " + std::to_string(i + 1));
        }
        if (!series.raw_times.empty()) {
            if (raw_times[i] == series.raw_times.back()) {
                series.log_prices.back() = log_prices[i];
                ++series.duplicates_collapsed;
                continue;
            }
            if (raw_times[i] < series.raw_times.back()) {
                throw std::invalid_argument("tick series: timestamps decrease at tick " + std::to_string(i + 1));
            }
        }
        series.raw_times.push_back(raw_times[i]);
        series.log_prices.push_back(log_prices[i]);
    }
    if (series.raw_times.size() < 2) throw std::invalid_argument("tick series: need at least 2 distinct ticks");

    series.origin = series.raw_times.front();
    series.horizon = series.raw_times.back();
    if (series.origin == -kPi && series.horizon == kPi) {
        series.times = series.raw_times;
    } else {
        const double span = series.horizon - series.origin;
        series.times.resize(series.raw_times.size());
        for (std::size_t i = 0; i < series.times.size(); ++i) {
            series.times[i] = std::clamp(-kPi + kTwoPi * ((series.raw_times[i] - series.origin) / span), -kPi, kPi);
        }
        series.times.front() = -kPi;
        series.times.back() = kPi;
        for (std::size_t i = 1; i < series.times.size(); ++i) {
            if (!(series.times[i - 1] < series.times[i])) {
                throw std::invalid_argument("tick series: ticks " + std::to_string(i) + " and " +
                                            std::to_string(i + 1) + " collide after rescaling");
            }
        }
    }
    return series;
}

TickSeries ingest_csv(const std::filesystem::path& file, bool has_header) {
    const auto lines = read_lines(file);
    std::size_t time_col = 0;
    std::size_t price_col = 1;
    std::size_t first = 0;
    if (has_header) {
        if (lines.empty()) row_error(file, 1, "missing header");
        const auto names = split(lines[0], ',');
        const auto find = [&](std::string_view name) {
            return static_cast<std::size_t>(std::find(names.begin(), names.end(), name) - names.begin());
        };
        if (find("t") < names.size()) time_col = find("t");
        if (find("logprice") < names.size()) {
            price_col = find("logprice");
        } else if (find("P") < names.size()) {
            price_col = find("P");
        }
        first = 1;
    }
    std::vector<double> times, prices;
    for (std::size_t i = first; i < lines.size(); ++i) {
        if (trim(lines[i]).empty()) continue;
        const auto fields = split(lines[i], ',');
        if (fields.size() <= std::max(time_col, price_col)) row_error(file, i + 1, "too few columns");
        try {
            times.push_back(parse_double(fields[time_col]));
            prices.push_back(parse_double(fields[price_col]));
        } catch (const std::invalid_argument& e) {
            row_error(file, i + 1, e.what());
        }
    }
    try {
        return make_tick_series(std::move(times), std::move(prices));
    } catch (const std::invalid_argument& e) {
        throw std::runtime_error(file.string() + ": " + e.what());
    }
}

VolatilityModel parse_volatility_model(std::string_view spec) {
    const auto colon = spec.find(':');
    if (colon == std::string_view::npos) {
        throw std::invalid_argument("model spec '" + std::string(spec) + "' must look like name:params");
    }
    const auto name = trim(spec.substr(0, colon));
    const auto params = split(spec.substr(colon + 1), ',');
    const auto need = [&](std::size_t n) {
        if (params.size() != n) {
            throw std::invalid_argument("model '" + std::string(name) + "' takes " + std::to_string(n) + " parameter(s)");
        }
    };
    if (name == "constant") {
        need(1);
        return VolatilityModel::constant(parse_double(params[0]));
    }
    if (name == "sinshift") {
        need(1);
        return VolatilityModel::sinusoidal_shift(parse_double(params[0]));
    }
    if (name == "affine") {
        need(2);
        const double a = parse_double(params[0]);
        const double b = parse_double(params[1]);
        const double growth = std::sqrt(2.0) * std::max({std::abs(a), std::abs(b), 1e-300});
        return VolatilityModel::state_dependent([a, b](double, double x) { return a + b * x; }, std::abs(b), growth,
                                                "affine:" + format_double(a) + "," + format_double(b));
    }
    throw std::invalid_argument("unknown volatility model '" + std::string(name) +
                                "' (expected constant, sinshift or affine)");
}

JumpModel parse_jump_model(std::string_view spec) {
    JumpModel model;
    bool has_lambda = false;
    for (auto item : split(spec, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string_view::npos) throw std::invalid_argument("jump spec item '" + std::string(item) + "' lacks '='");
        const auto key = trim(item.substr(0, eq));
        const auto value = trim(item.substr(eq + 1));
        if (key == "lambda") {
            model.intensity = parse_double(value);
            has_lambda = true;
        } else if (key == "marks") {
            if (value == "unit") {
                model.marks = MarkLaw::unit;
            } else if (value == "sign") {
                model.marks = MarkLaw::rademacher;
            } else if (value == "uniform") {
                model.marks = MarkLaw::uniform;
            } else {
                throw std::invalid_argument("unknown mark law '" + std::string(value) + "' (unit, sign, uniform)");
            }
        } else if (key == "compensate") {
            if (value == "1" || value == "true") {
                model.compensate = true;
            } else if (value == "0" || value == "false") {
                model.compensate = false;
            } else {
                throw std::invalid_argument("compensate must be 0/1 or true/false");
            }
        } else {
            throw std::invalid_argument("unknown jump spec key '" + std::string(key) + "'");
        }
    }
    if (!has_lambda) throw std::invalid_argument("jump spec needs lambda=<intensity>");
    model.validate();
    return model;
}

SweepConfig parse_sweep_config(std::string_view json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("sweep config is not valid JSON: ") + e.what());
    }
    try {
        SweepConfig config;
        config.model = parse_volatility_model(doc.at("model").get<std::string>());
        if (doc.contains("jumps") && !doc["jumps"].is_null()) {
            config.jumps = parse_jump_model(doc["jumps"].get<std::string>());
        }
        config.grid = Partition::regular(doc.at("grid_points").get<std::size_t>());
        config.harmonics = doc.at("N_values").get<std::vector<int>>();
        if (doc.contains("coupling")) {
            const auto& c = doc["coupling"];
            config.coupling.c = c.value("c", config.coupling.c);
            config.coupling.r = c.value("r", config.coupling.r);
        }
        config.replicates = doc.at("replicates").get<int>();
        config.seed = doc.at("seed").get<std::uint64_t>();
        config.validate();
        return config;
    } catch (const nlohmann::json::exception& e) {
        throw std::invalid_argument(std::string("sweep config: ") + e.what());
    }
}

SweepConfig load_sweep_config(const std::filesystem::path& file) {
    std::ifstream in(file);
    if (!in) throw std::runtime_error("cannot open " + file.string());
    std::stringstream buffer;
    buffer << in.rdbuf();
    return parse_sweep_config(buffer.str());
}

std::vector<int> parse_int_list(std::string_view text) {
    const auto parse_int = [](std::string_view s) {
        s = trim(s);
        int value = 0;
        const auto res = std::from_chars(s.data(), s.data() + s.size(), value);
        if (s.empty() || res.ec != std::errc{} || res.ptr != s.data() + s.size()) {
            throw std::invalid_argument("not an integer: '" + std::string(s) + "'");
        }
        return value;
    };
    const auto fields = split(text, ',');
    const auto ellipsis = std::find(fields.begin(), fields.end(), std::string_view("..."));
    if (ellipsis == fields.end()) {
        std::vector<int> out;
        for (auto f : fields) out.push_back(parse_int(f));
        return out;
    }
    if (fields.size() != 4 || ellipsis != fields.begin() + 2) {
        throw std::invalid_argument("progression must look like a,b,...,c");
    }
    const int a = parse_int(fields[0]);
    const int b = parse_int(fields[1]);
    const int last = parse_int(fields[3]);
    if (!(a > 0 && b > a && last >= b)) throw std::invalid_argument("progression needs 0 < a < b <= c");
    std::vector<int> out;
    if (b % a == 0) {
        const long long ratio = b / a;
        for (long long v = a; v <= last; v *= ratio) out.push_back(static_cast<int>(v));
    } else {
        for (long long v = a; v <= last; v += b - a) out.push_back(static_cast<int>(v));
    }
    if (out.back() != last) throw std::invalid_argument("progression does not reach its last term exactly");
    return out;
}

void write_svg_plot(std::ostream& out, std::string_view title, std::span<const PlotSeries> series, bool log_x,
                    bool log_y) {
    constexpr double kWidth = 720.0, kHeight = 440.0, kMargin = 60.0;
    static const char* kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd", "#8c564b"};
    const auto tx = [log_x](double v) { return log_x ? std::log10(v) : v; };
    const auto ty = [log_y](double v) { return log_y ? std::log10(v) : v; };

    double x0 = INFINITY, x1 = -INFINITY, y0 = INFINITY, y1 = -INFINITY;
    for (const auto& s : series) {
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if ((log_x && !(s.x[i] > 0)) || (log_y && !(s.y[i] > 0))) continue;
            x0 = std::min(x0, tx(s.x[i]));
            x1 = std::max(x1, tx(s.x[i]));
            y0 = std::min(y0, ty(s.y[i]));
            y1 = std::max(y1, ty(s.y[i]));
        }
    }
    if (!(x0 < x1)) { x0 -= 1.0; x1 += 1.0; }
    if (!(y0 < y1)) { y0 -= 1.0; y1 += 1.0; }
    const auto px = [&](double v) { return kMargin + (tx(v) - x0) / (x1 - x0) * (kWidth - 2 * kMargin); };
    const auto py = [&](double v) { return kHeight - kMargin - (ty(v) - y0) / (y1 - y0) * (kHeight - 2 * kMargin); };

    out << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight << "\">\n";
    out << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
    out << "<text x=\"" << kWidth / 2 << "\" y=\"24\" text-anchor=\"middle\" font-family=\"sans-serif\">" << title
        << "</text>\n";
    out << "<rect x=\"" << kMargin << "\" y=\"" << kMargin << "\" width=\"" << kWidth - 2 * kMargin << "\" height=\""
        << kHeight - 2 * kMargin << "\" fill=\"none\" stroke=\"black\"/>\n";
    const auto label = [](double v, bool is_log) { return format_double(is_log ? std::pow(10.0, v) : v); };
    out << "<text x=\"" << kMargin << "\" y=\"" << kHeight - kMargin + 18 << "\" font-size=\"11\">" << label(x0, log_x)
        << "</text>\n";
    out << "<text x=\"" << kWidth - kMargin << "\" y=\"" << kHeight - kMargin + 18
        << "\" font-size=\"11\" text-anchor=\"end\">" << label(x1, log_x) << "</text>\n";
    out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kHeight - kMargin
        << "\" font-size=\"11\" text-anchor=\"end\">" << label(y0, log_y) << "</text>\n";
    out << "<text x=\"" << kMargin - 4 << "\" y=\"" << kMargin + 10 << "\" font-size=\"11\" text-anchor=\"end\">"
        << label(y1, log_y) << "</text>\n";
    for (std::size_t k = 0; k < series.size(); ++k) {
        const auto& s = series[k];
        const char* color = kColors[k % std::size(kColors)];
        out << "<polyline fill=\"none\" stroke-width=\"1.2\" stroke=\"" << color << "\" points=\"";
        for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
            if ((log_x && !(s.x[i] > 0)) || (log_y && !(s.y[i] > 0))) continue;
            out << format_double(px(s.x[i])) << ',' << format_double(py(s.y[i])) << ' ';
        }
        out << "\"/>\n";
        out << "<text x=\"" << kWidth - kMargin - 4 << "\" y=\"" << kMargin + 16 + 14 * static_cast<double>(k)
            << "\" font-size=\"11\" text-anchor=\"end\" fill=\"" << color << "\">" << s.label << "</text>\n";
    }
    out << "</svg>\n";
}

}  // namespace fvol
