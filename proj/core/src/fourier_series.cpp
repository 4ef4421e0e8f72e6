#include "fvol/fourier_series.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <stdexcept>
#include <string>

#include "fvol/parallel.hpp"
#include "fvol/partition.hpp"

namespace fvol {
namespace {

// Phases are re-anchored with a direct sincos every kAnchor harmonics, which
// bounds the drift of the rotation recursion to kAnchor roundings.
constexpr int kAnchor = 64;
// Samples advanced together in the inner loop (independent recursions).
constexpr std::size_t kLanes = 4;

void require_band(int q_max, const char* where) {
    if (q_max < 0) throw std::invalid_argument(std::string(where) + ": band Q must be >= 0");
}

struct KahanComplex {
    double re = 0.0, im = 0.0, c_re = 0.0, c_im = 0.0;

    void add(double x, double y) {
        const double yr = x - c_re;
        const double tr = re + yr;
        c_re = (tr - re) - yr;
        re = tr;
        const double yi = y - c_im;
        const double ti = im + yi;
        c_im = (ti - im) - yi;
        im = ti;
    }
};

}  // namespace

CoefficientTable::CoefficientTable(int q_max, std::vector<Complex> values)
    : q_max_(q_max), values_(std::move(values)) {
    require_band(q_max, "CoefficientTable");
    if (values_.size() != static_cast<std::size_t>(2 * q_max + 1)) {
        throw std::invalid_argument("CoefficientTable: expected " + std::to_string(2 * q_max + 1) +
                                    " values, got " + std::to_string(values_.size()));
    }
}

CoefficientTable CoefficientTable::zeros(int q_max) {
    require_band(q_max, "CoefficientTable::zeros");
    return CoefficientTable(q_max, std::vector<Complex>(static_cast<std::size_t>(2 * q_max + 1)));
}

CoefficientTable CoefficientTable::from_nonnegative(std::vector<Complex> nonnegative) {
    if (nonnegative.empty()) throw std::invalid_argument("CoefficientTable::from_nonnegative: empty input");
    const int q_max = static_cast<int>(nonnegative.size()) - 1;
    std::vector<Complex> values(static_cast<std::size_t>(2 * q_max + 1));
    for (int q = 0; q <= q_max; ++q) {
        values[static_cast<std::size_t>(q_max + q)] = nonnegative[static_cast<std::size_t>(q)];
        values[static_cast<std::size_t>(q_max - q)] = std::conj(nonnegative[static_cast<std::size_t>(q)]);
    }
    values[static_cast<std::size_t>(q_max)] = Complex(nonnegative[0].real(), 0.0);
    return CoefficientTable(q_max, std::move(values));
}

Complex CoefficientTable::at(int q) const {
    if (!covers(q)) {
        throw std::out_of_range("CoefficientTable: index q=" + std::to_string(q) + " outside band |q| <= " +
                                std::to_string(q_max_));
    }
    return (*this)[q];
}

bool CoefficientTable::is_conjugate_symmetric(double tol) const {
    for (int q = 0; q <= q_max_; ++q) {
        const Complex a = (*this)[q];
        const Complex b = (*this)[-q];
        if (std::abs(a - std::conj(b)) > tol * (1.0 + std::abs(a))) return false;
    }
    return true;
}

CoefficientTable CoefficientTable::truncated(int new_q_max) const {
    require_band(new_q_max, "CoefficientTable::truncated");
    if (new_q_max > q_max_) {
        throw std::out_of_range("CoefficientTable::truncated: requested band " + std::to_string(new_q_max) +
                                " exceeds available band " + std::to_string(q_max_));
    }
    const auto offset = static_cast<std::ptrdiff_t>(q_max_ - new_q_max);
    return CoefficientTable(new_q_max, std::vector<Complex>(values_.begin() + offset,
                                                            values_.begin() + offset + 2 * new_q_max + 1));
}

double CoefficientTable::sup_distance(const CoefficientTable& other) const {
    const int band = std::min(q_max_, other.q_max_);
    double sup = 0.0;
    for (int q = -band; q <= band; ++q) sup = std::max(sup, std::abs((*this)[q] - other[q]));
    return sup;
}

CoefficientTable CoefficientTable::operator-(const CoefficientTable& other) const {
    if (other.q_max_ != q_max_) throw std::invalid_argument("CoefficientTable: band mismatch in subtraction");
    std::vector<Complex> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] - other.values_[i];
    return CoefficientTable(q_max_, std::move(out));
}

CoefficientTable CoefficientTable::operator+(const CoefficientTable& other) const {
    if (other.q_max_ != q_max_) throw std::invalid_argument("CoefficientTable: band mismatch in addition");
    std::vector<Complex> out(values_.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = values_[i] + other.values_[i];
    return CoefficientTable(q_max_, std::move(out));
}

ObservedIncrements::ObservedIncrements(std::vector<double> times, std::vector<double> increments)
    : times_(std::move(times)), increments_(std::move(increments)) {
    if (times_.empty()) throw std::invalid_argument("ObservedIncrements: need at least one increment");
    if (times_.size() != increments_.size()) {
        throw std::invalid_argument("ObservedIncrements: times and increments differ in length");
    }
    for (std::size_t i = 0; i < times_.size(); ++i) {
        if (!(times_[i] >= -kPi && times_[i] <= kPi)) {
            throw std::invalid_argument("ObservedIncrements: time outside [-pi, pi] at index " + std::to_string(i));
        }
        if (i > 0 && !(times_[i - 1] < times_[i])) {
            throw std::invalid_argument("ObservedIncrements: times not strictly increasing at index " +
                                        std::to_string(i));
        }
        if (!std::isfinite(increments_[i])) {
            throw std::invalid_argument("ObservedIncrements: non-finite increment at index " + std::to_string(i));
        }
    }
}

ObservedIncrements ObservedIncrements::from_levels(std::span<const double> times, std::span<const double> levels) {
    if (times.size() != levels.size()) {
        throw std::invalid_argument("ObservedIncrements::from_levels: length mismatch");
    }
    if (times.size() < 2) throw std::invalid_argument("ObservedIncrements::from_levels: need at least two levels");
    std::vector<double> t(times.begin(), times.end() - 1);
    std::vector<double> d(times.size() - 1);
    for (std::size_t i = 0; i + 1 < levels.size(); ++i) d[i] = levels[i + 1] - levels[i];
    return ObservedIncrements(std::move(t), std::move(d));
}

ObservedIncrements ObservedIncrements::scaled(double factor) const {
    std::vector<double> d(increments_);
    for (auto& x : d) x *= factor;
    return ObservedIncrements(times_, std::move(d));
}

namespace detail {

std::vector<Complex> phase_sums(std::span<const double> times, std::span<const double> weights, int q_max) {
    require_band(q_max, "phase_sums");
    if (times.size() != weights.size()) throw std::invalid_argument("phase_sums: length mismatch");

    const std::size_t n = times.size();
    std::vector<double> cos_t(n), sin_t(n);
    for (std::size_t i = 0; i < n; ++i) {
        cos_t[i] = std::cos(times[i]);
        sin_t[i] = -std::sin(times[i]);
    }

    const auto harmonics = static_cast<std::size_t>(q_max) + 1;
    const std::size_t blocks = (harmonics + kAnchor - 1) / kAnchor;
    std::vector<Complex> out(harmonics);

    parallel_for(blocks, [&](std::size_t block) {
        const std::size_t q0 = block * kAnchor;
        const std::size_t len = std::min<std::size_t>(kAnchor, harmonics - q0);
        std::array<KahanComplex, kAnchor> acc{};

        for (std::size_t i = 0; i < n; i += kLanes) {
            std::array<double, kLanes> pr{}, pi{}, rr{}, ri{};
            bool any = false;
            for (std::size_t k = 0; k < kLanes; ++k) {
                rr[k] = 1.0;
                const std::size_t idx = i + k;
                if (idx >= n || weights[idx] == 0.0) continue;
                any = true;
                const double w = weights[idx];
                const double angle = static_cast<double>(q0) * times[idx];
                pr[k] = w * std::cos(angle);
                pi[k] = -w * std::sin(angle);
                rr[k] = cos_t[idx];
                ri[k] = sin_t[idx];
            }
            if (!any) continue;
            for (std::size_t j = 0; j < len; ++j) {
                acc[j].add((pr[0] + pr[1]) + (pr[2] + pr[3]), (pi[0] + pi[1]) + (pi[2] + pi[3]));
                for (std::size_t k = 0; k < kLanes; ++k) {
                    const double nr = pr[k] * rr[k] - pi[k] * ri[k];
                    const double ni = pr[k] * ri[k] + pi[k] * rr[k];
                    pr[k] = nr;
                    pi[k] = ni;
                }
            }
        }
        for (std::size_t j = 0; j < len; ++j) {
            out[q0 + j] = Complex(acc[j].re / kTwoPi, acc[j].im / kTwoPi);
        }
    });
    return out;
}

}  // namespace detail

CoefficientTable increment_coefficients(const ObservedIncrements& obs, int q_max) {
    require_band(q_max, "increment_coefficients");
    return CoefficientTable::from_nonnegative(detail::phase_sums(obs.times(), obs.increments(), q_max));
}

CoefficientTable function_coefficients(std::span<const double> times, std::span<const double> values, int q_max) {
    require_band(q_max, "function_coefficients");
    if (times.empty()) throw std::invalid_argument("function_coefficients: empty sample set");
    if (times.size() != values.size()) throw std::invalid_argument("function_coefficients: length mismatch");
    if (times.size() < 2) throw std::invalid_argument("function_coefficients: need at least two samples");
    constexpr double kEdge = 1e-9;
    if (std::abs(times.front() + kPi) > kEdge || std::abs(times.back() - kPi) > kEdge) {
        throw std::invalid_argument("function_coefficients: samples must cover [-pi, pi]");
    }
    std::vector<double> weights(times.size() - 1);
    for (std::size_t k = 0; k + 1 < times.size(); ++k) {
        const double dt = times[k + 1] - times[k];
        if (!(dt > 0.0)) {
            throw std::invalid_argument("function_coefficients: times not strictly increasing at index " +
                                        std::to_string(k + 1));
        }
        weights[k] = values[k] * dt;
    }
    return CoefficientTable::from_nonnegative(
        detail::phase_sums(times.first(times.size() - 1), weights, q_max));
}

CoefficientTable jump_coefficients(const JumpRecord& jumps, int q_max) {
    require_band(q_max, "jump_coefficients");
    if (jumps.empty()) return CoefficientTable::zeros(q_max);
    std::vector<double> times, weights;
    times.reserve(jumps.size());
    weights.reserve(jumps.size());
    for (const auto& e : jumps.events()) {
        times.push_back(e.time);
        weights.push_back(e.size * e.size);
    }
    return CoefficientTable::from_nonnegative(detail::phase_sums(times, weights, q_max));
}

Complex bohr_partial(const CoefficientTable& u, const CoefficientTable& v, int q, int harmonics) {
    if (harmonics < 1) throw std::invalid_argument("bohr_partial: N must be >= 1");
    if (u.q_max() < harmonics) {
        throw std::out_of_range("bohr_partial: first table band " + std::to_string(u.q_max()) +
                                " is narrower than N=" + std::to_string(harmonics));
    }
    const int needed = harmonics + std::abs(q);
    if (v.q_max() < needed) {
        throw std::out_of_range("bohr_partial: second table band " + std::to_string(v.q_max()) +
                                " is narrower than N+|q|=" + std::to_string(needed));
    }
    KahanComplex acc;
    for (int l = -harmonics; l <= harmonics; ++l) {
        const Complex term = u[l] * v[q - l];
        acc.add(term.real(), term.imag());
    }
    const double scale = 1.0 / static_cast<double>(2 * harmonics + 1);
    return Complex(acc.re * scale, acc.im * scale);
}

namespace {

void check_fejer_inputs(const CoefficientTable& coeffs, int degree) {
    if (degree < 1) throw std::invalid_argument("fejer_polynomial: degree M must be >= 1");
    if (degree > coeffs.q_max()) {
        throw std::out_of_range("fejer_polynomial: degree M=" + std::to_string(degree) +
                                " exceeds coefficient band Q=" + std::to_string(coeffs.q_max()));
    }
    if (!coeffs.truncated(degree).is_conjugate_symmetric(1e-12)) {
        throw std::invalid_argument("fejer_polynomial: coefficients are not conjugate symmetric");
    }
}

double fejer_value(const CoefficientTable& coeffs, int degree, double t) {
    Complex sum = coeffs[0];
    const double m = static_cast<double>(degree);
    // the l = +-M terms carry zero weight
    for (int l = 1; l < degree; ++l) {
        const double weight = 1.0 - static_cast<double>(l) / m;
        const Complex phase = std::polar(1.0, l * t);
        sum += weight * (coeffs[l] * phase + coeffs[-l] * std::conj(phase));
    }
    if (std::abs(sum.imag()) >= 1e-9 * (1.0 + std::abs(sum.real()))) {
        throw std::logic_error("fejer_polynomial: imaginary residue " + std::to_string(sum.imag()) +
                               " is not negligible");
    }
    return sum.real();
}

}  // namespace

double fejer_polynomial(const CoefficientTable& coeffs, int degree, double t) {
    check_fejer_inputs(coeffs, degree);
    return fejer_value(coeffs, degree, t);
}

std::vector<double> fejer_polynomial(const CoefficientTable& coeffs, int degree, std::span<const double> ts) {
    check_fejer_inputs(coeffs, degree);
    std::vector<double> out(ts.size());
    for (std::size_t k = 0; k < ts.size(); ++k) out[k] = fejer_value(coeffs, degree, ts[k]);
    return out;
}

}  // namespace fvol
