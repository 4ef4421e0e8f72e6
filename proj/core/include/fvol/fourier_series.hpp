#pragma once

#include <complex>
#include <span>
#include <vector>

#include "fvol/jump_record.hpp"

namespace fvol {

using Complex = std::complex<double>;

/**
 * Complex Fourier coefficients on the symmetric band q = -Q..Q.
 *
 * Immutable after construction. Indexing outside the band throws
 * std::out_of_range: missing coefficients are never treated as zero.
 */
class CoefficientTable {
public:
    CoefficientTable(int q_max, std::vector<Complex> values);
    static CoefficientTable zeros(int q_max);

    /// Builds the table from q = 0..Q, filling negative q by conjugation.
    static CoefficientTable from_nonnegative(std::vector<Complex> nonnegative);

    int q_max() const { return q_max_; }
    std::size_t size() const { return values_.size(); }
    std::span<const Complex> values() const { return values_; }

    Complex operator[](int q) const { return values_[static_cast<std::size_t>(q + q_max_)]; }
    Complex at(int q) const;

    bool covers(int q) const { return q >= -q_max_ && q <= q_max_; }
    bool is_conjugate_symmetric(double tol = 1e-12) const;

    /// Same coefficients restricted to |q| <= new_q_max.
    CoefficientTable truncated(int new_q_max) const;

    /// Largest |this(q) - other(q)| over the common band.
    double sup_distance(const CoefficientTable& other) const;

    CoefficientTable operator-(const CoefficientTable& other) const;
    CoefficientTable operator+(const CoefficientTable& other) const;

private:
    int q_max_;
    std::vector<Complex> values_;
};

/**
 * Increments of an observed path, timestamped at the left endpoint of the
 * observation interval they span. Times are strictly increasing in [-pi, pi].
 */
class ObservedIncrements {
public:
    ObservedIncrements(std::vector<double> times, std::vector<double> increments);

    /// Consecutive differences of levels sampled at the given times.
    static ObservedIncrements from_levels(std::span<const double> times, std::span<const double> levels);

    std::span<const double> times() const { return times_; }
    std::span<const double> increments() const { return increments_; }
    std::size_t size() const { return times_.size(); }

    ObservedIncrements scaled(double factor) const;

private:
    std::vector<double> times_;
    std::vector<double> increments_;
};

/// (1 / 2pi) sum_i e^{-i q t_i} dX_i for |q| <= Q.
CoefficientTable increment_coefficients(const ObservedIncrements& obs, int q_max);

/// Left-Riemann approximation of (1 / 2pi) int e^{-i q t} phi(t) dt on a grid
/// covering [-pi, pi]; the last sample only closes the final interval.
CoefficientTable function_coefficients(std::span<const double> times, std::span<const double> values, int q_max);

/// (1 / 2pi) sum_z e^{-i q z} dJ_z^2.
CoefficientTable jump_coefficients(const JumpRecord& jumps, int q_max);

/**
 * Partial Bohr convolution (1 / (2N+1)) sum_{|l|<=N} u(l) v(q - l).
 * Throws std::out_of_range unless u covers |l| <= N and v covers |l| <= N + |q|.
 */
Complex bohr_partial(const CoefficientTable& u, const CoefficientTable& v, int q, int harmonics);

/**
 * Fejer-weighted trigonometric polynomial
 * sum_{|l|<=M} (1 - |l|/M) c(l) e^{i l t}, returned as its real part.
 *
 * Throws if M exceeds the table band, if the table is not conjugate
 * symmetric, or if the imaginary residue is not negligible.
 */
double fejer_polynomial(const CoefficientTable& coeffs, int degree, double t);

/// fejer_polynomial over a grid of evaluation times.
std::vector<double> fejer_polynomial(const CoefficientTable& coeffs, int degree, std::span<const double> ts);

namespace detail {

/// (1 / 2pi) sum_i w_i e^{-i q t_i} for q = 0..q_max with compensated sums.
std::vector<Complex> phase_sums(std::span<const double> times, std::span<const double> weights, int q_max);

}  // namespace detail

}  // namespace fvol
