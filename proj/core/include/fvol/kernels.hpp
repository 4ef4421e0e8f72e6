#pragma once

#include <cstddef>

#include "fvol/partition.hpp"

namespace fvol {

/// Number of harmonics per side of a trigonometric kernel (N >= 1).
class KernelOrder {
public:
    explicit KernelOrder(int n);
    int value() const { return n_; }
    /// 2N + 1, the number of harmonics in the Dirichlet kernel.
    int width() const { return 2 * n_ + 1; }

private:
    int n_;
};

/// Maps t into (-pi, pi] using 2pi-periodicity.
double reduce_angle(double t);

/// D_N(t) = sum_{|l|<=N} cos(l t).
double dirichlet(KernelOrder n, double t);

/// D_N(t) / (2N + 1); equals 1 at the origin.
double dirichlet_rescaled(KernelOrder n, double t);

/// Fejer kernel (1/N) (sin(N t / 2) / sin(t / 2))^2, equal to N at the origin.
double fejer(KernelOrder n, double t);

/**
 * Composite midpoint approximation of the L^r mass of the Dirichlet kernel,
 * int_{-pi}^{pi} |D_N(s)|^r ds.
 *
 * Requires r > 1 and at least 10 (2N + 1) quadrature points so every
 * oscillation of the kernel is resolved.
 */
double dirichlet_lr_mass(KernelOrder n, double r, std::size_t quadrature_points);

/// 5 + 2 pi^r / (r - 1), the constant in the discretized Dirichlet bound.
double discretized_kernel_constant(double r);

/**
 * int_{-pi}^{t} |D~_N(floor(t) - floor(s))|^r ds where floor is the left
 * projection onto the partition. The integrand is constant on every cell of
 * the partition so the integral is summed cell by cell without quadrature.
 */
double discretized_kernel_integral(KernelOrder n, double r, const Partition& partition, double t);

/// 5 rho + (2N + 1)^{-1} A_r minus discretized_kernel_integral; non-negative.
double discretized_kernel_bound_gap(KernelOrder n, double r, const Partition& partition, double t);

}  // namespace fvol
