#include "fvol/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace fvol {
namespace {

// Below this |sin(t/2)| the closed forms lose digits to cancellation.
constexpr double kSingularGuard = 1e-8;

void require_exponent(double r, const char* where) {
    if (!(r > 1.0)) {
        throw std::invalid_argument(std::string(where) + ": exponent r must be > 1");
    }
}

}  // namespace

KernelOrder::KernelOrder(int n) : n_(n) {
    if (n < 1) {
        throw std::invalid_argument("KernelOrder: N must be >= 1, got " + std::to_string(n));
    }
}

double reduce_angle(double t) {
    double x = std::remainder(t, kTwoPi);
    if (x <= -kPi) x += kTwoPi;
    if (x > kPi) x -= kTwoPi;
    return x;
}

double dirichlet(KernelOrder n, double t) {
    const double x = reduce_angle(t);
    const double s = std::sin(0.5 * x);
    const int order = n.value();
    if (std::abs(s) < kSingularGuard) {
        // cos(l x) = 1 - 2 sin^2(l x / 2) keeps the value at the origin exact.
        double deficit = 0.0;
        for (int l = order; l >= 1; --l) {
            const double h = std::sin(0.5 * l * x);
            deficit += h * h;
        }
        return (2.0 * order + 1.0) - 4.0 * deficit;
    }
    return std::sin((order + 0.5) * x) / s;
}

double dirichlet_rescaled(KernelOrder n, double t) {
    return dirichlet(n, t) / static_cast<double>(n.width());
}

double fejer(KernelOrder n, double t) {
    const double x = reduce_angle(t);
    const double s = std::sin(0.5 * x);
    const int order = n.value();
    if (std::abs(s) < kSingularGuard) {
        // sum_{|l|<N} (1 - |l|/N) cos(l x), written as N minus a deficit
        double deficit = 0.0;
        for (int l = order - 1; l >= 1; --l) {
            const double h = std::sin(0.5 * l * x);
            deficit += (1.0 - static_cast<double>(l) / order) * h * h;
        }
        return static_cast<double>(order) - 4.0 * deficit;
    }
    const double ratio = std::sin(0.5 * order * x) / s;
    return ratio * ratio / order;
}

double dirichlet_lr_mass(KernelOrder n, double r, std::size_t quadrature_points) {
    require_exponent(r, "dirichlet_lr_mass");
    const auto needed = static_cast<std::size_t>(10 * n.width());
    if (quadrature_points < needed) {
        throw std::invalid_argument("dirichlet_lr_mass: need at least " + std::to_string(needed) +
                                    " quadrature points for N=" + std::to_string(n.value()));
    }
    const double h = kTwoPi / static_cast<double>(quadrature_points);
    double sum = 0.0;
    double comp = 0.0;
    for (std::size_t k = 0; k < quadrature_points; ++k) {
        const double s = -kPi + (static_cast<double>(k) + 0.5) * h;
        const double y = std::pow(std::abs(dirichlet(n, s)), r) - comp;
        const double next = sum + y;
        comp = (next - sum) - y;
        sum = next;
    }
    return sum * h;
}

double discretized_kernel_constant(double r) {
    require_exponent(r, "discretized_kernel_constant");
    return 5.0 + 2.0 * std::pow(kPi, r) / (r - 1.0);
}

double discretized_kernel_integral(KernelOrder n, double r, const Partition& partition, double t) {
    require_exponent(r, "discretized_kernel_integral");
    if (!(t >= -kPi && t <= kPi)) {
        throw std::invalid_argument("discretized_kernel_integral: t must lie in [-pi, pi]");
    }
    const auto grid = partition.times();
    const double anchor = partition.floor(t);
    double sum = 0.0;
    for (std::size_t k = 0; k + 1 < grid.size() && grid[k] < t; ++k) {
        const double length = std::min(grid[k + 1], t) - grid[k];
        sum += std::pow(std::abs(dirichlet_rescaled(n, anchor - grid[k])), r) * length;
    }
    return sum;
}

double discretized_kernel_bound_gap(KernelOrder n, double r, const Partition& partition, double t) {
    const double integral = discretized_kernel_integral(n, r, partition, t);
    const double bound = 5.0 * partition.norm() + discretized_kernel_constant(r) / n.width();
    return bound - integral;
}

}  // namespace fvol
