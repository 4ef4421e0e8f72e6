#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "doctest.h"
#include "oracles.hpp"

#include "fvol/kernels.hpp"
#include "fvol/rng.hpp"

using namespace fvol;

TEST_SUITE("kernels") {

TEST_CASE("kernel order rejects non-positive N") {
    CHECK_THROWS_AS(KernelOrder(0), std::invalid_argument);
    CHECK_THROWS_AS(KernelOrder(-3), std::invalid_argument);
    CHECK(KernelOrder(4).width() == 9);
}

TEST_CASE("dirichlet examples") {
    CHECK(dirichlet(KernelOrder(5), 0.0) == doctest::Approx(11.0).epsilon(1e-15));
    CHECK(dirichlet(KernelOrder(1), kPi) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(dirichlet(KernelOrder(2), kPi / 2) == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(dirichlet_rescaled(KernelOrder(7), 0.0) == 1.0);
    CHECK(dirichlet_rescaled(KernelOrder(1), kPi) == doctest::Approx(-1.0 / 3.0).epsilon(1e-14));
    CHECK(dirichlet_rescaled(KernelOrder(2), kPi / 2) == doctest::Approx(-0.2).epsilon(1e-14));
}

TEST_CASE("fejer examples") {
    CHECK(fejer(KernelOrder(10), 0.0) == 10.0);
    CHECK(std::abs(fejer(KernelOrder(4), kPi)) < 1e-14);
    for (double t : {-6.0, -2.5, 0.3, 1.0, 3.0, 6.2}) CHECK(fejer(KernelOrder(1), t) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("closed forms agree with term-by-term sums") {
    RandomStream rng(7, 0);
    for (int n : {1, 2, 3, 8, 31, 64, 200}) {
        for (int k = 0; k < 40; ++k) {
            double t = -2.0 * kTwoPi + 4.0 * kTwoPi * rng.uniform();
            if (k == 0) t = 1e-9;
            if (k == 1) t = kTwoPi - 1e-10;
            if (k == 2) t = -kPi;
            const long double d = oracle::dirichlet(n, t);
            CHECK(std::abs(dirichlet(KernelOrder(n), t) - static_cast<double>(d)) <= 1e-11 * (2 * n + 1));
            CHECK(std::abs(dirichlet_rescaled(KernelOrder(n), t) - static_cast<double>(d / (2 * n + 1))) <= 1e-12);
            if (n <= 64) {
                const long double f = oracle::fejer(n, t);
                CHECK(std::abs(fejer(KernelOrder(n), t) - static_cast<double>(f)) <= 1e-11 * n);
            }
        }
    }
}

TEST_CASE("kernels are even, 2pi-periodic and fejer is non-negative") {
    RandomStream rng(8, 0);
    for (int i = 0; i < 200; ++i) {
        const double t = -kPi + kTwoPi * rng.uniform();
        const KernelOrder n(1 + static_cast<int>(rng.next_u64() % 300));
        CHECK(dirichlet(n, t) == doctest::Approx(dirichlet(n, -t)).epsilon(1e-12));
        CHECK(dirichlet(n, t) == doctest::Approx(dirichlet(n, t + kTwoPi)).epsilon(1e-9).scale(2 * n.value() + 1));
        CHECK(fejer(n, t) >= 0.0);
        CHECK(fejer(n, t) <= n.value() * (1.0 + 1e-12));
    }
}

TEST_CASE("reduce_angle maps into (-pi, pi]") {
    CHECK(reduce_angle(kPi) == kPi);
    CHECK(reduce_angle(-kPi) == doctest::Approx(kPi));
    CHECK(reduce_angle(3 * kPi / 2) == doctest::Approx(-kPi / 2));
    CHECK(reduce_angle(0.25) == 0.25);
}

TEST_CASE("L^r mass of the Dirichlet kernel") {
    SUBCASE("Parseval at r = 2") {
        CHECK(dirichlet_lr_mass(KernelOrder(1), 2.0, 20000) == doctest::Approx(6 * kPi).epsilon(1e-10));
        CHECK(dirichlet_lr_mass(KernelOrder(8), 2.0, 20000) == doctest::Approx(34 * kPi).epsilon(1e-10));
    }
    SUBCASE("preconditions") {
        CHECK_THROWS_AS(dirichlet_lr_mass(KernelOrder(4), 1.0, 1000), std::invalid_argument);
        CHECK_THROWS_AS(dirichlet_lr_mass(KernelOrder(4), 2.0, 50), std::invalid_argument);
    }
    SUBCASE("growth like N^{r-1} for r > 1") {
        // int |D_N|^r is of order (2N+1)^{r-1}; the ratio stays bounded as N doubles.
        for (double r : {1.5, 2.0, 3.0}) {
            double prev = 0.0;
            for (int n : {16, 32, 64, 128}) {
                const double scaled = dirichlet_lr_mass(KernelOrder(n), r, 400 * n) / std::pow(2.0 * n + 1, r - 1);
                CHECK(scaled > 0.5);
                CHECK(scaled < 2.0 * kTwoPi);
                if (prev > 0.0) CHECK(std::abs(scaled / prev - 1.0) < 0.1);
                prev = scaled;
            }
        }
    }
}

TEST_CASE("discretized kernel constant") {
    CHECK(discretized_kernel_constant(2.0) == doctest::Approx(5.0 + 2.0 * kPi * kPi));
    CHECK(discretized_kernel_constant(3.0) == doctest::Approx(5.0 + std::pow(kPi, 3.0)));
    CHECK_THROWS_AS(discretized_kernel_constant(1.0), std::invalid_argument);
}

TEST_CASE("discretized kernel integral against a cell-by-cell oracle") {
    RandomStream rng(9, 0);
    std::vector<double> times{-kPi};
    while (times.back() < kPi - 0.05) times.push_back(times.back() + 0.005 + 0.03 * rng.uniform());
    times.back() = kPi;
    const auto grid = Partition::explicit_times(times);
    for (int n : {4, 16}) {
        for (double r : {2.0, 3.5}) {
            for (double t : {-kPi, -1.234, 0.0, 0.5, kPi}) {
                // Independent evaluation: floor by linear scan, kernel by term sum.
                std::size_t ft = 0;
                while (ft + 1 < times.size() && times[ft + 1] <= t) ++ft;
                long double expected = 0.0L;
                for (std::size_t i = 0; i + 1 < times.size() && times[i] < t; ++i) {
                    const long double len = std::min(times[i + 1], t) - times[i];
                    const long double d = oracle::dirichlet(n, times[ft] - times[i]) / (2 * n + 1);
                    expected += len * std::pow(std::abs(d), static_cast<long double>(r));
                }
                CHECK(discretized_kernel_integral(KernelOrder(n), r, grid, t) ==
                      doctest::Approx(static_cast<double>(expected)).epsilon(1e-10));
            }
        }
    }
}

TEST_CASE("discretized bound holds on a regular grid at t = pi") {
    const auto grid = Partition::regular(1024);
    for (int n = 1; n <= 512; n *= 2) {
        CHECK(discretized_kernel_bound_gap(KernelOrder(n), 2.0, grid, kPi) >= 0.0);
    }
    CHECK_THROWS_AS(discretized_kernel_integral(KernelOrder(4), 2.0, grid, 4.0), std::invalid_argument);
}

}  // TEST_SUITE
