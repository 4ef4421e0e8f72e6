#include <cmath>
#include <stdexcept>
#include <vector>

#include "doctest.h"
#include "oracles.hpp"

#include "fvol/fourier_series.hpp"
#include "fvol/partition.hpp"
#include "fvol/rng.hpp"

using namespace fvol;

namespace {

const Complex I(0.0, 1.0);

ObservedIncrements random_increments(std::uint64_t seed, std::size_t m, bool regular) {
    RandomStream rng(seed, 0);
    std::vector<double> times;
    if (regular) {
        const auto grid = Partition::regular(m);
        times.assign(grid.times().begin(), grid.times().end() - 1);
    } else {
        std::vector<double> gaps(m);
        double total = 0.0;
        for (auto& g : gaps) total += (g = 0.2 + rng.uniform());
        double t = -kPi;
        for (double g : gaps) {
            times.push_back(t);
            t += kTwoPi * g / total;
        }
    }
    std::vector<double> dx(m);
    for (auto& x : dx) x = rng.normal() * std::sqrt(kTwoPi / m);
    return ObservedIncrements(times, dx);
}

CoefficientTable constant_table(int q_max, Complex value) {
    return CoefficientTable(q_max, std::vector<Complex>(static_cast<std::size_t>(2 * q_max + 1), value));
}

}  // namespace

TEST_SUITE("fourier_series") {

TEST_CASE("coefficient table basics") {
    const auto t = CoefficientTable::from_nonnegative({Complex(2, 0), Complex(1, 3), Complex(0, -1)});
    CHECK(t.q_max() == 2);
    CHECK(t[-1] == Complex(1, -3));
    CHECK(t[-2] == Complex(0, 1));
    CHECK(t.is_conjugate_symmetric());
    CHECK_THROWS_AS(t.at(3), std::out_of_range);
    CHECK_THROWS_AS(t.at(-3), std::out_of_range);
    CHECK(t.truncated(1).q_max() == 1);
    CHECK(t.truncated(1)[1] == t[1]);
    CHECK_THROWS(t.truncated(3));
    CHECK(t.sup_distance(t) == 0.0);
    CHECK((t - t).sup_distance(CoefficientTable::zeros(2)) == 0.0);
    CHECK((t + t)[1] == Complex(2, 6));
    CHECK_THROWS(CoefficientTable(2, std::vector<Complex>(4)));
    CHECK_FALSE(CoefficientTable(1, {Complex(1, 0), Complex(0, 0), Complex(1, 0.5)}).is_conjugate_symmetric());
}

TEST_CASE("observed increments validate their input") {
    CHECK_THROWS(ObservedIncrements({}, {}));
    CHECK_THROWS(ObservedIncrements({0.0, 1.0}, {1.0}));
    CHECK_THROWS(ObservedIncrements({0.0, 0.0}, {1.0, 2.0}));
    CHECK_THROWS(ObservedIncrements({1.0, 0.0}, {1.0, 2.0}));
    CHECK_THROWS(ObservedIncrements({0.0, 4.0}, {1.0, 2.0}));
    CHECK_THROWS(ObservedIncrements({0.0}, {std::nan("")}));
    const std::vector<double> t{-kPi, 0.0, kPi};
    const std::vector<double> x{1.0, 3.0, 2.0};
    const auto obs = ObservedIncrements::from_levels(t, x);
    REQUIRE(obs.size() == 2);
    CHECK(obs.increments()[0] == 2.0);
    CHECK(obs.increments()[1] == -1.0);
    CHECK(obs.times()[1] == 0.0);
    CHECK(obs.scaled(2.0).increments()[1] == -2.0);
}

TEST_CASE("increment coefficients examples") {
    SUBCASE("single increment") {
        const double a = 1.7, t0 = 0.9;
        const auto c = increment_coefficients(ObservedIncrements({t0}, {a}), 6);
        for (int q = -6; q <= 6; ++q) {
            const Complex expected = a * std::exp(-I * (q * t0)) / kTwoPi;
            CHECK(std::abs(c[q] - expected) < 1e-15);
        }
    }
    SUBCASE("zero increments") {
        const auto c = increment_coefficients(ObservedIncrements({-1.0, 0.0, 1.0}, {0.0, 0.0, 0.0}), 5);
        CHECK(c.sup_distance(CoefficientTable::zeros(5)) == 0.0);
    }
    SUBCASE("two increments") {
        const auto c = increment_coefficients(ObservedIncrements({0.0, kPi / 2}, {1.0, 2.0}), 1);
        CHECK(std::abs(c[1] - Complex(1.0, -2.0) / kTwoPi) < 1e-15);
    }
}

TEST_CASE("phase accumulation matches direct long-double sums") {
    for (bool regular : {true, false}) {
        const auto obs = random_increments(regular ? 11 : 12, 3001, regular);
        const int q_max = 700;
        const auto c = increment_coefficients(obs, q_max);
        double scale = 0.0;
        for (double x : obs.increments()) scale += std::abs(x);
        scale /= kTwoPi;
        for (int q = -q_max; q <= q_max; q += 23) {
            const auto expected = oracle::phase_sum(obs.times(), obs.increments(), q);
            CHECK(std::abs(c[q] - Complex(static_cast<double>(expected.real()), static_cast<double>(expected.imag()))) <
                  1e-13 * scale);
        }
        CHECK(c.is_conjugate_symmetric(0.0));
    }
}

TEST_CASE("increment coefficients are linear") {
    const auto a = random_increments(21, 400, false);
    std::vector<double> mixed(a.size());
    RandomStream rng(22, 0);
    std::vector<double> other(a.size());
    for (auto& x : other) x = rng.normal();
    for (std::size_t i = 0; i < mixed.size(); ++i) mixed[i] = 3.0 * a.increments()[i] - 0.5 * other[i];
    const std::vector<double> times(a.times().begin(), a.times().end());
    const auto ca = increment_coefficients(a, 40);
    const auto cb = increment_coefficients(ObservedIncrements(times, other), 40);
    const auto cm = increment_coefficients(ObservedIncrements(times, mixed), 40);
    for (int q = -40; q <= 40; ++q) CHECK(std::abs(cm[q] - (3.0 * ca[q] - 0.5 * cb[q])) < 1e-12);
}

TEST_CASE("function coefficients") {
    const auto grid = Partition::regular(10000);
    const auto t = grid.times();
    std::vector<double> v(t.size());

    SUBCASE("constant") {
        std::fill(v.begin(), v.end(), 2.5);
        const auto c = function_coefficients(t, v, 6);
        CHECK(c[0].real() == doctest::Approx(2.5).epsilon(1e-13));
        for (int q = 1; q <= 6; ++q) CHECK(std::abs(c[q]) < 1e-12);
    }
    SUBCASE("cosine and sine") {
        for (std::size_t i = 0; i < t.size(); ++i) v[i] = std::cos(t[i]);
        auto c = function_coefficients(t, v, 4);
        CHECK(std::abs(c[1] - 0.5) < 1e-12);
        CHECK(std::abs(c[-1] - 0.5) < 1e-12);
        CHECK(std::abs(c[0]) < 1e-12);
        CHECK(std::abs(c[3]) < 1e-12);
        for (std::size_t i = 0; i < t.size(); ++i) v[i] = std::sin(t[i]);
        c = function_coefficients(t, v, 4);
        CHECK(std::abs(c[1] - Complex(0.0, -0.5)) < 1e-12);
        CHECK(std::abs(c[-1] - Complex(0.0, 0.5)) < 1e-12);
    }
    SUBCASE("first-order convergence for a non-periodic function") {
        // e^{t/2} jumps across the period boundary, so the left-Riemann rule
        // converges at order one: halving the mesh halves the error.
        double prev = 0.0;
        for (std::size_t m : {1000u, 2000u, 4000u, 8000u}) {
            const auto g = Partition::regular(m);
            std::vector<double> f(g.points());
            for (std::size_t i = 0; i < f.size(); ++i) f[i] = std::exp(0.5 * g.times()[i]);
            const auto c = function_coefficients(g.times(), f, 3);
            double err = 0.0;
            for (int q = -3; q <= 3; ++q) err = std::max(err, std::abs(c[q] - oracle::exp_half_coefficient(q)));
            if (prev > 0.0) CHECK(prev / err == doctest::Approx(2.0).epsilon(0.02));
            prev = err;
        }
    }
    SUBCASE("preconditions") {
        CHECK_THROWS(function_coefficients(std::vector<double>{0.0}, std::vector<double>{1.0}, 2));
        CHECK_THROWS(function_coefficients(std::vector<double>{-1.0, kPi}, std::vector<double>{1.0, 1.0}, 2));
        CHECK_THROWS(function_coefficients(t, std::vector<double>(3, 1.0), 2));
    }
}

TEST_CASE("jump coefficients") {
    CHECK(jump_coefficients(JumpRecord(), 4).sup_distance(CoefficientTable::zeros(4)) == 0.0);
    const auto single = jump_coefficients(JumpRecord({{0.0, 1.0}}), 5);
    for (int q = -5; q <= 5; ++q) CHECK(std::abs(single[q] - 1.0 / kTwoPi) < 1e-16);
    const double a = 0.7, b = -1.3;
    const auto two = jump_coefficients(JumpRecord({{0.0, a}, {kPi / 2, b}}), 2);
    CHECK(std::abs(two[2] - (a * a - b * b) / kTwoPi) < 1e-15);
}

TEST_CASE("bohr partial convolution") {
    SUBCASE("constant tables") {
        const auto one = constant_table(20, 1.0);
        for (int q : {-5, 0, 3, 10}) CHECK(std::abs(bohr_partial(one, one, q, 10) - 1.0) < 1e-15);
    }
    SUBCASE("delta at zero") {
        std::vector<Complex> u(21, 0.0);
        u[10] = Complex(2.0, -1.0);
        RandomStream rng(5, 0);
        std::vector<Complex> v(41);
        for (auto& x : v) x = Complex(rng.normal(), rng.normal());
        const CoefficientTable tu(10, u), tv(20, v);
        for (int q = -10; q <= 10; ++q) {
            CHECK(std::abs(bohr_partial(tu, tv, q, 10) - u[10] * tv[q] / 21.0) < 1e-15);
        }
    }
    SUBCASE("single-increment tables at q = 0") {
        const double a = 1.3, t0 = -0.4;
        const auto c = increment_coefficients(ObservedIncrements({t0}, {a}), 3);
        CHECK(std::abs(bohr_partial(c, c, 0, 3) - a * a / (kTwoPi * kTwoPi)) < 1e-15);
    }
    SUBCASE("coverage is enforced") {
        const auto u = constant_table(5, 1.0);
        CHECK_THROWS_AS(bohr_partial(u, u, 0, 6), std::out_of_range);
        CHECK_THROWS_AS(bohr_partial(u, u, 2, 4), std::out_of_range);
        CHECK_NOTHROW(bohr_partial(u, u, 1, 4));
    }
    SUBCASE("swapping the arguments only moves the summation window") {
        // (f * g)(q) and (g * f)(q) share every term except the |q| at each
        // end of the window, so they agree at q = 0 and differ by at most
        // 2|q| max|f| max|g| / (2N+1) otherwise.
        const auto f = increment_coefficients(random_increments(3, 200, false), 30);
        const auto g = increment_coefficients(random_increments(4, 200, false), 30);
        double fmax = 0.0, gmax = 0.0;
        for (int l = -30; l <= 30; ++l) {
            fmax = std::max(fmax, std::abs(f[l]));
            gmax = std::max(gmax, std::abs(g[l]));
        }
        CHECK(std::abs(bohr_partial(f, g, 0, 20) - bohr_partial(g, f, 0, 20)) < 1e-15);
        for (int q = -8; q <= 8; ++q) {
            CHECK(std::abs(bohr_partial(f, g, q, 20) - bohr_partial(g, f, q, 20)) <=
                  2.0 * std::abs(q) * fmax * gmax / 41.0 + 1e-15);
        }
    }
}

TEST_CASE("fejer polynomial") {
    SUBCASE("constant coefficient") {
        std::vector<Complex> v(11, 0.0);
        v[5] = 3.25;
        const CoefficientTable c(5, v);
        for (double t : {-kPi, -1.0, 0.0, 2.0}) CHECK(fejer_polynomial(c, 4, t) == doctest::Approx(3.25));
    }
    SUBCASE("unit coefficients sum to M at the origin") {
        for (int m : {1, 2, 5, 17}) CHECK(fejer_polynomial(constant_table(m, 1.0), m, 0.0) == doctest::Approx(m));
    }
    SUBCASE("single jump table peaks at M a^2 / 2pi") {
        const double a = 1.5, t0 = 0.8;
        const auto c = jump_coefficients(JumpRecord({{t0, a}}), 12);
        CHECK(fejer_polynomial(c, 12, t0) == doctest::Approx(a * a / kTwoPi * 12).epsilon(1e-13));
    }
    SUBCASE("analytic Fejer mean of a trigonometric polynomial") {
        // V = 2 + cos t has Fejer mean 2 + (1 - 1/M) cos t.
        const auto c = CoefficientTable::from_nonnegative({2.0, 0.5});
        const auto grid = linspace_grid(33);
        const auto values = fejer_polynomial(c.truncated(1), 1, grid);
        for (std::size_t i = 0; i < grid.size(); ++i) CHECK(values[i] == doctest::Approx(2.0));
        const auto wide = CoefficientTable::from_nonnegative({2.0, 0.5, 0.0, 0.0, 0.0});
        for (double t : grid) CHECK(fejer_polynomial(wide, 4, t) == doctest::Approx(2.0 + 0.75 * std::cos(t)));
    }
    SUBCASE("preconditions") {
        const auto c = constant_table(4, 1.0);
        CHECK_THROWS(fejer_polynomial(c, 5, 0.0));
        CHECK_THROWS(fejer_polynomial(c, 0, 0.0));
        CHECK_THROWS(fejer_polynomial(CoefficientTable(1, {1.0, 0.0, Complex(0.0, 1.0)}), 1, 0.0));
    }
}

}  // TEST_SUITE
