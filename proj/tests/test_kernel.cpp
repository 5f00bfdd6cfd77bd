#include <cmath>
#include <cstdlib>
#include <numbers>
#include <tuple>

#include <boost/math/special_functions/zeta.hpp>
#include <doctest.h>

#include "dipolar/errors.hpp"
#include "dipolar/kernel.hpp"

using namespace dipolar;

namespace {

constexpr double kPi = std::numbers::pi;

// Dirichlet beta(s) = sum (-1)^n (2n+1)^{-s}. The mean of two consecutive
// partial sums of an alternating series with smooth terms is accurate to
// O(N^{-s-1}).
double dirichlet_beta(double s) {
    const int N = 2'000'000;
    double sum = 0.0;
    for (int n = N - 1; n >= 0; --n) sum += (n % 2 == 0 ? 1.0 : -1.0) * std::pow(2.0 * n + 1.0, -s);
    const double next = sum + (N % 2 == 0 ? 1.0 : -1.0) * std::pow(2.0 * N + 1.0, -s);
    return 0.5 * (sum + next);
}

// sum over images |d + L m|^{-3} with |m|_inf <= R, plus the continuum
// estimate 4 sqrt(2) / (a L^2) of the rest, a = L (R + 1/2).
double image_sum(std::int64_t d1, std::int64_t d2, std::int64_t L, int R) {
    double s = 0.0;
    for (int m1 = -R; m1 <= R; ++m1)
        for (int m2 = -R; m2 <= R; ++m2) {
            const double x = static_cast<double>(d1 + L * m1);
            const double y = static_cast<double>(d2 + L * m2);
            const double r2 = x * x + y * y;
            if (r2 > 0.0) s += 1.0 / (r2 * std::sqrt(r2));
        }
    const double a = static_cast<double>(L) * (R + 0.5);
    return s + 4.0 * std::sqrt(2.0) / (a * static_cast<double>(L * L));
}

}  // namespace

TEST_SUITE("kernel") {

TEST_CASE("bessel_k1 agrees with the standard library") {
    for (double x : {1e-6, 1e-3, 0.1, 0.5, 1.0, 1.9999, 2.0, 2.5, 5.0, 10.0, 30.0, 100.0, 600.0}) {
        const double ref = std::cyl_bessel_k(1.0, x);
        CHECK(bessel_k1(x) == doctest::Approx(ref).epsilon(2e-14));
        CHECK(bessel_k1_scaled(x) == doctest::Approx(ref * std::exp(x)).epsilon(2e-14));
    }
    CHECK_THROWS_AS(bessel_k1(0.0), DomainError);
    CHECK_THROWS_AS(bessel_k1(-1.0), DomainError);
}

TEST_CASE("the K1 envelope dominates K1") {
    for (double x = 0.05; x < 60.0; x *= 1.07) CHECK(bessel_k1_upper(x) >= bessel_k1(x));
}

TEST_CASE("harmonic numbers") {
    CHECK_THROWS_AS(harmonic_number(0), DomainError);
    CHECK(harmonic_number(1) == 1.0);
    CHECK(harmonic_number(4) == doctest::Approx(25.0 / 12.0).epsilon(1e-15));
    double h = 0.0;
    for (int k = 1; k <= 100000; ++k) h += 1.0 / k;
    CHECK(harmonic_number(100000) == doctest::Approx(h).epsilon(1e-13));
}

TEST_CASE("mode sums match direct summation and respect their bound") {
    for (double beta : {0.3, 1.0, 2.0 * kPi}) {
        for (double phase : {0.0, 0.7, kPi}) {
            double direct = 0.0;
            for (int k = 1; k < 4000; ++k) direct += k * std::cyl_bessel_k(1.0, beta * k) * std::cos(k * phase);
            const auto est = bessel_mode_sum(beta, phase, 1e-14, 1 << 20);
            CHECK(std::fabs(est.value - direct) <= est.error + 1e-13);
        }
        CHECK(bessel_mode_bound(beta) >= bessel_mode_sum(beta, 0.0, 1e-14, 1 << 20).value);
    }
    CHECK_THROWS_AS(bessel_mode_sum(1e-3, 0.0, 1e-14, 10), BudgetExceeded);
}

TEST_CASE("Poisson-resummed axis sums agree with direct sums") {
    for (double a : {0.25, 0.5, 1.0, 2.5, 7.0, 40.0}) {
        const auto p = axis_sum(a);
        const auto d = axis_sum_direct(a);
        CHECK(std::fabs(p.value - d.value) <= p.error + d.error);
        CHECK(p.error <= 1e-10);
    }
}

TEST_CASE("lattice constant equals 4 zeta(3/2) beta(3/2)") {
    const auto c = lattice_constant();
    const double oracle = 4.0 * boost::math::zeta(1.5) * dirichlet_beta(1.5);
    CHECK(c.value == doctest::Approx(oracle).epsilon(1e-11));
    CHECK(c.value == doctest::Approx(9.0336216831).epsilon(1e-10));
    CHECK(c.error <= 1e-10);
}

TEST_CASE("periodic kernel matches a brute-force image sum") {
    const std::tuple<int, int, int> cases[] = {{1, 0, 4}, {1, 2, 4}, {3, 5, 7}, {0, 1, 2}, {2, 2, 5}};
    for (auto [d1, d2, L] : cases) {
        const auto k = periodic_kernel(d1, d2, L, ErrorBudget{}.with_tol(1e-13));
        CHECK(std::fabs(k.value - image_sum(d1, d2, L, 400)) < 1e-6);
        CHECK(k.error <= 1e-13);
    }
    CHECK_THROWS_AS(periodic_kernel(0, 0, 4), DomainError);
}

TEST_CASE("periodic kernel symmetries") {
    const std::int64_t L = 9;
    for (std::int64_t a = 0; a < L; ++a)
        for (std::int64_t b = 0; b < L; ++b) {
            if (a == 0 && b == 0) continue;
            const auto k = periodic_kernel(a, b, L);
            const auto swapped = periodic_kernel(b, a, L);
            CHECK(std::fabs(swapped.value - k.value) <= swapped.error + k.error);
            CHECK(periodic_kernel(-a, b, L).value == doctest::Approx(k.value).epsilon(1e-13));
            CHECK(periodic_kernel(a + L, b - 2 * L, L).value == doctest::Approx(k.value).epsilon(1e-13));
        }
}

TEST_CASE("kernel table reproduces pointwise values") {
    const ErrorBudget b;
    const auto table = KernelTable::cached(6, b);
    CHECK(table == KernelTable::cached(6, b));
    CHECK(table->value(0, 0) == 0.0);
    for (std::int64_t a = 0; a < 6; ++a)
        for (std::int64_t c = 0; c < 6; ++c) {
            if (a == 0 && c == 0) continue;
            const auto k = periodic_kernel(a, c, 6, b);
            CHECK(std::fabs(table->value(a, c) - k.value) <= table->error(a, c) + k.error);
            CHECK(std::fabs(table->value(-a, c + 6) - k.value) <= table->error(-a, c + 6) + k.error);
        }
}

TEST_CASE("weighted lattice sum of finite weights equals the double sum") {
    const auto w1 = WeightProfile::tent(1, 5);
    const auto w2 = WeightProfile::tent(-2, 2);
    double direct = 0.0;
    for (int n1 = -10; n1 <= 10; ++n1)
        for (int n2 = -10; n2 <= 10; ++n2) {
            if (n1 == 0 && n2 == 0) continue;
            const double r2 = n1 * n1 + n2 * n2;
            direct += w1(n1) * w2(n2) / (r2 * std::sqrt(r2));
        }
    const auto s = weighted_lattice_sum(w1, w2, 3.0);
    CHECK(s.value == doctest::Approx(direct / 3.0).epsilon(1e-14));
}

TEST_CASE("weighted lattice sum with infinite weights against truncated sums") {
    // sum_{n1 in Z} sum_{n2 >= 1} min{n2, 3} |n|^{-3}, truncated at radius R
    // with an explicit tail bound.
    const int R = 3000;
    double direct = 0.0;
    for (int n1 = -R; n1 <= R; ++n1)
        for (int n2 = 1; n2 <= R; ++n2) {
            const double r2 = static_cast<double>(n1) * n1 + static_cast<double>(n2) * n2;
            direct += std::min(n2, 3) / (r2 * std::sqrt(r2));
        }
    const auto s = weighted_lattice_sum(WeightProfile::constant(1.0), WeightProfile::ramp_to_cap(1, 3), 1.0);
    // The omitted region carries at most 3 * 4 / R of the weight.
    CHECK(s.value > direct);
    CHECK(s.value - direct < 12.0 / R);
}

TEST_CASE("weighted lattice sum diverges when both weights touch the origin") {
    CHECK_THROWS_AS(weighted_lattice_sum(WeightProfile::constant(1.0), WeightProfile::constant(1.0), 1.0),
                    DivergenceError);
    CHECK_THROWS_AS(weighted_lattice_sum(WeightProfile::indicator(0, 0), WeightProfile::tent(-1, 1), 1.0),
                    DivergenceError);
}

TEST_CASE("compensated summation") {
    CompensatedSum s;
    s.add(1.0);
    for (int i = 0; i < 1000; ++i) s.add(1e-16);
    s.add(-1.0);
    CHECK(s.value() == doctest::Approx(1e-13).epsilon(1e-6));
    CHECK(s.abs_total() == doctest::Approx(2.0 + 1e-13));
}

TEST_CASE("error budget validation and environment override") {
    ErrorBudget b;
    CHECK_NOTHROW(b.validate());
    b.abs_tol = 0.0;
    CHECK_THROWS_AS(b.validate(), DomainError);
    CHECK(ErrorBudget{}.with_tol(1e-6).abs_tol == 1e-6);

    ::setenv("DIPOLAR_ABS_TOL", "1e-7", 1);
    CHECK(ErrorBudget::from_env().abs_tol == 1e-7);
    ::setenv("DIPOLAR_ABS_TOL", "nonsense", 1);
    CHECK_THROWS_AS(ErrorBudget::from_env(), DomainError);
    ::unsetenv("DIPOLAR_ABS_TOL");
    CHECK(ErrorBudget::from_env().abs_tol == ErrorBudget{}.abs_tol);
}

TEST_CASE("weight profiles") {
    const auto r = WeightProfile::ramp_to_cap(2, 3);
    CHECK(r(1) == 0.0);
    CHECK(r(2) == 1.0);
    CHECK(r(3) == 2.0);
    CHECK(r(4) == 3.0);
    CHECK(r(1000) == 3.0);
    CHECK(r(-5) == 0.0);
    const auto t = WeightProfile::tent(1, 5);
    CHECK(t(0) == 0.0);
    CHECK(t(1) == 1.0);
    CHECK(t(3) == 3.0);
    CHECK(t(5) == 1.0);
    CHECK(t(6) == 0.0);
    const auto c = WeightProfile::capped_tent(1, 9, 2);
    CHECK(c(1) == 1.0);
    CHECK(c(5) == 2.0);
    CHECK(c(9) == 1.0);
}

}  // TEST_SUITE
