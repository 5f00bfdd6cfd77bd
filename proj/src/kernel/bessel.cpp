#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include "dipolar/errors.hpp"
#include "dipolar/kernel.hpp"

namespace dipolar {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();

// Ascending series around the origin; accurate for 0 < x < 2.
double k1_series(double x) {
    const double y = 0.25 * x * x;
    double term = 1.0;  // (x^2/4)^k / (k! (k+1)!)
    double psi_k1 = -std::numbers::egamma;  // psi(k+1)
    double psi_k2 = 1.0 - std::numbers::egamma;  // psi(k+2)
    double i1 = 0.0;
    double digamma_part = 0.0;
    for (int k = 0; k < 60; ++k) {
        i1 += term;
        digamma_part += (psi_k1 + psi_k2) * term;
        if (term < kEps * 1e-3 * i1) break;
        psi_k1 += 1.0 / (k + 1);
        psi_k2 += 1.0 / (k + 2);
        term *= y / ((k + 1.0) * (k + 2.0));
    }
    i1 *= 0.5 * x;
    return 1.0 / x + std::log(0.5 * x) * i1 - 0.25 * x * digamma_part;
}

// Steed's continued fraction for K_0 and K_1, without the e^{-x} factor.
double k1_scaled_cf(double x) {
    double b = 2.0 * (1.0 + x);
    double d = 1.0 / b;
    double h = d;
    double delh = d;
    double q1 = 0.0;
    double q2 = 1.0;
    const double a1 = 0.25;
    double q = a1;
    double c = a1;
    double a = -a1;
    double s = 1.0 + q * delh;
    for (int i = 2; i < 10000; ++i) {
        a -= 2.0 * (i - 1);
        c = -a * c / i;
        const double qnew = (q1 - b * q2) / a;
        q1 = q2;
        q2 = qnew;
        q += c * qnew;
        b += 2.0;
        d = 1.0 / (b + a * d);
        delh = (b * d - 1.0) * delh;
        h += delh;
        const double dels = q * delh;
        s += dels;
        if (std::fabs(dels / s) < kEps) break;
    }
    h *= a1;
    const double k0 = std::sqrt(std::numbers::pi / (2.0 * x)) / s;
    return k0 * (x + 0.5 - h) / x;
}

void require_positive(double x, const char* who) {
    if (!(x > 0.0) || !std::isfinite(x))
        throw DomainError(std::string(who) + ": argument must be finite and positive");
}

}  // namespace

double bessel_k1(double x) {
    require_positive(x, "bessel_k1");
    if (x < 2.0) return k1_series(x);
    if (x > 745.0) return 0.0;
    return k1_scaled_cf(x) * std::exp(-x);
}

double bessel_k1_scaled(double x) {
    require_positive(x, "bessel_k1_scaled");
    if (x < 2.0) return k1_series(x) * std::exp(x);
    return k1_scaled_cf(x);
}

double bessel_k1_upper(double x) {
    require_positive(x, "bessel_k1_upper");
    return std::sqrt(std::numbers::pi / (2.0 * x)) * std::exp(-x) * (1.0 + 0.375 / x);
}

double harmonic_number(std::int64_t h) {
    if (h < 1) throw DomainError("harmonic_number: h must be >= 1");
    double s = 0.0;
    for (std::int64_t n = h; n >= 1; --n) s += 1.0 / static_cast<double>(n);
    return s;
}

Estimate bessel_mode_sum(double beta, double phase, double tol, std::int64_t max_terms) {
    require_positive(beta, "bessel_mode_sum");
    if (!(tol > 0.0)) throw DomainError("bessel_mode_sum: tolerance must be positive");
    CompensatedSum acc;
    const double q = std::exp(-beta);
    for (std::int64_t k = 1;; ++k) {
        const double kd = static_cast<double>(k);
        const double term = kd * bessel_k1(beta * kd);
        acc.add(phase == 0.0 ? term : term * std::cos(kd * phase));
        // Everything after term k is dominated by a geometric series built on
        // the envelope, once the ratio (k+2)/(k+1) e^{-beta} drops below one.
        const double ratio = (kd + 2.0) / (kd + 1.0) * q;
        if (ratio < 1.0) {
            const double next = (kd + 1.0) * bessel_k1_upper(beta * (kd + 1.0));
            const double tail = next / (1.0 - ratio);
            if (tail <= tol) return {acc.value(), tail + acc.rounding_bound()};
        }
        if (k >= max_terms)
            throw BudgetExceeded("bessel_mode_sum: tolerance not reached within " +
                                 std::to_string(max_terms) + " terms");
    }
}

double bessel_mode_bound(double beta) {
    require_positive(beta, "bessel_mode_bound");
    const double q = std::exp(-beta);
    double s = 0.0;
    for (std::int64_t k = 1;; ++k) {
        const double kd = static_cast<double>(k);
        const double term = kd * bessel_k1_upper(beta * kd);
        s += term;
        const double ratio = (kd + 2.0) / (kd + 1.0) * q;
        if (ratio < 1.0) {
            const double tail = (kd + 1.0) * bessel_k1_upper(beta * (kd + 1.0)) / (1.0 - ratio);
            if (tail <= 1e-3 * s || tail == 0.0) return (s + tail) * (1.0 + 4.0 * kEps);
        }
    }
}

}  // namespace dipolar
