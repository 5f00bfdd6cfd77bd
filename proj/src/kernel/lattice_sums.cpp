#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/zeta.hpp>

#include "dipolar/errors.hpp"
#include "dipolar/kernel.hpp"

namespace dipolar {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

std::string format_g(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3g", x);
    return buf;
}

void check_tol(const Estimate& e, const ErrorBudget& budget, const char* who) {
    if (!(e.error <= budget.abs_tol))
        throw BudgetExceeded(std::string(who) + ": certified error " + format_g(e.error) + " exceeds abs_tol " +
                             format_g(budget.abs_tol));
}

}  // namespace

void ErrorBudget::validate() const {
    if (!(abs_tol > 0.0) || !std::isfinite(abs_tol)) throw DomainError("abs_tol must be positive");
    if (truncation_radius < 1) throw DomainError("truncation_radius must be >= 1");
    if (bessel_terms < 1) throw DomainError("bessel_terms must be >= 1");
}

ErrorBudget ErrorBudget::with_tol(double tol) const {
    ErrorBudget b = *this;
    b.abs_tol = tol;
    b.validate();
    return b;
}

ErrorBudget ErrorBudget::from_env() {
    ErrorBudget b;
    if (const char* env = std::getenv("DIPOLAR_ABS_TOL"); env && *env) {
        char* end = nullptr;
        const double v = std::strtod(env, &end);
        if (end == env || *end != '\0' || !(v > 0.0))
            throw DomainError(std::string("DIPOLAR_ABS_TOL is not a positive number: ") + env);
        b.abs_tol = v;
    }
    return b;
}

double CompensatedSum::rounding_bound() const {
    return 6.0 * kEps * abs_ + kEps * std::fabs(value());
}

Estimate axis_sum(double a, const ErrorBudget& budget) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("axis_sum: a must be positive");
    budget.validate();
    const double pref = 8.0 * kPi / a;
    Estimate modes = bessel_mode_sum(2.0 * kPi * a, 0.0, 0.5 * budget.abs_tol / pref, budget.bessel_terms);
    Estimate out{2.0 / (a * a) + pref * modes.value, pref * modes.error};
    out.error += 2.0 * kEps * std::fabs(out.value);
    check_tol(out, budget, "axis_sum");
    return out;
}

Estimate axis_sum_direct(double a, const ErrorBudget& budget) {
    if (!(a > 0.0) || !std::isfinite(a)) throw DomainError("axis_sum_direct: a must be positive");
    budget.validate();
    // Half-width of the integral bracket is at most N^{-3}.
    const double want = std::ceil(std::cbrt(2.0 / budget.abs_tol)) + 1.0;
    if (want > static_cast<double>(budget.truncation_radius))
        throw BudgetExceeded("axis_sum_direct: needs truncation radius " + std::to_string(want));
    const auto N = static_cast<std::int64_t>(want);
    const double a2 = a * a;
    CompensatedSum acc;
    for (std::int64_t n = N; n >= 1; --n) {
        const double nd = static_cast<double>(n);
        acc.add(2.0 / std::pow(nd * nd + a2, 1.5));
    }
    acc.add(1.0 / (a2 * a));
    // 2 int_M^inf (t^2 + a^2)^{-3/2} dt = 2 / (s (s + M)), s = sqrt(M^2 + a^2).
    auto tail_from = [a2](double m) {
        const double s = std::sqrt(m * m + a2);
        return 2.0 / (s * (s + m));
    };
    const double lo = tail_from(static_cast<double>(N + 1));
    const double hi = tail_from(static_cast<double>(N));
    Estimate out{acc.value() + 0.5 * (lo + hi), 0.5 * (hi - lo) + acc.rounding_bound()};
    check_tol(out, budget, "axis_sum_direct");
    return out;
}

Estimate bessel_double_tail(const ErrorBudget& budget) {
    budget.validate();
    const double q = std::exp(-2.0 * kPi);
    CompensatedSum acc;
    double err = 0.0;
    for (std::int64_t n = 1;; ++n) {
        const double beta = 2.0 * kPi * static_cast<double>(n);
        Estimate m = bessel_mode_sum(beta, 0.0, 1e-3 * budget.abs_tol * std::pow(q, n - 1), budget.bessel_terms);
        acc.add(m.value);
        err += m.error;
        const double tail = bessel_mode_bound(beta + 2.0 * kPi) / (1.0 - q);
        if (tail <= 0.25 * budget.abs_tol) {
            Estimate out{acc.value(), err + tail + acc.rounding_bound()};
            check_tol(out, budget, "bessel_double_tail");
            return out;
        }
    }
}

Estimate lattice_constant(const ErrorBudget& budget) {
    budget.validate();
    // 2 zeta(3) from the n2 = 0 row; each other row is an axis sum, whose
    // 2/n^2 parts add up to 4 zeta(2) and whose Bessel parts are summed here.
    const double q = std::exp(-2.0 * kPi);
    CompensatedSum acc;
    double err = 0.0;
    for (std::int64_t n = 1;; ++n) {
        const double nd = static_cast<double>(n);
        const double beta = 2.0 * kPi * nd;
        Estimate m = bessel_mode_sum(beta, 0.0, 1e-4 * budget.abs_tol * std::pow(q, n - 1), budget.bessel_terms);
        acc.add(m.value / nd);
        err += m.error / nd;
        const double tail = bessel_mode_bound(beta + 2.0 * kPi) / (1.0 - q);
        if (16.0 * kPi * tail <= 0.25 * budget.abs_tol) {
            err += tail;
            break;
        }
    }
    const double base = 2.0 * boost::math::zeta(3.0) + 4.0 * boost::math::zeta(2.0);
    Estimate out{base + 16.0 * kPi * acc.value(), 16.0 * kPi * (err + acc.rounding_bound()) + 4.0 * kEps * base};
    check_tol(out, budget, "lattice_constant");
    return out;
}

Estimate weighted_lattice_sum(const WeightProfile& w1, const WeightProfile& w2, double normalizer,
                              const ErrorBudget& budget) {
    budget.validate();
    if (!(normalizer > 0.0) || !std::isfinite(normalizer))
        throw DomainError("weighted_lattice_sum: normalizer must be positive");
    if (w1(0) * w2(0) != 0.0)
        throw DivergenceError("weighted_lattice_sum: both weights are nonzero at the origin");

    const auto s1 = w1.even_split();
    const auto s2 = w2.even_split();
    double mass1 = 0.0;
    double mass2 = 0.0;
    for (const auto& [n, w] : s1.finite) mass1 += std::fabs(w);
    for (const auto& [n, w] : s2.finite) mass2 += std::fabs(w);

    // Each axis-sum evaluation gets a share of the budget scaled by the total
    // weight that multiplies it.
    const double target = 0.25 * budget.abs_tol * normalizer;
    const double weight_mass = std::fabs(s1.whole_line) * mass2 + std::fabs(s2.whole_line) * mass1 + 1.0;
    const ErrorBudget axis_budget = budget.with_tol(std::max(target / weight_mass, 1e-300));
    const double zeta3 = 2.0 * boost::math::zeta(3.0);

    auto row_sum = [&](std::int64_t n) -> Estimate {
        if (n == 0) return {zeta3, 4.0 * kEps * zeta3};
        const double a = static_cast<double>(n < 0 ? -n : n);
        ErrorBudget b = axis_budget;
        // Rounding alone costs a few ulps of 2/a^2.
        b.abs_tol = std::max(b.abs_tol, 8.0 * kEps * (2.0 / (a * a)));
        return axis_sum(a, b);
    };

    CompensatedSum acc;
    double err = 0.0;

    if (s1.whole_line != 0.0 && s2.whole_line != 0.0) {
        const double c = s1.whole_line * s2.whole_line;
        Estimate c3 = lattice_constant(budget.with_tol(std::max(target / std::fabs(c), 1e-14)));
        acc.add(c * c3.value);
        err += std::fabs(c) * c3.error;
    }
    if (s1.whole_line != 0.0) {
        for (const auto& [n2, w] : s2.finite) {
            Estimate r = row_sum(n2);
            acc.add(s1.whole_line * w * r.value);
            err += std::fabs(s1.whole_line * w) * r.error;
        }
    }
    if (s2.whole_line != 0.0) {
        for (const auto& [n1, w] : s1.finite) {
            Estimate r = row_sum(n1);
            acc.add(s2.whole_line * w * r.value);
            err += std::fabs(s2.whole_line * w) * r.error;
        }
    }
    if (!s1.finite.empty() && !s2.finite.empty()) {
        for (const auto& [n1, a] : s1.finite) {
            const double x2 = static_cast<double>(n1) * static_cast<double>(n1);
            CompensatedSum row;
            for (const auto& [n2, b] : s2.finite) {
                if (n1 == 0 && n2 == 0) continue;
                const double r2 = x2 + static_cast<double>(n2) * static_cast<double>(n2);
                row.add(b / (r2 * std::sqrt(r2)));
            }
            acc.add(a * row.value());
            err += std::fabs(a) * row.rounding_bound();
        }
    }

    Estimate out{acc.value() / normalizer, (err + acc.rounding_bound()) / normalizer};
    check_tol(out, budget, "weighted_lattice_sum");
    return out;
}

}  // namespace dipolar
