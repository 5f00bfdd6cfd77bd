#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <string>

#include <boost/math/special_functions/trigamma.hpp>

#include "dipolar/energies.hpp"
#include "dipolar/errors.hpp"

namespace dipolar {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

// sum_{j>=1} sum_{n=1}^{h} j K_1(2 pi j n).
Estimate near_bessel_block(std::int64_t h, double tol, const ErrorBudget& budget) {
    CompensatedSum acc;
    double err = 0.0;
    const double q = std::exp(-2.0 * kPi);
    for (std::int64_t n = 1; n <= h; ++n) {
        const double beta = 2.0 * kPi * static_cast<double>(n);
        // The remaining rows are smaller than tol taken together: stop.
        const double rest = bessel_mode_bound(beta) / (1.0 - q);
        if (rest <= 0.1 * tol) {
            err += rest;
            break;
        }
        Estimate m = bessel_mode_sum(beta, 0.0, 0.1 * tol * std::pow(q, n - 1), budget.bessel_terms);
        acc.add(m.value);
        err += m.error;
    }
    return {acc.value(), err + acc.rounding_bound()};
}

// sum_{n>h} (tri(n)/n) sum_j j K_1(2 pi j n), with 0 <= tri(n) <= h.
Estimate far_bessel_block(std::int64_t h, double tol) {
    const double q = std::exp(-2.0 * kPi);
    CompensatedSum acc;
    double err = 0.0;
    const std::int64_t P = 2 * h;
    for (std::int64_t n = h + 1;; ++n) {
        const double beta = 2.0 * kPi * static_cast<double>(n);
        const double bound = bessel_mode_bound(beta);
        const double rest = static_cast<double>(h) / static_cast<double>(n) * bound / (1.0 - q);
        if (rest <= 0.1 * tol) {
            err += rest;
            break;
        }
        std::int64_t r = n % P;
        const double tri = static_cast<double>(std::min(r, P - r));
        Estimate m = bessel_mode_sum(beta, 0.0, 0.1 * tol * std::pow(q, n - h), std::int64_t{1} << 20);
        acc.add(tri / static_cast<double>(n) * m.value);
        err += tri / static_cast<double>(n) * m.error;
    }
    return {acc.value(), err + acc.rounding_bound()};
}

}  // namespace

EnergyResult stripe_energy(std::int64_t h, double J, const ErrorBudget& budget) {
    if (h < 1) throw DomainError("stripe_energy: h must be >= 1");
    if (!std::isfinite(J)) throw DomainError("stripe_energy: J must be finite");
    budget.validate();
    const double hd = static_cast<double>(h);
    const double tol = 0.1 * budget.abs_tol * hd;

    CompensatedSum harm;
    for (std::int64_t n = h; n >= 1; --n) harm.add(1.0 / static_cast<double>(n));
    const double harm_err = harm.rounding_bound() + kEps * harm.abs_total();

    // sum_{n>h} tri(n)/n^2 grouped by residue mod 2h into trigamma values.
    const std::int64_t P = 2 * h;
    const double Pd = static_cast<double>(P);
    CompensatedSum lam;
    for (std::int64_t r = h + 1; r <= 3 * h; ++r) {
        const double w = static_cast<double>(r > 2 * h ? r - 2 * h : 2 * h - r);
        if (w == 0.0) continue;
        lam.add(w * boost::math::trigamma(static_cast<double>(r) / Pd));
    }
    const double lam_value = lam.value() / (Pd * Pd);
    const double lam_err = (lam.rounding_bound() + 4.0 * kEps * lam.abs_total()) / (Pd * Pd);

    Estimate near = near_bessel_block(h, tol / (8.0 * kPi), budget);
    Estimate far = far_bessel_block(h, tol / (8.0 * kPi));

    CompensatedSum bracket;
    bracket.add(J);
    bracket.add(-2.0 * harm.value());
    bracket.add(-8.0 * kPi * near.value);
    bracket.add(-2.0 * lam_value);
    bracket.add(-8.0 * kPi * far.value);

    EnergyResult r;
    r.J = J;
    r.budget = budget;
    r.description = "E_s(" + std::to_string(h) + ")";
    r.value = 2.0 / hd * bracket.value();
    r.error_bound = 2.0 / hd *
                    (2.0 * harm_err + 8.0 * kPi * (near.error + far.error) + 2.0 * lam_err +
                     bracket.rounding_bound()) +
                    2.0 * kEps * std::fabs(r.value);
    if (!(r.error_bound <= budget.abs_tol))
        throw BudgetExceeded("stripe_energy: certified error exceeds abs_tol");
    return r;
}

double stripe_energy_asymptotic(double h, double J) {
    if (!(h > 0.0)) throw DomainError("stripe_energy_asymptotic: h must be positive");
    return 2.0 / h * (J - 2.0 * std::log(h) - alpha_s());
}

double alpha_s() {
    static const double value = [] {
        ErrorBudget b;
        b.abs_tol = 1e-15;
        const double v = bessel_double_tail(b).value;
        return 2.0 * (1.0 + std::numbers::egamma - std::log(kPi / 2.0)) + 8.0 * kPi * v;
    }();
    return value;
}

double c_star() { return std::exp(1.0 - alpha_s() / 2.0); }

Estimate ell_sum_identity() {
    constexpr std::int64_t N = 10000;
    CompensatedSum acc;
    for (std::int64_t l = N - 1; l >= 0; --l) {
        const double m = 2.0 * static_cast<double>(l) + 2.0;
        acc.add(2.0 / (m * m - 1.0));
        acc.add(std::log1p(-1.0 / (m * m)));
    }
    // Each tail term is 1/m^2 plus a remainder in [0, (8/3) m^{-4}].
    const double lead = 0.25 * boost::math::trigamma(static_cast<double>(N + 1));
    const double Nd = static_cast<double>(N);
    const double quartic = (8.0 / 3.0) * (1.0 / 16.0) / (3.0 * Nd * Nd * Nd);
    const double tail = lead + 0.5 * quartic;
    const double value = -2.0 * (acc.value() + tail);
    const double err = 2.0 * (0.5 * quartic + acc.rounding_bound() + 4.0 * kEps * lead);
    return {value, err};
}

StripeOptimum optimal_stripe_width(double J, const ErrorBudget& budget) {
    if (!(J > 0.0) || !std::isfinite(J)) throw DomainError("optimal_stripe_width: J must be positive");
    const double scale = c_star() * std::exp(J / 2.0);
    StripeOptimum out;
    out.window_lo = std::max<std::int64_t>(1, static_cast<std::int64_t>(std::floor(scale / 4.0)));
    out.window_hi = std::max<std::int64_t>(out.window_lo + 2, static_cast<std::int64_t>(std::ceil(4.0 * scale)));

    std::vector<EnergyResult> results;
    for (std::int64_t h = out.window_lo; h <= out.window_hi; ++h) results.push_back(stripe_energy(h, J, budget));
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i)
        if (results[i].value < results[best].value) best = i;
    for (const auto& e : results) out.window_energies.push_back(e.value);

    out.h = out.window_lo + static_cast<std::int64_t>(best);
    out.energy = results[best];
    if (out.h == out.window_hi || (out.h == out.window_lo && out.window_lo > 1))
        throw WindowExhausted("optimal_stripe_width: minimum at window edge h=" + std::to_string(out.h));

    // A neighbour within the combined certificates makes the pair a tie.
    auto close = [&](std::size_t i) {
        return std::fabs(results[i].value - results[best].value) <=
               results[i].error_bound + results[best].error_bound;
    };
    if (best + 1 < results.size() && close(best + 1)) {
        out.tie = out.h + 1;
    } else if (best > 0 && close(best - 1)) {
        out.tie = out.h;
        out.h -= 1;
        out.energy = results[best - 1];
    }
    return out;
}

}  // namespace dipolar
