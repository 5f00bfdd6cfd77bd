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

// Distance from n to the nearest multiple of 2h.
std::int64_t tri(std::int64_t n, std::int64_t h) {
    const std::int64_t P = 2 * h;
    const std::int64_t r = ((n % P) + P) % P;
    return std::min(r, P - r);
}

// sum_{r=0}^{2a-1} (tri(r)/a) cos(pi k r / a): the discrete Fourier
// coefficients of the normalized triangle wave of period 2a.
double triangle_coefficient(std::int64_t k, std::int64_t a) {
    const std::int64_t P = 2 * a;
    if (k % P == 0) return static_cast<double>(a);
    if (k % 2 == 0) return 0.0;
    const double s = std::sin(kPi * static_cast<double>(k % P) / static_cast<double>(P));
    return -1.0 / (static_cast<double>(a) * s * s);
}

// Cross term X in E(h1,h2) = E_s(h1) + E_s(h2) + X, where
// X = 2 sum_{d != 0} t_a(d_a) t_b(d_b) |d|^{-3} and t = tri/h.
// The sum along the short axis a is Poisson-resummed.
Estimate cross_term(std::int64_t a, std::int64_t b, double tol) {
    const double ad = static_cast<double>(a);
    const double bd = static_cast<double>(b);
    const double Pb = 2.0 * bd;

    // Zero Fourier mode: 4 sum_{d>=1} t_b(d)/d^2 via trigamma.
    CompensatedSum zero;
    for (std::int64_t r = 1; r <= 2 * b; ++r) {
        const double w = static_cast<double>(tri(r, b));
        if (w == 0.0) continue;
        zero.add(w * boost::math::trigamma(static_cast<double>(r) / Pb));
    }
    const double zscale = 4.0 / (bd * Pb * Pb);
    const double zero_value = zscale * zero.value();
    const double zero_err = zscale * (zero.rounding_bound() + 4.0 * kEps * zero.abs_total());

    // Oscillating modes: (8 pi / a^2) sum_{k,d>=1} (t_b(d)/d) k T_a(k) K_1(pi k d / a).
    // Terms depend on k d = m through K_1(pi m / a); |T_a| <= a, t_b <= 1, so
    // everything with m > M is below (8 pi / a) zeta(2) sum_{m>M} m K_1(pi m / a).
    const double beta = kPi / ad;
    const double pref = 8.0 * kPi / (ad * ad);
    const double q = std::exp(-beta);
    const double tail_scale = 8.0 * kPi / ad * (kPi * kPi / 6.0);
    std::int64_t M = 1;
    double tail = 0.0;
    for (;; ++M) {
        const double md = static_cast<double>(M);
        const double ratio = (md + 2.0) / (md + 1.0) * q;
        if (ratio < 1.0) {
            tail = tail_scale * (md + 1.0) * bessel_k1_upper(beta * (md + 1.0)) / (1.0 - ratio);
            if (tail <= 0.25 * tol) break;
        }
        if (M > (std::int64_t{1} << 26)) throw BudgetExceeded("checkerboard_energy: mode cutoff too large");
    }
    std::vector<double> k1(static_cast<std::size_t>(M + 1), 0.0);
    for (std::int64_t m = 1; m <= M; ++m) k1[static_cast<std::size_t>(m)] = bessel_k1(beta * static_cast<double>(m));

    CompensatedSum osc;
    double inner_mass = 0.0;
    for (std::int64_t d = 1; d <= M; ++d) {
        const double tb = static_cast<double>(tri(d, b)) / bd;
        if (tb == 0.0) continue;
        CompensatedSum row;
        for (std::int64_t k = 1; k * d <= M; ++k) {
            const double Tk = triangle_coefficient(k, a);
            if (Tk == 0.0) continue;
            row.add(static_cast<double>(k) * Tk * k1[static_cast<std::size_t>(k * d)]);
        }
        osc.add(tb / static_cast<double>(d) * row.value());
        inner_mass += tb / static_cast<double>(d) * row.abs_total();
    }
    const double osc_value = pref * osc.value();
    const double osc_err = pref * (osc.rounding_bound() + 8.0 * kEps * inner_mass) + tail;

    return {zero_value + osc_value, zero_err + osc_err + kEps * std::fabs(zero_value + osc_value)};
}

}  // namespace

TileSide TileSide::finite(std::int64_t h) {
    if (h < 1) throw DomainError("TileSide: finite side must be >= 1");
    TileSide s;
    s.h_ = h;
    return s;
}

std::int64_t TileSide::value() const {
    if (!h_) throw DomainError("TileSide: side is infinite");
    return *h_;
}

std::string TileSide::str() const { return h_ ? std::to_string(*h_) : std::string("inf"); }

EnergyResult checkerboard_energy(const CheckerboardSpec& spec, double J, const ErrorBudget& budget) {
    budget.validate();
    if (!std::isfinite(J)) throw DomainError("checkerboard_energy: J must be finite");
    const std::string label = "E(" + spec.h1.str() + "," + spec.h2.str() + ")";
    if (spec.h1.is_infinite() && spec.h2.is_infinite()) {
        EnergyResult r;
        r.J = J;
        r.budget = budget;
        r.description = label;
        return r;
    }
    if (spec.h1.is_infinite() || spec.h2.is_infinite()) {
        const std::int64_t h = spec.h1.is_infinite() ? spec.h2.value() : spec.h1.value();
        EnergyResult r = stripe_energy(h, J, budget);
        r.description = label;
        return r;
    }
    const std::int64_t h1 = spec.h1.value();
    const std::int64_t h2 = spec.h2.value();
    const ErrorBudget part = budget.with_tol(0.3 * budget.abs_tol);
    EnergyResult e1 = stripe_energy(h1, J, part);
    EnergyResult e2 = stripe_energy(h2, J, part);
    Estimate x = cross_term(std::min(h1, h2), std::max(h1, h2), 0.3 * budget.abs_tol);

    EnergyResult r;
    r.J = J;
    r.budget = budget;
    r.description = label;
    r.value = e1.value + e2.value + x.value;
    r.error_bound = e1.error_bound + e2.error_bound + x.error +
                    2.0 * kEps * (std::fabs(e1.value) + std::fabs(e2.value) + std::fabs(x.value));
    if (!(r.error_bound <= budget.abs_tol))
        throw BudgetExceeded("checkerboard_energy: certified error exceeds abs_tol");
    return r;
}

}  // namespace dipolar
