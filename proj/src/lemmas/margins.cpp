#include <cmath>
#include <numbers>
#include <string>

#include "dipolar/errors.hpp"
#include "dipolar/lemmas.hpp"

namespace dipolar {

namespace {

constexpr double kPi = std::numbers::pi;

EnergyResult board(std::int64_t h1, std::int64_t h2, double J, const ErrorBudget& budget) {
    return checkerboard_energy({TileSide::finite(h1), TileSide::finite(h2)}, J, budget);
}

EnergyComparison compare(EnergyResult lhs, EnergyResult rhs) {
    EnergyComparison c;
    c.difference = lhs.value - rhs.value;
    c.error = lhs.error_bound + rhs.error_bound;
    c.lhs = std::move(lhs);
    c.rhs = std::move(rhs);
    return c;
}

void require_geometry(std::int64_t h1, std::int64_t h2, double J, const char* who) {
    if (h2 < 1 || h1 < h2) throw DomainError(std::string(who) + ": requires h1 >= h2 >= 1");
    if (!(J > 0.0) || !std::isfinite(J)) throw DomainError(std::string(who) + ": J must be positive");
}

MarginReport base_report(Region r, std::int64_t h1, std::int64_t h2, double J) {
    MarginReport m;
    m.region = r;
    m.h1 = h1;
    m.h2 = h2;
    m.J = J;
    return m;
}

}  // namespace

double lemma_I_margin(double h2, double J) {
    return J - 2.0 * std::log(h2) - alpha_s() - 1.0 - 2.0 * std::log(kPi / 2.0);
}

double lemma_II_margin(double h1, double h2, double J) {
    return -J + 2.0 * std::log(h2) + alpha_s() - 2.0 * std::log(128.0 / (9.0 * kPi)) - 8.0 * h2 / h1;
}

double lemma_III_margin(double h1, double h2, double J) {
    const double r = h2 / h1;
    return J - 2.0 * std::log(h2) - alpha_s() - 2.0 * std::log(kPi / 2.0) + 4.0 - r / 2.0 - 2.0 * r * r;
}

MarginReport lemma_I_energy_check(std::int64_t h1, std::int64_t h2, double J, const ErrorBudget& budget) {
    require_geometry(h1, h2, J, "lemma_I_energy_check");
    auto m = base_report(Region::I, h1, h2, J);
    m.margin = lemma_I_margin(static_cast<double>(h2), J);
    m.numeric = compare(board(h1, h2, J, budget), board(h1, 3 * h2, J, budget));
    return m;
}

MarginReport lemma_II_energy_check(std::int64_t h1, std::int64_t h2, double J, const ErrorBudget& budget) {
    require_geometry(h1, h2, J, "lemma_II_energy_check");
    if (h2 < 2) throw DomainError("lemma_II_energy_check: requires h2 >= 2");
    auto m = base_report(Region::II, h1, h2, J);
    m.delta = static_cast<double>(h2) / static_cast<double>(h1);
    m.margin = lemma_II_margin(static_cast<double>(h1), static_cast<double>(h2), J);

    const auto lo = board(h1, h2 / 2, J, budget);
    const auto hi = board(h1, (h2 + 1) / 2, J, budget);
    EnergyResult mean;
    mean.value = 0.5 * (lo.value + hi.value);
    mean.error_bound = 0.5 * (lo.error_bound + hi.error_bound);
    mean.J = J;
    mean.description = "mean of " + lo.description + " and " + hi.description;
    mean.budget = budget;
    m.numeric = compare(board(h1, h2, J, budget), mean);
    return m;
}

MarginReport lemma_III_energy_check(std::int64_t h1, std::int64_t h2, double J, const ErrorBudget& budget) {
    require_geometry(h1, h2, J, "lemma_III_energy_check");
    auto m = base_report(Region::III, h1, h2, J);
    m.delta = static_cast<double>(h2) / static_cast<double>(h1);
    m.margin = lemma_III_margin(static_cast<double>(h1), static_cast<double>(h2), J);
    m.numeric = compare(board(h1, h2, J, budget), board(3 * h1, h2, J, budget));
    return m;
}

LemmaIVReport lemma_IV_energy_check(double h, double lambda, double J, const ErrorBudget& budget) {
    if (!(lambda > 0.0 && lambda <= 0.5)) throw DomainError("lemma_IV_energy_check: lambda must lie in (0, 1/2]");
    if (!(h >= 1.0) || !std::isfinite(h)) throw DomainError("lemma_IV_energy_check: h must be >= 1");
    if (!(J > 0.0) || !std::isfinite(J)) throw DomainError("lemma_IV_energy_check: J must be positive");

    const double s1 = h / lambda;
    const double s2 = h / (1.0 - lambda);
    const double r1 = std::round(s1);
    const double r2 = std::round(s2);
    if (std::fabs(s1 - r1) > 1e-9 * s1 || std::fabs(s2 - r2) > 1e-9 * s2)
        throw DomainError("lemma_IV_energy_check: h/lambda and h/(1-lambda) must be integers");
    const auto h1 = static_cast<std::int64_t>(r1);
    const auto h2 = static_cast<std::int64_t>(r2);

    LemmaIVReport out;
    out.h = h;
    out.lambda = lambda;
    out.report = base_report(Region::IV, h1, h2, J);
    out.report.lambda = lambda;
    out.report.margin = lemma_IV_bracket(lambda);

    const auto cb = board(h1, h2, J, budget);
    const auto floor_h = static_cast<std::int64_t>(std::floor(h));
    const auto es = stripe_energy(floor_h, J, budget);
    const auto e1 = stripe_energy(h1, J, budget);
    const auto e2 = stripe_energy(h2, J, budget);
    out.report.numeric = compare(cb, es);

    out.stripe_split = es.value - e1.value - e2.value;
    out.stripe_split_error = es.error_bound + e1.error_bound + e2.error_bound;
    const double ent = lambda * std::log(lambda) + (1.0 - lambda) * std::log1p(-lambda);
    out.stripe_split_leading = -4.0 / h * ent;

    out.cross_excess = cb.value - e1.value - e2.value;
    out.cross_excess_error = cb.error_bound + e1.error_bound + e2.error_bound;
    const auto tp = corner_tile_sum(h1, h2, budget);
    const auto txi = shifted_stripe_sum(h1, h2, budget);
    out.cross_lower_bound = 8.0 * lambda * (1.0 - lambda) / h * (tp.value + 0.5 * txi.value);
    out.bracket = out.report.margin;
    return out;
}

}  // namespace dipolar
