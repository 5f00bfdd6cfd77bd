#include <cmath>
#include <numbers>
#include <string>

#include "dipolar/errors.hpp"
#include "dipolar/lemmas.hpp"

namespace dipolar {

namespace {

using W = WeightProfile;

EnergyResult wrap(const Estimate& e, std::string description, const ErrorBudget& budget) {
    EnergyResult r;
    r.value = e.value;
    r.error_bound = e.error;
    r.description = std::move(description);
    r.budget = budget;
    return r;
}

void require_ordered(std::int64_t h1, std::int64_t h2, const char* who) {
    if (h2 < 1 || h1 < h2) throw DomainError(std::string(who) + ": requires h1 >= h2 >= 1");
}

void require_even(std::int64_t h2, const char* who) {
    if (h2 < 2 || h2 % 2 != 0) throw DomainError(std::string(who) + ": requires even h2 >= 2");
}

}  // namespace

EnergyResult halfplane_tile_sum(std::int64_t h1, std::int64_t h2, const ErrorBudget& budget) {
    require_ordered(h1, h2, "halfplane_tile_sum");
    return wrap(weighted_lattice_sum(W::constant(1.0), W::ramp_to_cap(1, h2), 1.0, budget),
                "halfplane(" + std::to_string(h2) + ")", budget);
}

double halfplane_upper_bound(std::int64_t h2) {
    const double h = static_cast<double>(h2);
    return 2.0 * std::log(h) + alpha_s() + 2.0 * std::log(std::numbers::pi / 2.0) + 1.0 / h;
}

EnergyResult s1_sum(std::int64_t h2, const ErrorBudget& budget) {
    require_even(h2, "s1_sum");
    return wrap(weighted_lattice_sum(W::constant(1.0), W::tent(1, h2 - 1), 1.0, budget),
                "S1(" + std::to_string(h2) + ")", budget);
}

EnergyResult s4_sum(std::int64_t h2, const ErrorBudget& budget) {
    require_even(h2, "s4_sum");
    return wrap(weighted_lattice_sum(W::constant(1.0), W::tent(h2 / 2 + 1, 3 * h2 / 2 - 1), 1.0, budget),
                "S4(" + std::to_string(h2) + ")", budget);
}

EnergyResult xi_corner_sum(std::int64_t h1, std::int64_t h2, const ErrorBudget& budget) {
    require_ordered(h1, h2, "xi_corner_sum");
    require_even(h2, "xi_corner_sum");
    return wrap(weighted_lattice_sum(W::ramp_to_cap(1, h1), W::tent(1, h2 - 1), static_cast<double>(h1), budget),
                "Xi(" + std::to_string(h1) + "," + std::to_string(h2) + ")", budget);
}

LemmaIIISums lemma_III_sums(std::int64_t h1, std::int64_t h2, const ErrorBudget& budget) {
    require_ordered(h1, h2, "lemma_III_sums");
    const double n = static_cast<double>(h2);
    const std::string tag = "(" + std::to_string(h1) + "," + std::to_string(h2) + ")";
    LemmaIIISums s;
    s.pi = wrap(weighted_lattice_sum(W::ramp_to_cap(1, h2), W::constant(1.0), 1.0, budget), "Pi" + tag, budget);
    s.xi = wrap(weighted_lattice_sum(W::ramp_to_cap(h2 + 1, h1 - h2), W::tent(-h2 + 1, h2 - 1), n, budget),
                "Xi" + tag, budget);
    s.p = wrap(weighted_lattice_sum(W::capped_tent(1, h1 + h2 - 1, h2), W::tent(1, 2 * h2 - 1), n, budget),
               "P" + tag, budget);
    s.q = wrap(weighted_lattice_sum(W::ramp_to_cap(1, h2), W::ramp_to_cap(2 * h2 + 1, h2), n, budget), "Q" + tag,
               budget);
    return s;
}

EnergyResult corner_tile_sum(std::int64_t h1, std::int64_t h2, const ErrorBudget& budget) {
    require_ordered(h1, h2, "corner_tile_sum");
    const double h = static_cast<double>(h1) * static_cast<double>(h2) / static_cast<double>(h1 + h2);
    return wrap(weighted_lattice_sum(W::tent(1, 2 * h1 - 1), W::tent(1, 2 * h2 - 1), h, budget),
                "TP(" + std::to_string(h1) + "," + std::to_string(h2) + ")", budget);
}

EnergyResult shifted_stripe_sum(std::int64_t h1, std::int64_t h2, const ErrorBudget& budget) {
    require_ordered(h1, h2, "shifted_stripe_sum");
    const double h = static_cast<double>(h1) * static_cast<double>(h2) / static_cast<double>(h1 + h2);
    return wrap(weighted_lattice_sum(W::tent(1, 2 * h1 - 1), W::ramp_to_cap(2 * h2 + 1, h2), h, budget),
                "TXi(" + std::to_string(h1) + "," + std::to_string(h2) + ")", budget);
}

}  // namespace dipolar
