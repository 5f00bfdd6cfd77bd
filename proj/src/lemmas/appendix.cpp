#include <algorithm>
#include <cmath>
#include <string>

#include "dipolar/errors.hpp"
#include "dipolar/lemmas.hpp"

namespace dipolar {

namespace {

void require_torus(std::int64_t h1, std::int64_t h2, std::int64_t L, const char* who) {
    if (h1 < 1 || h2 < 1) throw DomainError(std::string(who) + ": sides must be >= 1");
    if (L < 2 || L % (2 * h1) != 0 || L % (2 * h2) != 0)
        throw DomainError(std::string(who) + ": L must be a multiple of 2 h1 and 2 h2");
}

// sum over x in [0,h1) x [x2_lo, x2_hi) and over every torus site y accepted
// by `keep` of sigma_c(y) K_L(x - y).
template <class Keep>
Estimate torus_block(std::int64_t h1, std::int64_t h2, std::int64_t L, std::int64_t x2_lo, std::int64_t x2_hi,
                     Keep keep, const ErrorBudget& budget) {
    const double sites = static_cast<double>(h1 * (x2_hi - x2_lo)) * static_cast<double>(L * L);
    const double kernel_tol = std::max(1e-14, 0.25 * budget.abs_tol / sites);
    const auto table = KernelTable::cached(L, budget.with_tol(kernel_tol));
    const auto sigma = checkerboard_configuration(L, h1, h2);

    CompensatedSum sum;
    double err = 0.0;
    for (std::int64_t y1 = 0; y1 < L; ++y1)
        for (std::int64_t y2 = 0; y2 < L; ++y2) {
            if (!keep(y1, y2)) continue;
            const int s = sigma.at(y1, y2);
            double row = 0.0;
            double row_err = 0.0;
            for (std::int64_t x1 = 0; x1 < h1; ++x1)
                for (std::int64_t x2 = x2_lo; x2 < x2_hi; ++x2) {
                    if (x1 == y1 && x2 == y2) continue;
                    row += table->value(x1 - y1, x2 - y2);
                    row_err += table->error(x1 - y1, x2 - y2);
                }
            sum.add(s * row);
            err += row_err + 1e-16 * row * static_cast<double>(h1 * (x2_hi - x2_lo));
        }
    return {sum.value(), err + sum.rounding_bound()};
}

}  // namespace

EnergyResult appendix_R_II(std::int64_t h1, std::int64_t h2, std::int64_t L, const ErrorBudget& budget) {
    budget.validate();
    require_torus(h1, h2, L, "appendix_R_II");
    if (h2 % 2 != 0) throw DomainError("appendix_R_II: h2 must be even");
    if (h1 < h2) throw DomainError("appendix_R_II: requires h1 >= h2");

    // The flipped stripe occupies rows [h2/2, 3h2/2); T is its lower half-tile
    // of positive spins.
    const std::int64_t half = h2 / 2;
    auto unflipped = [&](std::int64_t, std::int64_t y2) { return !(y2 >= half && y2 < 3 * half); };
    const auto torus = torus_block(h1, h2, L, half, h2, unflipped, budget);

    const auto part = budget.with_tol(budget.abs_tol / 8.0);
    const auto s1 = s1_sum(h2, part);
    const auto s4 = s4_sum(h2, part);
    const auto xi = xi_corner_sum(h1, h2, part);
    const double n = static_cast<double>(h1);
    const double extracted = n * (s1.value - 2.0 * s4.value - 4.0 * xi.value);
    const double extracted_err = n * (s1.error_bound + 2.0 * s4.error_bound + 4.0 * xi.error_bound);

    EnergyResult r;
    r.value = torus.value - extracted;
    r.error_bound = torus.error + extracted_err + 4e-16 * (std::fabs(torus.value) + std::fabs(extracted));
    r.description = "R_II(" + std::to_string(h1) + "," + std::to_string(h2) + "), L=" + std::to_string(L);
    r.budget = budget;
    return r;
}

EnergyResult appendix_R_III(std::int64_t h1, std::int64_t h2, std::int64_t L, const ErrorBudget& budget) {
    budget.validate();
    require_torus(h1, h2, L, "appendix_R_III");
    if (h1 < h2) throw DomainError("appendix_R_III: requires h1 >= h2");

    // The flipped column is x1 in [0, h1); T is its tile [0,h1) x [0,h2).
    auto outside_column = [&](std::int64_t y1, std::int64_t) { return y1 >= h1; };
    const auto torus = torus_block(h1, h2, L, 0, h2, outside_column, budget);

    const auto sums = lemma_III_sums(h1, h2, budget.with_tol(budget.abs_tol / 8.0));
    const double n = static_cast<double>(h2);
    const double inner = sums.pi.value + sums.xi.value - 4.0 * sums.p.value - 2.0 * sums.q.value;
    const double inner_err = sums.pi.error_bound + sums.xi.error_bound + 4.0 * sums.p.error_bound +
                             2.0 * sums.q.error_bound;

    EnergyResult r;
    r.value = 2.0 * n * inner + torus.value;
    r.error_bound = 2.0 * n * inner_err + torus.error + 4e-16 * (2.0 * n * std::fabs(inner) + std::fabs(torus.value));
    r.description = "R_III(" + std::to_string(h1) + "," + std::to_string(h2) + "), L=" + std::to_string(L);
    r.budget = budget;
    return r;
}

}  // namespace dipolar
