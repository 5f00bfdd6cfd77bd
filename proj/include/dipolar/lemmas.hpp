#pragma once

// Region constants, margin functions, lattice sums and integrals used to
// exclude non-stripe checkerboards, and the appendix positivity sums.

#include <cstdint>
#include <optional>
#include <string>

#include "dipolar/energies.hpp"
#include "dipolar/kernel.hpp"

namespace dipolar {

// ---------------------------------------------------------------------------
// Constants

struct RegionConstants {
    double alpha_s = 0.0;
    double c_I = 0.0;
    double c_II_prefactor = 0.0;   // c_II(delta) = c_II_prefactor * e^{4 delta}
    double c_III_prefactor = 0.0;  // c_III(delta) = c_III_prefactor * e^{-delta/4 - delta^2}
    double delta_star = 0.0;
    double c_min = 0.0;
    double c_max = 0.0;
    double lambda_min = 0.0;

    double c_II(double delta) const;
    double c_III(double delta) const;
};

/// Computes every constant; delta_star by bisection to width 1e-12.
/// Throws RootNotFound if c_II and c_III do not cross on (0, 1].
RegionConstants region_constants();

/// Cached copy of region_constants().
const RegionConstants& constants();

// ---------------------------------------------------------------------------
// Margins and their numerical counterparts

enum class Region { I, II, III, IV };
std::string region_name(Region r);

struct EnergyComparison {
    EnergyResult lhs;    // energy of the state being excluded
    EnergyResult rhs;    // energy it is compared against
    double difference = 0.0;  // lhs - rhs
    double error = 0.0;       // combined certificate
    bool strictly_positive() const { return difference > error; }
};

struct MarginReport {
    Region region = Region::I;
    std::int64_t h1 = 0;
    std::int64_t h2 = 0;
    double J = 0.0;
    std::optional<double> delta;
    std::optional<double> lambda;
    double margin = 0.0;
    std::optional<EnergyComparison> numeric;
};

double lemma_I_margin(double h2, double J);
double lemma_II_margin(double h1, double h2, double J);
double lemma_III_margin(double h1, double h2, double J);

/// E(h1,h2) against E(h1,3h2).
MarginReport lemma_I_energy_check(std::int64_t h1, std::int64_t h2, double J, const ErrorBudget& budget = {});
/// E(h1,h2) against the mean of E(h1, floor(h2/2)) and E(h1, ceil(h2/2)).
MarginReport lemma_II_energy_check(std::int64_t h1, std::int64_t h2, double J, const ErrorBudget& budget = {});
/// E(h1,h2) against E(3 h1, h2).
MarginReport lemma_III_energy_check(std::int64_t h1, std::int64_t h2, double J, const ErrorBudget& budget = {});

// ---------------------------------------------------------------------------
// Tile sums (each already divided by its natural normalization)

/// sum_{n1 in Z} sum_{n2 >= 1} min{n2, h2} |n|^{-3}; h1 only fixes the
/// precondition h1 >= h2.
EnergyResult halfplane_tile_sum(std::int64_t h1, std::int64_t h2, const ErrorBudget& budget = {});
/// 2 log h2 + alpha_s + 2 log(pi/2) + 1/h2.
double halfplane_upper_bound(std::int64_t h2);

EnergyResult s1_sum(std::int64_t h2, const ErrorBudget& budget = {});
EnergyResult s4_sum(std::int64_t h2, const ErrorBudget& budget = {});
EnergyResult xi_corner_sum(std::int64_t h1, std::int64_t h2, const ErrorBudget& budget = {});

struct LemmaIIISums {
    EnergyResult pi;  // half-plane next to the square T_a
    EnergyResult xi;  // half-stripe facing T_b
    EnergyResult p;   // corner tile
    EnergyResult q;   // shifted quadrant
};
LemmaIIISums lemma_III_sums(std::int64_t h1, std::int64_t h2, const ErrorBudget& budget = {});

/// (1/h) sum over T x P and T x Xi for tiles h1 x h2 with h1 = h/lambda.
EnergyResult corner_tile_sum(std::int64_t h1, std::int64_t h2, const ErrorBudget& budget = {});
EnergyResult shifted_stripe_sum(std::int64_t h1, std::int64_t h2, const ErrorBudget& budget = {});

// ---------------------------------------------------------------------------
// Continuum integrals (adaptive Gauss-Kronrod over closed-form inner integrals)

struct Quadrature {
    double value = 0.0;
    double error = 0.0;
};

Quadrature integral_corner_strip(double zeta);     // int_0^inf min{x1,1} int_0^zeta tent
Quadrature integral_half_stripe(double Z);         // 2 int_1^inf min{x1-1,Z-1} int_0^1 (1-x2)
Quadrature integral_corner_tile(double Z);         // int_0^{Z+1} min{x1,1,Z+1-x1} int_0^2 tent
Quadrature integral_corner_tile_full();            // (I)
Quadrature integral_corner_tile_remainder(double Z);  // (II)
Quadrature integral_shifted_quadrant();            // int_0^inf min{x1,1} int_2^inf min{x2-2,1}
Quadrature integral_patch_tile(double lambda);     // equals f(lambda)
Quadrature integral_patch_stripe(double lambda);   // equals -log(lambda) + g(lambda)

// ---------------------------------------------------------------------------
// Closed forms for the residual region

/// Accepts lambda in [0, 1/2]; lambda = 0 returns the continuous limit.
double f_lambda(double lambda);
double g_lambda(double lambda);
double lemma_IV_bracket(double lambda);
double f_chord_slope();  // 2 (f(1/2) - f(0))
double g_chord_slope();

struct LemmaIVReport {
    MarginReport report;
    double h = 0.0;
    double lambda = 0.0;
    // E_s(floor h) - E_s(h1) - E_s(h2) next to -(4/h)(l log l + (1-l) log(1-l)).
    double stripe_split = 0.0;
    double stripe_split_error = 0.0;
    double stripe_split_leading = 0.0;
    // E(h1,h2) - E_s(h1) - E_s(h2) next to the corner/stripe lower bound.
    double cross_excess = 0.0;
    double cross_excess_error = 0.0;
    double cross_lower_bound = 0.0;
    double bracket = 0.0;
};

/// Sides are h/lambda and h/(1-lambda); both must be integers.
LemmaIVReport lemma_IV_energy_check(double h, double lambda, double J, const ErrorBudget& budget = {});

// ---------------------------------------------------------------------------
// Appendix remainders on the torus

/// Requires h2 even and L a multiple of 2 h1 and 2 h2.
EnergyResult appendix_R_II(std::int64_t h1, std::int64_t h2, std::int64_t L, const ErrorBudget& budget = {});
/// Requires h1 >= h2 and L a multiple of 2 h1 and 2 h2.
EnergyResult appendix_R_III(std::int64_t h1, std::int64_t h2, std::int64_t L, const ErrorBudget& budget = {});

}  // namespace dipolar
