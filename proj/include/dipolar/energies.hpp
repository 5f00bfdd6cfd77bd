#pragma once

// Energies per site of periodic Ising states with nearest-neighbour and
// dipolar couplings, plus the direct torus Hamiltonian.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "dipolar/kernel.hpp"

namespace dipolar {

/// L-periodic field of +-1 spins, stored row-major as spins[x1 * L + x2].
class SpinConfiguration {
public:
    SpinConfiguration(std::int64_t L, std::vector<std::int8_t> spins);

    static SpinConfiguration uniform(std::int64_t L, int sign = 1);

    std::int64_t side() const { return L_; }
    int at(std::int64_t x1, std::int64_t x2) const;
    const std::vector<std::int8_t>& spins() const { return spins_; }

    /// The same infinite configuration seen on a torus of side n L.
    SpinConfiguration replicate(std::int64_t n) const;
    SpinConfiguration flipped() const;

    bool operator==(const SpinConfiguration&) const = default;

private:
    std::int64_t L_;
    std::vector<std::int8_t> spins_;
};

/// A tile side: a positive integer or infinity.
class TileSide {
public:
    static TileSide finite(std::int64_t h);
    static TileSide infinite() { return TileSide{}; }

    bool is_infinite() const { return !h_.has_value(); }
    std::int64_t value() const;  // throws DomainError when infinite
    std::string str() const;     // "inf" or the integer

    bool operator==(const TileSide&) const = default;
    auto operator<=>(const TileSide& o) const {
        // Infinity compares above every integer.
        if (is_infinite() || o.is_infinite()) return is_infinite() <=> o.is_infinite();
        return *h_ <=> *o.h_;
    }

private:
    std::optional<std::int64_t> h_;
};

struct CheckerboardSpec {
    TileSide h1;
    TileSide h2;
};

enum class Orientation { horizontal, vertical };

struct EnergyResult {
    double value = 0.0;
    double error_bound = 0.0;
    double J = 0.0;
    std::string description;
    ErrorBudget budget;
};

/// sigma_s(h): horizontal stripes (-1)^{floor(x2/h)}, or vertical ones.
SpinConfiguration stripe_configuration(std::int64_t L, std::int64_t h,
                                       Orientation o = Orientation::horizontal);

/// sigma_c(h1, h2) = (-1)^{floor(x1/h1) + floor(x2/h2)}.
SpinConfiguration checkerboard_configuration(std::int64_t L, std::int64_t h1, std::int64_t h2);

/// Torus Hamiltonian H_L (total energy). Each site interacts with its four
/// neighbours by direction, so L = 2 is allowed.
EnergyResult hamiltonian_direct(const SpinConfiguration& config, double J, const ErrorBudget& budget = {});

/// H_L / L^2.
EnergyResult energy_per_site(const SpinConfiguration& config, double J, const ErrorBudget& budget = {});

/// Exact stripe energy from its Poisson-resummed representation.
EnergyResult stripe_energy(std::int64_t h, double J, const ErrorBudget& budget = {});

/// (2/h)(J - 2 log h - alpha_s).
double stripe_energy_asymptotic(double h, double J);

/// 2(1 + gamma - log(pi/2) + 4 pi v), v = bessel_double_tail().
double alpha_s();

/// e^{1 - alpha_s/2}.
double c_star();

/// -2 sum_{l>=0} [2/((2l+2)^2 - 1) + log((2l+3)(2l+1)/(2l+2)^2)].
Estimate ell_sum_identity();

/// E(h1, h2) for the alternating checkerboard of h1 x h2 tiles.
EnergyResult checkerboard_energy(const CheckerboardSpec& spec, double J, const ErrorBudget& budget = {});

struct StripeOptimum {
    std::int64_t h = 0;
    std::optional<std::int64_t> tie;  // h + 1 when indistinguishable
    EnergyResult energy;
    std::int64_t window_lo = 0;
    std::int64_t window_hi = 0;
    std::vector<double> window_energies;  // E_s(h) for h in [window_lo, window_hi]
};

/// argmin of E_s over [max(1, floor(c* e^{J/2}/4)), ceil(4 c* e^{J/2})].
/// Throws WindowExhausted when the minimum sits on the upper edge, or on a
/// lower edge above 1.
StripeOptimum optimal_stripe_width(double J, const ErrorBudget& budget = {});

}  // namespace dipolar
