#include <algorithm>
#include <cmath>
#include <string>

#include "dipolar/energies.hpp"
#include "dipolar/errors.hpp"

namespace dipolar {

namespace {

std::int64_t wrap(std::int64_t d, std::int64_t L) { return ((d % L) + L) % L; }

}  // namespace

SpinConfiguration::SpinConfiguration(std::int64_t L, std::vector<std::int8_t> spins)
    : L_(L), spins_(std::move(spins)) {
    if (L < 1) throw DomainError("SpinConfiguration: L must be >= 1");
    if (static_cast<std::int64_t>(spins_.size()) != L * L)
        throw DomainError("SpinConfiguration: expected L*L spins");
    for (auto s : spins_)
        if (s != 1 && s != -1) throw DomainError("SpinConfiguration: spins must be +1 or -1");
}

SpinConfiguration SpinConfiguration::uniform(std::int64_t L, int sign) {
    if (sign != 1 && sign != -1) throw DomainError("uniform: sign must be +-1");
    if (L < 1) throw DomainError("SpinConfiguration: L must be >= 1");
    return SpinConfiguration(L, std::vector<std::int8_t>(static_cast<std::size_t>(L * L),
                                                         static_cast<std::int8_t>(sign)));
}

int SpinConfiguration::at(std::int64_t x1, std::int64_t x2) const {
    return spins_[static_cast<std::size_t>(wrap(x1, L_) * L_ + wrap(x2, L_))];
}

SpinConfiguration SpinConfiguration::replicate(std::int64_t n) const {
    if (n < 1) throw DomainError("replicate: n must be >= 1");
    const std::int64_t M = n * L_;
    std::vector<std::int8_t> out(static_cast<std::size_t>(M * M));
    for (std::int64_t x1 = 0; x1 < M; ++x1)
        for (std::int64_t x2 = 0; x2 < M; ++x2)
            out[static_cast<std::size_t>(x1 * M + x2)] = static_cast<std::int8_t>(at(x1, x2));
    return SpinConfiguration(M, std::move(out));
}

SpinConfiguration SpinConfiguration::flipped() const {
    std::vector<std::int8_t> out(spins_);
    for (auto& s : out) s = static_cast<std::int8_t>(-s);
    return SpinConfiguration(L_, std::move(out));
}

SpinConfiguration stripe_configuration(std::int64_t L, std::int64_t h, Orientation o) {
    if (h < 1) throw DomainError("stripe_configuration: h must be >= 1");
    std::vector<std::int8_t> s(static_cast<std::size_t>(L * L));
    for (std::int64_t x1 = 0; x1 < L; ++x1)
        for (std::int64_t x2 = 0; x2 < L; ++x2) {
            const std::int64_t x = o == Orientation::horizontal ? x2 : x1;
            s[static_cast<std::size_t>(x1 * L + x2)] = (x / h) % 2 == 0 ? 1 : -1;
        }
    return SpinConfiguration(L, std::move(s));
}

SpinConfiguration checkerboard_configuration(std::int64_t L, std::int64_t h1, std::int64_t h2) {
    if (h1 < 1 || h2 < 1) throw DomainError("checkerboard_configuration: sides must be >= 1");
    std::vector<std::int8_t> s(static_cast<std::size_t>(L * L));
    for (std::int64_t x1 = 0; x1 < L; ++x1)
        for (std::int64_t x2 = 0; x2 < L; ++x2)
            s[static_cast<std::size_t>(x1 * L + x2)] = (x1 / h1 + x2 / h2) % 2 == 0 ? 1 : -1;
    return SpinConfiguration(L, std::move(s));
}

EnergyResult hamiltonian_direct(const SpinConfiguration& config, double J, const ErrorBudget& budget) {
    budget.validate();
    const std::int64_t L = config.side();
    if (L < 2) throw DomainError("hamiltonian_direct: L must be >= 2");
    if (!std::isfinite(J)) throw DomainError("hamiltonian_direct: J must be finite");

    // Exchange part: one bond per site and direction.
    std::int64_t broken = 0;
    for (std::int64_t x1 = 0; x1 < L; ++x1)
        for (std::int64_t x2 = 0; x2 < L; ++x2) {
            const int s = config.at(x1, x2);
            broken += (s != config.at(x1 + 1, x2)) + (s != config.at(x1, x2 + 1));
        }

    // Dipolar part through the correlation C(d) = sum_x (s_x s_{x+d} - 1) <= 0.
    const double L2 = static_cast<double>(L * L);
    const double kernel_tol = std::max(1e-14, 0.25 * budget.abs_tol / L2);
    auto table = KernelTable::cached(L, budget.with_tol(kernel_tol));
    const auto& s = config.spins();
    CompensatedSum dip;
    double err = 0.0;
    for (std::int64_t d1 = 0; d1 < L; ++d1) {
        for (std::int64_t d2 = 0; d2 < L; ++d2) {
            if (d1 == 0 && d2 == 0) continue;
            std::int64_t corr = 0;
            for (std::int64_t x1 = 0; x1 < L; ++x1) {
                const std::int64_t y1 = (x1 + d1) % L;
                const std::int8_t* row = &s[static_cast<std::size_t>(x1 * L)];
                const std::int8_t* other = &s[static_cast<std::size_t>(y1 * L)];
                for (std::int64_t x2 = 0; x2 < L; ++x2) corr += row[x2] * other[(x2 + d2) % L];
            }
            const double c = static_cast<double>(corr) - L2;
            if (c == 0.0) continue;
            dip.add(0.5 * c * table->value(d1, d2));
            err += 0.5 * std::fabs(c) * table->error(d1, d2);
        }
    }
    EnergyResult r;
    r.J = J;
    r.budget = budget;
    r.description = "H_L, L=" + std::to_string(L);
    const double exchange = 2.0 * J * static_cast<double>(broken);
    r.value = exchange + dip.value();
    r.error_bound = err + dip.rounding_bound() + 4e-16 * std::fabs(exchange);
    return r;
}

EnergyResult energy_per_site(const SpinConfiguration& config, double J, const ErrorBudget& budget) {
    EnergyResult r = hamiltonian_direct(config, J, budget);
    const double L2 = static_cast<double>(config.side() * config.side());
    r.value /= L2;
    r.error_bound /= L2;
    r.description = "energy per site, L=" + std::to_string(config.side());
    if (!(r.error_bound <= budget.abs_tol))
        throw BudgetExceeded("energy_per_site: certified error exceeds abs_tol");
    return r;
}

}  // namespace dipolar
