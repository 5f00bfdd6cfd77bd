#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <mutex>
#include <numbers>
#include <string>
#include <tuple>

#include "dipolar/errors.hpp"
#include "dipolar/kernel.hpp"

namespace dipolar {

namespace {

constexpr double kEps = std::numeric_limits<double>::epsilon();
constexpr double kPi = std::numbers::pi;

std::int64_t wrap(std::int64_t d, std::int64_t L) { return ((d % L) + L) % L; }

}  // namespace

Estimate periodic_kernel(std::int64_t dx1, std::int64_t dx2, std::int64_t L, const ErrorBudget& budget) {
    if (L < 1) throw DomainError("periodic_kernel: L must be >= 1");
    budget.validate();
    std::int64_t d1 = wrap(dx1, L);
    std::int64_t d2 = wrap(dx2, L);
    if (d1 == 0 && d2 == 0) throw DomainError("periodic_kernel: displacement is 0 mod L");
    if (d2 == 0) std::swap(d1, d2);

    // Poisson resummation along the first axis, line by line in the second.
    const double Ld = static_cast<double>(L);
    const double s = std::sin(kPi * static_cast<double>(d2) / Ld);
    const double zero_mode = 2.0 * kPi * kPi / (Ld * Ld * Ld * s * s);
    const double phase = 2.0 * kPi * static_cast<double>(d1) / Ld;
    const double line_pref = 8.0 * kPi / (Ld * Ld);
    const double q = std::exp(-2.0 * kPi);

    CompensatedSum acc;
    acc.add(zero_mode);
    double err = 4.0 * kEps * zero_mode;
    const double share = 0.25 * budget.abs_tol;

    // Lines b = d2 + L m2 ordered by |b|: d2, d2 - L, d2 + L, d2 - 2L, ...
    for (std::int64_t r = 0;; ++r) {
        if (r > budget.truncation_radius)
            throw BudgetExceeded("periodic_kernel: line truncation radius exceeded");
        double tail = 0.0;
        for (const std::int64_t m2 : {r, -r - 1}) {
            const double b = std::fabs(static_cast<double>(d2 + L * m2));
            const double beta = 2.0 * kPi * b / Ld;
            const double w = line_pref / b;
            Estimate modes = bessel_mode_sum(beta, phase, share * std::pow(q, r) / w, budget.bessel_terms);
            acc.add(w * modes.value);
            err += w * modes.error;
            // Lines further out on this side: |b| grows by L per step, so the
            // mode bound shrinks at least by e^{-2 pi}.
            const double b_next = b + Ld;
            tail += (line_pref / b_next) * bessel_mode_bound(2.0 * kPi * b_next / Ld) / (1.0 - q);
        }
        if (tail <= share) {
            err += tail;
            break;
        }
    }
    Estimate out{acc.value(), err + acc.rounding_bound()};
    if (!(out.error <= budget.abs_tol))
        throw BudgetExceeded("periodic_kernel: certified error " + std::to_string(out.error) +
                             " exceeds abs_tol");
    return out;
}

KernelTable::KernelTable(std::int64_t L, const ErrorBudget& budget)
    : L_(L), values_(static_cast<std::size_t>(L * L), 0.0), errors_(static_cast<std::size_t>(L * L), 0.0) {
    if (L < 1) throw DomainError("KernelTable: L must be >= 1");
    for (std::int64_t a = 0; a < L; ++a) {
        for (std::int64_t b = 0; b < L; ++b) {
            if (a == 0 && b == 0) continue;
            // Reuse the symmetric partner when it has already been filled.
            const std::int64_t ra = wrap(-a, L);
            const std::int64_t rb = wrap(-b, L);
            const auto mirror = static_cast<std::size_t>(std::min(a * L + b, ra * L + rb));
            const auto here = static_cast<std::size_t>(a * L + b);
            if (mirror < here) {
                values_[here] = values_[mirror];
                errors_[here] = errors_[mirror];
                continue;
            }
            if (b < a) {
                const auto swapped = static_cast<std::size_t>(b * L + a);
                values_[here] = values_[swapped];
                errors_[here] = errors_[swapped];
                continue;
            }
            Estimate e = periodic_kernel(a, b, L, budget);
            values_[here] = e.value;
            errors_[here] = e.error;
        }
    }
}

std::shared_ptr<const KernelTable> KernelTable::cached(std::int64_t L, const ErrorBudget& budget) {
    using Key = std::tuple<std::int64_t, double, std::int64_t, std::int64_t>;
    static std::mutex mu;
    static std::map<Key, std::shared_ptr<const KernelTable>> cache;
    const Key key{L, budget.abs_tol, budget.truncation_radius, budget.bessel_terms};
    std::lock_guard<std::mutex> lock(mu);
    auto it = cache.find(key);
    if (it != cache.end()) return it->second;
    auto table = std::make_shared<const KernelTable>(L, budget);
    cache.emplace(key, table);
    return table;
}

}  // namespace dipolar
