#include <algorithm>
#include <atomic>
#include <cmath>
#include <exception>
#include <limits>
#include <thread>

#include "dipolar/errors.hpp"
#include "dipolar/search.hpp"

namespace dipolar {

void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads) {
    if (n == 0) return;
    if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
    threads = static_cast<unsigned>(std::min<std::size_t>(threads, n));

    std::atomic<std::size_t> next{0};
    std::vector<std::exception_ptr> failures(n);
    auto worker = [&] {
        for (std::size_t i = next++; i < n; i = next++) {
            try {
                body(i);
            } catch (...) {
                failures[i] = std::current_exception();
            }
        }
    };
    {
        std::vector<std::jthread> pool;
        for (unsigned t = 1; t < threads; ++t) pool.emplace_back(worker);
        worker();
    }
    for (auto& f : failures)
        if (f) std::rethrow_exception(f);
}

std::string verdict_name(Verdict v) {
    switch (v) {
        case Verdict::StripeOnly: return "stripe-only";
        case Verdict::FiniteCellLower: return "finite-cell-lower";
        case Verdict::Inconclusive: return "inconclusive";
    }
    return "?";
}

ScanResult scan(double J, std::int64_t h_max, std::int64_t stride, const ErrorBudget& budget, unsigned threads) {
    if (h_max < 1) throw DomainError("scan: h_max must be >= 1");
    if (stride < 1) throw DomainError("scan: stride must be >= 1");
    if (!std::isfinite(J)) throw DomainError("scan: J must be finite");
    budget.validate();

    ScanResult out;
    out.J = J;
    out.h_max = h_max;
    out.stride = stride;

    std::vector<std::int64_t> grid;
    for (std::int64_t h = 1; h <= h_max; h += stride) grid.push_back(h);
    for (auto a : grid)
        for (auto b : grid)
            if (b <= a) out.cells.push_back(classify(a, b, J));
    const double scale = std::exp(J / 2.0);
    for (auto b : grid) {
        PhaseCell cell;
        cell.h1 = TileSide::infinite();
        cell.h2 = TileSide::finite(b);
        cell.x1 = std::numeric_limits<double>::infinity();
        cell.x2 = static_cast<double>(b) / scale;
        cell.cls = PhaseClass::Stripe;
        out.cells.push_back(cell);
    }

    parallel_for(
        out.cells.size(),
        [&](std::size_t i) {
            auto& c = out.cells[i];
            c.energy = checkerboard_energy({c.h1, c.h2}, J, budget);
        },
        threads);

    auto lowest = [&](auto keep) -> std::optional<std::size_t> {
        std::optional<std::size_t> best;
        for (std::size_t i = 0; i < out.cells.size(); ++i) {
            if (!keep(out.cells[i])) continue;
            if (!best || out.cells[i].energy->value < out.cells[*best].energy->value) best = i;
        }
        return best;
    };
    out.argmin = *lowest([](const PhaseCell&) { return true; });
    out.finite_argmin = lowest([](const PhaseCell& c) { return !c.h1.is_infinite(); });
    out.stripe_argmin = lowest([](const PhaseCell& c) { return c.h1.is_infinite(); });
    return out;
}

RestrictedVerdict restricted_verdict(double J, std::int64_t h_max, const ErrorBudget& budget, unsigned threads) {
    if (!(J > 0.0)) throw DomainError("restricted_verdict: J must be positive");
    RestrictedVerdict v;
    v.J = J;
    v.stripe = optimal_stripe_width(J, budget);
    v.scan = scan(J, h_max, 1, budget, threads);
    if (!v.scan.finite_argmin) return v;
    v.runner_up = v.scan.cells[*v.scan.finite_argmin];
    const auto& e = *v.runner_up->energy;
    v.gap = e.value - v.stripe.energy.value;
    v.gap_certificate = e.error_bound + v.stripe.energy.error_bound;
    if (v.gap > v.gap_certificate)
        v.verdict = Verdict::StripeOnly;
    else if (v.gap < -v.gap_certificate)
        v.verdict = Verdict::FiniteCellLower;
    else
        v.verdict = Verdict::Inconclusive;
    return v;
}

}  // namespace dipolar
