#pragma once

// Phase-region classification of (h1, h2), grid scans of the checkerboard
// energy and the restricted minimization verdict.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "dipolar/energies.hpp"
#include "dipolar/lemmas.hpp"

namespace dipolar {

enum class PhaseClass { ThinExcluded, ThickExcluded, LongExcluded, ResidualR, StripeCandidate, Stripe };

std::string phase_class_name(PhaseClass c);

struct PhaseCell {
    TileSide h1;
    TileSide h2;
    double x1 = 0.0;  // h1 e^{-J/2}, infinite for an infinite side
    double x2 = 0.0;
    PhaseClass cls = PhaseClass::StripeCandidate;
    bool in_R_envelope = false;  // (h, lambda) inside [c_min, c_max] x [lambda_min, 1/2]
    std::optional<EnergyResult> energy;
};

/// Requires h1 >= h2 >= 1. First match among the thin region, the delta-union
/// of the thick regions, the delta-union of the long regions, then the R envelope.
PhaseCell classify(std::int64_t h1, std::int64_t h2, double J);

struct ScanResult {
    double J = 0.0;
    std::int64_t h_max = 0;
    std::int64_t stride = 1;
    std::vector<PhaseCell> cells;  // finite cells by (h1, h2), then the (inf, h) rows
    std::size_t argmin = 0;        // over every cell
    std::optional<std::size_t> finite_argmin;
    std::optional<std::size_t> stripe_argmin;
};

/// Grid h = 1, 1 + stride, ... <= h_max on both axes with h1 >= h2, plus
/// (inf, h) for every grid h. Energies are computed for every cell.
ScanResult scan(double J, std::int64_t h_max, std::int64_t stride = 1, const ErrorBudget& budget = {},
                unsigned threads = 0);

enum class Verdict { StripeOnly, FiniteCellLower, Inconclusive };
std::string verdict_name(Verdict v);

struct RestrictedVerdict {
    double J = 0.0;
    StripeOptimum stripe;
    ScanResult scan;
    std::optional<PhaseCell> runner_up;  // lowest finite cell
    double gap = 0.0;                    // E(runner_up) - E_s(h*)
    double gap_certificate = 0.0;
    Verdict verdict = Verdict::Inconclusive;
};

/// Scans finite cells up to h_max and compares them with the optimal stripe.
RestrictedVerdict restricted_verdict(double J, std::int64_t h_max, const ErrorBudget& budget = {},
                                     unsigned threads = 0);

/// Runs body(i) for i in [0, n) on a pool of threads; 0 picks the hardware
/// concurrency. Exceptions are rethrown on the calling thread (lowest index first).
void parallel_for(std::size_t n, const std::function<void(std::size_t)>& body, unsigned threads = 0);

}  // namespace dipolar
