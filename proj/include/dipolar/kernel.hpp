#pragma once

// Special functions and certified lattice sums for the inverse-cube kernel.

#include <cmath>
#include <cstdint>
#include <memory>
#include <vector>

#include "dipolar/weight_profile.hpp"

namespace dipolar {

/// Truncation control shared by every certified sum.
struct ErrorBudget {
    double abs_tol = 1e-10;
    std::int64_t truncation_radius = std::int64_t{1} << 20;
    std::int64_t bessel_terms = std::int64_t{1} << 20;

    /// Throws DomainError when a field is out of range.
    void validate() const;
    ErrorBudget with_tol(double tol) const;

    /// Default budget, with abs_tol overridden by $DIPOLAR_ABS_TOL when set.
    static ErrorBudget from_env();
};

/// A value together with a rigorous bound on its absolute error.
struct Estimate {
    double value = 0.0;
    double error = 0.0;

    Estimate& operator+=(const Estimate& o) {
        value += o.value;
        error += o.error;
        return *this;
    }
    Estimate& operator-=(const Estimate& o) {
        value -= o.value;
        error += o.error;
        return *this;
    }
    Estimate& operator*=(double s) {
        value *= s;
        error *= std::fabs(s);
        return *this;
    }
};

inline Estimate operator+(Estimate a, const Estimate& b) { return a += b; }
inline Estimate operator-(Estimate a, const Estimate& b) { return a -= b; }
inline Estimate operator*(Estimate a, double s) { return a *= s; }
inline Estimate operator*(double s, Estimate a) { return a *= s; }

/// Neumaier-compensated accumulator that also tracks sum |t| so callers can
/// bound the rounding error of the result.
class CompensatedSum {
public:
    void add(double t) {
        double s = sum_ + t;
        if (std::fabs(sum_) >= std::fabs(t))
            comp_ += (sum_ - s) + t;
        else
            comp_ += (t - s) + sum_;
        sum_ = s;
        abs_ += std::fabs(t);
    }
    double value() const { return sum_ + comp_; }
    double abs_total() const { return abs_; }
    /// Bound on accumulated rounding, assuming each addend carries at most a
    /// few ulps of its own evaluation error.
    double rounding_bound() const;

private:
    double sum_ = 0.0;
    double comp_ = 0.0;
    double abs_ = 0.0;
};

// ---------------------------------------------------------------------------
// Special functions

/// Modified Bessel function K_1(x), x > 0. Series below x = 2, Steed's
/// continued fraction above.
double bessel_k1(double x);

/// e^x K_1(x), finite for every x > 0.
double bessel_k1_scaled(double x);

/// Upper envelope sqrt(pi/2x) e^{-x} (1 + 3/(8x)) >= K_1(x), valid for all
/// x > 0. Decreasing in x, so consecutive ratios are bounded by e^{-dx}.
double bessel_k1_upper(double x);

/// H_h = sum_{n=1}^h 1/n, summed from the small end.
double harmonic_number(std::int64_t h);

// ---------------------------------------------------------------------------
// Certified sums

/// sum_{k>=1} k K_1(beta k) cos(k phase), truncated with a geometric tail
/// bound. Throws BudgetExceeded if more than `max_terms` terms are needed.
Estimate bessel_mode_sum(double beta, double phase, double tol, std::int64_t max_terms);

/// Upper bound on sum_{k>=1} k K_1(beta k), used to bound whole families of
/// neglected modes.
double bessel_mode_bound(double beta);

/// sum_{n in Z} (n^2 + a^2)^{-3/2} via Poisson resummation:
/// 2/a^2 + (8 pi / a) sum_{j>=1} j K_1(2 pi j a).
Estimate axis_sum(double a, const ErrorBudget& budget = {});

/// Same quantity by direct summation over |n| <= N with the remainder
/// bracketed between two integrals. N is capped by budget.truncation_radius.
Estimate axis_sum_direct(double a, const ErrorBudget& budget = {});

/// sum_{j>=1} sum_{n>=1} j K_1(2 pi j n).
Estimate bessel_double_tail(const ErrorBudget& budget = {});

/// sum_{n in Z^2, n != 0} |n|^{-3}.
Estimate lattice_constant(const ErrorBudget& budget = {});

/// Torus kernel sum_{m in Z^2} |dx + L m|^{-3}. Throws DomainError when
/// dx == 0 mod L.
Estimate periodic_kernel(std::int64_t dx1, std::int64_t dx2, std::int64_t L,
                         const ErrorBudget& budget = {});

/// Dense L x L table of periodic_kernel values, entry (0,0) set to zero.
class KernelTable {
public:
    KernelTable(std::int64_t L, const ErrorBudget& budget);

    std::int64_t side() const { return L_; }
    double value(std::int64_t d1, std::int64_t d2) const { return values_[index(d1, d2)]; }
    double error(std::int64_t d1, std::int64_t d2) const { return errors_[index(d1, d2)]; }

    /// Shared table for (L, abs_tol); built once, then read-only.
    static std::shared_ptr<const KernelTable> cached(std::int64_t L, const ErrorBudget& budget);

private:
    std::size_t index(std::int64_t d1, std::int64_t d2) const {
        auto wrap = [this](std::int64_t d) { return ((d % L_) + L_) % L_; };
        return static_cast<std::size_t>(wrap(d1) * L_ + wrap(d2));
    }

    std::int64_t L_;
    std::vector<double> values_;
    std::vector<double> errors_;
};

/// (1/normalizer) sum_{n1} w1(n1) sum_{n2} w2(n2) (n1^2 + n2^2)^{-3/2}.
/// Constant tails are resolved exactly through axis_sum and
/// lattice_constant; only finite index ranges are summed term by term.
/// Throws DivergenceError when w1(0) w2(0) != 0.
Estimate weighted_lattice_sum(const WeightProfile& w1, const WeightProfile& w2,
                              double normalizer = 1.0, const ErrorBudget& budget = {});

}  // namespace dipolar
