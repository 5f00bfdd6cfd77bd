#pragma once

#include <cstdint>
#include <map>
#include <utility>
#include <vector>

namespace dipolar {

/// Non-negative weight on the integers, linear between integer breakpoints.
///
/// Outside the breakpoint range the weight is zero, except that it may be
/// continued by a constant to +infinity or declared constant on all of Z.
/// Weights are bounded by construction.
class WeightProfile {
public:
    enum class Tail { none, right_constant, whole_line };

    /// Linear interpolation through (n, w) knots with strictly increasing n.
    static WeightProfile from_knots(std::vector<std::pair<std::int64_t, double>> knots,
                                    Tail tail = Tail::none);
    static WeightProfile constant(double c);  // c on all of Z
    static WeightProfile indicator(std::int64_t first, std::int64_t last);

    /// min{n - first + 1, cap} for n >= first, held at cap forever.
    static WeightProfile ramp_to_cap(std::int64_t first, std::int64_t cap);

    /// min{n - first + 1, last - n + 1} on [first, last], a symmetric tent.
    static WeightProfile tent(std::int64_t first, std::int64_t last);

    /// min{n - first + 1, cap, last - n + 1} on [first, last].
    static WeightProfile capped_tent(std::int64_t first, std::int64_t last, std::int64_t cap);

    double operator()(std::int64_t n) const;

    Tail tail() const { return tail_; }
    bool finite_support() const { return tail_ == Tail::none; }
    const std::vector<std::pair<std::int64_t, double>>& knots() const { return knots_; }

    /// Rewrite as c * 1_Z + (finite part), valid when paired with any even
    /// summable function of n.
    struct EvenSplit {
        double whole_line = 0.0;
        std::map<std::int64_t, double> finite;
    };
    EvenSplit even_split() const;

private:
    std::vector<std::pair<std::int64_t, double>> knots_;
    Tail tail_ = Tail::none;
};

}  // namespace dipolar
