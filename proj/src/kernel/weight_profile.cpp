#include "dipolar/weight_profile.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "dipolar/errors.hpp"

namespace dipolar {

WeightProfile WeightProfile::from_knots(std::vector<std::pair<std::int64_t, double>> knots, Tail tail) {
    if (tail != Tail::whole_line && knots.empty())
        throw DomainError("WeightProfile: at least one knot required");
    for (std::size_t i = 0; i < knots.size(); ++i) {
        if (!(knots[i].second >= 0.0) || !std::isfinite(knots[i].second))
            throw DomainError("WeightProfile: weights must be finite and non-negative");
        if (i > 0 && knots[i].first <= knots[i - 1].first)
            throw DomainError("WeightProfile: knots must be strictly increasing");
    }
    WeightProfile w;
    w.knots_ = std::move(knots);
    w.tail_ = tail;
    return w;
}

WeightProfile WeightProfile::constant(double c) {
    if (!(c >= 0.0) || !std::isfinite(c))
        throw DomainError("WeightProfile: constant must be finite and non-negative");
    WeightProfile w;
    w.knots_ = {{0, c}};
    w.tail_ = Tail::whole_line;
    return w;
}

WeightProfile WeightProfile::indicator(std::int64_t first, std::int64_t last) {
    if (last < first) throw DomainError("WeightProfile::indicator: empty range");
    if (last == first) return from_knots({{first, 1.0}});
    return from_knots({{first, 1.0}, {last, 1.0}});
}

WeightProfile WeightProfile::ramp_to_cap(std::int64_t first, std::int64_t cap) {
    if (cap < 0) throw DomainError("WeightProfile::ramp_to_cap: negative cap");
    if (cap == 0) return from_knots({{first, 0.0}});
    if (cap == 1) return from_knots({{first, 1.0}}, Tail::right_constant);
    return from_knots({{first, 1.0}, {first + cap - 1, static_cast<double>(cap)}}, Tail::right_constant);
}

WeightProfile WeightProfile::tent(std::int64_t first, std::int64_t last) {
    const std::int64_t len = last - first + 1;
    return capped_tent(first, last, (len + 1) / 2);
}

WeightProfile WeightProfile::capped_tent(std::int64_t first, std::int64_t last, std::int64_t cap) {
    if (last < first) return from_knots({{first, 0.0}});
    if (cap < 1) throw DomainError("WeightProfile::capped_tent: cap must be positive");
    auto value = [&](std::int64_t n) {
        return static_cast<double>(std::min({n - first + 1, cap, last - n + 1}));
    };
    // Kinks sit where one of the three lines takes over; collect them and
    // keep the ones inside the support.
    std::vector<std::int64_t> xs = {first, last, first + cap - 1, last - cap + 1};
    const std::int64_t mid = first + (last - first) / 2;
    xs.push_back(mid);
    xs.push_back(mid + 1);
    std::sort(xs.begin(), xs.end());
    xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
    std::vector<std::pair<std::int64_t, double>> knots;
    for (auto x : xs)
        if (x >= first && x <= last) knots.emplace_back(x, value(x));
    return from_knots(std::move(knots));
}

double WeightProfile::operator()(std::int64_t n) const {
    if (tail_ == Tail::whole_line) return knots_.front().second;
    if (n < knots_.front().first) return 0.0;
    if (n >= knots_.back().first)
        return (n == knots_.back().first || tail_ == Tail::right_constant) ? knots_.back().second : 0.0;
    auto hi = std::upper_bound(knots_.begin(), knots_.end(), n,
                               [](std::int64_t v, const auto& k) { return v < k.first; });
    auto lo = hi - 1;
    if (lo->first == n) return lo->second;
    const double t = static_cast<double>(n - lo->first) / static_cast<double>(hi->first - lo->first);
    return lo->second + (hi->second - lo->second) * t;
}

WeightProfile::EvenSplit WeightProfile::even_split() const {
    EvenSplit out;
    if (tail_ == Tail::whole_line) {
        out.whole_line = knots_.front().second;
        return out;
    }
    const std::int64_t first = knots_.front().first;
    const std::int64_t last = knots_.back().first;
    const std::int64_t stop = tail_ == Tail::right_constant ? last - 1 : last;
    for (std::int64_t n = first; n <= stop; ++n) {
        double w = (*this)(n);
        if (w != 0.0) out.finite[n] += w;
    }
    if (tail_ == Tail::right_constant) {
        const double c = knots_.back().second;
        if (c != 0.0) {
            out.whole_line = 0.5 * c;
            if (last >= 1) {
                // 1[n >= last] = (1_Z - 1[|n| < last]) / 2 against even functions.
                for (std::int64_t n = -(last - 1); n <= last - 1; ++n) out.finite[n] -= 0.5 * c;
            } else {
                // 1[n >= last] = (1_Z + 1[|n| <= -last]) / 2.
                for (std::int64_t n = last; n <= -last; ++n) out.finite[n] += 0.5 * c;
            }
        }
    }
    for (auto it = out.finite.begin(); it != out.finite.end();) {
        if (it->second == 0.0)
            it = out.finite.erase(it);
        else
            ++it;
    }
    return out;
}

}  // namespace dipolar
