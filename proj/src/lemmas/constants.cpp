#include <cmath>
#include <numbers>

#include "dipolar/errors.hpp"
#include "dipolar/lemmas.hpp"

namespace dipolar {

double RegionConstants::c_II(double delta) const { return c_II_prefactor * std::exp(4.0 * delta); }

double RegionConstants::c_III(double delta) const {
    return c_III_prefactor * std::exp(-delta / 4.0 - delta * delta);
}

RegionConstants region_constants() {
    constexpr double pi = std::numbers::pi;
    RegionConstants c;
    c.alpha_s = alpha_s();
    const double damp = std::exp(-c.alpha_s / 2.0);
    c.c_I = 2.0 / (pi * std::sqrt(std::numbers::e)) * damp;
    c.c_II_prefactor = 129.0 / (9.0 * pi) * damp;
    c.c_III_prefactor = 2.0 / pi * std::exp(2.0) * damp;

    // c_II grows and c_III shrinks in delta, so their difference changes
    // sign at most once.
    auto gap = [&c](double d) { return c.c_II(d) - c.c_III(d); };
    double lo = 0.0;
    double hi = 1.0;
    if (!(gap(lo) < 0.0 && gap(hi) > 0.0)) throw RootNotFound("c_II and c_III do not cross on (0, 1]");
    while (hi - lo > 1e-12) {
        const double mid = 0.5 * (lo + hi);
        (gap(mid) < 0.0 ? lo : hi) = mid;
    }
    c.delta_star = 0.5 * (lo + hi);
    c.c_min = c.c_III(1.0) / 2.0;
    c.c_max = c.c_II(1.0);
    c.lambda_min = c.delta_star / (1.0 + c.delta_star);
    return c;
}

const RegionConstants& constants() {
    static const RegionConstants c = region_constants();
    return c;
}

std::string region_name(Region r) {
    switch (r) {
        case Region::I: return "I";
        case Region::II: return "II";
        case Region::III: return "III";
        case Region::IV: return "IV";
    }
    return "?";
}

}  // namespace dipolar
