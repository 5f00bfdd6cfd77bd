#include <cmath>
#include <limits>

#include "dipolar/errors.hpp"
#include "dipolar/search.hpp"

namespace dipolar {

std::string phase_class_name(PhaseClass c) {
    switch (c) {
        case PhaseClass::ThinExcluded: return "ThinExcluded";
        case PhaseClass::ThickExcluded: return "ThickExcluded";
        case PhaseClass::LongExcluded: return "LongExcluded";
        case PhaseClass::ResidualR: return "ResidualR";
        case PhaseClass::StripeCandidate: return "StripeCandidate";
        case PhaseClass::Stripe: return "Stripe";
    }
    return "?";
}

PhaseCell classify(std::int64_t h1, std::int64_t h2, double J) {
    if (h2 < 1 || h1 < h2) throw DomainError("classify: requires h1 >= h2 >= 1");
    if (!std::isfinite(J)) throw DomainError("classify: J must be finite");
    const auto& c = constants();
    const double scale = std::exp(J / 2.0);
    const double a = static_cast<double>(h1);
    const double b = static_cast<double>(h2);
    const double delta = b / a;

    PhaseCell cell;
    cell.h1 = TileSide::finite(h1);
    cell.h2 = TileSide::finite(h2);
    cell.x1 = a / scale;
    cell.x2 = b / scale;

    const double h = a * b / (a + b);
    const double lambda = b / (a + b);
    const double hs = h / scale;
    cell.in_R_envelope = hs >= c.c_min && hs <= c.c_max && lambda >= c.lambda_min && lambda <= 0.5;

    // The unions over delta in (0, 1] are attained at delta = h2/h1: c_II
    // increases and c_III decreases in delta.
    if (b <= c.c_I * scale)
        cell.cls = PhaseClass::ThinExcluded;
    else if (b >= c.c_II(delta) * scale)
        cell.cls = PhaseClass::ThickExcluded;
    else if (b <= c.c_III(delta) * scale)
        cell.cls = PhaseClass::LongExcluded;
    else if (cell.in_R_envelope)
        cell.cls = PhaseClass::ResidualR;
    else
        cell.cls = PhaseClass::StripeCandidate;
    return cell;
}

}  // namespace dipolar
