#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include "dipolar/errors.hpp"
#include "dipolar/lemmas.hpp"

namespace dipolar {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

// Weight alpha + beta * x2 on [u, v]; v may be infinite (then beta = 0).
struct Segment {
    double u;
    double v;
    double alpha;
    double beta;
};

// (y/r - 1) / x1^2 with r = sqrt(x1^2 + y^2), written without cancellation.
double tilt(double x1, double y) {
    const double s = std::sqrt(1.0 + (x1 * x1) / (y * y));
    return -1.0 / (y * y * s * (1.0 + s));
}

// int_u^v (alpha + beta y) (x1^2 + y^2)^{-3/2} dy in closed form.
double inner(double x1, const std::vector<Segment>& segs) {
    double total = 0.0;
    for (const auto& g : segs) {
        const double ru = std::hypot(x1, g.u);
        double i0 = 0.0;  // int dy / r^3
        double i1 = 0.0;  // int y dy / r^3
        if (std::isinf(g.v)) {
            i0 = g.u > 0.0 ? -tilt(x1, g.u) : 1.0 / (x1 * x1);
            i1 = 1.0 / ru;
        } else {
            const double rv = std::hypot(x1, g.v);
            if (g.u > 0.0)
                i0 = tilt(x1, g.v) - tilt(x1, g.u);
            else
                i0 = g.v / (x1 * x1 * rv);
            i1 = (g.v - g.u) * (g.v + g.u) / ((rv + ru) * ru * rv);
        }
        if (g.alpha != 0.0) total += g.alpha * i0;
        if (g.beta != 0.0) total += g.beta * i1;
    }
    return total;
}

// Integrate f over consecutive breakpoints; the last one may be infinite.
Quadrature integrate(const std::function<double(double)>& f, std::vector<double> pts, const char* who) {
    using boost::math::quadrature::gauss_kronrod;
    std::sort(pts.begin(), pts.end());
    pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
    Quadrature q;
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
        if (!(pts[i + 1] > pts[i])) continue;
        double err = 0.0;
        q.value += gauss_kronrod<double, 61>::integrate(f, pts[i], pts[i + 1], 20, 1e-13, &err);
        q.error += err;
    }
    if (!std::isfinite(q.value) || !(q.error <= 1e-8))
        throw QuadratureFailure(std::string(who) + ": error estimate " + std::to_string(q.error));
    return q;
}

// min{x, w - x} on [0, w] as two segments.
std::vector<Segment> tent(double w) { return {{0.0, w / 2.0, 0.0, 1.0}, {w / 2.0, w, w, -1.0}}; }

}  // namespace

Quadrature integral_corner_strip(double zeta) {
    if (!(zeta > 0.0 && zeta <= 1.0)) throw DomainError("integral_corner_strip: zeta must lie in (0, 1]");
    const auto segs = tent(zeta);
    return integrate([&](double x1) { return std::min(x1, 1.0) * inner(x1, segs); }, {0.0, zeta, 1.0, kInf},
                     "integral_corner_strip");
}

Quadrature integral_half_stripe(double Z) {
    if (!(Z >= 1.0)) throw DomainError("integral_half_stripe: Z must be >= 1");
    const std::vector<Segment> segs = {{0.0, 1.0, 1.0, -1.0}};
    return integrate([&](double x1) { return 2.0 * std::min(x1 - 1.0, Z - 1.0) * inner(x1, segs); },
                     {1.0, Z, kInf}, "integral_half_stripe");
}

Quadrature integral_corner_tile(double Z) {
    if (!(Z >= 1.0)) throw DomainError("integral_corner_tile: Z must be >= 1");
    const auto segs = tent(2.0);
    return integrate([&](double x1) { return std::min({x1, 1.0, Z + 1.0 - x1}) * inner(x1, segs); },
                     {0.0, 1.0, Z, Z + 1.0}, "integral_corner_tile");
}

Quadrature integral_corner_tile_full() {
    const auto segs = tent(2.0);
    return integrate([&](double x1) { return std::min(x1, 1.0) * inner(x1, segs); }, {0.0, 1.0, 2.0, kInf},
                     "integral_corner_tile_full");
}

Quadrature integral_corner_tile_remainder(double Z) {
    if (!(Z > 0.0)) throw DomainError("integral_corner_tile_remainder: Z must be positive");
    const auto segs = tent(2.0);
    return integrate([&](double x1) { return inner(x1, segs); }, {Z, kInf}, "integral_corner_tile_remainder");
}

Quadrature integral_shifted_quadrant() {
    const std::vector<Segment> segs = {{2.0, 3.0, -2.0, 1.0}, {3.0, kInf, 1.0, 0.0}};
    return integrate([&](double x1) { return std::min(x1, 1.0) * inner(x1, segs); }, {0.0, 1.0, 3.0, kInf},
                     "integral_shifted_quadrant");
}

Quadrature integral_patch_tile(double lambda) {
    if (!(lambda > 0.0 && lambda <= 0.5)) throw DomainError("integral_patch_tile: lambda must lie in (0, 1/2]");
    const double a = 2.0 / lambda;
    const double b = 2.0 / (1.0 - lambda);
    const auto segs = tent(b);
    return integrate([&](double x1) { return std::min(x1, a - x1) * inner(x1, segs); }, {0.0, 1.0, b, a / 2.0, a},
                     "integral_patch_tile");
}

Quadrature integral_patch_stripe(double lambda) {
    if (!(lambda > 0.0 && lambda <= 0.5))
        throw DomainError("integral_patch_stripe: lambda must lie in (0, 1/2]");
    const double a = 2.0 / lambda;
    const double b = 2.0 / (1.0 - lambda);
    const double c = 1.0 / (1.0 - lambda);
    const std::vector<Segment> segs = {{b, b + c, -b, 1.0}, {b + c, kInf, c, 0.0}};
    return integrate([&](double x1) { return std::min(x1, a - x1) * inner(x1, segs); }, {0.0, b, a / 2.0, a},
                     "integral_patch_stripe");
}

}  // namespace dipolar
