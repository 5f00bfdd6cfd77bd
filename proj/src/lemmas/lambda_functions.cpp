#include <cmath>
#include <string>

#include "dipolar/errors.hpp"
#include "dipolar/lemmas.hpp"

namespace dipolar {

namespace {

void check_lambda(double lambda, const char* who) {
    if (!(lambda >= 0.0 && lambda <= 0.5)) throw DomainError(std::string(who) + ": lambda must lie in [0, 1/2]");
}

// Expanded around zeta = 0: sqrt(1 + a z^2) - 1 and log((1 + sqrt(1 + a z^2)) / 2).
struct Pieces {
    double zeta;
    double s(double a) const {
        const double t = a * zeta * zeta;
        return t / (1.0 + std::sqrt(1.0 + t));
    }
    double l(double a) const { return std::log1p(0.5 * s(a)); }
};

}  // namespace

double f_lambda(double lambda) {
    check_lambda(lambda, "f_lambda");
    if (lambda == 0.0) return 2.0 * std::log(2.0);
    const Pieces p{lambda / (1.0 - lambda)};
    const double z = p.zeta;
    const double bracket = std::log(2.0) + 2.0 / z * (2.0 * p.s(0.25) + p.s(4.0) - 3.0 * p.s(1.0)) +
                           1.0 / z * (3.0 * p.l(1.0) - 2.0 * p.l(0.25) - p.l(4.0)) + 3.0 * std::asinh(z) -
                           2.0 * std::asinh(2.0 * z) - std::asinh(0.5 * z);
    return 2.0 / (1.0 - lambda) * bracket;
}

double g_lambda(double lambda) {
    check_lambda(lambda, "g_lambda");
    if (lambda == 0.0) return 2.0 - 3.0 * std::log(3.0);
    const Pieces p{lambda / (1.0 - lambda)};
    const double z = p.zeta;
    const double bracket = 2.0 - 3.0 * std::log(3.0) +
                           4.0 / z * (p.s(4.0) + p.s(2.25) - p.s(1.0) - p.s(9.0)) +
                           2.0 / z * (p.l(1.0) + p.l(9.0) - p.l(4.0) - p.l(2.25)) + 2.0 * std::asinh(z) +
                           6.0 * std::asinh(3.0 * z) - 4.0 * std::asinh(2.0 * z) - 3.0 * std::asinh(1.5 * z);
    const double one_minus = 1.0 - lambda;
    return bracket / one_minus - lambda * std::log(lambda) / one_minus + std::log1p(-lambda) / one_minus;
}

double lemma_IV_bracket(double lambda) {
    check_lambda(lambda, "lemma_IV_bracket");
    const double k = std::log(27.0 / 16.0);
    const double l2 = lambda * lambda;
    const double ent = lambda == 0.0 ? 0.0 : l2 * std::log(lambda);
    return (2.0 - k) * lambda + (k - 1.0 / 3.0) * l2 - 5.0 / 3.0 * l2 * lambda + ent +
           (1.0 - lambda) * std::log1p(-lambda);
}

double f_chord_slope() { return 2.0 * (f_lambda(0.5) - f_lambda(0.0)); }

double g_chord_slope() { return 2.0 * (g_lambda(0.5) - g_lambda(0.0)); }

}  // namespace dipolar
