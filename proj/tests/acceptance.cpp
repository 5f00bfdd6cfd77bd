// Acceptance suite: one PASS/FAIL line per criterion, preceded by the
// individual checks that make it up.

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <numbers>
#include <numeric>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "dipolar/energies.hpp"
#include "dipolar/lemmas.hpp"
#include "dipolar/rp.hpp"
#include "dipolar/search.hpp"

using namespace dipolar;

namespace {

namespace tol {
constexpr double alpha_s = 5e-4;
constexpr double c_star = 5e-4;
constexpr double c_I = 5e-4;
constexpr double c_II = 5e-2;
constexpr double c_III = 5e-4;
constexpr double c_min = 5e-4;
constexpr double lambda_min = 5e-4;
constexpr double integral = 1e-4;
constexpr double slope = 5e-4;
constexpr double ell_sum = 1e-8;
constexpr double oracle_abs_tol = 1e-6;
constexpr double asymptotic_slope = 0.1;
constexpr double asymptotic_spread = 2.0;
constexpr double bracket_floor = -1e-12;
}  // namespace tol

namespace limit {
constexpr double constants_s = 1.0;
constexpr double integrals_s = 10.0;
constexpr double identity_s = 1.0;
constexpr double oracle_s = 120.0;
constexpr double rp_s = 600.0;
constexpr double appendix_s = 300.0;
constexpr double lemmas_s = 1200.0;
}  // namespace limit

struct Check {
    std::string label;
    bool pass = false;
    std::string detail;
};

struct Outcome {
    std::string title;
    std::vector<Check> checks;
    std::vector<std::string> notes;
};

std::string fmt(const char* f, auto... args) {
    char buf[512];
    std::snprintf(buf, sizeof buf, f, args...);
    return buf;
}

Check band(const std::string& label, double value, double target, double width) {
    return {label, std::fabs(value - target) <= width, fmt("%.7g, target %.7g +/- %.1g", value, target, width)};
}

Check within(const std::string& label, double seconds, double cap) {
    return {label, seconds < cap, fmt("%.3f s, limit %.0f s", seconds, cap)};
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SpinConfiguration random_config(std::int64_t L, std::mt19937_64& rng) {
    std::bernoulli_distribution coin(0.5);
    std::vector<std::int8_t> s(static_cast<std::size_t>(L * L));
    for (auto& v : s) v = coin(rng) ? 1 : -1;
    return SpinConfiguration(L, std::move(s));
}

Outcome constants_table() {
    Outcome o{"constants table", {}, {}};
    const auto t0 = std::chrono::steady_clock::now();
    const auto c = region_constants();
    const double as = alpha_s();
    const double cs = c_star();
    const double t = seconds_since(t0);

    o.checks.push_back(band("alpha_s", as, 2.276, tol::alpha_s));
    o.checks.push_back(band("c_star", cs, 0.871, tol::c_star));
    o.checks.push_back(band("c_I", c.c_I, 0.123, tol::c_I));
    o.checks.push_back(band("c_II(1)", c.c_II(1.0), 79.819, tol::c_II));
    o.checks.push_back(band("c_III prefactor", c.c_III_prefactor, 1.507, tol::c_III));
    o.checks.push_back(band("c_min", c.c_min, 0.356, tol::c_min));
    o.checks.push_back(band("lambda_min", c.lambda_min, 0.007, tol::lambda_min));
    o.checks.push_back(within("runtime", t, limit::constants_s));

    o.notes.push_back(fmt("c_I truncated to three decimals is %.3f", std::trunc(c.c_I * 1000.0) / 1000.0));
    o.notes.push_back(fmt("c_III(1)/2 with exponent -1/4 - 1/2 instead of -1/4 - 1 would be %.5f",
                          c.c_III_prefactor * std::exp(-0.75) / 2.0));
    return o;
}

Outcome integral_values() {
    Outcome o{"integral values", {}, {}};
    const auto t0 = std::chrono::steady_clock::now();
    const auto I = integral_corner_tile_full();
    const auto q = integral_shifted_quadrant();
    const double fs = f_chord_slope();
    const double gs = g_chord_slope();
    const double t = seconds_since(t0);

    o.checks.push_back(band("(I)", I.value, 0.97229, tol::integral));
    o.checks.push_back(band("shifted quadrant", q.value, 0.36466, tol::integral));
    o.checks.push_back(band("f chord slope", fs, 0.3998, tol::slope));
    o.checks.push_back(band("g chord slope", gs, 1.497, tol::slope));
    o.checks.push_back(within("runtime", t, limit::integrals_s));

    o.notes.push_back(fmt("quadrature errors %.2g and %.2g", I.error, q.error));
    o.notes.push_back(fmt("g chord slope truncated to three decimals is %.3f", std::trunc(gs * 1000.0) / 1000.0));
    return o;
}

Outcome ell_identity() {
    Outcome o{"ell-sum identity", {}, {}};
    const auto t0 = std::chrono::steady_clock::now();
    const auto e = ell_sum_identity();
    const double t = seconds_since(t0);
    const double target = -2.0 + 2.0 * std::log(std::numbers::pi / 2.0);
    o.checks.push_back({"ell sum", std::fabs(e.value - target) <= tol::ell_sum,
                        fmt("%.15g vs %.15g, |diff| %.2g", e.value, target, std::fabs(e.value - target))});
    o.checks.push_back(within("runtime", t, limit::identity_s));
    return o;
}

Outcome oracle_equivalence() {
    Outcome o{"checkerboard formula vs torus oracle", {}, {}};
    const auto t0 = std::chrono::steady_clock::now();
    const auto budget = ErrorBudget{}.with_tol(tol::oracle_abs_tol);
    const double J = 4.0;
    for (std::int64_t h1 = 1; h1 <= 4; ++h1)
        for (std::int64_t h2 = 1; h2 <= 4; ++h2) {
            const std::int64_t L = 2 * std::lcm(h1, h2);
            const auto formula = checkerboard_energy({TileSide::finite(h1), TileSide::finite(h2)}, J, budget);
            const auto torus = energy_per_site(checkerboard_configuration(L, h1, h2), J, budget);
            const double diff = std::fabs(formula.value - torus.value);
            const double cert = formula.error_bound + torus.error_bound;
            o.checks.push_back({fmt("(%lld,%lld) L=%lld", (long long)h1, (long long)h2, (long long)L), diff <= cert,
                                fmt("|diff| %.2g <= cert %.2g", diff, cert)});
        }
    o.checks.push_back(within("runtime", seconds_since(t0), limit::oracle_s));
    return o;
}

Outcome replication() {
    Outcome o{"replication invariance", {}, {}};
    std::mt19937_64 rng(20240601);
    const double J = 3.0;
    for (int i = 0; i < 20; ++i) {
        const std::int64_t L = (i % 2 == 0) ? 4 : 6;
        const std::int64_t n = (i / 2) % 2 == 0 ? 2 : 3;
        const auto c = random_config(L, rng);
        const auto a = energy_per_site(c, J);
        const auto b = energy_per_site(c.replicate(n), J);
        const double diff = std::fabs(a.value - b.value);
        const double cert = a.error_bound + b.error_bound;
        o.checks.push_back({fmt("config %d L=%lld n=%lld", i, (long long)L, (long long)n), diff <= cert,
                            fmt("|diff| %.2g <= cert %.2g", diff, cert)});
    }
    return o;
}

Outcome stripe_asymptotics() {
    Outcome o{"stripe remainder is O(1/h^2)", {}, {}};
    std::vector<double> lh;
    std::vector<double> lc;
    double lc_first = 0.0;
    double hi = 0.0;
    double lo_cubic = INFINITY;
    double hi_cubic = 0.0;
    for (std::int64_t h : {64, 128, 256, 512}) {
        const auto e = stripe_energy(h, 0.0);
        const double hd = static_cast<double>(h);
        const double c = hd * hd * std::fabs(e.value - stripe_energy_asymptotic(hd, 0.0));
        o.notes.push_back(fmt("h=%lld  h^2 |remainder| = %.6f  (h^2 cert %.2g)", (long long)h, c, hd * hd * e.error_bound));
        lh.push_back(std::log(hd));
        lc.push_back(std::log(c));
        if (lc.size() == 1) lc_first = c;
        hi = std::max(hi, c);
        lo_cubic = std::min(lo_cubic, c * hd);
        hi_cubic = std::max(hi_cubic, c * hd);
    }
    const double mx = std::accumulate(lh.begin(), lh.end(), 0.0) / lh.size();
    const double my = std::accumulate(lc.begin(), lc.end(), 0.0) / lc.size();
    double sxy = 0.0;
    double sxx = 0.0;
    for (std::size_t i = 0; i < lh.size(); ++i) {
        sxy += (lh[i] - mx) * (lc[i] - my);
        sxx += (lh[i] - mx) * (lh[i] - mx);
    }
    const double slope = sxy / sxx;
    o.checks.push_back({"no growth in log-log slope", slope <= tol::asymptotic_slope,
                        fmt("%.4f, limit %.2g", slope, tol::asymptotic_slope)});
    o.checks.push_back({"bounded by the first fit constant", hi <= tol::asymptotic_spread * lc_first,
                        fmt("max %.6f <= %.1f x %.6f", hi, tol::asymptotic_spread, lc_first)});
    o.notes.push_back(fmt("h^3 |remainder| ranges over [%.5f, %.5f]", lo_cubic, hi_cubic));
    return o;
}

Outcome rp_fuzz() {
    Outcome o{"chessboard estimate on straight-line configurations", {}, {}};
    const auto t0 = std::chrono::steady_clock::now();
    constexpr int per_cell = 56;
    constexpr double densities[] = {0.1, 0.3, 0.5};
    std::size_t total = 0;
    std::size_t literal_differs = 0;
    for (double J : {2.0, 4.0, 8.0}) {
        TileEnergyCache cache(J, ErrorBudget{});
        for (std::int64_t L : {12, 24, 36}) {
            std::vector<ChessboardReport> reports(per_cell);
            parallel_for(per_cell, [&](std::size_t i) {
                const auto seed = static_cast<std::uint64_t>(1000 * L + 10 * J) * 1000 + i;
                reports[i] = chessboard_estimate_check(sample_config(L, densities[i % 3], seed), cache);
            });
            std::size_t bad = 0;
            double worst = INFINITY;
            for (const auto& r : reports) {
                bad += r.violated() ? 1 : 0;
                worst = std::min(worst, r.margin() + r.certificate());
                if (r.literal_margin() < -r.literal_certificate()) ++literal_differs;
            }
            total += reports.size();
            o.checks.push_back({fmt("L=%lld J=%g", (long long)L, J), bad == 0,
                                fmt("%zu samples, %zu violations, min margin+cert %.3g", reports.size(), bad, worst)});
        }
    }
    o.checks.push_back({"sample count", total >= 500, fmt("%zu", total)});
    o.checks.push_back(within("runtime", seconds_since(t0), limit::rp_s));
    o.notes.push_back(fmt("%zu samples fall below the bound when cut-free axes are given width L", literal_differs));
    return o;
}

Outcome appendix_positivity() {
    Outcome o{"appendix remainders are positive", {}, {}};
    const auto t0 = std::chrono::steady_clock::now();
    struct Triple {
        std::int64_t h1, h2, L;
    };
    const Triple r2[] = {{2, 2, 4}, {2, 2, 8}, {4, 2, 8}, {4, 2, 16}, {4, 4, 8},  {6, 2, 12},
                         {6, 4, 24}, {8, 2, 16}, {8, 4, 16}, {6, 6, 12}, {8, 8, 16}, {12, 4, 24}};
    const Triple r3[] = {{1, 1, 2}, {2, 1, 4}, {3, 1, 6}, {4, 2, 8},  {6, 2, 12},  {3, 3, 6},
                         {6, 3, 12}, {5, 2, 20}, {8, 4, 16}, {9, 3, 18}, {10, 5, 20}, {12, 4, 24}};
    for (const auto& t : r2) {
        const auto r = appendix_R_II(t.h1, t.h2, t.L);
        o.checks.push_back({fmt("R_II(%lld,%lld) L=%lld", (long long)t.h1, (long long)t.h2, (long long)t.L),
                            r.value > r.error_bound, fmt("%.6g > cert %.2g", r.value, r.error_bound)});
    }
    for (const auto& t : r3) {
        const auto r = appendix_R_III(t.h1, t.h2, t.L);
        o.checks.push_back({fmt("R_III(%lld,%lld) L=%lld", (long long)t.h1, (long long)t.h2, (long long)t.L),
                            r.value > r.error_bound, fmt("%.6g > cert %.2g", r.value, r.error_bound)});
    }
    o.checks.push_back(within("runtime", seconds_since(t0), limit::appendix_s));
    return o;
}

Outcome lemma_checks() {
    Outcome o{"scaled-down lemma energy checks", {}, {}};
    const auto t0 = std::chrono::steady_clock::now();
    struct Sample {
        std::int64_t h1, h2;
        double J;
    };
    const Sample thin[] = {{1, 1, 6.0}, {3, 1, 6.0}, {8, 2, 6.0}, {20, 1, 6.0}, {40, 2, 6.0}, {100, 2, 6.0}};
    const Sample thick[] = {{130, 20, 4.0}, {200, 20, 4.0}, {300, 30, 4.0}, {500, 40, 4.0},
                            {1000, 40, 4.0}, {600, 40, 6.0}, {1000, 60, 6.0}};
    const Sample lng[] = {{1, 1, 4.0}, {2, 1, 4.0}, {5, 2, 4.0}, {10, 3, 4.0}, {20, 5, 4.0}, {40, 8, 4.0}, {64, 10, 4.0},
                          {30, 10, 6.0}};

    auto run = [&](const char* tag, PhaseClass expected, const auto& samples, auto check) {
        int used = 0;
        for (const auto& s : samples) {
            if (classify(s.h1, s.h2, s.J).cls != expected) {
                o.notes.push_back(fmt("%s (%lld,%lld) J=%g classified elsewhere, skipped", tag, (long long)s.h1,
                                      (long long)s.h2, s.J));
                continue;
            }
            ++used;
            const auto m = check(s.h1, s.h2, s.J, ErrorBudget{});
            const auto& n = *m.numeric;
            o.checks.push_back({fmt("%s (%lld,%lld) J=%g", tag, (long long)s.h1, (long long)s.h2, s.J),
                                n.difference > n.error, fmt("diff %.4g > cert %.2g", n.difference, n.error)});
        }
        o.checks.push_back({fmt("%s sample count", tag), used >= 5, fmt("%d", used)});
    };
    run("I", PhaseClass::ThinExcluded, thin, lemma_I_energy_check);
    run("II", PhaseClass::ThickExcluded, thick, lemma_II_energy_check);
    run("III", PhaseClass::LongExcluded, lng, lemma_III_energy_check);
    o.checks.push_back(within("runtime", seconds_since(t0), limit::lemmas_s));
    return o;
}

Outcome verdict_J4() {
    Outcome o{"restricted verdict at J = 4", {}, {}};
    const auto v = restricted_verdict(4.0, 64);
    const auto& m = v.scan.cells[v.scan.argmin];
    const bool stripe = m.h1.is_infinite() && m.h2 == TileSide::finite(v.stripe.h);
    o.checks.push_back({"argmin is the optimal stripe", stripe,
                        fmt("argmin (%s,%s), h*(4) = %lld", m.h1.str().c_str(), m.h2.str().c_str(),
                            (long long)v.stripe.h)});
    o.checks.push_back({"gap to every finite cell", v.gap > v.gap_certificate,
                        fmt("gap %.5g > cert %.2g, verdict %s", v.gap, v.gap_certificate, verdict_name(v.verdict).c_str())});
    if (v.runner_up)
        o.notes.push_back(fmt("lowest finite cell (%s,%s)", v.runner_up->h1.str().c_str(),
                              v.runner_up->h2.str().c_str()));
    return o;
}

Outcome bracket_grid() {
    Outcome o{"bracket is nonnegative", {}, {}};
    double lo = INFINITY;
    int at = 0;
    for (int k = 1; k <= 2000; ++k) {
        const double b = lemma_IV_bracket(k / 4000.0);
        if (b < lo) {
            lo = b;
            at = k;
        }
    }
    o.checks.push_back({"minimum", lo >= tol::bracket_floor, fmt("%.6g", lo)});
    o.checks.push_back({"minimum location", at == 1, fmt("lambda = %d/4000", at)});
    return o;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks for the dipolar stripe library"};
    std::vector<int> selected;
    app.add_option("--criterion", selected, "Criterion numbers to run (default: all)")->check(CLI::Range(1, 11));
    CLI11_PARSE(app, argc, argv);
    if (selected.empty()) {
        selected.resize(11);
        std::iota(selected.begin(), selected.end(), 1);
    }
    std::setvbuf(stdout, nullptr, _IOLBF, 0);

    const std::function<Outcome()> criteria[] = {constants_table,     integral_values, ell_identity, oracle_equivalence,
                                                 replication,         stripe_asymptotics, rp_fuzz,   appendix_positivity,
                                                 lemma_checks,        verdict_J4,      bracket_grid};
    bool all = true;
    for (int n : selected) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto out = criteria[n - 1]();
        const double t = seconds_since(t0);
        bool pass = true;
        for (const auto& c : out.checks) {
            std::printf("  [%s] %s: %s\n", c.pass ? "PASS" : "FAIL", c.label.c_str(), c.detail.c_str());
            pass = pass && c.pass;
        }
        for (const auto& note : out.notes) std::printf("  note: %s\n", note.c_str());
        std::printf("AC%d %s %s (%.2f s)\n", n, pass ? "PASS" : "FAIL", out.title.c_str(), t);
        all = all && pass;
    }
    return all ? 0 : 1;
}
