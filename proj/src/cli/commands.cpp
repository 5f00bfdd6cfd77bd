#include <cmath>
#include <fstream>
#include <limits>
#include <numbers>
#include <sstream>

#include <json.hpp>

#include "dipolar/cli.hpp"
#include "dipolar/errors.hpp"
#include "dipolar/lemmas.hpp"
#include "dipolar/rp.hpp"
#include "dipolar/search.hpp"

namespace dipolar::cli {

namespace {

using Json = nlohmann::ordered_json;

Json number(double x) {
    if (std::isfinite(x)) return x;
    return format_number(x);
}

Json energy_json(const EnergyResult& e) {
    return Json{{"value", number(e.value)}, {"error_bound", number(e.error_bound)}, {"description", e.description}};
}

TileSide parse_side(const std::string& s) {
    if (s == "inf") return TileSide::infinite();
    return TileSide::finite(std::stoll(s));
}

std::int64_t parse_int(const std::string& s, const char* name) {
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos)
        throw DomainError(std::string(name) + " must be a positive integer");
    return std::stoll(s);
}

void flatten(const Json& j, const std::string& prefix, std::ostringstream& out) {
    if (j.is_object()) {
        for (auto it = j.begin(); it != j.end(); ++it)
            flatten(it.value(), prefix.empty() ? it.key() : prefix + "." + it.key(), out);
    } else if (j.is_array()) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], prefix + "." + std::to_string(i), out);
    } else if (j.is_number_float()) {
        out << prefix << "," << format_number(j.get<double>()) << "\n";
    } else if (j.is_string()) {
        out << prefix << "," << j.get<std::string>() << "\n";
    } else {
        out << prefix << "," << j.dump() << "\n";
    }
}

std::string render(const RunConfig& cfg, const Json& j) {
    if (cfg.format == Format::json) return j.dump(2) + "\n";
    std::ostringstream out;
    out << "key,value\n";
    flatten(j, "", out);
    return out.str();
}

// 0 when strictly positive, 4 when the certificate overlaps zero, 5 when
// the inequality fails inside the region where the lemma claims it.
int sign_exit(double difference, double certificate, bool claimed) {
    if (difference > certificate) return kOk;
    if (difference >= -certificate) return kInconclusive;
    return claimed ? kInvariant : kOk;
}

Json comparison_json(const EnergyComparison& c) {
    return Json{{"lhs", energy_json(c.lhs)},
                {"rhs", energy_json(c.rhs)},
                {"difference", number(c.difference)},
                {"certificate", number(c.error)},
                {"strictly_positive", c.strictly_positive()}};
}

Json margin_json(const MarginReport& m) {
    Json j{{"region", region_name(m.region)}, {"h1", m.h1}, {"h2", m.h2}, {"J", m.J}};
    if (m.delta) j["delta"] = *m.delta;
    if (m.lambda) j["lambda"] = *m.lambda;
    j["margin"] = number(m.margin);
    if (m.numeric) j["energy_check"] = comparison_json(*m.numeric);
    return j;
}

CommandOutput verify_lemma(const RunConfig& cfg) {
    const auto h1 = parse_int(cfg.h1, "--h1");
    const auto h2 = parse_int(cfg.h2, "--h2");
    MarginReport m;
    if (cfg.target == "1")
        m = lemma_I_energy_check(h1, h2, cfg.J, cfg.budget);
    else if (cfg.target == "2")
        m = lemma_II_energy_check(h1, h2, cfg.J, cfg.budget);
    else
        m = lemma_III_energy_check(h1, h2, cfg.J, cfg.budget);
    const auto cell = classify(h1, h2, cfg.J);
    const PhaseClass expected = cfg.target == "1"   ? PhaseClass::ThinExcluded
                                : cfg.target == "2" ? PhaseClass::ThickExcluded
                                                    : PhaseClass::LongExcluded;
    const bool claimed = cell.cls == expected;
    Json j = margin_json(m);
    j["class"] = phase_class_name(cell.cls);
    j["in_lemma_region"] = claimed;
    return {render(cfg, j), sign_exit(m.numeric->difference, m.numeric->error, claimed)};
}

CommandOutput verify_lemma_IV(const RunConfig& cfg) {
    const auto r = lemma_IV_energy_check(cfg.hreal, cfg.lambda, cfg.J, cfg.budget);
    const auto& c = constants();
    const double hs = cfg.hreal * std::exp(-cfg.J / 2.0);
    const bool claimed = hs >= c.c_min && hs <= c.c_max && cfg.lambda >= c.lambda_min;
    Json j = margin_json(r.report);
    j["h"] = r.h;
    j["bracket"] = number(r.bracket);
    j["stripe_split"] = Json{{"value", number(r.stripe_split)},
                             {"error_bound", number(r.stripe_split_error)},
                             {"leading", number(r.stripe_split_leading)}};
    j["cross_excess"] = Json{{"value", number(r.cross_excess)},
                             {"error_bound", number(r.cross_excess_error)},
                             {"lower_bound", number(r.cross_lower_bound)}};
    j["in_lemma_region"] = claimed;
    const auto& n = *r.report.numeric;
    return {render(cfg, j), sign_exit(n.difference, n.error, claimed)};
}

CommandOutput verify_rp(const RunConfig& cfg) {
    TileEnergyCache cache(cfg.J, cfg.budget);
    const auto n = static_cast<std::size_t>(cfg.samples);
    std::vector<ChessboardReport> reports(n);
    parallel_for(
        n,
        [&](std::size_t i) {
            const auto c = sample_config(cfg.L, cfg.density, cfg.seed + i);
            reports[i] = chessboard_estimate_check(c, cache, cfg.budget);
        },
        cfg.threads);

    std::int64_t violations = 0;
    std::int64_t literal_differs = 0;
    double worst = std::numeric_limits<double>::infinity();
    Json rows = Json::array();
    for (std::size_t i = 0; i < n; ++i) {
        const auto& r = reports[i];
        violations += r.violated();
        literal_differs += std::fabs(r.rhs_literal - r.rhs) > r.rhs_error + r.rhs_literal_error;
        worst = std::min(worst, r.margin());
        rows.push_back(Json{{"seed", cfg.seed + i},
                            {"tiles", r.tile_count},
                            {"lhs", number(r.lhs.value)},
                            {"rhs", number(r.rhs)},
                            {"margin", number(r.margin())},
                            {"certificate", number(r.certificate())},
                            {"literal_margin", number(r.literal_margin())}});
    }
    Json j{{"L", cfg.L},
           {"J", cfg.J},
           {"samples", cfg.samples},
           {"density", cfg.density},
           {"violations", violations},
           {"literal_width_differs", literal_differs},
           {"worst_margin", number(worst)},
           {"configs", rows}};
    return {render(cfg, j), violations == 0 ? kOk : kInvariant};
}

CommandOutput verify_appendix(const RunConfig& cfg) {
    const auto h1 = parse_int(cfg.h1, "--h1");
    const auto h2 = parse_int(cfg.h2, "--h2");
    Json j{{"h1", h1}, {"h2", h2}, {"L", cfg.L}};
    int code = kOk;
    auto record = [&](const char* name, const EnergyResult& r) {
        j[name] = energy_json(r);
        j[name]["positive"] = r.value > r.error_bound;
        code = std::max(code, sign_exit(r.value, r.error_bound, true));
    };
    if (h2 % 2 == 0) record("R_II", appendix_R_II(h1, h2, cfg.L, cfg.budget));
    record("R_III", appendix_R_III(h1, h2, cfg.L, cfg.budget));
    return {render(cfg, j), code};
}

SpinConfiguration read_config_file(const std::string& path, std::int64_t L) {
    std::ifstream in(path);
    if (!in) throw DomainError("oracle: cannot read " + path);
    std::vector<std::int8_t> spins;
    std::string line;
    std::int64_t rows = 0;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (static_cast<std::int64_t>(line.size()) != L) throw DomainError("oracle: every line must have L spins");
        for (char ch : line) {
            if (ch != '+' && ch != '-') throw DomainError("oracle: spins must be '+' or '-'");
            spins.push_back(ch == '+' ? 1 : -1);
        }
        ++rows;
    }
    if (rows != L) throw DomainError("oracle: expected L lines");
    return SpinConfiguration(L, std::move(spins));
}

}  // namespace

CommandOutput cmd_constants(const RunConfig& cfg) {
    const auto& c = constants();
    const double pi = std::numbers::pi;
    const auto ell = ell_sum_identity();
    const auto q1 = integral_corner_tile_full();
    const auto q3 = integral_shifted_quadrant();
    struct Row {
        const char* name;
        std::string paper;  // as printed; empty when the paper gives no value
        double computed;
        std::optional<double> certificate;  // absent for closed forms in double precision
    };
    const Row rows[] = {
        {"alpha_s", "2.276", c.alpha_s, std::nullopt},
        {"c_star", "0.871", c_star(), std::nullopt},
        {"c_I", "0.123", c.c_I, std::nullopt},
        {"c_II_prefactor", "1.461", c.c_II_prefactor, std::nullopt},
        {"c_II(1)", "79.819", c.c_II(1.0), std::nullopt},
        {"c_III_prefactor", "1.507", c.c_III_prefactor, std::nullopt},
        {"c_min", "0.356", c.c_min, std::nullopt},
        {"c_max", "79.819", c.c_max, std::nullopt},
        {"lambda_min", "0.007", c.lambda_min, std::nullopt},
        {"delta_star", "", c.delta_star, 1e-12},
        {"integral_I", "0.97229", q1.value, q1.error},
        {"integral_int3", "0.36466", q3.value, q3.error},
        {"f_chord_slope", "0.3998", f_chord_slope(), std::nullopt},
        {"g_chord_slope", "1.497", g_chord_slope(), std::nullopt},
        {"ell_sum", format_number(-2.0 + 2.0 * std::log(pi / 2.0)), ell.value, ell.error},
    };

    if (cfg.format == Format::csv) {
        std::ostringstream out;
        out << "name,paper,computed,certificate\n";
        for (const auto& r : rows)
            out << r.name << "," << r.paper << "," << format_number(r.computed)
                << "," << (r.certificate ? format_number(*r.certificate) : "") << "\n";
        return {out.str(), kOk};
    }
    Json j = Json::array();
    for (const auto& r : rows)
        j.push_back(Json{{"name", r.name},
                         {"paper", r.paper.empty() ? Json(nullptr) : Json(std::stod(r.paper))},
                         {"computed", r.computed},
                         {"certificate", r.certificate ? Json(*r.certificate) : Json(nullptr)}});
    return {j.dump(2) + "\n", kOk};
}

CommandOutput cmd_stripe(const RunConfig& cfg) {
    Json j{{"J", cfg.J}};
    if (cfg.h == "optimal") {
        const auto opt = optimal_stripe_width(cfg.J, cfg.budget);
        const double scale = c_star() * std::exp(cfg.J / 2.0);
        j["h_star"] = opt.h;
        j["tie"] = opt.tie ? Json(*opt.tie) : Json(nullptr);
        j["energy"] = energy_json(opt.energy);
        j["window"] = Json::array({opt.window_lo, opt.window_hi});
        j["c_star_exp"] = scale;
        j["asymptotic_ratio"] = static_cast<double>(opt.h) / scale;
        j["energy_over_asymptotic"] =
            number(opt.energy.value / stripe_energy_asymptotic(static_cast<double>(opt.h), cfg.J));
    } else {
        const auto h = parse_int(cfg.h, "--h");
        const auto e = stripe_energy(h, cfg.J, cfg.budget);
        const double asym = stripe_energy_asymptotic(static_cast<double>(h), cfg.J);
        j["h"] = h;
        j["energy"] = energy_json(e);
        j["asymptotic"] = number(asym);
        j["remainder"] = number(e.value - asym);
    }
    return {render(cfg, j), kOk};
}

CommandOutput cmd_checkerboard(const RunConfig& cfg) {
    const auto h1 = parse_side(cfg.h1);
    const auto h2 = parse_side(cfg.h2);
    const auto e = checkerboard_energy({h1, h2}, cfg.J, cfg.budget);
    Json j{{"J", cfg.J}, {"h1", h1.str()}, {"h2", h2.str()}, {"energy", energy_json(e)}};
    if (!h1.is_infinite() && !h2.is_infinite()) {
        const auto a = std::max(h1, h2).value();
        const auto b = std::min(h1, h2).value();
        const auto cell = classify(a, b, cfg.J);
        j["class"] = phase_class_name(cell.cls);
        j["in_R_envelope"] = cell.in_R_envelope;
    }
    return {render(cfg, j), kOk};
}

CommandOutput cmd_scan(const RunConfig& cfg) {
    const auto s = scan(cfg.J, cfg.h_max, cfg.stride, cfg.budget, cfg.threads);
    if (cfg.format == Format::csv) {
        std::ostringstream out;
        out << "h1,h2,class,energy,err_bound\n";
        for (const auto& c : s.cells)
            out << c.h1.str() << "," << c.h2.str() << "," << phase_class_name(c.cls) << ","
                << format_number(c.energy->value) << "," << format_number(c.energy->error_bound) << "\n";
        return {out.str(), kOk};
    }
    Json rows = Json::array();
    for (const auto& c : s.cells)
        rows.push_back(Json{{"h1", c.h1.str()},
                            {"h2", c.h2.str()},
                            {"class", phase_class_name(c.cls)},
                            {"energy", number(c.energy->value)},
                            {"err_bound", number(c.energy->error_bound)}});
    const auto& m = s.cells[s.argmin];
    Json j{{"J", s.J},
           {"h_max", s.h_max},
           {"stride", s.stride},
           {"minimum", Json{{"h1", m.h1.str()}, {"h2", m.h2.str()}, {"energy", number(m.energy->value)}}},
           {"cells", rows}};
    return {j.dump(2) + "\n", kOk};
}

CommandOutput cmd_verify(const RunConfig& cfg) {
    if (cfg.target == "1" || cfg.target == "2" || cfg.target == "3") return verify_lemma(cfg);
    if (cfg.target == "4") return verify_lemma_IV(cfg);
    if (cfg.target == "rp") return verify_rp(cfg);
    if (cfg.target == "appendix") return verify_appendix(cfg);
    throw DomainError("verify: unknown target '" + cfg.target + "'");
}

CommandOutput cmd_verdict(const RunConfig& cfg) {
    const auto v = restricted_verdict(cfg.J, cfg.h_max, cfg.budget, cfg.threads);
    Json j{{"J", v.J},
           {"h_max", cfg.h_max},
           {"h_star", v.stripe.h},
           {"tie", v.stripe.tie ? Json(*v.stripe.tie) : Json(nullptr)},
           {"stripe_energy", energy_json(v.stripe.energy)}};
    if (v.runner_up)
        j["runner_up"] = Json{{"h1", v.runner_up->h1.str()},
                              {"h2", v.runner_up->h2.str()},
                              {"class", phase_class_name(v.runner_up->cls)},
                              {"energy", energy_json(*v.runner_up->energy)}};
    const auto& m = v.scan.cells[v.scan.argmin];
    j["scan_minimum"] = Json{{"h1", m.h1.str()}, {"h2", m.h2.str()}, {"energy", number(m.energy->value)}};
    j["gap"] = number(v.gap);
    j["gap_certificate"] = number(v.gap_certificate);
    j["verdict"] = verdict_name(v.verdict);
    return {render(cfg, j), v.verdict == Verdict::Inconclusive ? kInconclusive : kOk};
}

CommandOutput cmd_oracle(const RunConfig& cfg) {
    const auto L = cfg.L;
    Json j{{"L", L}, {"J", cfg.J}, {"source", cfg.source}};
    std::optional<SpinConfiguration> config;
    std::optional<EnergyResult> model;
    if (cfg.source == "checkerboard") {
        const auto h1 = parse_int(cfg.h1, "--h1");
        const auto h2 = parse_int(cfg.h2, "--h2");
        config = checkerboard_configuration(L, h1, h2);
        if (L % (2 * h1) == 0 && L % (2 * h2) == 0)
            model = checkerboard_energy({TileSide::finite(h1), TileSide::finite(h2)}, cfg.J, cfg.budget);
    } else if (cfg.source == "stripe") {
        const auto h = parse_int(cfg.h, "--h");
        config = stripe_configuration(L, h);
        if (L % (2 * h) == 0) model = stripe_energy(h, cfg.J, cfg.budget);
    } else if (cfg.source == "sample") {
        const auto c = sample_config(L, cfg.density, cfg.seed);
        config = to_spin_configuration(c);
        j["vertical_cuts"] = c.vertical_cuts();
        j["horizontal_cuts"] = c.horizontal_cuts();
    } else {
        config = read_config_file(cfg.input, L);
    }
    const auto e = energy_per_site(*config, cfg.J, cfg.budget);
    j["energy_per_site"] = energy_json(e);
    int code = kOk;
    if (model) {
        const double diff = e.value - model->value;
        const double cert = e.error_bound + model->error_bound;
        j["model"] = energy_json(*model);
        j["difference"] = number(diff);
        j["consistent"] = std::fabs(diff) <= cert;
        if (std::fabs(diff) > cert) code = kInvariant;
    }
    return {render(cfg, j), code};
}

CommandOutput run(const RunConfig& cfg) {
    if (cfg.command == "constants") return cmd_constants(cfg);
    if (cfg.command == "stripe") return cmd_stripe(cfg);
    if (cfg.command == "checkerboard") return cmd_checkerboard(cfg);
    if (cfg.command == "scan") return cmd_scan(cfg);
    if (cfg.command == "verify") return cmd_verify(cfg);
    if (cfg.command == "verdict") return cmd_verdict(cfg);
    if (cfg.command == "oracle") return cmd_oracle(cfg);
    throw DomainError("unknown command '" + cfg.command + "'");
}

}  // namespace dipolar::cli
