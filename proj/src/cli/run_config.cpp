#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <unistd.h>

#include "dipolar/cli.hpp"
#include "dipolar/errors.hpp"

namespace dipolar::cli {

namespace {

bool is_side(const std::string& s) {
    if (s == "inf") return true;
    if (s.empty() || s.find_first_not_of("0123456789") != std::string::npos) return false;
    return std::stoll(s) >= 1;
}

void require(bool ok, const std::string& message) {
    if (!ok) throw DomainError(message);
}

}  // namespace

void RunConfig::validate() const {
    budget.validate();
    require(std::isfinite(J), "--J must be finite");
    if (command == "stripe") {
        require(h == "optimal" || (is_side(h) && h != "inf"), "stripe: --h must be a positive integer or 'optimal'");
    } else if (command == "checkerboard") {
        require(is_side(h1) && is_side(h2), "checkerboard: --h1 and --h2 must be positive integers or 'inf'");
    } else if (command == "scan" || command == "verdict") {
        require(h_max >= 1, "--h-max must be >= 1");
        require(stride >= 1, "--stride must be >= 1");
    } else if (command == "verify") {
        if (target == "1" || target == "2" || target == "3" || target == "appendix")
            require(is_side(h1) && is_side(h2) && h1 != "inf" && h2 != "inf",
                    "verify " + target + ": --h1 and --h2 must be positive integers");
        else if (target == "4")
            require(hreal >= 1.0 && lambda > 0.0 && lambda <= 0.5, "verify 4: needs --h >= 1 and --lambda in (0, 1/2]");
        else if (target == "rp")
            require(L >= 2 && samples >= 1 && density >= 0.0 && density <= 1.0,
                    "verify rp: needs --L >= 2, --samples >= 1 and --density in [0, 1]");
        else
            throw DomainError("verify: target must be one of 1, 2, 3, 4, rp, appendix");
        if (target == "appendix") require(L >= 2, "verify appendix: needs --L");
    } else if (command == "oracle") {
        require(L >= 2, "oracle: needs --L >= 2");
        require(source == "checkerboard" || source == "stripe" || source == "sample" || source == "file",
                "oracle: --source must be checkerboard, stripe, sample or file");
        if (source == "file") require(!input.empty(), "oracle: --source file needs --input");
    } else if (command != "constants") {
        throw DomainError("unknown command '" + command + "'");
    }
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", x);
    return buf;
}

void write_atomically(const std::string& path, const std::string& text) {
    namespace fs = std::filesystem;
    const fs::path target(path);
    fs::path tmp = target;
    tmp += ".tmp." + std::to_string(::getpid());
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw std::runtime_error("cannot open " + tmp.string() + " for writing");
        out << text;
        out.flush();
        if (!out) throw std::runtime_error("failed writing " + tmp.string());
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp);
        throw std::runtime_error("cannot rename onto " + path + ": " + ec.message());
    }
}

int main_entry(int argc, char** argv) {
    RunConfig cfg;
    try {
        cfg.budget = ErrorBudget::from_env();
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    CLI::App app{"Stripe and checkerboard energies of the dipolar Ising model"};
    app.require_subcommand(1);
    std::string format = "json";

    auto common = [&](CLI::App* sub) {
        // "--h" is a tile width here, so help is long-form only.
        sub->set_help_flag("--help", "Print this help message and exit");
        sub->add_option("--abs-tol", cfg.budget.abs_tol, "Absolute error tolerance (default $DIPOLAR_ABS_TOL or 1e-10)");
        sub->add_option("--truncation-radius", cfg.budget.truncation_radius, "Direct-sum truncation radius");
        sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"json", "csv"}));
        sub->add_option("--output,-o", cfg.output, "Write output to this file instead of stdout");
        sub->add_option("--threads", cfg.threads, "Worker threads (0: hardware concurrency)");
    };
    auto coupling = [&](CLI::App* sub) { sub->add_option("--J", cfg.J, "Nearest-neighbour coupling J"); };

    auto* constants = app.add_subcommand("constants", "Region constants with reference and computed values");
    common(constants);

    auto* stripe = app.add_subcommand("stripe", "Stripe energy E_s(h), or the optimal width");
    common(stripe);
    coupling(stripe);
    stripe->add_option("--h", cfg.h, "Stripe width or 'optimal'")->required();

    auto* board = app.add_subcommand("checkerboard", "Checkerboard energy E(h1, h2)");
    common(board);
    coupling(board);
    board->add_option("--h1", cfg.h1, "Tile width (integer or inf)")->required();
    board->add_option("--h2", cfg.h2, "Tile height (integer or inf)")->required();

    auto* scan = app.add_subcommand("scan", "Classify and evaluate every cell h2 <= h1 <= h-max");
    common(scan);
    coupling(scan);
    scan->add_option("--h-max", cfg.h_max, "Largest finite side");
    scan->add_option("--stride", cfg.stride, "Grid step");

    auto* verdict = app.add_subcommand("verdict", "Compare the optimal stripe with every scanned finite cell");
    common(verdict);
    coupling(verdict);
    verdict->add_option("--h-max", cfg.h_max, "Largest finite side");

    auto* verify = app.add_subcommand("verify", "Numerical checks of the exclusion lemmas, RP and the appendix");
    common(verify);
    coupling(verify);
    verify->add_option("target", cfg.target, "1 | 2 | 3 | 4 | rp | appendix")->required();
    verify->add_option("--h1", cfg.h1, "Tile width");
    verify->add_option("--h2", cfg.h2, "Tile height");
    verify->add_option("--h", cfg.hreal, "Scale h of the residual-region check");
    verify->add_option("--lambda", cfg.lambda, "Aspect parameter lambda of the residual-region check");
    verify->add_option("--L", cfg.L, "Torus side");
    verify->add_option("--samples", cfg.samples, "Number of random configurations");
    verify->add_option("--density", cfg.density, "Cut density of random configurations");
    verify->add_option("--seed", cfg.seed, "Base seed");

    auto* oracle = app.add_subcommand("oracle", "Direct torus energy per site of a configuration");
    common(oracle);
    coupling(oracle);
    oracle->add_option("--L", cfg.L, "Torus side")->required();
    oracle->add_option("--source", cfg.source, "checkerboard | stripe | sample | file")->required();
    oracle->add_option("--h", cfg.h, "Stripe width");
    oracle->add_option("--h1", cfg.h1, "Tile width");
    oracle->add_option("--h2", cfg.h2, "Tile height");
    oracle->add_option("--density", cfg.density, "Cut density for --source sample");
    oracle->add_option("--seed", cfg.seed, "Seed for --source sample");
    oracle->add_option("--input", cfg.input, "File of L lines of '+' and '-' for --source file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kOk : kUsage;
    }
    cfg.command = app.get_subcommands().front()->get_name();
    cfg.format = format == "csv" ? Format::csv : Format::json;
    if (cfg.command == "scan" && !app.get_subcommands().front()->get_option("--format")->count())
        cfg.format = Format::csv;

    CommandOutput out;
    try {
        cfg.validate();
        out = run(cfg);
    } catch (const Inconclusive& e) {
        std::cerr << "inconclusive: " << e.what() << "\n";
        return kInconclusive;
    } catch (const BudgetExceeded& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const QuadratureFailure& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const WindowExhausted& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const RootNotFound& e) {
        std::cerr << "budget: " << e.what() << "\n";
        return kBudget;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }

    try {
        if (cfg.output.empty())
            std::cout << out.text << std::flush;
        else
            write_atomically(cfg.output, out.text);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kUsage;
    }
    return out.exit_code;
}

}  // namespace dipolar::cli
