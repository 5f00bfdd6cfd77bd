#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <doctest.h>
#include <json.hpp>

#include "dipolar/cli.hpp"
#include "dipolar/errors.hpp"

using namespace dipolar;
using namespace dipolar::cli;

namespace {

RunConfig make(std::string command) {
    RunConfig c;
    c.command = std::move(command);
    return c;
}

int invoke(std::vector<std::string> args) {
    args.insert(args.begin(), "dipolar");
    std::vector<char*> argv;
    for (auto& a : args) argv.push_back(a.data());
    return main_entry(static_cast<int>(argv.size()), argv.data());
}

std::string slurp(const std::filesystem::path& p) {
    std::ifstream in(p);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("constants table") {
    auto cfg = make("constants");
    const auto out = run(cfg);
    CHECK(out.exit_code == kOk);
    const auto j = nlohmann::json::parse(out.text);
    bool seen = false;
    for (const auto& row : j) {
        if (row["name"] == "c_max") {
            seen = true;
            CHECK(row["paper"].get<double>() == 79.819);
            CHECK(row["computed"].get<double>() == doctest::Approx(79.82).epsilon(1e-4));
        }
        if (row["name"] == "alpha_s") CHECK(row["computed"].get<double>() == doctest::Approx(2.276).epsilon(1e-3));
    }
    CHECK(seen);
    cfg.format = Format::csv;
    CHECK(run(cfg).text.rfind("name,paper,computed,certificate\n", 0) == 0);
}

TEST_CASE("stripe command") {
    auto cfg = make("stripe");
    cfg.J = 6.0;
    cfg.h = "optimal";
    const auto j = nlohmann::json::parse(run(cfg).text);
    CHECK(j["h_star"] == 17);
    CHECK(j["energy"]["error_bound"].get<double>() < 1e-9);
    cfg.h = "5";
    CHECK(nlohmann::json::parse(run(cfg).text)["h"] == 5);
}

TEST_CASE("scan CSV schema and row count") {
    auto cfg = make("scan");
    cfg.J = 4.0;
    cfg.h_max = 64;
    cfg.format = Format::csv;
    const auto out = run(cfg);
    std::istringstream in(out.text);
    std::string line;
    std::getline(in, line);
    CHECK(line == "h1,h2,class,energy,err_bound");
    std::size_t rows = 0;
    bool inf_row = false;
    while (std::getline(in, line)) {
        ++rows;
        inf_row |= line.rfind("inf,", 0) == 0;
    }
    CHECK(rows == 64 * 65 / 2 + 64);
    CHECK(inf_row);
    CHECK(run(cfg).text == out.text);
}

TEST_CASE("verify rp reports no violations") {
    auto cfg = make("verify");
    cfg.target = "rp";
    cfg.L = 24;
    cfg.J = 4.0;
    cfg.samples = 100;
    cfg.seed = 7;
    const auto out = run(cfg);
    CHECK(out.exit_code == kOk);
    CHECK(nlohmann::json::parse(out.text)["violations"] == 0);
}

TEST_CASE("verify lemmas and appendix") {
    auto cfg = make("verify");
    cfg.target = "1";
    cfg.h1 = "8";
    cfg.h2 = "4";
    cfg.J = 8.0;
    auto out = run(cfg);
    CHECK(out.exit_code == kOk);
    CHECK(nlohmann::json::parse(out.text)["energy_check"]["strictly_positive"] == true);

    cfg.target = "appendix";
    cfg.L = 8;
    cfg.h1 = "4";
    cfg.h2 = "2";
    out = run(cfg);
    CHECK(out.exit_code == kOk);
    const auto j = nlohmann::json::parse(out.text);
    CHECK(j["R_II"]["positive"] == true);
    CHECK(j["R_III"]["positive"] == true);

    cfg.target = "4";
    cfg.hreal = 20.0;
    cfg.lambda = 0.5;
    cfg.J = 4.0;
    CHECK(run(cfg).exit_code == kOk);
}

TEST_CASE("oracle agrees with the model energy") {
    auto cfg = make("oracle");
    cfg.L = 12;
    cfg.J = 4.0;
    cfg.source = "checkerboard";
    cfg.h1 = "2";
    cfg.h2 = "3";
    const auto out = run(cfg);
    CHECK(out.exit_code == kOk);
    CHECK(nlohmann::json::parse(out.text)["consistent"] == true);

    const auto path = std::filesystem::temp_directory_path() / "dipolar_oracle_input.txt";
    {
        std::ofstream f(path);
        f << "++--\n++--\n--++\n--++\n";
    }
    cfg.source = "file";
    cfg.L = 4;
    cfg.input = path.string();
    CHECK(run(cfg).exit_code == kOk);
    std::filesystem::remove(path);
}

TEST_CASE("validation and exit codes") {
    auto cfg = make("checkerboard");
    cfg.h1 = "0";
    cfg.h2 = "3";
    CHECK_THROWS_AS(cfg.validate(), DomainError);
    cfg.h1 = "inf";
    CHECK_NOTHROW(cfg.validate());
    cfg = make("verify");
    cfg.target = "9";
    CHECK_THROWS_AS(cfg.validate(), DomainError);

    CHECK(invoke({"bogus"}) == kUsage);
    CHECK(invoke({"checkerboard", "--J", "4", "--h1", "-3", "--h2", "2"}) == kUsage);
    CHECK(invoke({"verify", "1", "--h1", "2", "--h2", "4", "--J", "4"}) == kUsage);
    CHECK(invoke({"checkerboard", "--J", "4", "--h1", "3", "--h2", "2", "--abs-tol", "1e-30"}) == kBudget);
}

TEST_CASE("atomic output and deterministic results") {
    const auto dir = std::filesystem::temp_directory_path() / "dipolar_cli_test";
    std::filesystem::create_directories(dir);
    const auto a = dir / "a.json";
    const auto b = dir / "b.json";
    CHECK(invoke({"verify", "rp", "--L", "12", "--J", "2", "--samples", "5", "--seed", "3", "-o", a.string()}) == kOk);
    CHECK(invoke({"verify", "rp", "--L", "12", "--J", "2", "--samples", "5", "--seed", "3", "-o", b.string()}) == kOk);
    CHECK(slurp(a) == slurp(b));
    CHECK(std::distance(std::filesystem::directory_iterator(dir), std::filesystem::directory_iterator{}) == 2);
    std::filesystem::remove_all(dir);

    CHECK(format_number(0.1) == "0.10000000000000001");
    CHECK(format_number(1.0 / 0.0) == "inf");
}

}  // TEST_SUITE
