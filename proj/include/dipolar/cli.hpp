#pragma once

// Command-line front end: argument parsing, command dispatch and output.

#include <cstdint>
#include <optional>
#include <string>

#include "dipolar/kernel.hpp"

namespace dipolar::cli {

enum ExitCode : int { kOk = 0, kUsage = 2, kBudget = 3, kInconclusive = 4, kInvariant = 5 };

enum class Format { json, csv };

struct RunConfig {
    std::string command;  // constants | stripe | checkerboard | scan | verify | verdict | oracle
    std::string target;   // verify: 1 | 2 | 3 | 4 | rp | appendix
    double J = 4.0;
    std::string h;   // integer or "optimal"
    std::string h1;  // integer or "inf"
    std::string h2;
    std::int64_t L = 0;
    double lambda = 0.5;
    double hreal = 0.0;  // real h for verify 4
    std::int64_t h_max = 64;
    std::int64_t stride = 1;
    std::int64_t samples = 100;
    double density = 0.3;
    std::uint64_t seed = 1;
    std::string source;  // oracle: checkerboard | stripe | sample | file
    std::string input;
    ErrorBudget budget;
    unsigned threads = 0;
    Format format = Format::json;
    std::string output;  // empty: stdout

    /// Throws DomainError when a field required by the command is missing or invalid.
    void validate() const;
};

struct CommandOutput {
    std::string text;
    int exit_code = kOk;
};

CommandOutput cmd_constants(const RunConfig& cfg);
CommandOutput cmd_stripe(const RunConfig& cfg);
CommandOutput cmd_checkerboard(const RunConfig& cfg);
CommandOutput cmd_scan(const RunConfig& cfg);
CommandOutput cmd_verify(const RunConfig& cfg);
CommandOutput cmd_verdict(const RunConfig& cfg);
CommandOutput cmd_oracle(const RunConfig& cfg);

/// Dispatches on cfg.command.
CommandOutput run(const RunConfig& cfg);

/// Writes to a sibling temporary file and renames it over `path`.
void write_atomically(const std::string& path, const std::string& text);

/// "%.17g", with "inf" and "nan" spelled out.
std::string format_number(double x);

/// Full program: parse argv, run, write output; returns the exit code.
int main_entry(int argc, char** argv);

}  // namespace dipolar::cli
