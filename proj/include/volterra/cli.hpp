#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "volterra/forward.hpp"
#include "volterra/report.hpp"
#include "volterra/solver.hpp"

namespace volterra::cli {

enum class Command { KernelInfo, Roots, Solve, Convergence, Optimize, Scaling };
enum class Format { Csv, Json };
enum class Precision { Double, Single };

std::string_view to_string(Command command);

/// Process exit codes.
inline constexpr int kExitSuccess = 0;
inline constexpr int kExitConfig = 2;
inline constexpr int kExitNumeric = 3;
inline constexpr int kExitIo = 4;

struct RunConfig {
    Command command = Command::KernelInfo;
    std::optional<int> order;
    Scheme scheme = Scheme::Midpoint;
    std::optional<std::string> benchmark;
    std::optional<std::string> input_path;
    std::optional<double> horizon;
    std::optional<double> step;
    std::optional<int> steps;
    std::optional<double> delta;
    std::vector<double> deltas;
    std::optional<double> h_lo;
    std::optional<double> h_hi;
    int order_min = 10;
    int order_max = 21;
    std::vector<int> convergence_sizes;
    Precision precision = Precision::Double;
    std::optional<std::string> output_path;
    Format format = Format::Csv;
    bool stamp = false;
};

/// Throws ConfigError when the flags are inconsistent.
void validate(const RunConfig &config);

/// Runs the command and returns its report. Module errors propagate.
Report execute(const RunConfig &config);

/// execute + write, with every failure mapped to an exit code. The report
/// goes to output_path when set (summary to `out`), otherwise to `out`
/// (summary and notes to `err`).
int run(const RunConfig &config, std::ostream &out, std::ostream &err);

/// Parses argv-style arguments (without the program name) and calls run.
int run_cli(const std::vector<std::string> &args, std::ostream &out, std::ostream &err);

} // namespace volterra::cli
