#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace giniflow {

enum class OutputFormat { text, csv, json };
enum class RunMode { faithful, reproduce };

struct CommandConfig {
    std::string command;  // table1|wfunc|gini-rate|sensitivity|simulate|calibrate|preset-export|validate
    std::string input_path;
    std::string out_path;  // empty -> standard output
    OutputFormat format = OutputFormat::text;
    RunMode mode = RunMode::faithful;

    std::optional<double> tau;           // wfunc
    std::optional<double> slope;         // sensitivity
    std::optional<std::string> steps;    // sensitivity, "A:B:S"
    bool from_model = false;             // sensitivity
    std::optional<std::string> span;     // simulate, "A:B"
    std::optional<double> step;          // simulate
    std::optional<double> eval_t;        // gini-rate
};

// Dispatches one command and writes the rendered report to `out` and
// diagnostics to `err`. Returns the process exit code: 0 success, 1 internal
// failure, 2 input/validation error, 3 degenerate statistics.
int run(const CommandConfig& config, std::ostream& out, std::ostream& err);

/// Shortest decimal representation that round-trips to the same double.
std::string format_double(double v);

/// Fixed-decimal rendering; negative zero normalizes to "0.00...".
std::string format_fixed(double v, int decimals);

/// Left-aligned column layout, two spaces between columns, one row per line.
std::string align_table(const std::vector<std::vector<std::string>>& rows);

}  // namespace giniflow
