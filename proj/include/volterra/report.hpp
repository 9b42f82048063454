#pragma once

#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "volterra/mesh.hpp"

namespace volterra {

class IoError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// Malformed user input (flags or data files).
class ConfigError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

/// An empty string renders as an empty CSV field / JSON null.
using Cell = std::variant<long long, double, std::string>;

/// Tabular result of one CLI command plus the configuration that produced it.
struct Report {
    std::string command;
    std::vector<std::pair<std::string, std::string>> config;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::pair<std::string, double>> summary;
    std::vector<std::string> notes;
};

/// Shortest decimal string that round-trips; "nan", "inf", "-inf" otherwise.
std::string format_number(double value);

/// RFC 4180 field quoting.
std::string csv_field(const std::string &text);

/// Header row then data rows. With a stamp, a leading "# generated_at=..." line.
void write_csv(std::ostream &out, const Report &report, const std::optional<std::string> &stamp = std::nullopt);

/// {command, config, columns, rows, summary, notes[, generated_at]}.
void write_json(std::ostream &out, const Report &report, const std::optional<std::string> &stamp = std::nullopt);

/// Two-column CSV (t_i, y_i) with an optional header row. Nodes must be
/// t_i = i h to 1e-9 relative spacing; throws ConfigError otherwise.
GridFunction<double> read_rhs_csv(std::istream &in);
GridFunction<double> read_rhs_csv_file(const std::string &path);

} // namespace volterra
