#include "volterra/report.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <system_error>

#include <json.hpp>

namespace volterra {
namespace {

std::string render(const Cell &cell)
{
    if (const auto *i = std::get_if<long long>(&cell)) {
        return std::to_string(*i);
    }
    if (const auto *d = std::get_if<double>(&cell)) {
        return format_number(*d);
    }
    return std::get<std::string>(cell);
}

nlohmann::ordered_json to_json(const Cell &cell)
{
    if (const auto *i = std::get_if<long long>(&cell)) {
        return *i;
    }
    if (const auto *d = std::get_if<double>(&cell)) {
        if (!std::isfinite(*d)) {
            return format_number(*d);
        }
        return *d;
    }
    const auto &text = std::get<std::string>(cell);
    return text.empty() ? nlohmann::ordered_json(nullptr) : nlohmann::ordered_json(text);
}

std::string trim(std::string_view text)
{
    const auto first = text.find_first_not_of(" \t\r\"");
    if (first == std::string_view::npos) {
        return {};
    }
    const auto last = text.find_last_not_of(" \t\r\"");
    return std::string(text.substr(first, last - first + 1));
}

std::optional<double> parse_double(const std::string &text)
{
    double value = 0.0;
    const char *begin = text.data();
    const char *end = begin + text.size();
    if (!text.empty() && *begin == '+') {
        ++begin;
    }
    const auto [ptr, ec] = std::from_chars(begin, end, value);
    if (ec != std::errc() || ptr != end) {
        return std::nullopt;
    }
    return value;
}

} // namespace

std::string format_number(double value)
{
    if (std::isnan(value)) {
        return "nan";
    }
    if (std::isinf(value)) {
        return value > 0 ? "inf" : "-inf";
    }
    char buffer[64];
    const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
    return std::string(buffer, ptr);
}

std::string csv_field(const std::string &text)
{
    if (text.find_first_of(",\"\r\n") == std::string::npos) {
        return text;
    }
    std::string quoted = "\"";
    for (char c : text) {
        if (c == '"') {
            quoted += '"';
        }
        quoted += c;
    }
    quoted += '"';
    return quoted;
}

void write_csv(std::ostream &out, const Report &report, const std::optional<std::string> &stamp)
{
    if (stamp) {
        out << "# generated_at=" << *stamp << "\r\n";
    }
    for (std::size_t c = 0; c < report.columns.size(); ++c) {
        out << (c ? "," : "") << csv_field(report.columns[c]);
    }
    out << "\r\n";
    for (const auto &row : report.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << csv_field(render(row[c]));
        }
        out << "\r\n";
    }
}

void write_json(std::ostream &out, const Report &report, const std::optional<std::string> &stamp)
{
    nlohmann::ordered_json doc;
    doc["command"] = report.command;
    nlohmann::ordered_json config = nlohmann::ordered_json::object();
    for (const auto &[key, value] : report.config) {
        config[key] = value;
    }
    doc["config"] = config;
    doc["columns"] = report.columns;
    nlohmann::ordered_json rows = nlohmann::ordered_json::array();
    for (const auto &row : report.rows) {
        nlohmann::ordered_json cells = nlohmann::ordered_json::array();
        for (const auto &cell : row) {
            cells.push_back(to_json(cell));
        }
        rows.push_back(cells);
    }
    doc["rows"] = rows;
    nlohmann::ordered_json summary = nlohmann::ordered_json::object();
    for (const auto &[key, value] : report.summary) {
        summary[key] = to_json(value);
    }
    doc["summary"] = summary;
    doc["notes"] = report.notes;
    if (stamp) {
        doc["generated_at"] = *stamp;
    }
    out << doc.dump(2) << '\n';
}

GridFunction<double> read_rhs_csv(std::istream &in)
{
    std::vector<double> times;
    std::vector<double> values;
    std::string line;
    int line_number = 0;
    while (std::getline(in, line)) {
        ++line_number;
        if (trim(line).empty() || line.front() == '#') {
            continue;
        }
        const auto comma = line.find(',');
        if (comma == std::string::npos) {
            throw ConfigError("line " + std::to_string(line_number) + ": expected two comma-separated columns");
        }
        const auto t = parse_double(trim(std::string_view(line).substr(0, comma)));
        const auto y = parse_double(trim(std::string_view(line).substr(comma + 1)));
        if (!t || !y) {
            if (times.empty() && line_number == 1) {
                continue; // header
            }
            throw ConfigError("line " + std::to_string(line_number) + ": could not parse numbers");
        }
        times.push_back(*t);
        values.push_back(*y);
    }
    if (times.empty()) {
        throw ConfigError("input series is empty");
    }

    const int n = static_cast<int>(times.size());
    const double horizon = times.back();
    if (!(horizon > 0.0)) {
        throw ConfigError("input nodes must be positive");
    }
    const Mesh mesh(horizon, n);
    for (int i = 1; i <= n; ++i) {
        if (std::abs(times[i - 1] - mesh.node(i)) > 1e-9 * mesh.step()) {
            std::ostringstream msg;
            msg.precision(17);
            msg << "input nodes are not uniform t_i = i*h: row " << i << " has t=" << times[i - 1] << ", expected "
                << mesh.node(i);
            throw ConfigError(msg.str());
        }
    }
    return {mesh, Location::Nodes, Eigen::Map<const Eigen::VectorXd>(values.data(), n)};
}

GridFunction<double> read_rhs_csv_file(const std::string &path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot open input file '" + path + "'");
    }
    return read_rhs_csv(in);
}

} // namespace volterra
