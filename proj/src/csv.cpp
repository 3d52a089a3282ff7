#include "npstrain/csv.hpp"

#include <istream>
#include <ostream>
#include <sstream>

#include <fmt/format.h>

#include "npstrain/errors.hpp"

namespace npstrain::csv {

std::string number(double value) { return fmt::format("{}", value); }

void write_comments(std::ostream& os, const std::vector<std::string>& lines) {
    for (const auto& line : lines) os << "# " << line << '\n';
}

void write_row(std::ostream& os, const std::vector<std::string>& fields) {
    for (std::size_t i = 0; i < fields.size(); ++i) {
        if (i) os << ',';
        os << fields[i];
    }
    os << '\n';
}

int Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i) {
        if (columns[i] == name) return static_cast<int>(i);
    }
    throw ConfigError("CSV has no column '" + name + "'");
}

namespace {
std::vector<std::string> split(const std::string& line) {
    std::vector<std::string> out;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) out.push_back(field);
    return out;
}
} // namespace

Table read(std::istream& is) {
    Table table;
    std::string line;
    while (std::getline(is, line)) {
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            table.comments.push_back(line.size() > 2 ? line.substr(2) : std::string());
            continue;
        }
        if (table.columns.empty()) {
            table.columns = split(line);
        } else {
            table.rows.push_back(split(line));
        }
    }
    return table;
}

} // namespace npstrain::csv
