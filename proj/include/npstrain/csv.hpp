#pragma once

#include <iosfwd>
#include <string>
#include <vector>

namespace npstrain::csv {

/// Shortest decimal text that round-trips the double.
std::string number(double value);

/// Writes each line prefixed by "# ".
void write_comments(std::ostream& os, const std::vector<std::string>& lines);
void write_row(std::ostream& os, const std::vector<std::string>& fields);

/// Rows of a CSV file with '#' comment lines and the column header skipped.
struct Table {
    std::vector<std::string> comments;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;

    [[nodiscard]] int column(const std::string& name) const;
};

Table read(std::istream& is);

} // namespace npstrain::csv
