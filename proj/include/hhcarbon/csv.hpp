#pragma once

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace hhcarbon::csv {

/// Splits one comma-delimited line. Double-quoted fields may contain commas
/// and doubled quotes; a trailing '\r' is stripped.
std::vector<std::string> split(std::string_view line);

/// Joins fields, quoting any that contain a comma, quote, or newline.
std::string join(const std::vector<std::string>& fields);

/// Shortest decimal string that parses back to exactly `v`.
std::string format_exact(double v);

/// `v` rounded to 6 significant digits, for human-facing tables.
std::string format_short(double v);

/// Strict number parsing: the whole field must be consumed.
std::optional<double> parse_double(std::string_view field);
std::optional<long long> parse_int(std::string_view field);

/// Reads a headered file into header + rows. Blank lines are skipped.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // 1-based source line of each row

  std::optional<std::size_t> column(std::string_view name) const;
};

Table read(std::istream& in);
Table read_file(const std::string& path);

}  // namespace hhcarbon::csv
