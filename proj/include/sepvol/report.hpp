#pragma once

#include <cstdint>
#include <ostream>
#include <string>
#include <variant>
#include <vector>

namespace sepvol::report {

/// %.17g, enough digits for every double to round-trip exactly.
std::string format_real(double x);

using Cell = std::variant<std::string, std::int64_t, std::uint64_t, double, bool>;

std::string format_cell(const Cell& c);

struct Table {
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;

  /// Throws InvalidArgument when the row width differs from the header.
  void add_row(std::vector<Cell> row);
};

enum class Format { Csv, Json };

/// Header line followed by one line per row. Strings containing a comma,
/// quote or newline are quoted.
void write_csv(std::ostream& out, const Table& table);

/// Array of objects keyed by column name.
void write_json(std::ostream& out, const Table& table);

void write(std::ostream& out, const Table& table, Format format);

}  // namespace sepvol::report
