#include "sepvol/report.hpp"

#include <cmath>
#include <cstdio>

#include <json.hpp>

#include "sepvol/error.hpp"

namespace sepvol::report {

std::string format_real(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

struct CellFormatter {
  std::string operator()(const std::string& s) const { return s; }
  std::string operator()(std::int64_t v) const { return std::to_string(v); }
  std::string operator()(std::uint64_t v) const { return std::to_string(v); }
  std::string operator()(double v) const { return format_real(v); }
  std::string operator()(bool v) const { return v ? "true" : "false"; }
};

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n\r") == std::string::npos) return s;
  std::string out = "\"";
  for (char ch : s) {
    if (ch == '"') out += '"';
    out += ch;
  }
  return out + "\"";
}

}  // namespace

std::string format_cell(const Cell& c) { return std::visit(CellFormatter{}, c); }

void Table::add_row(std::vector<Cell> row) {
  if (row.size() != columns.size()) {
    throw Error(ErrorCode::InvalidArgument, "row has " + std::to_string(row.size()) + " cells, header has " +
                                                std::to_string(columns.size()));
  }
  rows.push_back(std::move(row));
}

void write_csv(std::ostream& out, const Table& table) {
  for (std::size_t i = 0; i < table.columns.size(); ++i) {
    out << (i ? "," : "") << csv_escape(table.columns[i]);
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t i = 0; i < row.size(); ++i) {
      const bool is_text = std::holds_alternative<std::string>(row[i]);
      const std::string text = format_cell(row[i]);
      out << (i ? "," : "") << (is_text ? csv_escape(text) : text);
    }
    out << '\n';
  }
}

void write_json(std::ostream& out, const Table& table) {
  nlohmann::ordered_json doc = nlohmann::ordered_json::array();
  for (const auto& row : table.rows) {
    nlohmann::ordered_json obj = nlohmann::ordered_json::object();
    for (std::size_t i = 0; i < row.size(); ++i) {
      const std::string& key = table.columns[i];
      std::visit(
          [&](const auto& v) {
            using T = std::decay_t<decltype(v)>;
            if constexpr (std::is_same_v<T, double>) {
              // JSON has no inf/nan; those go out as strings.
              if (std::isfinite(v)) obj[key] = v;
              else obj[key] = format_real(v);
            } else {
              obj[key] = v;
            }
          },
          row[i]);
    }
    doc.push_back(std::move(obj));
  }
  out << doc.dump(2) << '\n';
}

void write(std::ostream& out, const Table& table, Format format) {
  if (format == Format::Csv) write_csv(out, table);
  else write_json(out, table);
}

}  // namespace sepvol::report
