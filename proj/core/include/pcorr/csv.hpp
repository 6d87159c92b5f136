#pragma once

#include <filesystem>
#include <type_traits>
#include <ostream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace pcorr {

// One CSV table: a mandatory header row and string cells.
struct Table {
  std::string name;
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  void add_row(std::vector<std::string> row);
};

// RFC 4180 field quoting: fields containing ',', '"', CR or LF are quoted and
// embedded quotes doubled.
std::string csv_field(std::string_view field);

// Header and rows, CRLF-free ("\n" line ends).
void write_table(std::ostream& out, const Table& table);

// Writes "# key,value" metadata lines followed by the table.
void write_report_csv(std::ostream& out,
                      const std::vector<std::pair<std::string, std::string>>& meta,
                      const Table& table);

// path with ".csv" replaced by "." + suffix + ".csv" (or appended).
std::filesystem::path sibling_path(const std::filesystem::path& path, std::string_view suffix);

// Cell formatting: 12 significant digits for reals, full digits for integers.
std::string cell(double x);
std::string cell(bool b);
template <class Int>
  requires std::is_integral_v<Int>
std::string cell(Int v) {
  return std::to_string(v);
}

}  // namespace pcorr
