#include "pcorr/csv.hpp"

#include "pcorr/errors.hpp"
#include "pcorr/rational.hpp"

namespace pcorr {

void Table::add_row(std::vector<std::string> row) {
  if (row.size() != header.size()) {
    throw InvalidArgument("table " + name + ": row has " + std::to_string(row.size()) +
                          " cells, header has " + std::to_string(header.size()));
  }
  rows.push_back(std::move(row));
}

std::string csv_field(std::string_view field) {
  if (field.find_first_of(",\"\r\n") == std::string_view::npos) return std::string(field);
  std::string out = "\"";
  for (char ch : field) {
    if (ch == '"') out += '"';
    out += ch;
  }
  out += '"';
  return out;
}

namespace {

void write_line(std::ostream& out, const std::vector<std::string>& cells) {
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) out << ',';
    out << csv_field(cells[i]);
  }
  out << '\n';
}

}  // namespace

void write_table(std::ostream& out, const Table& table) {
  write_line(out, table.header);
  for (const auto& row : table.rows) write_line(out, row);
}

void write_report_csv(std::ostream& out,
                      const std::vector<std::pair<std::string, std::string>>& meta,
                      const Table& table) {
  for (const auto& [k, v] : meta) out << "# " << csv_field(k) << ',' << csv_field(v) << '\n';
  write_table(out, table);
}

std::filesystem::path sibling_path(const std::filesystem::path& path, std::string_view suffix) {
  std::filesystem::path out = path;
  if (out.extension() == ".csv") {
    out.replace_extension("");
  }
  out += "." + std::string(suffix) + ".csv";
  return out;
}

std::string cell(double x) { return format_sig(x, 12); }

std::string cell(bool b) { return b ? "true" : "false"; }

}  // namespace pcorr
