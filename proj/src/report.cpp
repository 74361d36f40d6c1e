#include "cext/report.hpp"

#include <algorithm>
#include <sstream>

#include <json.hpp>

namespace cext {

ReportFormat parse_format(const std::string& s) {
  if (s == "table") return ReportFormat::table;
  if (s == "doc") return ReportFormat::doc;
  if (s == "csv") return ReportFormat::csv;
  throw input_error("unknown output format " + s + " (expected table, doc or csv)");
}

namespace {

std::string csv_cell(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  return out + "\"";
}

std::string render_table(const Report& r) {
  std::ostringstream out;
  out << r.title << "\n";
  size_t keyw = 0;
  for (const auto& [k, _] : r.fields) keyw = std::max(keyw, k.size());
  for (const auto& [k, v] : r.fields)
    out << "  " << k << std::string(keyw - k.size(), ' ') << "  " << v << "\n";
  if (!r.columns.empty()) {
    std::vector<size_t> w(r.columns.size());
    for (size_t i = 0; i < r.columns.size(); ++i) w[i] = r.columns[i].size();
    for (const auto& row : r.rows)
      for (size_t i = 0; i < row.size() && i < w.size(); ++i)
        w[i] = std::max(w[i], row[i].size());
    auto line = [&](const std::vector<std::string>& cells) {
      out << " ";
      for (size_t i = 0; i < cells.size(); ++i)
        out << " " << cells[i]
            << std::string(i + 1 < cells.size() ? w[i] - cells[i].size() : 0, ' ');
      out << "\n";
    };
    if (!r.fields.empty()) out << "\n";
    line(r.columns);
    for (const auto& row : r.rows) line(row);
  }
  return out.str();
}

std::string render_doc(const Report& r) {
  nlohmann::ordered_json j;
  j["title"] = r.title;
  nlohmann::ordered_json f = nlohmann::ordered_json::object();
  for (const auto& [k, v] : r.fields) f[k] = v;
  j["fields"] = f;
  j["columns"] = r.columns;
  j["rows"] = r.rows;
  return j.dump(2) + "\n";
}

std::string render_csv(const Report& r) {
  std::ostringstream out;
  if (r.columns.empty()) {
    out << "field,value\n";
    for (const auto& [k, v] : r.fields)
      out << csv_cell(k) << "," << csv_cell(v) << "\n";
    return out.str();
  }
  for (size_t i = 0; i < r.columns.size(); ++i)
    out << (i ? "," : "") << csv_cell(r.columns[i]);
  out << "\n";
  for (const auto& row : r.rows) {
    for (size_t i = 0; i < row.size(); ++i) out << (i ? "," : "") << csv_cell(row[i]);
    out << "\n";
  }
  return out.str();
}

}  // namespace

std::string render(const Report& r, ReportFormat f) {
  switch (f) {
    case ReportFormat::table:
      return render_table(r);
    case ReportFormat::doc:
      return render_doc(r);
    case ReportFormat::csv:
      return render_csv(r);
  }
  throw input_error("unknown output format");
}

}  // namespace cext
