#pragma once

#include <string>
#include <utility>
#include <vector>

#include "cext/errors.hpp"

namespace cext {

enum class ReportFormat { table, doc, csv };

// Accepts "table", "doc", "csv"; anything else is an input error.
ReportFormat parse_format(const std::string& s);

// Serializable result shell: named scalar fields plus an optional table.
// Every value is pre-rendered text; numeric content stays exact (integers,
// rationals as p/q) because nothing here ever converts.
struct Report {
  std::string title;
  std::vector<std::pair<std::string, std::string>> fields;
  std::vector<std::string> columns;
  std::vector<std::vector<std::string>> rows;
};

// table: aligned human-readable text. doc: structured document with stable
// field names (title, fields, columns, rows). csv: header row then data; the
// scalar fields are emitted as a field,value table when no columns exist.
std::string render(const Report& r, ReportFormat f);

}  // namespace cext
