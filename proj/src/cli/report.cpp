#include "shoberry/cli/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <ostream>
#include <set>

namespace shoberry::cli {

namespace {

using nlohmann::json;

std::string json_string(const std::string& s) { return json(s).dump(); }

struct CsvCell {
  std::ostream& out;
  void operator()(std::monostate) const {}
  void operator()(std::int64_t v) const { out << v; }
  void operator()(double v) const { out << format_number(v); }
  void operator()(const std::string& s) const {
    if (s.empty()) return;
    out << '"';
    for (char c : s) {
      if (c == '"') out << '"';
      out << (c == '\n' || c == '\r' ? ' ' : c);
    }
    out << '"';
  }
};

struct JsonCell {
  std::ostream& out;
  void operator()(std::monostate) const { out << "null"; }
  void operator()(std::int64_t v) const { out << v; }
  void operator()(double v) const {
    if (std::isfinite(v)) {
      out << format_number(v);
    } else {
      out << "null";
    }
  }
  void operator()(const std::string& s) const { out << json_string(s); }
};

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  char buffer[32];
  std::snprintf(buffer, sizeof buffer, "%.17g", value);
  return buffer;
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    if (c > 0) out << ',';
    out << table.columns[c];
  }
  out << '\n';
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) {
      if (c > 0) out << ',';
      std::visit(CsvCell{out}, row[c]);
    }
    out << '\n';
  }
}

void write_json(const Table& table, std::ostream& out) {
  out << "{\n  \"schema\": " << json_string(kResultSchemaId) << ",\n  \"command\": " << json_string(table.command)
      << ",\n  \"columns\": [";
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c > 0 ? ", " : "") << json_string(table.columns[c]);
  }
  out << "],\n  \"rows\": [";
  for (std::size_t r = 0; r < table.rows.size(); ++r) {
    out << (r > 0 ? ",\n    {" : "\n    {");
    const auto& row = table.rows[r];
    for (std::size_t c = 0; c < row.size(); ++c) {
      out << (c > 0 ? ", " : "") << json_string(table.columns[c]) << ": ";
      std::visit(JsonCell{out}, row[c]);
    }
    out << '}';
  }
  out << (table.rows.empty() ? "]\n}\n" : "\n  ]\n}\n");
}

const json& result_schema() {
  static const json schema = json::parse(R"({
  "$schema": "https://json-schema.org/draft/2020-12/schema",
  "$id": "shoberry-result/1",
  "title": "shoberry command result",
  "type": "object",
  "required": ["schema", "command", "columns", "rows"],
  "additionalProperties": false,
  "properties": {
    "schema": {"const": "shoberry-result/1"},
    "command": {"enum": ["berry", "driven", "sweep", "trajectory", "validate"]},
    "columns": {
      "type": "array",
      "items": {"type": "string", "minLength": 1},
      "uniqueItems": true
    },
    "rows": {
      "type": "array",
      "items": {
        "type": "object",
        "additionalProperties": {"type": ["number", "string", "null"]}
      }
    }
  }
})");
  return schema;
}

std::vector<std::string> validate_report(const json& report) {
  std::vector<std::string> problems;
  if (!report.is_object()) return {"report is not a JSON object"};
  const std::set<std::string> keys{"schema", "command", "columns", "rows"};
  for (const auto& [key, value] : report.items()) {
    if (!keys.contains(key)) problems.push_back("unexpected key '" + key + "'");
  }
  for (const auto& key : keys) {
    if (!report.contains(key)) problems.push_back("missing key '" + key + "'");
  }
  if (!problems.empty()) return problems;

  if (report["schema"] != kResultSchemaId) problems.push_back("schema is not " + std::string(kResultSchemaId));
  const auto& commands = result_schema()["properties"]["command"]["enum"];
  if (std::find(commands.begin(), commands.end(), report["command"]) == commands.end()) {
    problems.push_back("unknown command " + report["command"].dump());
  }

  std::vector<std::string> columns;
  if (!report["columns"].is_array()) {
    problems.push_back("columns is not an array");
  } else {
    std::set<std::string> seen;
    for (const auto& c : report["columns"]) {
      if (!c.is_string() || c.get<std::string>().empty()) {
        problems.push_back("column names must be nonempty strings");
        continue;
      }
      if (!seen.insert(c.get<std::string>()).second) problems.push_back("duplicate column " + c.dump());
      columns.push_back(c.get<std::string>());
    }
  }

  if (!report["rows"].is_array()) {
    problems.push_back("rows is not an array");
    return problems;
  }
  for (std::size_t r = 0; r < report["rows"].size(); ++r) {
    const auto& row = report["rows"][r];
    const std::string where = "rows[" + std::to_string(r) + "]";
    if (!row.is_object()) {
      problems.push_back(where + " is not an object");
      continue;
    }
    for (const auto& [key, value] : row.items()) {
      if (!(value.is_number() || value.is_string() || value.is_null())) {
        problems.push_back(where + "." + key + " is not a number, string or null");
      }
    }
    // write_json always emits every column; hold parsed reports to the same standard.
    if (row.size() != columns.size()) problems.push_back(where + " does not have one entry per column");
    for (const auto& c : columns) {
      if (!row.contains(c)) problems.push_back(where + " lacks column '" + c + "'");
    }
  }
  return problems;
}

}  // namespace shoberry::cli
