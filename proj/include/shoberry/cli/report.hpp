#pragma once

// Tabular command output and its CSV and JSON encodings.
//
// Every number is written with 17 significant digits, so output round-trips
// exactly and repeated runs are byte-identical.

#include <cstdint>
#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

#include <json.hpp>

namespace shoberry::cli {

/// Empty cells are written as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, std::int64_t, double, std::string>;

struct Table {
  std::string command;
  std::vector<std::string> columns;
  std::vector<std::vector<Cell>> rows;
};

inline constexpr const char* kResultSchemaId = "shoberry-result/1";

/// printf("%.17g"); non-finite values become "nan", "inf" or "-inf".
std::string format_number(double value);

/// Header row then one line per row, LF endings. String cells are
/// double-quoted when nonempty, with embedded quotes doubled.
void write_csv(const Table& table, std::ostream& out);

/// {"schema": ..., "command": ..., "columns": [...], "rows": [{...}, ...]}
/// with keys in column order and one row per line. Non-finite numbers are null.
void write_json(const Table& table, std::ostream& out);

/// JSON Schema (draft 2020-12) for documents produced by write_json.
const nlohmann::json& result_schema();

/// Structural check of a report against result_schema. Returns the list of
/// problems found; an empty list means the report conforms.
std::vector<std::string> validate_report(const nlohmann::json& report);

}  // namespace shoberry::cli
