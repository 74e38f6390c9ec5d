#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <variant>
#include <vector>

namespace bpprod {

/// Empty cells print as "N/A" in CSV and null in JSON.
using Cell = std::variant<std::monostate, double, std::int64_t, std::string>;

/// A named rectangular table, emitted as CSV or as JSON
/// `{"table", "schema_version", "meta", "columns", "rows": [{column: value}]}`.
struct Table {
    static constexpr int kSchemaVersion = 1;

    std::string name;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    /// JSON-only annotations (units, alpha used, notes).
    std::map<std::string, std::string> meta;

    void add_row(std::vector<Cell> row);
};

/// Shortest decimal text that round-trips the double.
std::string format_number(double value);

void write_table_csv(const Table& table, std::ostream& out);
void write_table_json(const Table& table, std::ostream& out);

/// Header row plus data rows.
std::vector<std::vector<std::string>> read_csv_rows(std::istream& in);

/// Writes `text` to `path`, creating parent directories. Throws Io.
void write_text_file(const std::filesystem::path& path, const std::string& text);

}  // namespace bpprod
