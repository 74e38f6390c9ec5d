#include "bpprod/table.hpp"

#include "bpprod/error.hpp"
#include "csv_reader.hpp"

#include <nlohmann/json.hpp>

#include <charconv>
#include <cmath>
#include <fstream>
#include <ostream>

namespace bpprod {

void Table::add_row(std::vector<Cell> row)
{
    if (row.size() != columns.size()) {
        fail(ErrorKind::InvariantViolation, "table '" + name + "' row width " + std::to_string(row.size()) +
                                                " != " + std::to_string(columns.size()));
    }
    rows.push_back(std::move(row));
}

std::string format_number(double value)
{
    if (!std::isfinite(value)) {
        return std::isnan(value) ? "nan" : (value > 0 ? "inf" : "-inf");
    }
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, value);
    return std::string(buf, ptr);
}

namespace {

std::string cell_text(const Cell& c)
{
    struct Visitor {
        std::string operator()(std::monostate) const { return "N/A"; }
        std::string operator()(double v) const { return format_number(v); }
        std::string operator()(std::int64_t v) const { return std::to_string(v); }
        std::string operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, c);
}

nlohmann::json cell_json(const Cell& c)
{
    struct Visitor {
        nlohmann::json operator()(std::monostate) const { return nullptr; }
        nlohmann::json operator()(double v) const
        {
            return std::isfinite(v) ? nlohmann::json(v) : nlohmann::json(format_number(v));
        }
        nlohmann::json operator()(std::int64_t v) const { return v; }
        nlohmann::json operator()(const std::string& v) const { return v; }
    };
    return std::visit(Visitor{}, c);
}

void write_field(std::ostream& out, const std::string& field)
{
    if (field.find_first_of(",\"\r\n") == std::string::npos) {
        out << field;
        return;
    }
    out << '"';
    for (char ch : field) {
        if (ch == '"') {
            out << '"';
        }
        out << ch;
    }
    out << '"';
}

}  // namespace

void write_table_csv(const Table& table, std::ostream& out)
{
    for (std::size_t i = 0; i < table.columns.size(); ++i) {
        if (i > 0) {
            out << ',';
        }
        write_field(out, table.columns[i]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) {
                out << ',';
            }
            write_field(out, cell_text(row[i]));
        }
        out << '\n';
    }
}

void write_table_json(const Table& table, std::ostream& out)
{
    nlohmann::ordered_json doc;
    doc["table"] = table.name;
    doc["schema_version"] = Table::kSchemaVersion;
    doc["meta"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : table.meta) {
        doc["meta"][k] = v;
    }
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) {
            obj[table.columns[i]] = cell_json(row[i]);
        }
        doc["rows"].push_back(std::move(obj));
    }
    out << doc.dump(2) << '\n';
}

std::vector<std::vector<std::string>> read_csv_rows(std::istream& in)
{
    detail::CsvReader reader(in);
    std::vector<std::vector<std::string>> rows;
    std::vector<std::string> row;
    while (reader.next(row)) {
        if (row.size() == 1 && row.front().empty()) {
            continue;
        }
        rows.push_back(row);
    }
    return rows;
}

void write_text_file(const std::filesystem::path& path, const std::string& text)
{
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) {
        fail(ErrorKind::Io, "cannot write " + path.string());
    }
    out << text;
    if (!out) {
        fail(ErrorKind::Io, "write failed for " + path.string());
    }
}

}  // namespace bpprod
