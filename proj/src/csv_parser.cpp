#include "bpprod/error.hpp"
#include "bpprod/event_log.hpp"
#include "csv_reader.hpp"

#include <istream>
#include <unordered_map>

namespace bpprod {

bool detail::CsvReader::next(std::vector<std::string>& fields)
{
    fields.clear();
    if (it_ == end_) {
        return false;
    }
    std::string field;
    bool quoted = false;
    while (it_ != end_) {
        const char c = *it_++;
        if (quoted) {
            if (c == '"') {
                if (it_ != end_ && *it_ == '"') {
                    field += '"';
                    ++it_;
                } else {
                    quoted = false;
                }
            } else {
                field += c;
            }
            continue;
        }
        if (c == '"') {
            quoted = true;
        } else if (c == ',') {
            fields.push_back(std::move(field));
            field.clear();
        } else if (c == '\n') {
            break;
        } else if (c != '\r') {
            field += c;
        }
    }
    if (quoted) {
        fail(ErrorKind::InvalidArgument, "unterminated quoted CSV field");
    }
    fields.push_back(std::move(field));
    return true;
}

EventLog parse_csv(std::istream& in, const CsvColumnMap& columns, const ParseOptions& options)
{
    detail::CsvReader reader(in);
    std::vector<std::string> header;
    if (!reader.next(header)) {
        fail(ErrorKind::EmptyLog, "CSV input has no header row");
    }
    if (!header.empty() && header.front().starts_with("\xEF\xBB\xBF")) {
        header.front().erase(0, 3);
    }

    auto find = [&](const std::string& name) -> std::optional<std::size_t> {
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (header[i] == name) {
                return i;
            }
        }
        return std::nullopt;
    };
    auto require = [&](const std::string& name) {
        auto idx = find(name);
        if (!idx) {
            throw MissingColumnError(name);
        }
        return *idx;
    };
    const std::size_t case_col = require(columns.case_id);
    const std::size_t activity_col = require(columns.activity);
    const std::size_t time_col = require(columns.timestamp);
    const auto resource_col = find(columns.resource);
    const auto lifecycle_col = find(columns.lifecycle);

    std::vector<std::string> case_order;
    std::unordered_map<std::string, std::vector<Event>> by_case;
    std::vector<std::string> row;
    std::size_t row_number = 0;
    while (reader.next(row)) {
        ++row_number;
        if (row.size() == 1 && row.front().empty()) {
            continue;
        }
        if (row.size() != header.size()) {
            fail(ErrorKind::InvalidArgument, "CSV row " + std::to_string(row_number) + " has " +
                                                 std::to_string(row.size()) + " fields, header has " +
                                                 std::to_string(header.size()));
        }
        auto ts = parse_iso8601(row[time_col]);
        if (!ts) {
            throw TimestampError(row_number, columns.timestamp, row[time_col], "row " + std::to_string(row_number));
        }
        if (row[activity_col].empty()) {
            if (options.lenient) {
                if (options.on_warning) {
                    options.on_warning("skipping CSV row " + std::to_string(row_number) + ": empty activity");
                }
                continue;
            }
            throw MissingAttributeError(columns.activity, 0, row_number);
        }

        Event e;
        e.case_id = row[case_col];
        e.activity = row[activity_col];
        e.timestamp = *ts;
        if (resource_col && !row[*resource_col].empty()) {
            e.resource = row[*resource_col];
        }
        if (lifecycle_col && !row[*lifecycle_col].empty()) {
            e.lifecycle = parse_lifecycle(row[*lifecycle_col]);
            e.lifecycle_label = row[*lifecycle_col];
        }
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (i != case_col && i != activity_col && i != time_col && i != resource_col && i != lifecycle_col) {
                e.attributes.emplace(header[i], row[i]);
            }
        }

        auto [it, inserted] = by_case.try_emplace(e.case_id);
        if (inserted) {
            case_order.push_back(e.case_id);
        }
        e.source_position = it->second.size();
        it->second.push_back(std::move(e));
    }

    std::vector<Trace> traces;
    traces.reserve(case_order.size());
    for (const auto& id : case_order) {
        traces.emplace_back(id, std::move(by_case[id]));
    }
    if (traces.empty()) {
        fail(ErrorKind::EmptyLog, "CSV input has no event rows");
    }
    return EventLog(std::move(traces), options.era_label);
}

}  // namespace bpprod
