#pragma once

#include "bpprod/timestamp.hpp"

#include <cstddef>
#include <filesystem>
#include <functional>
#include <iosfwd>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

namespace bpprod {

enum class Lifecycle { schedule, start, complete, other };

/// Case-insensitive; anything outside the three standard transitions maps to `other`.
Lifecycle parse_lifecycle(std::string_view text);

struct Event {
    std::string case_id;
    std::string activity;
    Timestamp timestamp{};
    std::optional<std::string> resource;
    Lifecycle lifecycle = Lifecycle::complete;
    /// Source spelling of the transition; empty when the source had none.
    std::string lifecycle_label;
    /// Attributes the model does not interpret, keyed by XES key or CSV column.
    std::map<std::string, std::string> attributes;
    /// Position of the event inside its trace in the source document.
    std::size_t source_position = 0;
};

/// One case. Events are ordered by timestamp; equal timestamps keep source order.
class Trace {
public:
    /// Throws InvalidArgument when `events` is empty or carries a foreign case id.
    Trace(std::string case_id, std::vector<Event> events);

    const std::string& case_id() const noexcept { return case_id_; }
    std::span<const Event> events() const noexcept { return events_; }
    std::size_t size() const noexcept { return events_.size(); }
    const Event& front() const noexcept { return events_.front(); }
    const Event& back() const noexcept { return events_.back(); }

    /// Seconds from the first to the last event.
    double span_seconds() const;

    /// True when sorting changed the order found in the source.
    bool reordered() const noexcept { return reordered_; }

private:
    std::string case_id_;
    std::vector<Event> events_;
    bool reordered_ = false;
};

class EventLog {
public:
    EventLog() = default;
    EventLog(std::vector<Trace> traces, std::string era_label,
             std::map<std::string, std::string> source_meta = {});

    std::span<const Trace> traces() const noexcept { return traces_; }
    std::size_t size() const noexcept { return traces_.size(); }
    bool empty() const noexcept { return traces_.empty(); }
    std::size_t event_count() const noexcept;

    const std::string& era_label() const noexcept { return era_label_; }
    void set_era_label(std::string label) { era_label_ = std::move(label); }
    const std::map<std::string, std::string>& source_meta() const noexcept { return source_meta_; }
    std::map<std::string, std::string>& source_meta() noexcept { return source_meta_; }

    /// Latest event timestamp in the log (epoch when empty).
    Timestamp latest_timestamp() const noexcept;

private:
    std::vector<Trace> traces_;
    std::string era_label_;
    std::map<std::string, std::string> source_meta_;
};

struct ParseOptions {
    std::string era_label;
    /// Skip events lacking required attributes (with a warning) instead of failing.
    bool lenient = false;
    std::function<void(const std::string&)> on_warning;
};

/// Streaming IEEE XES 1.0/2.0 reader.
EventLog parse_xes(std::istream& in, const ParseOptions& options = {});

struct CsvColumnMap {
    std::string case_id = "case_id";
    std::string activity = "activity";
    std::string timestamp = "timestamp";
    /// Optional columns: used when present in the header, ignored otherwise.
    std::string resource = "resource";
    std::string lifecycle = "lifecycle";
};

EventLog parse_csv(std::istream& in, const CsvColumnMap& columns = {}, const ParseOptions& options = {});

/// Dispatches on extension (`.xes`, `.csv`, optionally followed by `.gz`).
/// Records file name, extension and declared XES version in source_meta.
EventLog read_log_file(const std::filesystem::path& path, const ParseOptions& options = {},
                       const CsvColumnMap& columns = {});

/// Writes the modeled fields with the default column map.
void write_csv(const EventLog& log, std::ostream& out);

/// Equality over case ids, activities, timestamps, resources and lifecycles.
bool structurally_equal(const EventLog& a, const EventLog& b);

enum class FindingKind { DuplicateCase, ZeroDurationTrace, OutOfOrderEvents, UnknownLifecycle };

std::string_view to_string(FindingKind kind);

struct Finding {
    FindingKind kind;
    std::string case_id;
    std::string detail;

    bool operator==(const Finding&) const = default;
};

struct ValidationReport {
    std::vector<Finding> findings;

    bool clean() const noexcept { return findings.empty(); }
    std::size_t count(FindingKind kind) const;
};

/// Report-only lint; one finding per offending trace and kind (one per id for duplicates).
ValidationReport validate_log(const EventLog& log);

}  // namespace bpprod
