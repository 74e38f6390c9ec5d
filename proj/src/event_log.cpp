#include "bpprod/event_log.hpp"

#include "bpprod/error.hpp"
#include "gzip_stream.hpp"

#include <algorithm>
#include <cctype>
#include <fstream>
#include <ostream>

namespace bpprod {

Lifecycle parse_lifecycle(std::string_view text)
{
    std::string lower(text);
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "complete") {
        return Lifecycle::complete;
    }
    if (lower == "start") {
        return Lifecycle::start;
    }
    if (lower == "schedule") {
        return Lifecycle::schedule;
    }
    return Lifecycle::other;
}

Trace::Trace(std::string case_id, std::vector<Event> events)
    : case_id_(std::move(case_id)), events_(std::move(events))
{
    if (events_.empty()) {
        fail(ErrorKind::InvalidArgument, "trace '" + case_id_ + "' has no events");
    }
    for (const auto& e : events_) {
        if (e.case_id != case_id_) {
            fail(ErrorKind::InvalidArgument,
                 "event case id '" + e.case_id + "' does not match trace '" + case_id_ + "'");
        }
        if (e.activity.empty()) {
            fail(ErrorKind::InvalidArgument, "event with empty activity in trace '" + case_id_ + "'");
        }
    }
    reordered_ = !std::is_sorted(events_.begin(), events_.end(),
                                 [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
    std::stable_sort(events_.begin(), events_.end(),
                     [](const Event& a, const Event& b) { return a.timestamp < b.timestamp; });
}

double Trace::span_seconds() const
{
    return seconds_between(events_.front().timestamp, events_.back().timestamp);
}

EventLog::EventLog(std::vector<Trace> traces, std::string era_label, std::map<std::string, std::string> source_meta)
    : traces_(std::move(traces)), era_label_(std::move(era_label)), source_meta_(std::move(source_meta))
{
}

std::size_t EventLog::event_count() const noexcept
{
    std::size_t n = 0;
    for (const auto& t : traces_) {
        n += t.size();
    }
    return n;
}

Timestamp EventLog::latest_timestamp() const noexcept
{
    Timestamp latest{};
    for (const auto& t : traces_) {
        latest = std::max(latest, t.back().timestamp);
    }
    return latest;
}

namespace {

std::string lower_ext(const std::filesystem::path& p)
{
    std::string ext = p.extension().string();
    std::transform(ext.begin(), ext.end(), ext.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    return ext;
}

void write_csv_field(std::ostream& out, std::string_view field)
{
    if (field.find_first_of(",\"\r\n") == std::string_view::npos) {
        out << field;
        return;
    }
    out << '"';
    for (char c : field) {
        if (c == '"') {
            out << '"';
        }
        out << c;
    }
    out << '"';
}

std::string lifecycle_text(const Event& e)
{
    switch (e.lifecycle) {
    case Lifecycle::schedule: return "schedule";
    case Lifecycle::start: return "start";
    case Lifecycle::complete: return "complete";
    case Lifecycle::other: return e.lifecycle_label;
    }
    return {};
}

}  // namespace

EventLog read_log_file(const std::filesystem::path& path, const ParseOptions& options, const CsvColumnMap& columns)
{
    std::filesystem::path inner = path;
    const bool gz = lower_ext(path) == ".gz";
    if (gz) {
        inner = path.stem();
    }
    const std::string ext = lower_ext(inner);
    if (ext != ".xes" && ext != ".csv") {
        fail(ErrorKind::InvalidArgument, "unsupported log extension '" + path.filename().string() +
                                             "' (expected .xes, .csv, optionally .gz)");
    }

    auto parse = [&](std::istream& in) {
        return ext == ".xes" ? parse_xes(in, options) : parse_csv(in, columns, options);
    };

    EventLog log;
    if (gz) {
        if (!std::filesystem::exists(path)) {
            fail(ErrorKind::Io, "cannot open " + path.string());
        }
        detail::GzipIStream in(path);
        log = parse(in);
    } else {
        std::ifstream in(path, std::ios::binary);
        if (!in) {
            fail(ErrorKind::Io, "cannot open " + path.string());
        }
        log = parse(in);
    }
    log.source_meta()["file"] = path.filename().string();
    log.source_meta()["extension"] = ext.substr(1) + (gz ? ".gz" : "");
    return log;
}

void write_csv(const EventLog& log, std::ostream& out)
{
    const CsvColumnMap cols;
    out << cols.case_id << ',' << cols.activity << ',' << cols.timestamp << ',' << cols.resource << ','
        << cols.lifecycle << '\n';
    for (const auto& trace : log.traces()) {
        for (const auto& e : trace.events()) {
            write_csv_field(out, e.case_id);
            out << ',';
            write_csv_field(out, e.activity);
            out << ',' << format_iso8601(e.timestamp) << ',';
            write_csv_field(out, e.resource.value_or(""));
            out << ',';
            write_csv_field(out, lifecycle_text(e));
            out << '\n';
        }
    }
}

bool structurally_equal(const EventLog& a, const EventLog& b)
{
    if (a.size() != b.size()) {
        return false;
    }
    for (std::size_t i = 0; i < a.size(); ++i) {
        const Trace& ta = a.traces()[i];
        const Trace& tb = b.traces()[i];
        if (ta.case_id() != tb.case_id() || ta.size() != tb.size()) {
            return false;
        }
        for (std::size_t j = 0; j < ta.size(); ++j) {
            const Event& ea = ta.events()[j];
            const Event& eb = tb.events()[j];
            if (ea.case_id != eb.case_id || ea.activity != eb.activity || ea.timestamp != eb.timestamp ||
                ea.resource != eb.resource || ea.lifecycle != eb.lifecycle ||
                (ea.lifecycle == Lifecycle::other && ea.lifecycle_label != eb.lifecycle_label)) {
                return false;
            }
        }
    }
    return true;
}

}  // namespace bpprod
