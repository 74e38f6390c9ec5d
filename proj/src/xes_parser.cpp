#include "bpprod/error.hpp"
#include "bpprod/event_log.hpp"

#include <expat.h>

#include <exception>
#include <istream>
#include <memory>
#include <optional>
#include <string_view>
#include <vector>

namespace bpprod {
namespace {

constexpr std::string_view kConceptName = "concept:name";
constexpr std::string_view kTimestamp = "time:timestamp";
constexpr std::string_view kResource = "org:resource";
constexpr std::string_view kLifecycle = "lifecycle:transition";

bool is_attribute_element(std::string_view name)
{
    return name == "string" || name == "date" || name == "int" || name == "float" || name == "boolean" ||
           name == "id";
}

enum class Frame { log, trace, event, attribute, ignored, other };

struct PendingEvent {
    std::map<std::string, std::string> attrs;
};

struct PendingTrace {
    std::optional<std::string> case_id;
    std::vector<PendingEvent> events;
};

/// Holds SAX state. Errors are captured and rethrown after the parser stops,
/// so no exception crosses expat's C frames.
class XesHandler {
public:
    explicit XesHandler(const ParseOptions& options) : options_(options) {}

    void start(std::string_view name, const XML_Char** atts)
    {
        const Frame parent = stack_.empty() ? Frame::other : stack_.back();
        if (parent == Frame::ignored || parent == Frame::attribute) {
            stack_.push_back(Frame::ignored);
            return;
        }
        if (stack_.empty()) {
            if (name != "log") {
                error_ = std::make_exception_ptr(Error(ErrorKind::MalformedXml,
                                                 "root element is <" + std::string(name) + ">, expected <log>"));
                return;
            }
            for (const XML_Char** a = atts; *a != nullptr; a += 2) {
                log_meta_[std::string("xes.") + (std::string_view(a[0]) == "xes.version" ? "version" : a[0])] = a[1];
            }
            stack_.push_back(Frame::log);
            return;
        }
        if (parent == Frame::log && name == "trace") {
            current_ = PendingTrace{};
            stack_.push_back(Frame::trace);
            return;
        }
        if (parent == Frame::trace && name == "event") {
            current_.events.emplace_back();
            stack_.push_back(Frame::event);
            return;
        }
        if ((parent == Frame::trace || parent == Frame::event) && is_attribute_element(name)) {
            std::string_view key, value;
            for (const XML_Char** a = atts; *a != nullptr; a += 2) {
                if (std::string_view(a[0]) == "key") {
                    key = a[1];
                } else if (std::string_view(a[0]) == "value") {
                    value = a[1];
                }
            }
            if (parent == Frame::trace) {
                if (key == kConceptName) {
                    current_.case_id = std::string(value);
                }
            } else {
                current_.events.back().attrs.emplace(std::string(key), std::string(value));
            }
            stack_.push_back(Frame::attribute);
            return;
        }
        // <extension>, <global>, <classifier>, <list>, <container> and anything unknown.
        stack_.push_back(Frame::ignored);
    }

    void end()
    {
        if (stack_.empty()) {
            return;
        }
        const Frame frame = stack_.back();
        stack_.pop_back();
        if (frame == Frame::trace) {
            finish_trace();
        }
    }

    bool failed() const noexcept { return error_ != nullptr; }
    [[noreturn]] void rethrow() const { std::rethrow_exception(error_); }

    EventLog take_log()
    {
        if (traces_.empty()) {
            fail(ErrorKind::EmptyLog, "XES document contains no usable traces");
        }
        return EventLog(std::move(traces_), options_.era_label, std::move(log_meta_));
    }

private:
    void warn(const std::string& msg) const
    {
        if (options_.on_warning) {
            options_.on_warning(msg);
        }
    }

    void finish_trace()
    {
        const std::size_t trace_index = trace_index_++;
        std::string case_id;
        if (current_.case_id) {
            case_id = *current_.case_id;
        } else if (options_.lenient) {
            case_id = "trace-" + std::to_string(trace_index);
            warn("trace " + std::to_string(trace_index) + " has no concept:name; using '" + case_id + "'");
        } else {
            error_ = std::make_exception_ptr(MissingAttributeError(std::string(kConceptName), trace_index,
                                                             MissingAttributeError::kTraceLevel));
            return;
        }

        std::vector<Event> events;
        events.reserve(current_.events.size());
        for (std::size_t i = 0; i < current_.events.size(); ++i) {
            auto& attrs = current_.events[i].attrs;
            auto name_it = attrs.find(std::string(kConceptName));
            auto time_it = attrs.find(std::string(kTimestamp));
            const bool has_name = name_it != attrs.end() && !name_it->second.empty();
            if (!has_name || time_it == attrs.end()) {
                const std::string missing(has_name ? kTimestamp : kConceptName);
                if (options_.lenient) {
                    warn("skipping event " + std::to_string(i) + " of trace " + std::to_string(trace_index) +
                         ": missing " + missing);
                    continue;
                }
                error_ = std::make_exception_ptr(MissingAttributeError(missing, trace_index, i));
                return;
            }
            auto ts = parse_iso8601(time_it->second);
            if (!ts) {
                error_ = std::make_exception_ptr(TimestampError(
                    i, std::string(kTimestamp), time_it->second,
                    "trace " + std::to_string(trace_index) + ", event " + std::to_string(i)));
                return;
            }

            Event e;
            e.case_id = case_id;
            e.activity = std::move(name_it->second);
            e.timestamp = *ts;
            e.source_position = i;
            attrs.erase(name_it);
            attrs.erase(std::string(kTimestamp));
            if (auto it = attrs.find(std::string(kResource)); it != attrs.end()) {
                if (!it->second.empty()) {
                    e.resource = std::move(it->second);
                }
                attrs.erase(it);
            }
            if (auto it = attrs.find(std::string(kLifecycle)); it != attrs.end()) {
                e.lifecycle = parse_lifecycle(it->second);
                e.lifecycle_label = std::move(it->second);
                attrs.erase(it);
            }
            e.attributes = std::move(attrs);
            events.push_back(std::move(e));
        }

        if (events.empty()) {
            warn("trace '" + case_id + "' has no usable events; dropped");
            return;
        }
        traces_.emplace_back(std::move(case_id), std::move(events));
    }

    const ParseOptions& options_;
    std::vector<Frame> stack_;
    PendingTrace current_;
    std::size_t trace_index_ = 0;
    std::vector<Trace> traces_;
    std::map<std::string, std::string> log_meta_;
    std::exception_ptr error_;
};

struct ParserDeleter {
    void operator()(XML_ParserStruct* p) const { XML_ParserFree(p); }
};

}  // namespace

EventLog parse_xes(std::istream& in, const ParseOptions& options)
{
    std::unique_ptr<XML_ParserStruct, ParserDeleter> parser(XML_ParserCreate(nullptr));
    if (!parser) {
        fail(ErrorKind::InvariantViolation, "failed to allocate XML parser");
    }
    XesHandler handler(options);
    XML_SetUserData(parser.get(), &handler);
    XML_SetElementHandler(
        parser.get(),
        [](void* data, const XML_Char* name, const XML_Char** atts) {
            auto* h = static_cast<XesHandler*>(data);
            if (!h->failed()) {
                h->start(name, atts);
            }
        },
        [](void* data, const XML_Char*) {
            auto* h = static_cast<XesHandler*>(data);
            if (!h->failed()) {
                h->end();
            }
        });

    std::vector<char> buffer(1 << 16);
    bool done = false;
    while (!done) {
        in.read(buffer.data(), static_cast<std::streamsize>(buffer.size()));
        const auto n = in.gcount();
        done = n < static_cast<std::streamsize>(buffer.size());
        if (XML_Parse(parser.get(), buffer.data(), static_cast<int>(n), done ? XML_TRUE : XML_FALSE) ==
            XML_STATUS_ERROR) {
            if (handler.failed()) {
                handler.rethrow();
            }
            fail(ErrorKind::MalformedXml, std::string(XML_ErrorString(XML_GetErrorCode(parser.get()))) +
                                              " at line " +
                                              std::to_string(XML_GetCurrentLineNumber(parser.get())));
        }
        if (handler.failed()) {
            handler.rethrow();
        }
    }
    return handler.take_log();
}

}  // namespace bpprod
