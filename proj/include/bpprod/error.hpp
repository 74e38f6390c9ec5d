#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace bpprod {

enum class ErrorKind {
    // event-log-ingest
    MalformedXml,
    MissingRequiredAttribute,
    EmptyLog,
    MissingColumn,
    UnparseableTimestamp,
    Io,
    // process-discovery
    AmbiguousPathSpecs,
    NoTracesOnPath,
    // labour-composition
    ZeroBaselineLabour,
    ZeroAutomatedHours,
    // productivity-model
    ZeroLabour,
    NonPositiveTime,
    NonPositiveDeltaP,
    PsiOutOfRange,
    NonPositiveBase,
    // queue-simulator
    Unstable,
    UnknownTask,
    InsufficientObservations,
    // shared
    InvalidArgument,
    InvalidConfig,
    InvariantViolation,
};

/// Broad failure class, used to pick process exit codes.
enum class ErrorCategory { validation, data, internal };

std::string_view to_string(ErrorKind kind);
ErrorCategory category_of(ErrorKind kind);

class Error : public std::runtime_error {
public:
    Error(ErrorKind kind, const std::string& message);

    ErrorKind kind() const noexcept { return kind_; }
    ErrorCategory category() const noexcept { return category_of(kind_); }

    /// Module tag prepended by the orchestration layer ("ingest", "discovery", ...).
    const std::string& module() const noexcept { return module_; }
    void set_module(std::string module) { module_ = std::move(module); }

private:
    ErrorKind kind_;
    std::string module_;
};

class MissingAttributeError : public Error {
public:
    MissingAttributeError(std::string attribute, std::size_t trace_index, std::size_t event_index);

    static constexpr std::size_t kTraceLevel = static_cast<std::size_t>(-1);

    const std::string& attribute() const noexcept { return attribute_; }
    std::size_t trace_index() const noexcept { return trace_index_; }
    /// kTraceLevel when the trace itself lacks the attribute.
    std::size_t event_index() const noexcept { return event_index_; }

private:
    std::string attribute_;
    std::size_t trace_index_;
    std::size_t event_index_;
};

class TimestampError : public Error {
public:
    /// `row` is the 1-based data row for CSV input (header excluded), or the
    /// 0-based event index within the trace for XES input.
    TimestampError(std::size_t row, std::string column, std::string text, const std::string& where);

    std::size_t row() const noexcept { return row_; }
    const std::string& column() const noexcept { return column_; }
    const std::string& text() const noexcept { return text_; }

private:
    std::size_t row_;
    std::string column_;
    std::string text_;
};

class MissingColumnError : public Error {
public:
    explicit MissingColumnError(std::string column);
    const std::string& column() const noexcept { return column_; }

private:
    std::string column_;
};

[[noreturn]] void fail(ErrorKind kind, const std::string& message);

}  // namespace bpprod
