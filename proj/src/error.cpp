#include "bpprod/error.hpp"

namespace bpprod {

std::string_view to_string(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::MalformedXml: return "MalformedXml";
    case ErrorKind::MissingRequiredAttribute: return "MissingRequiredAttribute";
    case ErrorKind::EmptyLog: return "EmptyLog";
    case ErrorKind::MissingColumn: return "MissingColumn";
    case ErrorKind::UnparseableTimestamp: return "UnparseableTimestamp";
    case ErrorKind::Io: return "Io";
    case ErrorKind::AmbiguousPathSpecs: return "AmbiguousPathSpecs";
    case ErrorKind::NoTracesOnPath: return "NoTracesOnPath";
    case ErrorKind::ZeroBaselineLabour: return "ZeroBaselineLabour";
    case ErrorKind::ZeroAutomatedHours: return "ZeroAutomatedHours";
    case ErrorKind::ZeroLabour: return "ZeroLabour";
    case ErrorKind::NonPositiveTime: return "NonPositiveTime";
    case ErrorKind::NonPositiveDeltaP: return "NonPositiveDeltaP";
    case ErrorKind::PsiOutOfRange: return "PsiOutOfRange";
    case ErrorKind::NonPositiveBase: return "NonPositiveBase";
    case ErrorKind::Unstable: return "Unstable";
    case ErrorKind::UnknownTask: return "UnknownTask";
    case ErrorKind::InsufficientObservations: return "InsufficientObservations";
    case ErrorKind::InvalidArgument: return "InvalidArgument";
    case ErrorKind::InvalidConfig: return "InvalidConfig";
    case ErrorKind::InvariantViolation: return "InvariantViolation";
    }
    return "Unknown";
}

ErrorCategory category_of(ErrorKind kind)
{
    switch (kind) {
    case ErrorKind::InvalidArgument:
    case ErrorKind::InvalidConfig:
        return ErrorCategory::validation;
    case ErrorKind::InvariantViolation:
        return ErrorCategory::internal;
    default:
        return ErrorCategory::data;
    }
}

Error::Error(ErrorKind kind, const std::string& message)
    : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind)
{
}

MissingAttributeError::MissingAttributeError(std::string attribute, std::size_t trace_index,
                                             std::size_t event_index)
    : Error(ErrorKind::MissingRequiredAttribute,
            "'" + attribute + "' missing at trace " + std::to_string(trace_index) +
                (event_index == kTraceLevel ? std::string(" (trace level)")
                                            : ", event " + std::to_string(event_index))),
      attribute_(std::move(attribute)),
      trace_index_(trace_index),
      event_index_(event_index)
{
}

TimestampError::TimestampError(std::size_t row, std::string column, std::string text,
                               const std::string& where)
    : Error(ErrorKind::UnparseableTimestamp,
            "cannot parse '" + text + "' in column '" + column + "' at " + where),
      row_(row),
      column_(std::move(column)),
      text_(std::move(text))
{
}

MissingColumnError::MissingColumnError(std::string column)
    : Error(ErrorKind::MissingColumn, "column '" + column + "' not found in header"),
      column_(std::move(column))
{
}

void fail(ErrorKind kind, const std::string& message)
{
    throw Error(kind, message);
}

}  // namespace bpprod
