#pragma once

#include <chrono>
#include <optional>
#include <string>
#include <string_view>

namespace bpprod {

/// UTC instant with microsecond resolution.
using Timestamp = std::chrono::sys_time<std::chrono::microseconds>;

/// Parses `YYYY-MM-DD[T ]hh:mm:ss[.fraction][Z|+hh:mm|-hh:mm|+hhmm]` and
/// normalizes to UTC. A missing zone designator is read as UTC. Fractions
/// beyond microseconds are truncated.
std::optional<Timestamp> parse_iso8601(std::string_view text);

/// `YYYY-MM-DDThh:mm:ss[.fff|.ffffff]Z`; the fraction is omitted when zero.
std::string format_iso8601(Timestamp ts);

inline double seconds_between(Timestamp from, Timestamp to)
{
    return std::chrono::duration<double>(to - from).count();
}

}  // namespace bpprod
