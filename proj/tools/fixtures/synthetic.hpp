#pragma once

#include "bpprod/event_log.hpp"

#include <cstdint>
#include <functional>
#include <span>
#include <string>
#include <vector>

namespace bpprod::fixtures {

/// A trace as it appears in a file: events in document order, possibly unsorted.
struct RawTrace {
    std::string case_id;
    std::vector<Event> events;
};

/// UTC offset in minutes applied when printing event `event` of trace `trace`.
using OffsetFn = std::function<int(std::size_t trace, std::size_t event)>;

/// Rotates through Z, +01:00, +02:00 and -05:00 by trace index.
int rotating_offset(std::size_t trace, std::size_t event);

/// Local time with explicit offset, e.g. 2012-01-01T01:00:00.000+01:00.
std::string format_with_offset(Timestamp ts, int offset_minutes);

std::string write_xes(std::span<const RawTrace> traces, const OffsetFn& offset = rotating_offset);
std::string write_csv(std::span<const RawTrace> traces, const OffsetFn& offset = rotating_offset);

/// Document-order copy of a parsed log (events in their sorted order).
std::vector<RawTrace> to_raw(const EventLog& log);

struct RandomLogSpec {
    std::uint64_t seed = 1;
    std::size_t traces = 20;
    std::size_t min_events = 2;
    std::size_t max_events = 8;
    std::size_t alphabet = 6;
    bool with_resources = true;
};

/// Traces over activities "act_0".."act_{alphabet-1}" with strictly increasing
/// timestamps (1 s .. 2 h gaps).
std::vector<RawTrace> random_log(const RandomLogSpec& spec);

struct InjectedDefects {
    std::string duplicate_case;
    std::string out_of_order_case;
    std::string unknown_lifecycle_case;
};

/// Plants one duplicate case id, one out-of-order trace and one unknown
/// lifecycle transition into distinct traces. Needs at least 4 traces.
InjectedDefects inject_defects(std::vector<RawTrace>& traces, std::uint64_t seed);

enum class Era { before_2012, after_2017 };

/// Loan-application logs shaped like BPIC 2012 / 2017: three dominant terminal
/// paths plus a little noise. The 2017 era replaces manual validation with an
/// automated step and has much longer customer waits.
std::vector<RawTrace> synthetic_bpic(Era era, std::size_t traces, std::uint64_t seed);

}  // namespace bpprod::fixtures
