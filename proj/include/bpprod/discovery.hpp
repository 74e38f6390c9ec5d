#pragma once

#include "bpprod/classification.hpp"
#include "bpprod/event_log.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace bpprod {

using ActivityPair = std::pair<std::string, std::string>;

struct DirectlyFollowsGraph {
    std::set<std::string> nodes;
    std::map<ActivityPair, std::size_t> edges;
    std::map<std::string, std::size_t> start_activities;
    std::map<std::string, std::size_t> end_activities;
    /// (first activity, last activity) per trace; terminal paths are read from here.
    std::map<ActivityPair, std::size_t> terminal_pairs;
    std::size_t trace_count = 0;

    /// Commutative, associative accumulation of partial graphs.
    void merge(const DirectlyFollowsGraph& other);

    bool operator==(const DirectlyFollowsGraph&) const = default;
};

DirectlyFollowsGraph dfg_of_trace(const Trace& trace);

/// Throws EmptyLog for a log without traces.
DirectlyFollowsGraph build_dfg(const EventLog& log);

std::string dfg_to_json(const DirectlyFollowsGraph& dfg);
std::string dfg_to_dot(const DirectlyFollowsGraph& dfg, const std::string& graph_name = "dfg");

struct PathSpec {
    std::string name;
    std::string initial_activity;
    std::string final_activity;
    /// Share of traces on this path in the log it was extracted from (0 when user-supplied).
    double support = 0.0;
    std::size_t trace_count = 0;
};

/// "A", "B", ..., "Z", "AA", "AB", ...
std::string path_name(std::size_t index);

inline constexpr double kDefaultMinSupport = 0.05;

/// Terminal pairs with share >= min_support, by descending share (ties by pair order),
/// named A, B, C, ... in that order.
std::vector<PathSpec> extract_terminal_paths(const DirectlyFollowsGraph& dfg, double min_support = kDefaultMinSupport);

/// Throws AmbiguousPathSpecs when two specs share an (initial, final) pair.
void check_path_specs(std::span<const PathSpec> specs);

std::optional<std::string> classify_trace(const Trace& trace, std::span<const PathSpec> specs);

/// Traces of `log` whose first/last activities match `spec`.
std::vector<const Trace*> traces_on_path(const EventLog& log, const PathSpec& spec);

/// Microseconds attributed to each event, index-aligned with trace.events().
///
/// A `complete` event that closes an earlier unmatched `start` of the same
/// activity (FIFO per activity) gets complete - start. Any other `complete` or
/// non-standard transition gets the gap since the previous event (0 for the
/// first event). `start` and `schedule` events get 0. For complete-only traces
/// the attributions sum to the trace span exactly.
std::vector<std::int64_t> attribute_micros(const Trace& trace);
std::vector<double> attribute_seconds(const Trace& trace);

struct PathDurations {
    std::string path;
    std::size_t trace_count = 0;
    double mean_total_seconds = 0.0;
    /// Span minus customer-attributed time, clamped to [0, span] per trace.
    double mean_firm_seconds = 0.0;
};

/// Throws NoTracesOnPath.
PathDurations path_durations(const EventLog& log, const PathSpec& spec, const ActivityClassification& classification);

}  // namespace bpprod
