#include "bpprod/discovery.hpp"

#include "bpprod/error.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <deque>
#include <sstream>
#include <unordered_map>

namespace bpprod {

void DirectlyFollowsGraph::merge(const DirectlyFollowsGraph& other)
{
    nodes.insert(other.nodes.begin(), other.nodes.end());
    for (const auto& [k, v] : other.edges) {
        edges[k] += v;
    }
    for (const auto& [k, v] : other.start_activities) {
        start_activities[k] += v;
    }
    for (const auto& [k, v] : other.end_activities) {
        end_activities[k] += v;
    }
    for (const auto& [k, v] : other.terminal_pairs) {
        terminal_pairs[k] += v;
    }
    trace_count += other.trace_count;
}

DirectlyFollowsGraph dfg_of_trace(const Trace& trace)
{
    DirectlyFollowsGraph g;
    const auto events = trace.events();
    for (std::size_t i = 0; i < events.size(); ++i) {
        g.nodes.insert(events[i].activity);
        if (i + 1 < events.size()) {
            ++g.edges[{events[i].activity, events[i + 1].activity}];
        }
    }
    ++g.start_activities[trace.front().activity];
    ++g.end_activities[trace.back().activity];
    ++g.terminal_pairs[{trace.front().activity, trace.back().activity}];
    g.trace_count = 1;
    return g;
}

DirectlyFollowsGraph build_dfg(const EventLog& log)
{
    if (log.empty()) {
        fail(ErrorKind::EmptyLog, "cannot build a directly-follows graph from an empty log");
    }
    DirectlyFollowsGraph g;
    for (const auto& t : log.traces()) {
        g.merge(dfg_of_trace(t));
    }
    return g;
}

std::string dfg_to_json(const DirectlyFollowsGraph& dfg)
{
    using nlohmann::json;
    json doc;
    doc["trace_count"] = dfg.trace_count;
    doc["nodes"] = json::array();
    for (const auto& n : dfg.nodes) {
        doc["nodes"].push_back(n);
    }
    doc["edges"] = json::array();
    for (const auto& [pair, count] : dfg.edges) {
        doc["edges"].push_back({{"source", pair.first}, {"target", pair.second}, {"count", count}});
    }
    doc["start_activities"] = json::object();
    for (const auto& [a, c] : dfg.start_activities) {
        doc["start_activities"][a] = c;
    }
    doc["end_activities"] = json::object();
    for (const auto& [a, c] : dfg.end_activities) {
        doc["end_activities"][a] = c;
    }
    doc["terminal_pairs"] = json::array();
    for (const auto& [pair, count] : dfg.terminal_pairs) {
        doc["terminal_pairs"].push_back({{"initial", pair.first}, {"final", pair.second}, {"count", count}});
    }
    return doc.dump(2) + "\n";
}

namespace {

std::string dot_quote(const std::string& s)
{
    std::string out = "\"";
    for (char c : s) {
        if (c == '"' || c == '\\') {
            out += '\\';
        }
        out += c;
    }
    return out + '"';
}

}  // namespace

std::string dfg_to_dot(const DirectlyFollowsGraph& dfg, const std::string& graph_name)
{
    std::ostringstream out;
    out << "digraph " << dot_quote(graph_name) << " {\n";
    out << "  rankdir=LR;\n  node [shape=box];\n";
    out << "  \"__start\" [shape=circle,label=\"\"];\n  \"__end\" [shape=doublecircle,label=\"\"];\n";
    for (const auto& n : dfg.nodes) {
        out << "  " << dot_quote(n) << ";\n";
    }
    for (const auto& [a, c] : dfg.start_activities) {
        out << "  \"__start\" -> " << dot_quote(a) << " [label=\"" << c << "\"];\n";
    }
    for (const auto& [pair, c] : dfg.edges) {
        out << "  " << dot_quote(pair.first) << " -> " << dot_quote(pair.second) << " [label=\"" << c << "\"];\n";
    }
    for (const auto& [a, c] : dfg.end_activities) {
        out << "  " << dot_quote(a) << " -> \"__end\" [label=\"" << c << "\"];\n";
    }
    out << "}\n";
    return out.str();
}

std::string path_name(std::size_t index)
{
    std::string name;
    std::size_t n = index + 1;
    while (n > 0) {
        --n;
        name.insert(name.begin(), static_cast<char>('A' + n % 26));
        n /= 26;
    }
    return name;
}

std::vector<PathSpec> extract_terminal_paths(const DirectlyFollowsGraph& dfg, double min_support)
{
    if (!(min_support >= 0.0 && min_support <= 1.0)) {
        fail(ErrorKind::InvalidArgument, "min_support must lie in [0, 1]");
    }
    std::vector<std::pair<ActivityPair, std::size_t>> pairs(dfg.terminal_pairs.begin(), dfg.terminal_pairs.end());
    std::stable_sort(pairs.begin(), pairs.end(), [](const auto& a, const auto& b) { return a.second > b.second; });

    std::vector<PathSpec> specs;
    if (dfg.trace_count == 0) {
        return specs;
    }
    const double total = static_cast<double>(dfg.trace_count);
    for (const auto& [pair, count] : pairs) {
        const double share = static_cast<double>(count) / total;
        if (share < min_support) {
            break;
        }
        specs.push_back({path_name(specs.size()), pair.first, pair.second, share, count});
    }
    return specs;
}

void check_path_specs(std::span<const PathSpec> specs)
{
    for (std::size_t i = 0; i < specs.size(); ++i) {
        for (std::size_t j = i + 1; j < specs.size(); ++j) {
            if (specs[i].initial_activity == specs[j].initial_activity &&
                specs[i].final_activity == specs[j].final_activity) {
                fail(ErrorKind::AmbiguousPathSpecs, "paths '" + specs[i].name + "' and '" + specs[j].name +
                                                        "' both span " + specs[i].initial_activity + " -> " +
                                                        specs[i].final_activity);
            }
        }
    }
}

std::optional<std::string> classify_trace(const Trace& trace, std::span<const PathSpec> specs)
{
    check_path_specs(specs);
    for (const auto& s : specs) {
        if (trace.front().activity == s.initial_activity && trace.back().activity == s.final_activity) {
            return s.name;
        }
    }
    return std::nullopt;
}

std::vector<const Trace*> traces_on_path(const EventLog& log, const PathSpec& spec)
{
    std::vector<const Trace*> out;
    for (const auto& t : log.traces()) {
        if (t.front().activity == spec.initial_activity && t.back().activity == spec.final_activity) {
            out.push_back(&t);
        }
    }
    return out;
}

std::vector<std::int64_t> attribute_micros(const Trace& trace)
{
    const auto events = trace.events();
    std::vector<std::int64_t> out(events.size(), 0);
    std::unordered_map<std::string_view, std::deque<std::size_t>> open_starts;
    for (std::size_t i = 0; i < events.size(); ++i) {
        const Event& e = events[i];
        switch (e.lifecycle) {
        case Lifecycle::start:
            open_starts[e.activity].push_back(i);
            break;
        case Lifecycle::schedule:
            break;
        case Lifecycle::complete:
            if (auto it = open_starts.find(e.activity); it != open_starts.end() && !it->second.empty()) {
                const std::size_t j = it->second.front();
                it->second.pop_front();
                out[i] = (e.timestamp - events[j].timestamp).count();
                break;
            }
            [[fallthrough]];
        case Lifecycle::other:
            out[i] = i == 0 ? 0 : (e.timestamp - events[i - 1].timestamp).count();
            break;
        }
    }
    return out;
}

std::vector<double> attribute_seconds(const Trace& trace)
{
    const auto micros = attribute_micros(trace);
    std::vector<double> out(micros.size());
    std::transform(micros.begin(), micros.end(), out.begin(),
                   [](std::int64_t us) { return static_cast<double>(us) / 1e6; });
    return out;
}

PathDurations path_durations(const EventLog& log, const PathSpec& spec, const ActivityClassification& classification)
{
    const auto traces = traces_on_path(log, spec);
    if (traces.empty()) {
        fail(ErrorKind::NoTracesOnPath, "no trace runs " + spec.initial_activity + " -> " + spec.final_activity +
                                            " in log '" + log.era_label() + "'");
    }
    double total_sum = 0.0;
    double firm_sum = 0.0;
    for (const Trace* t : traces) {
        const auto micros = attribute_micros(*t);
        const std::int64_t span = (t->back().timestamp - t->front().timestamp).count();
        std::int64_t customer = 0;
        for (std::size_t i = 0; i < micros.size(); ++i) {
            if (classification.classify(t->events()[i].activity) == LabourClass::customer) {
                customer += micros[i];
            }
        }
        const std::int64_t firm = std::clamp<std::int64_t>(span - customer, 0, span);
        total_sum += static_cast<double>(span) / 1e6;
        firm_sum += static_cast<double>(firm) / 1e6;
    }
    const double n = static_cast<double>(traces.size());
    return {spec.name, traces.size(), total_sum / n, firm_sum / n};
}

}  // namespace bpprod
