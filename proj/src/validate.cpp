#include "bpprod/event_log.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bpprod {

std::string_view to_string(FindingKind kind)
{
    switch (kind) {
    case FindingKind::DuplicateCase: return "DuplicateCase";
    case FindingKind::ZeroDurationTrace: return "ZeroDurationTrace";
    case FindingKind::OutOfOrderEvents: return "OutOfOrderEvents";
    case FindingKind::UnknownLifecycle: return "UnknownLifecycle";
    }
    return "Unknown";
}

std::size_t ValidationReport::count(FindingKind kind) const
{
    return static_cast<std::size_t>(
        std::count_if(findings.begin(), findings.end(), [kind](const Finding& f) { return f.kind == kind; }));
}

ValidationReport validate_log(const EventLog& log)
{
    ValidationReport report;

    std::map<std::string, std::size_t> occurrences;
    for (const auto& t : log.traces()) {
        ++occurrences[t.case_id()];
    }
    for (const auto& [id, n] : occurrences) {
        if (n > 1) {
            report.findings.push_back({FindingKind::DuplicateCase, id, std::to_string(n) + " traces share this id"});
        }
    }

    for (const auto& t : log.traces()) {
        if (t.span_seconds() == 0.0) {
            report.findings.push_back({FindingKind::ZeroDurationTrace, t.case_id(),
                                       std::to_string(t.size()) + " event(s) at a single instant"});
        }
        if (t.reordered()) {
            report.findings.push_back(
                {FindingKind::OutOfOrderEvents, t.case_id(), "source order was not chronological"});
        }
        std::set<std::string> unknown;
        for (const auto& e : t.events()) {
            if (e.lifecycle == Lifecycle::other) {
                unknown.insert(e.lifecycle_label);
            }
        }
        if (!unknown.empty()) {
            std::string detail;
            for (const auto& label : unknown) {
                detail += (detail.empty() ? "" : ", ") + label;
            }
            report.findings.push_back({FindingKind::UnknownLifecycle, t.case_id(), detail});
        }
    }
    return report;
}

}  // namespace bpprod
