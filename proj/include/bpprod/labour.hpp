#pragma once

#include "bpprod/classification.hpp"
#include "bpprod/discovery.hpp"
#include "bpprod/event_log.hpp"

#include <optional>
#include <string>

namespace bpprod {

/// Mean per-trace seconds of one path in one era, split by labour class.
struct LabourComposition {
    std::string path;
    std::string era;
    double high_skilled = 0.0;  // H
    double low_skilled = 0.0;   // L
    /// X; absent when no activity on the path is classified automated.
    std::optional<double> automated;
    /// Customer-attributed seconds, reported only when customer time is included.
    /// Never part of H, L or X.
    std::optional<double> customer;
    /// A (= a_a) and R; set once a before/after pair is compared.
    std::optional<double> substitution_rate;
    std::optional<double> redundancy_share;
    std::size_t trace_count = 0;
};

/// Throws NoTracesOnPath.
LabourComposition aggregate_labour(const EventLog& log, const PathSpec& spec,
                                   const ActivityClassification& classification, bool include_customer);

struct Displacement {
    /// A = (l_n - l_a) / x_a.
    double substitution_rate = 0.0;
    /// R = 1 - l_a / l_n, the share of low-skilled hours at risk.
    double redundancy_share = 0.0;
};

/// Negative values mean the automated era needs more low-skilled hours than before.
/// Throws ZeroBaselineLabour (l_n = 0) and ZeroAutomatedHours (x_a absent or 0).
Displacement displacement(const LabourComposition& before, const LabourComposition& after);

/// Raw-number form used when only the three published quantities are known.
Displacement displacement(double low_before, double low_after, double automated_after);

}  // namespace bpprod
