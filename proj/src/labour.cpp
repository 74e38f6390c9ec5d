#include "bpprod/labour.hpp"

#include "bpprod/error.hpp"

namespace bpprod {

LabourComposition aggregate_labour(const EventLog& log, const PathSpec& spec,
                                   const ActivityClassification& classification, bool include_customer)
{
    const auto traces = traces_on_path(log, spec);
    if (traces.empty()) {
        fail(ErrorKind::NoTracesOnPath, "no trace runs " + spec.initial_activity + " -> " + spec.final_activity +
                                            " in log '" + log.era_label() + "'");
    }

    std::int64_t high = 0, low = 0, automated = 0, customer = 0;
    bool saw_automated = false;
    for (const Trace* t : traces) {
        const auto micros = attribute_micros(*t);
        for (std::size_t i = 0; i < micros.size(); ++i) {
            switch (classification.classify(t->events()[i].activity)) {
            case LabourClass::high_skilled: high += micros[i]; break;
            case LabourClass::low_skilled: low += micros[i]; break;
            case LabourClass::automated:
                automated += micros[i];
                saw_automated = true;
                break;
            case LabourClass::customer: customer += micros[i]; break;
            }
        }
    }

    const double n = static_cast<double>(traces.size());
    auto mean = [n](std::int64_t us) { return static_cast<double>(us) / 1e6 / n; };

    LabourComposition c;
    c.path = spec.name;
    c.era = log.era_label();
    c.trace_count = traces.size();
    c.high_skilled = mean(high);
    c.low_skilled = mean(low);
    if (saw_automated) {
        c.automated = mean(automated);
    }
    if (include_customer) {
        c.customer = mean(customer);
    }
    return c;
}

Displacement displacement(double low_before, double low_after, double automated_after)
{
    if (low_before == 0.0) {
        fail(ErrorKind::ZeroBaselineLabour, "baseline low-skilled time is zero; R and A are undefined");
    }
    if (!(automated_after > 0.0)) {
        fail(ErrorKind::ZeroAutomatedHours, "automated time after the intervention is zero; A is undefined");
    }
    return {(low_before - low_after) / automated_after, 1.0 - low_after / low_before};
}

Displacement displacement(const LabourComposition& before, const LabourComposition& after)
{
    if (!after.automated) {
        fail(ErrorKind::ZeroAutomatedHours,
             "path " + after.path + " has no automated activity in era '" + after.era + "'");
    }
    return displacement(before.low_skilled, after.low_skilled, *after.automated);
}

}  // namespace bpprod
