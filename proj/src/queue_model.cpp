#include "bpprod/discovery.hpp"
#include "bpprod/error.hpp"
#include "bpprod/queue.hpp"

#include <algorithm>

namespace bpprod {

std::string_view to_string(StationKind kind)
{
    switch (kind) {
    case StationKind::low_skilled: return "low_skilled";
    case StationKind::high_skilled: return "high_skilled";
    case StationKind::automated: return "automated";
    }
    return "unknown";
}

std::optional<StationKind> parse_station_kind(std::string_view text)
{
    if (text == "low_skilled" || text == "l") return StationKind::low_skilled;
    if (text == "high_skilled" || text == "h") return StationKind::high_skilled;
    if (text == "automated" || text == "x" || text == "a") return StationKind::automated;
    return std::nullopt;
}

std::optional<StationKind> station_kind_for(LabourClass cls)
{
    switch (cls) {
    case LabourClass::low_skilled: return StationKind::low_skilled;
    case LabourClass::high_skilled: return StationKind::high_skilled;
    case LabourClass::automated: return StationKind::automated;
    case LabourClass::customer: return std::nullopt;
    }
    return std::nullopt;
}

void QueueNetwork::validate() const
{
    if (stations.empty()) {
        fail(ErrorKind::InvalidArgument, "queue network '" + label + "' has no stations");
    }
    for (const auto& s : stations) {
        if (!(s.lambda > 0.0) || !(s.mu > 0.0)) {
            fail(ErrorKind::InvalidArgument, "station '" + s.task_name + "' needs positive lambda and mu");
        }
    }
}

const QueueSystem* QueueNetwork::find(std::string_view task) const
{
    auto it = std::find_if(stations.begin(), stations.end(), [&](const QueueSystem& s) { return s.task_name == task; });
    return it == stations.end() ? nullptr : &*it;
}

void InterventionFactors::validate() const
{
    for (double v : {low_lambda, low_mu, high_lambda, high_mu, automated_lambda, automated_mu}) {
        if (!(v > 0.0)) {
            fail(ErrorKind::InvalidArgument, "intervention factors must be strictly positive");
        }
    }
}

InterventionFactors InterventionFactors::with_customer_time()
{
    return {2.29, 0.04, 2.05, 2.11e-5, 1.10, 1.29};
}

InterventionFactors InterventionFactors::without_customer_time()
{
    return {2.29, 0.41, 2.05, 0.02, 1.10, 6.01};
}

std::optional<InterventionFactors> InterventionFactors::preset(std::string_view name)
{
    if (name == "with-customer-time") {
        return with_customer_time();
    }
    if (name == "without-customer-time") {
        return without_customer_time();
    }
    return std::nullopt;
}

QueueNetwork rescale_network(const QueueNetwork& network, const InterventionFactors& factors)
{
    factors.validate();
    QueueNetwork out = network;
    for (auto& s : out.stations) {
        if (s.kind == StationKind::low_skilled) {
            s.lambda *= factors.low_lambda;
            s.mu *= factors.low_mu;
        } else if (s.kind == StationKind::high_skilled) {
            s.lambda *= factors.high_lambda;
            s.mu *= factors.high_mu;
        }
    }
    return out;
}

QueueNetwork apply_intervention(const QueueNetwork& network, std::string_view automated_task,
                                const InterventionFactors& factors)
{
    if (network.find(automated_task) == nullptr) {
        fail(ErrorKind::UnknownTask, "no station named '" + std::string(automated_task) + "' in '" + network.label + "'");
    }
    QueueNetwork out = network;
    for (auto& s : out.stations) {
        if (s.task_name == automated_task) {
            s.kind = StationKind::automated;
            s.lambda = factors.automated_lambda;
            s.mu = factors.automated_mu;
        }
    }
    // The substituted station is automated now, so rescaling leaves it untouched.
    return rescale_network(out, factors);
}

Mm1Steady analytic_mm1(double lambda, double mu)
{
    if (!(lambda > 0.0) || !(mu > 0.0)) {
        fail(ErrorKind::InvalidArgument, "lambda and mu must be positive");
    }
    if (lambda >= mu) {
        fail(ErrorKind::Unstable, "lambda >= mu has no steady state");
    }
    return {lambda / (mu * (mu - lambda)), 1.0 / (mu - lambda)};
}

QueueEstimate estimate_queue_params(const EventLog& log, std::string_view activity,
                                    const ActivityClassification& classification)
{
    std::vector<std::int64_t> times;
    std::int64_t service_total = 0;
    for (const auto& t : log.traces()) {
        const auto micros = attribute_micros(t);
        const auto events = t.events();
        for (std::size_t i = 0; i < events.size(); ++i) {
            const Event& e = events[i];
            if (e.activity != activity || e.lifecycle == Lifecycle::start || e.lifecycle == Lifecycle::schedule) {
                continue;
            }
            times.push_back(e.timestamp.time_since_epoch().count());
            service_total += micros[i];
        }
    }
    const std::string name(activity);
    if (times.size() < 2) {
        fail(ErrorKind::InsufficientObservations,
             "'" + name + "' occurs " + std::to_string(times.size()) + " time(s); need at least 2");
    }
    const auto [lo, hi] = std::minmax_element(times.begin(), times.end());
    const double n = static_cast<double>(times.size());
    const double mean_interarrival = static_cast<double>(*hi - *lo) / 1e6 / (n - 1.0);
    const double mean_service = static_cast<double>(service_total) / 1e6 / n;
    if (!(mean_interarrival > 0.0)) {
        fail(ErrorKind::InsufficientObservations, "all occurrences of '" + name + "' share one instant");
    }
    if (!(mean_service > 0.0)) {
        fail(ErrorKind::InsufficientObservations, "'" + name + "' has zero attributed service time");
    }
    return {1.0 / mean_interarrival, 1.0 / mean_service, classification.classify(activity), times.size()};
}

}  // namespace bpprod
