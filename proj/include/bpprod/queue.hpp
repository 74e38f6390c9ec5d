#pragma once

#include "bpprod/classification.hpp"
#include "bpprod/event_log.hpp"

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace bpprod {

/// Server archetypes for a business-process task.
enum class StationKind { low_skilled, high_skilled, automated };

std::string_view to_string(StationKind kind);
std::optional<StationKind> parse_station_kind(std::string_view text);
/// Customer-class activities have no station kind.
std::optional<StationKind> station_kind_for(LabourClass cls);

/// Distribution hook; only exponential (M/M/1) is implemented.
enum class ServiceDistribution { exponential };

struct QueueSystem {
    std::string task_name;
    StationKind kind = StationKind::low_skilled;
    double lambda = 0.0;  // arrivals per second
    double mu = 0.0;      // services per second
    ServiceDistribution distribution = ServiceDistribution::exponential;

    bool stable() const noexcept { return lambda < mu; }
};

/// Tandem of single-server FIFO stations in path activity order.
struct QueueNetwork {
    std::string label;
    std::vector<QueueSystem> stations;

    /// Throws InvalidArgument for an empty network or non-positive rates.
    void validate() const;
    const QueueSystem* find(std::string_view task) const;
};

/// Low/high-skilled entries multiply the current station rates; the automated
/// entries are absolute rates for the replaced station.
struct InterventionFactors {
    double low_lambda = 1.0;
    double low_mu = 1.0;
    double high_lambda = 1.0;
    double high_mu = 1.0;
    double automated_lambda = 1.0;
    double automated_mu = 1.0;

    void validate() const;

    /// Factors fitted on the BPIC 2012 -> 2017 change, customer time included.
    static InterventionFactors with_customer_time();
    /// Same, customer-dependent activities removed.
    static InterventionFactors without_customer_time();
    /// "with-customer-time" or "without-customer-time".
    static std::optional<InterventionFactors> preset(std::string_view name);
};

/// Returns a new network: `automated_task` becomes an automated station with the
/// absolute rates, other non-automated stations are rescaled by kind, already
/// automated stations are left alone. Throws UnknownTask.
QueueNetwork apply_intervention(const QueueNetwork& network, std::string_view automated_task,
                                const InterventionFactors& factors);

/// Rescales non-automated stations only (no substitution).
QueueNetwork rescale_network(const QueueNetwork& network, const InterventionFactors& factors);

struct Mm1Steady {
    double mean_wait = 0.0;
    double mean_sojourn = 0.0;
};

/// Closed-form steady state of a stable M/M/1 queue. Throws Unstable when lambda >= mu.
Mm1Steady analytic_mm1(double lambda, double mu);

struct SimulationOptions {
    std::size_t customers = 100000;
    std::uint64_t seed = 1;
    /// Leading fraction of customers excluded from the statistics.
    double warmup_fraction = 0.1;
    /// Keep per-customer arrival/start/departure times (memory: 3 doubles per station per customer).
    bool record_customers = false;
    /// Called with the time of every processed calendar event.
    std::function<void(double)> on_event;
};

struct StationStats {
    std::string task_name;
    double mean_wait = 0.0;
    double mean_service = 0.0;
    double mean_sojourn = 0.0;
    /// Time-average number in the station over the observation window.
    double mean_in_system = 0.0;
    /// Arrivals per second at the station over the observation window.
    double throughput = 0.0;
    bool unstable = false;
};

struct CustomerRecord {
    std::vector<double> arrival;
    std::vector<double> start;
    std::vector<double> departure;

    double sojourn() const { return departure.back() - arrival.front(); }
};

struct SimulationResult {
    std::string label;
    std::vector<StationStats> per_station;
    double total_mean_sojourn = 0.0;
    std::size_t completed_customers = 0;
    std::size_t measured_customers = 0;
    std::uint64_t seed = 0;
    std::string rng;
    double observation_seconds = 0.0;
    std::vector<std::string> warnings;
    std::vector<CustomerRecord> customers;
};

inline constexpr std::string_view kRngAlgorithm = "mt19937_64 streams seeded by splitmix64";

/// Discrete-event simulation of the tandem network: Poisson arrivals at the first
/// station, exponential service everywhere, departures feed the next station.
/// Unstable stations are simulated and flagged in `warnings`.
SimulationResult simulate(const QueueNetwork& network, const SimulationOptions& options);

struct QueueEstimate {
    double lambda = 0.0;
    double mu = 0.0;
    LabourClass cls = LabourClass::low_skilled;
    std::size_t observations = 0;
};

/// lambda = 1 / mean inter-arrival of the activity's occurrences across the log,
/// mu = 1 / mean attributed service time. Throws InsufficientObservations.
QueueEstimate estimate_queue_params(const EventLog& log, std::string_view activity,
                                    const ActivityClassification& classification);

}  // namespace bpprod
