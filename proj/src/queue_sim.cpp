#include "bpprod/error.hpp"
#include "bpprod/queue.hpp"

#include <cmath>
#include <deque>
#include <queue>
#include <random>
#include <sstream>

namespace bpprod {
namespace {

std::uint64_t splitmix64(std::uint64_t x)
{
    x += 0x9E3779B97F4A7C15ULL;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
    return x ^ (x >> 31);
}

/// Exponential variates by inversion; the uniform lies strictly inside (0, 1).
class ExponentialStream {
public:
    ExponentialStream(std::uint64_t seed, std::uint64_t stream) : engine_(splitmix64(seed ^ splitmix64(stream))) {}

    double next(double rate)
    {
        const double u = (static_cast<double>(engine_() >> 11) + 0.5) * 0x1.0p-53;
        return -std::log(u) / rate;
    }

private:
    std::mt19937_64 engine_;
};

enum class EventType : std::uint8_t { arrival, departure };

struct CalendarEntry {
    double time;
    std::uint64_t sequence;
    EventType type;
    std::size_t station;
    std::size_t customer;

    bool operator>(const CalendarEntry& o) const
    {
        return time != o.time ? time > o.time : sequence > o.sequence;
    }
};

struct StationState {
    std::deque<std::size_t> waiting;
    bool busy = false;
    std::size_t in_system = 0;
    double last_change = 0.0;
    double area = 0.0;
    std::size_t window_arrivals = 0;
    double sum_wait = 0.0;
    double sum_service = 0.0;
    double sum_sojourn = 0.0;
    std::size_t measured = 0;
};

}  // namespace

SimulationResult simulate(const QueueNetwork& network, const SimulationOptions& options)
{
    network.validate();
    if (options.customers == 0) {
        fail(ErrorKind::InvalidArgument, "simulation needs at least one customer");
    }
    if (!(options.warmup_fraction >= 0.0 && options.warmup_fraction < 1.0)) {
        fail(ErrorKind::InvalidArgument, "warm-up fraction must lie in [0, 1)");
    }

    const std::size_t n_stations = network.stations.size();
    const std::size_t n_customers = options.customers;
    const std::size_t warmup = std::min(
        n_customers - 1, static_cast<std::size_t>(std::floor(static_cast<double>(n_customers) * options.warmup_fraction)));

    SimulationResult result;
    result.label = network.label;
    result.seed = options.seed;
    result.rng = std::string(kRngAlgorithm);

    const double arrival_rate = network.stations.front().lambda;
    for (std::size_t k = 0; k < n_stations; ++k) {
        const auto& s = network.stations[k];
        std::ostringstream msg;
        if (!s.stable()) {
            msg << "station '" << s.task_name << "' is unstable: lambda " << s.lambda << " >= mu " << s.mu
                << "; statistics describe a growing backlog, not a steady state";
        } else if (arrival_rate >= s.mu) {
            msg << "station '" << s.task_name << "' is fed at rate " << arrival_rate << " >= mu " << s.mu
                << "; statistics describe a growing backlog, not a steady state";
        }
        if (!msg.str().empty()) {
            result.warnings.push_back(msg.str());
        }
    }

    ExponentialStream arrivals(options.seed, 0);
    std::vector<ExponentialStream> services;
    services.reserve(n_stations);
    for (std::size_t k = 0; k < n_stations; ++k) {
        services.emplace_back(options.seed, k + 1);
    }

    std::vector<StationState> state(n_stations);
    std::vector<double> system_arrival(n_customers, 0.0);
    std::vector<double> station_arrival(n_customers, 0.0);
    std::vector<double> service_start(n_customers, 0.0);
    if (options.record_customers) {
        result.customers.assign(n_customers, CustomerRecord{std::vector<double>(n_stations), std::vector<double>(n_stations),
                                                            std::vector<double>(n_stations)});
    }

    std::priority_queue<CalendarEntry, std::vector<CalendarEntry>, std::greater<>> calendar;
    std::uint64_t sequence = 0;
    auto schedule = [&](double time, EventType type, std::size_t station, std::size_t customer) {
        calendar.push({time, sequence++, type, station, customer});
    };

    bool observing = false;
    double window_start = 0.0;
    double now = 0.0;
    double sum_total_sojourn = 0.0;

    auto advance_area = [&](StationState& st) {
        if (observing) {
            st.area += static_cast<double>(st.in_system) * (now - st.last_change);
        }
        st.last_change = now;
    };

    auto begin_service = [&](std::size_t k, std::size_t customer) {
        StationState& st = state[k];
        st.busy = true;
        service_start[customer] = now;
        schedule(now + services[k].next(network.stations[k].mu), EventType::departure, k, customer);
    };

    auto arrive = [&](std::size_t k, std::size_t customer) {
        if (k == 0 && customer == warmup && !observing) {
            observing = true;
            window_start = now;
            for (auto& st : state) {
                st.last_change = now;
            }
        }
        StationState& st = state[k];
        advance_area(st);
        ++st.in_system;
        if (observing) {
            ++st.window_arrivals;
        }
        station_arrival[customer] = now;
        if (k == 0) {
            system_arrival[customer] = now;
        }
        if (st.busy) {
            st.waiting.push_back(customer);
        } else {
            begin_service(k, customer);
        }
    };

    schedule(arrivals.next(arrival_rate), EventType::arrival, 0, 0);

    double last_time = 0.0;
    while (!calendar.empty()) {
        const CalendarEntry ev = calendar.top();
        calendar.pop();
        if (ev.time < last_time) {
            fail(ErrorKind::InvariantViolation, "event calendar went backwards");
        }
        last_time = now = ev.time;
        if (options.on_event) {
            options.on_event(now);
        }

        if (ev.type == EventType::arrival) {
            if (ev.customer + 1 < n_customers) {
                schedule(now + arrivals.next(arrival_rate), EventType::arrival, 0, ev.customer + 1);
            }
            arrive(0, ev.customer);
            continue;
        }

        const std::size_t k = ev.station;
        const std::size_t c = ev.customer;
        StationState& st = state[k];
        advance_area(st);
        --st.in_system;
        st.busy = false;

        const double arrived = station_arrival[c];
        const double started = service_start[c];
        if (options.record_customers) {
            auto& rec = result.customers[c];
            rec.arrival[k] = arrived;
            rec.start[k] = started;
            rec.departure[k] = now;
        }
        if (c >= warmup) {
            st.sum_wait += started - arrived;
            st.sum_service += now - started;
            st.sum_sojourn += now - arrived;
            ++st.measured;
        }
        if (!st.waiting.empty()) {
            const std::size_t next = st.waiting.front();
            st.waiting.pop_front();
            begin_service(k, next);
        }

        if (k + 1 < n_stations) {
            arrive(k + 1, c);
        } else {
            ++result.completed_customers;
            if (c >= warmup) {
                sum_total_sojourn += now - system_arrival[c];
                ++result.measured_customers;
            }
        }
    }

    const double window = now - window_start;
    result.observation_seconds = window;
    for (std::size_t k = 0; k < n_stations; ++k) {
        const StationState& st = state[k];
        StationStats s;
        s.task_name = network.stations[k].task_name;
        s.unstable = !network.stations[k].stable() || arrival_rate >= network.stations[k].mu;
        if (st.measured > 0) {
            const double m = static_cast<double>(st.measured);
            s.mean_wait = st.sum_wait / m;
            s.mean_service = st.sum_service / m;
            s.mean_sojourn = st.sum_sojourn / m;
        }
        if (window > 0.0) {
            s.mean_in_system = st.area / window;
            s.throughput = static_cast<double>(st.window_arrivals) / window;
        }
        result.per_station.push_back(s);
    }
    if (result.measured_customers > 0) {
        result.total_mean_sojourn = sum_total_sojourn / static_cast<double>(result.measured_customers);
    }
    return result;
}

}  // namespace bpprod
