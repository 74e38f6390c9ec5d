#include "bpprod/error.hpp"
#include "bpprod/queue.hpp"
#include "support/reference_values.hpp"

#include <doctest.h>

#include <random>

using namespace bpprod;

namespace {

QueueNetwork single(double lambda, double mu)
{
    return {"mm1", {{"s", StationKind::low_skilled, lambda, mu}}};
}

QueueNetwork three_stations()
{
    return {"tandem",
            {{"intake", StationKind::low_skilled, 0.5, 1.0},
             {"review", StationKind::high_skilled, 0.5, 0.8},
             {"call", StationKind::low_skilled, 0.5, 1.25}}};
}

SimulationOptions opts(std::size_t customers, std::uint64_t seed = 1)
{
    SimulationOptions o;
    o.customers = customers;
    o.seed = seed;
    return o;
}

}  // namespace

TEST_SUITE("queue") {

TEST_CASE("closed-form M/M/1")
{
    const Mm1Steady s = analytic_mm1(0.5, 1.0);
    CHECK(s.mean_sojourn == doctest::Approx(2.0));
    CHECK(s.mean_wait == doctest::Approx(1.0));
    CHECK_THROWS_AS(analytic_mm1(1.0, 1.0), Error);
    try {
        analytic_mm1(2.0, 1.0);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Unstable);
    }
}

TEST_CASE("single station sojourn and wait match the closed form")
{
    for (double rho : {0.2, 0.5, 0.7}) {
        CAPTURE(rho);
        const auto r = simulate(single(rho, 1.0), opts(200000));
        const Mm1Steady exact = analytic_mm1(rho, 1.0);
        CHECK(r.total_mean_sojourn == doctest::Approx(exact.mean_sojourn).epsilon(0.04));
        CHECK(r.per_station[0].mean_wait == doctest::Approx(exact.mean_wait).epsilon(0.06));
        CHECK(r.per_station[0].mean_service == doctest::Approx(1.0).epsilon(0.02));
        CHECK(r.warnings.empty());
    }
}

TEST_CASE("tandem sojourn is the sum of the per-station closed forms")
{
    const QueueNetwork net = three_stations();
    const auto r = simulate(net, opts(500000, 9));
    double expected = 0.0;
    for (std::size_t k = 0; k < net.stations.size(); ++k) {
        const double exact = analytic_mm1(net.stations[k].lambda, net.stations[k].mu).mean_sojourn;
        CHECK(r.per_station[k].mean_sojourn == doctest::Approx(exact).epsilon(0.03));
        expected += exact;
    }
    CHECK(r.total_mean_sojourn == doctest::Approx(expected).epsilon(0.03));
    CHECK(r.completed_customers == 500000);
    CHECK(r.measured_customers == 450000);
}

TEST_CASE("Little's law holds per station")
{
    const auto r = simulate(three_stations(), opts(300000, 5));
    for (const auto& s : r.per_station) {
        CAPTURE(s.task_name);
        CHECK(s.mean_in_system == doctest::Approx(s.throughput * s.mean_sojourn).epsilon(0.03));
        CHECK(s.throughput == doctest::Approx(0.5).epsilon(0.03));
    }
}

TEST_CASE("a fixed seed reproduces the run bit for bit")
{
    const auto a = simulate(three_stations(), opts(50000, 77));
    const auto b = simulate(three_stations(), opts(50000, 77));
    const auto c = simulate(three_stations(), opts(50000, 78));
    CHECK(a.total_mean_sojourn == b.total_mean_sojourn);
    for (std::size_t k = 0; k < a.per_station.size(); ++k) {
        CHECK(a.per_station[k].mean_wait == b.per_station[k].mean_wait);
        CHECK(a.per_station[k].mean_in_system == b.per_station[k].mean_in_system);
    }
    CHECK(a.total_mean_sojourn != c.total_mean_sojourn);
    CHECK(a.rng == std::string(kRngAlgorithm));
}

TEST_CASE("customers leave every station in arrival order and the calendar never goes back")
{
    SimulationOptions o = opts(5000, 3);
    o.record_customers = true;
    double last = 0.0;
    bool monotone = true;
    o.on_event = [&](double t) {
        monotone = monotone && t >= last;
        last = t;
    };
    const auto r = simulate(three_stations(), o);
    CHECK(monotone);
    REQUIRE(r.customers.size() == 5000);
    for (std::size_t c = 1; c < r.customers.size(); ++c) {
        for (std::size_t k = 0; k < 3; ++k) {
            CHECK(r.customers[c].departure[k] >= r.customers[c - 1].departure[k]);
            CHECK(r.customers[c].start[k] >= r.customers[c].arrival[k]);
            if (k > 0) {
                CHECK(r.customers[c].arrival[k] == r.customers[c].departure[k - 1]);
            }
        }
    }
    double sum = 0.0;
    for (std::size_t c = 500; c < r.customers.size(); ++c) {
        sum += r.customers[c].sojourn();
    }
    CHECK(sum / 4500.0 == doctest::Approx(r.total_mean_sojourn).epsilon(1e-9));
}

TEST_CASE("instability is simulated and flagged, never rejected")
{
    QueueNetwork net = three_stations();
    net.stations[1].mu = 0.4;
    const auto r = simulate(net, opts(20000));
    CHECK(r.warnings.size() == 1);
    CHECK(r.per_station[1].unstable);
    CHECK_FALSE(r.per_station[0].unstable);
    CHECK(r.completed_customers == 20000);

    // A station fed faster than it serves is flagged even if its declared lambda is small.
    QueueNetwork fed = three_stations();
    fed.stations[2].lambda = 0.1;
    fed.stations[2].mu = 0.45;
    CHECK(simulate(fed, opts(2000)).warnings.size() == 1);
}

TEST_CASE("invalid networks and options")
{
    CHECK_THROWS_AS(simulate(QueueNetwork{}, opts(10)), Error);
    CHECK_THROWS_AS(simulate(single(0.0, 1.0), opts(10)), Error);
    CHECK_THROWS_AS(simulate(single(0.5, -1.0), opts(10)), Error);
    CHECK_THROWS_AS(simulate(single(0.5, 1.0), opts(0)), Error);
    SimulationOptions bad = opts(10);
    bad.warmup_fraction = 1.0;
    CHECK_THROWS_AS(simulate(single(0.5, 1.0), bad), Error);
}

TEST_CASE("intervention presets carry the reference factors")
{
    const InterventionFactors with = InterventionFactors::with_customer_time();
    const InterventionFactors without = InterventionFactors::without_customer_time();
    const auto& rw = reference::kFactorsWithCustomer;
    const auto& ro = reference::kFactorsWithoutCustomer;
    CHECK(with.low_lambda == rw.l_lambda);
    CHECK(with.low_mu == rw.l_mu);
    CHECK(with.high_lambda == rw.h_lambda);
    CHECK(with.high_mu == rw.h_mu);
    CHECK(with.automated_lambda == rw.a_lambda);
    CHECK(with.automated_mu == rw.a_mu);
    CHECK(without.low_mu == ro.l_mu);
    CHECK(without.high_mu == ro.h_mu);
    CHECK(without.automated_mu == ro.a_mu);
    CHECK(InterventionFactors::preset("with-customer-time"));
    CHECK_FALSE(InterventionFactors::preset("sideways"));
}

TEST_CASE("applying an intervention substitutes one station and rescales the rest")
{
    QueueNetwork net = three_stations();
    net.stations.push_back({"bot", StationKind::automated, 0.5, 9.0});
    const InterventionFactors f = InterventionFactors::without_customer_time();
    const QueueNetwork out = apply_intervention(net, "review", f);
    REQUIRE(out.stations.size() == 4);
    CHECK(out.stations[0].lambda == doctest::Approx(0.5 * 2.29));
    CHECK(out.stations[0].mu == doctest::Approx(1.0 * 0.41));
    CHECK(out.stations[1].kind == StationKind::automated);
    CHECK(out.stations[1].lambda == 1.10);
    CHECK(out.stations[1].mu == 6.01);
    CHECK(out.stations[2].mu == doctest::Approx(1.25 * 0.41));
    CHECK(out.stations[3].lambda == 0.5);
    CHECK(out.stations[3].mu == 9.0);
    CHECK(net.stations[1].kind == StationKind::high_skilled);

    try {
        apply_intervention(net, "missing", f);
        FAIL("expected UnknownTask");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::UnknownTask);
    }
    const QueueNetwork rescaled = rescale_network(net, InterventionFactors{});
    CHECK(rescaled.stations[1].mu == net.stations[1].mu);
    InterventionFactors zero;
    zero.low_mu = 0.0;
    CHECK_THROWS_AS(rescale_network(net, zero), Error);
}

TEST_CASE("rates estimated from a synthetic log recover the generating process")
{
    const double lambda = 1.0 / 600.0;  // one case every ten minutes
    const double mu = 1.0 / 240.0;      // four-minute tasks
    std::mt19937_64 rng(12);
    std::exponential_distribution<double> gap(lambda);
    std::exponential_distribution<double> work(mu);
    std::vector<Trace> traces;
    double clock = 1.3e9;
    for (int i = 0; i < 20000; ++i) {
        clock += gap(rng);
        auto ev = [&](const char* a, double t) {
            Event e;
            e.case_id = "c" + std::to_string(i);
            e.activity = a;
            e.timestamp = Timestamp{std::chrono::microseconds{static_cast<std::int64_t>(t * 1e6)}};
            return e;
        };
        traces.emplace_back("c" + std::to_string(i), std::vector<Event>{ev("open", clock), ev("work", clock + work(rng))});
    }
    const EventLog log(std::move(traces), "synthetic");
    const ActivityClassification classes({{"work", LabourClass::high_skilled}}, LabourClass::low_skilled);
    const QueueEstimate q = estimate_queue_params(log, "work", classes);
    CHECK(q.lambda == doctest::Approx(lambda).epsilon(0.05));
    CHECK(q.mu == doctest::Approx(mu).epsilon(0.05));
    CHECK(q.cls == LabourClass::high_skilled);
    CHECK(q.observations == 20000);
    CHECK_THROWS_AS(estimate_queue_params(log, "open", classes), Error);
    CHECK_THROWS_AS(estimate_queue_params(log, "absent", classes), Error);
}

TEST_CASE("station kinds")
{
    CHECK(parse_station_kind("h") == StationKind::high_skilled);
    CHECK(parse_station_kind("automated") == StationKind::automated);
    CHECK_FALSE(parse_station_kind("robot"));
    CHECK_FALSE(station_kind_for(LabourClass::customer));
    CHECK(station_kind_for(LabourClass::automated) == StationKind::automated);
}

}
