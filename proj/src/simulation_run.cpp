#include "bpprod/error.hpp"
#include "bpprod/report.hpp"

#include <nlohmann/json.hpp>

#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace bpprod {

using json = nlohmann::json;

void ScenarioConfig::validate() const
{
    try {
        network.validate();
        factors.validate();
    } catch (const Error& e) {
        fail(ErrorKind::InvalidConfig, e.what());
    }
    if (customers == 0) {
        fail(ErrorKind::InvalidConfig, "customers must be at least 1");
    }
    if (!(warmup_fraction >= 0.0 && warmup_fraction < 1.0)) {
        fail(ErrorKind::InvalidConfig, "warmup_fraction must lie in [0, 1)");
    }
    if (!automated_task.empty() && network.find(automated_task) == nullptr) {
        fail(ErrorKind::UnknownTask, "automated_task '" + automated_task + "' is not a station");
    }
}

ScenarioConfig ScenarioConfig::from_json_text(std::string_view text)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidConfig, std::string("scenario is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail(ErrorKind::InvalidConfig, "scenario must be a JSON object");
    }
    if (doc.value("version", 0) != 1) {
        fail(ErrorKind::InvalidConfig, "scenario version must be 1");
    }
    static const std::set<std::string> known = {"version",  "label", "stations",        "automated_task",  "factors",
                                                "customers", "seed", "warmup_fraction", "emit_sojourn_csv"};
    for (const auto& [key, _] : doc.items()) {
        if (!known.contains(key)) {
            fail(ErrorKind::InvalidConfig, "unknown scenario key '" + key + "'");
        }
    }

    ScenarioConfig s;
    try {
        s.network.label = doc.value("label", std::string("scenario"));
        if (!doc.contains("stations") || !doc["stations"].is_array()) {
            fail(ErrorKind::InvalidConfig, "scenario needs a 'stations' array");
        }
        for (const auto& st : doc["stations"]) {
            QueueSystem q;
            q.task_name = st.at("task").get<std::string>();
            const auto kind = parse_station_kind(st.value("kind", std::string("low_skilled")));
            if (!kind) {
                fail(ErrorKind::InvalidConfig, "station '" + q.task_name + "' has an unknown kind");
            }
            q.kind = *kind;
            q.lambda = st.at("lambda").get<double>();
            q.mu = st.at("mu").get<double>();
            if (st.contains("distribution") && st["distribution"].get<std::string>() != "exponential") {
                fail(ErrorKind::InvalidConfig, "only exponential service is supported");
            }
            s.network.stations.push_back(std::move(q));
        }
        s.automated_task = doc.value("automated_task", std::string());
        if (doc.contains("factors")) {
            const auto& f = doc["factors"];
            if (f.is_string()) {
                auto preset = InterventionFactors::preset(f.get<std::string>());
                if (!preset) {
                    fail(ErrorKind::InvalidConfig, "unknown factor preset '" + f.get<std::string>() + "'");
                }
                s.factors = *preset;
            } else if (f.is_object()) {
                s.factors.low_lambda = f.value("low_lambda", 1.0);
                s.factors.low_mu = f.value("low_mu", 1.0);
                s.factors.high_lambda = f.value("high_lambda", 1.0);
                s.factors.high_mu = f.value("high_mu", 1.0);
                s.factors.automated_lambda = f.at("automated_lambda").get<double>();
                s.factors.automated_mu = f.at("automated_mu").get<double>();
            } else {
                fail(ErrorKind::InvalidConfig, "'factors' must be a preset name or an object");
            }
        }
        s.customers = doc.value("customers", s.customers);
        s.seed = doc.value("seed", s.seed);
        s.warmup_fraction = doc.value("warmup_fraction", s.warmup_fraction);
        s.emit_sojourn_csv = doc.value("emit_sojourn_csv", false);
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidConfig, std::string("scenario field error: ") + e.what());
    }
    s.validate();
    return s;
}

ScenarioConfig ScenarioConfig::load(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::InvalidConfig, "cannot open scenario " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return from_json_text(ss.str());
}

SimulationRun run_scenario(const ScenarioConfig& scenario)
{
    scenario.validate();
    SimulationRun run;
    run.intervened_network = scenario.automated_task.empty()
                                 ? scenario.network
                                 : apply_intervention(scenario.network, scenario.automated_task, scenario.factors);
    if (!scenario.automated_task.empty()) {
        run.intervened_network.label += " (intervened)";
    }

    SimulationOptions opts;
    opts.customers = scenario.customers;
    opts.seed = scenario.seed;
    opts.warmup_fraction = scenario.warmup_fraction;
    opts.record_customers = scenario.emit_sojourn_csv;

    // Independent runs; each owns its RNG streams, so results do not depend on scheduling.
    auto baseline = std::async(std::launch::async, [&] { return simulate(scenario.network, opts); });
    run.intervened = simulate(run.intervened_network, opts);
    run.baseline = baseline.get();

    if (!(run.baseline.total_mean_sojourn > 0.0) || !(run.intervened.total_mean_sojourn > 0.0)) {
        fail(ErrorKind::NonPositiveTime, "simulation produced no measured sojourns");
    }
    run.delta_p = delta_p_from_times(run.baseline.total_mean_sojourn, run.intervened.total_mean_sojourn);
    return run;
}

std::string simulation_result_json(const SimulationResult& r, const QueueNetwork& network)
{
    nlohmann::ordered_json doc;
    doc["label"] = r.label;
    doc["seed"] = r.seed;
    doc["rng"] = r.rng;
    doc["completed_customers"] = r.completed_customers;
    doc["measured_customers"] = r.measured_customers;
    doc["observation_seconds"] = r.observation_seconds;
    doc["total_mean_sojourn"] = r.total_mean_sojourn;
    doc["stations"] = nlohmann::ordered_json::array();
    for (std::size_t i = 0; i < r.per_station.size(); ++i) {
        const auto& s = r.per_station[i];
        const auto& q = network.stations[i];
        doc["stations"].push_back({{"task", s.task_name},
                                   {"kind", std::string(to_string(q.kind))},
                                   {"lambda", q.lambda},
                                   {"mu", q.mu},
                                   {"mean_wait", s.mean_wait},
                                   {"mean_service", s.mean_service},
                                   {"mean_sojourn", s.mean_sojourn},
                                   {"mean_in_system", s.mean_in_system},
                                   {"throughput", s.throughput},
                                   {"unstable", s.unstable}});
    }
    doc["warnings"] = r.warnings;
    return doc.dump(2) + "\n";
}

namespace {

std::string sojourn_csv(const SimulationResult& r)
{
    Table t{"sojourns", {"customer", "arrival", "sojourn"}, {}, {}};
    for (std::size_t i = 0; i < r.customers.size(); ++i) {
        const auto& c = r.customers[i];
        t.add_row({static_cast<std::int64_t>(i), c.arrival.front(), c.sojourn()});
    }
    std::ostringstream out;
    write_table_csv(t, out);
    return out.str();
}

}  // namespace

SimulationRun run_simulation(const std::filesystem::path& scenario_path, const std::filesystem::path& output_dir,
                             std::optional<std::uint64_t> seed_override, std::optional<std::size_t> customers_override)
{
    ScenarioConfig scenario = ScenarioConfig::load(scenario_path);
    if (seed_override) {
        scenario.seed = *seed_override;
    }
    if (customers_override) {
        scenario.customers = *customers_override;
    }
    SimulationRun run = run_scenario(scenario);

    write_text_file(output_dir / "baseline.json", simulation_result_json(run.baseline, scenario.network));
    write_text_file(output_dir / "intervened.json", simulation_result_json(run.intervened, run.intervened_network));

    const auto [psi, regime] = psi_from_delta_p(run.delta_p);
    nlohmann::ordered_json summary;
    summary["label"] = scenario.network.label;
    summary["automated_task"] = scenario.automated_task;
    summary["seed"] = scenario.seed;
    summary["customers"] = scenario.customers;
    summary["warmup_fraction"] = scenario.warmup_fraction;
    summary["tau_n"] = run.baseline.total_mean_sojourn;
    summary["tau_a"] = run.intervened.total_mean_sojourn;
    summary["delta_p"] = run.delta_p;
    summary["psi"] = psi;
    summary["regime"] = std::string(to_string(regime));
    summary["baseline_warnings"] = run.baseline.warnings.size();
    summary["intervened_warnings"] = run.intervened.warnings.size();
    write_text_file(output_dir / "simulation_summary.json", summary.dump(2) + "\n");

    if (scenario.emit_sojourn_csv) {
        write_text_file(output_dir / "baseline_sojourns.csv", sojourn_csv(run.baseline));
        write_text_file(output_dir / "intervened_sojourns.csv", sojourn_csv(run.intervened));
    }
    return run;
}

}  // namespace bpprod
