#include "bpprod/discovery.hpp"
#include "bpprod/error.hpp"
#include "fixtures/synthetic.hpp"
#include "support/oracles.hpp"

#include <doctest.h>
#include <nlohmann/json.hpp>

#include <numeric>
#include <set>
#include <sstream>

using namespace bpprod;
namespace fx = bpprod::fixtures;

namespace {

struct Parsed {
    EventLog log;
    std::vector<oracle::DomTrace> dom;
};

Parsed load(const std::vector<fx::RawTrace>& raw)
{
    const std::string doc = fx::write_xes(raw);
    std::istringstream in(doc);
    Parsed p{parse_xes(in), oracle::read_xes_dom(doc)};
    oracle::sort_by_time(p.dom);
    return p;
}

std::vector<std::vector<fx::RawTrace>> fixture_logs()
{
    std::vector<std::vector<fx::RawTrace>> logs;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        fx::RandomLogSpec spec;
        spec.seed = seed;
        spec.traces = 10 + 12 * seed;
        spec.min_events = 1;
        spec.alphabet = 3 + seed % 4;
        logs.push_back(fx::random_log(spec));
    }
    logs.push_back(fx::synthetic_bpic(fx::Era::before_2012, 100, 9));
    logs.push_back(fx::synthetic_bpic(fx::Era::after_2017, 100, 10));
    return logs;
}

Event make(const char* activity, int second, Lifecycle lc = Lifecycle::complete)
{
    Event e;
    e.case_id = "c";
    e.activity = activity;
    e.timestamp = Timestamp{std::chrono::seconds{1000000 + second}};
    e.lifecycle = lc;
    return e;
}

}  // namespace

TEST_SUITE("discovery") {

TEST_CASE("directly-follows counts equal a brute-force recount")
{
    for (const auto& raw : fixture_logs()) {
        const Parsed p = load(raw);
        const auto dfg = build_dfg(p.log);
        const auto brute = oracle::brute_force_dfg(p.dom);
        CHECK(dfg.edges == brute.edges);
        CHECK(dfg.terminal_pairs == brute.terminal);
        CHECK(dfg.trace_count == p.dom.size());
        std::size_t edge_total = 0;
        std::size_t event_total = 0;
        for (const auto& [k, v] : dfg.edges) {
            edge_total += v;
        }
        for (const auto& t : p.dom) {
            event_total += t.events.size();
        }
        CHECK(edge_total == event_total - p.dom.size());
    }
}

TEST_CASE("merging partial graphs in any order gives the whole-log graph")
{
    for (const auto& raw : fixture_logs()) {
        const Parsed p = load(raw);
        const auto whole = build_dfg(p.log);
        std::vector<std::size_t> order(p.log.size());
        std::iota(order.begin(), order.end(), 0);
        std::mt19937_64 rng(order.size());
        for (int round = 0; round < 3; ++round) {
            std::shuffle(order.begin(), order.end(), rng);
            DirectlyFollowsGraph left;
            DirectlyFollowsGraph right;
            for (std::size_t k = 0; k < order.size(); ++k) {
                (k % 3 == 0 ? left : right).merge(dfg_of_trace(p.log.traces()[order[k]]));
            }
            DirectlyFollowsGraph lr = left;
            lr.merge(right);
            DirectlyFollowsGraph rl = right;
            rl.merge(left);
            CHECK(lr == whole);
            CHECK(rl == whole);
        }
    }
}

TEST_CASE("terminal paths and trace classification equal brute force")
{
    for (double support : {0.0, 0.05, 0.2}) {
        for (const auto& raw : fixture_logs()) {
            const Parsed p = load(raw);
            const auto paths = extract_terminal_paths(build_dfg(p.log), support);
            const auto brute = oracle::brute_force_paths(oracle::brute_force_dfg(p.dom), p.dom.size(), support);
            REQUIRE(paths.size() == brute.size());
            for (std::size_t i = 0; i < paths.size(); ++i) {
                CHECK(paths[i].name == path_name(i));
                CHECK(paths[i].initial_activity == brute[i].first.first);
                CHECK(paths[i].final_activity == brute[i].first.second);
                CHECK(paths[i].trace_count == brute[i].second);
            }
            for (std::size_t t = 0; t < p.dom.size(); ++t) {
                std::optional<std::string> expected;
                for (std::size_t i = 0; i < brute.size() && !expected; ++i) {
                    if (brute[i].first.first == p.dom[t].events.front().activity &&
                        brute[i].first.second == p.dom[t].events.back().activity) {
                        expected = path_name(i);
                    }
                }
                CHECK(classify_trace(p.log.traces()[t], paths) == expected);
            }
            std::size_t on_paths = 0;
            for (const auto& s : paths) {
                on_paths += traces_on_path(p.log, s).size();
                CHECK(traces_on_path(p.log, s).size() == s.trace_count);
            }
            CHECK(on_paths <= p.log.size());
        }
    }
}

TEST_CASE("synthetic loan logs have the three dominant main paths")
{
    const Parsed before = load(fx::synthetic_bpic(fx::Era::before_2012, 600, 2012));
    const auto paths = extract_terminal_paths(build_dfg(before.log));
    REQUIRE(paths.size() == 3);
    CHECK(paths[0].final_activity == "A_CANCELLED");
    CHECK(paths[1].final_activity == "A_REGISTERED");
    CHECK(paths[2].final_activity == "A_DECLINED");
    for (const auto& s : paths) {
        CHECK(s.initial_activity == "A_SUBMITTED");
    }
}

TEST_CASE("path names run A..Z then AA, AB")
{
    CHECK(path_name(0) == "A");
    CHECK(path_name(25) == "Z");
    CHECK(path_name(26) == "AA");
    CHECK(path_name(27) == "AB");
    CHECK(path_name(26 + 26 * 26) == "AAA");
}

TEST_CASE("path spec errors")
{
    const std::vector<PathSpec> dup = {{"A", "x", "y"}, {"B", "x", "y"}};
    CHECK_THROWS_AS(check_path_specs(dup), Error);
    try {
        check_path_specs(dup);
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::AmbiguousPathSpecs);
    }
    const Parsed p = load(fx::random_log({}));
    CHECK_THROWS_AS(extract_terminal_paths(build_dfg(p.log), 1.5), Error);
    CHECK_THROWS_AS(extract_terminal_paths(build_dfg(p.log), -0.1), Error);
    CHECK_THROWS_AS(build_dfg(EventLog{}), Error);
    try {
        path_durations(p.log, {"Z", "nope", "nope"}, ActivityClassification{});
        FAIL("expected NoTracesOnPath");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::NoTracesOnPath);
    }
}

TEST_CASE("graph exports carry every edge")
{
    const Parsed p = load(fx::synthetic_bpic(fx::Era::after_2017, 60, 4));
    const auto dfg = build_dfg(p.log);
    const auto doc = nlohmann::json::parse(dfg_to_json(dfg));
    CHECK(doc["trace_count"] == dfg.trace_count);
    REQUIRE(doc["edges"].size() == dfg.edges.size());
    for (const auto& e : doc["edges"]) {
        CHECK(dfg.edges.at({e["source"], e["target"]}) == e["count"].get<std::size_t>());
    }
    const std::string dot = dfg_to_dot(dfg);
    CHECK(dot.rfind("digraph", 0) == 0);
    CHECK(dot.find("\"A_Create Application\" -> \"A_Submitted\"") != std::string::npos);
}

TEST_CASE("attribution: complete-only traces are additive")
{
    for (std::uint64_t seed = 40; seed < 45; ++seed) {
        fx::RandomLogSpec spec;
        spec.seed = seed;
        const Parsed p = load(fx::random_log(spec));
        for (const auto& t : p.log.traces()) {
            const auto parts = attribute_micros(t);
            CHECK(parts.front() == 0);
            const std::int64_t total = std::accumulate(parts.begin(), parts.end(), std::int64_t{0});
            CHECK(total == (t.back().timestamp - t.front().timestamp).count());
        }
    }
}

TEST_CASE("attribution pairs start and complete of the same activity first-in first-out")
{
    const Trace t("c", {make("a", 0, Lifecycle::start), make("b", 5), make("a", 10, Lifecycle::start),
                        make("a", 30), make("a", 70), make("c", 100, Lifecycle::schedule), make("d", 130)});
    const auto s = attribute_seconds(t);
    REQUIRE(s.size() == 7);
    CHECK(s[0] == 0.0);   // start
    CHECK(s[1] == 5.0);   // gap since previous event
    CHECK(s[2] == 0.0);   // start
    CHECK(s[3] == 30.0);  // closes the start at 0
    CHECK(s[4] == 60.0);  // closes the start at 10
    CHECK(s[5] == 0.0);   // schedule
    CHECK(s[6] == 30.0);
}

TEST_CASE("path durations match an independent computation")
{
    // Exact-name rules so the oracle can use a plain lookup table.
    std::map<std::string, LabourClass> table;
    std::vector<ClassificationRule> rules;
    for (int a = 0; a < 6; ++a) {
        const auto cls = a % 3 == 0 ? LabourClass::customer : LabourClass::low_skilled;
        table["act_" + std::to_string(a)] = cls;
        rules.push_back({"act_" + std::to_string(a), cls});
    }
    const ActivityClassification classification(rules, LabourClass::low_skilled);

    for (std::uint64_t seed = 50; seed < 54; ++seed) {
        fx::RandomLogSpec spec;
        spec.seed = seed;
        spec.traces = 80;
        spec.alphabet = 3;
        const Parsed p = load(fx::random_log(spec));
        for (const auto& s : extract_terminal_paths(build_dfg(p.log), 0.0)) {
            double total = 0.0;
            double firm = 0.0;
            std::size_t n = 0;
            for (const auto& t : p.dom) {
                if (t.events.front().activity != s.initial_activity || t.events.back().activity != s.final_activity) {
                    continue;
                }
                const double span = static_cast<double>(t.events.back().micros - t.events.front().micros) / 1e6;
                double customer = 0.0;
                for (std::size_t i = 1; i < t.events.size(); ++i) {
                    if (table.at(t.events[i].activity) == LabourClass::customer) {
                        customer += static_cast<double>(t.events[i].micros - t.events[i - 1].micros) / 1e6;
                    }
                }
                total += span;
                firm += span - customer;
                ++n;
            }
            const PathDurations d = path_durations(p.log, s, classification);
            CHECK(d.trace_count == n);
            CHECK(d.mean_total_seconds == doctest::Approx(total / static_cast<double>(n)).epsilon(1e-12));
            CHECK(d.mean_firm_seconds == doctest::Approx(firm / static_cast<double>(n)).epsilon(1e-12));
            CHECK(d.mean_firm_seconds <= d.mean_total_seconds + 1e-9);
        }
    }
}

}
