#include "fixtures/synthetic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <random>
#include <sstream>

namespace bpprod::fixtures {
namespace {

std::string xml_escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '&': out += "&amp;"; break;
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

std::string csv_field(const std::string& s)
{
    if (s.find_first_of(",\"\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') {
            out += '"';
        }
        out += c;
    }
    return out + '"';
}

std::string lifecycle_text(const Event& e)
{
    if (!e.lifecycle_label.empty()) {
        return e.lifecycle_label;
    }
    switch (e.lifecycle) {
    case Lifecycle::schedule: return "schedule";
    case Lifecycle::start: return "start";
    case Lifecycle::complete: return "complete";
    case Lifecycle::other: return "other";
    }
    return "complete";
}

Event make_event(const std::string& case_id, std::string activity, Timestamp ts, std::optional<std::string> resource,
                 std::size_t position)
{
    Event e;
    e.case_id = case_id;
    e.activity = std::move(activity);
    e.timestamp = ts;
    e.resource = std::move(resource);
    e.lifecycle = Lifecycle::complete;
    e.lifecycle_label = "complete";
    e.source_position = position;
    return e;
}

Timestamp at_seconds(double seconds)
{
    return Timestamp{std::chrono::microseconds{static_cast<std::int64_t>(std::llround(seconds * 1000.0)) * 1000}};
}

}  // namespace

int rotating_offset(std::size_t trace, std::size_t)
{
    static constexpr int kOffsets[] = {0, 60, 120, -300};
    return kOffsets[trace % 4];
}

std::string format_with_offset(Timestamp ts, int offset_minutes)
{
    std::string utc = format_iso8601(ts + std::chrono::minutes{offset_minutes});
    utc.pop_back();  // 'Z'
    if (offset_minutes == 0) {
        return utc + "Z";
    }
    const int a = std::abs(offset_minutes);
    char buf[16];
    std::snprintf(buf, sizeof buf, "%c%02d:%02d", offset_minutes < 0 ? '-' : '+', a / 60, a % 60);
    return utc + buf;
}

std::string write_xes(std::span<const RawTrace> traces, const OffsetFn& offset)
{
    std::ostringstream out;
    out << "<?xml version=\"1.0\" encoding=\"UTF-8\" ?>\n";
    out << "<log xes.version=\"1.0\" xes.features=\"nested-attributes\" openxes.version=\"1.0RC7\">\n";
    out << "\t<extension name=\"Concept\" prefix=\"concept\" uri=\"http://www.xes-standard.org/concept.xesext\"/>\n";
    out << "\t<extension name=\"Time\" prefix=\"time\" uri=\"http://www.xes-standard.org/time.xesext\"/>\n";
    out << "\t<extension name=\"Organizational\" prefix=\"org\" uri=\"http://www.xes-standard.org/org.xesext\"/>\n";
    out << "\t<extension name=\"Lifecycle\" prefix=\"lifecycle\" uri=\"http://www.xes-standard.org/lifecycle.xesext\"/>\n";
    out << "\t<global scope=\"event\">\n\t\t<string key=\"concept:name\" value=\"__INVALID__\"/>\n\t</global>\n";
    out << "\t<classifier name=\"Activity\" keys=\"concept:name\"/>\n";
    for (std::size_t t = 0; t < traces.size(); ++t) {
        out << "\t<trace>\n\t\t<string key=\"concept:name\" value=\"" << xml_escape(traces[t].case_id) << "\"/>\n";
        for (std::size_t i = 0; i < traces[t].events.size(); ++i) {
            const Event& e = traces[t].events[i];
            out << "\t\t<event>\n";
            out << "\t\t\t<string key=\"concept:name\" value=\"" << xml_escape(e.activity) << "\"/>\n";
            if (e.resource) {
                out << "\t\t\t<string key=\"org:resource\" value=\"" << xml_escape(*e.resource) << "\"/>\n";
            }
            out << "\t\t\t<string key=\"lifecycle:transition\" value=\"" << xml_escape(lifecycle_text(e)) << "\"/>\n";
            out << "\t\t\t<date key=\"time:timestamp\" value=\"" << format_with_offset(e.timestamp, offset(t, i))
                << "\"/>\n";
            for (const auto& [k, v] : e.attributes) {
                out << "\t\t\t<string key=\"" << xml_escape(k) << "\" value=\"" << xml_escape(v) << "\"/>\n";
            }
            out << "\t\t</event>\n";
        }
        out << "\t</trace>\n";
    }
    out << "</log>\n";
    return out.str();
}

std::string write_csv(std::span<const RawTrace> traces, const OffsetFn& offset)
{
    std::ostringstream out;
    out << "case_id,activity,timestamp,resource,lifecycle\n";
    for (std::size_t t = 0; t < traces.size(); ++t) {
        for (std::size_t i = 0; i < traces[t].events.size(); ++i) {
            const Event& e = traces[t].events[i];
            out << csv_field(e.case_id) << ',' << csv_field(e.activity) << ','
                << format_with_offset(e.timestamp, offset(t, i)) << ',' << csv_field(e.resource.value_or("")) << ','
                << csv_field(lifecycle_text(e)) << '\n';
        }
    }
    return out.str();
}

std::vector<RawTrace> to_raw(const EventLog& log)
{
    std::vector<RawTrace> out;
    for (const auto& t : log.traces()) {
        out.push_back({t.case_id(), std::vector<Event>(t.events().begin(), t.events().end())});
    }
    return out;
}

std::vector<RawTrace> random_log(const RandomLogSpec& spec)
{
    std::mt19937_64 rng(spec.seed);
    std::uniform_int_distribution<std::size_t> len(spec.min_events, spec.max_events);
    std::uniform_int_distribution<std::size_t> act(0, spec.alphabet - 1);
    std::uniform_int_distribution<int> gap_ms(1000, 2 * 3600 * 1000);
    std::uniform_int_distribution<int> res(0, 4);
    std::uniform_int_distribution<std::int64_t> start(1325376000LL, 1356998400LL);  // 2012

    std::vector<RawTrace> out;
    for (std::size_t t = 0; t < spec.traces; ++t) {
        RawTrace raw;
        raw.case_id = "case_" + std::to_string(t);
        Timestamp ts{std::chrono::seconds{start(rng)}};
        const std::size_t n = len(rng);
        for (std::size_t i = 0; i < n; ++i) {
            if (i > 0) {
                ts += std::chrono::milliseconds{gap_ms(rng)};
            }
            std::optional<std::string> r;
            if (spec.with_resources) {
                r = "res_" + std::to_string(res(rng));
            }
            raw.events.push_back(make_event(raw.case_id, "act_" + std::to_string(act(rng)), ts, r, i));
        }
        out.push_back(std::move(raw));
    }
    return out;
}

InjectedDefects inject_defects(std::vector<RawTrace>& traces, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::vector<std::size_t> idx(traces.size());
    for (std::size_t i = 0; i < idx.size(); ++i) {
        idx[i] = i;
    }
    std::shuffle(idx.begin(), idx.end(), rng);

    InjectedDefects d;
    // Duplicate: trace idx[1] takes the id of idx[0].
    d.duplicate_case = traces[idx[0]].case_id;
    traces[idx[1]].case_id = d.duplicate_case;
    for (auto& e : traces[idx[1]].events) {
        e.case_id = d.duplicate_case;
    }

    auto& ooo = traces[idx[2]];
    std::reverse(ooo.events.begin(), ooo.events.end());
    d.out_of_order_case = ooo.case_id;

    auto& lc = traces[idx[3]];
    lc.events.back().lifecycle = Lifecycle::other;
    lc.events.back().lifecycle_label = "ate_abort_weird";
    d.unknown_lifecycle_case = lc.case_id;
    return d;
}

namespace {

struct Step {
    const char* activity;
    double mean_seconds;
    bool has_resource;
};

}  // namespace

std::vector<RawTrace> synthetic_bpic(Era era, std::size_t traces, std::uint64_t seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<int> clerk(10000, 10040);

    constexpr double kMin = 60.0;
    constexpr double kHour = 3600.0;
    constexpr double kDay = 86400.0;
    const bool before = era == Era::before_2012;

    // Terminal paths A/B/C by share 45/35/17 plus 3% noise.
    std::vector<std::vector<Step>> paths;
    std::vector<Step> noise;
    if (before) {
        const std::vector<Step> head = {{"A_SUBMITTED", 0.0, false},
                                        {"A_PARTLYSUBMITTED", 1.0 * kMin, false},
                                        {"W_Afhandelen leads", 1.0 * kHour, true},
                                        {"W_Completeren aanvraag", 2.0 * kHour, true},
                                        {"O_SENT_BACK", 2.0 * kDay, false},
                                        {"W_Valideren aanvraag", 3.0 * kHour, true}};
        auto with = [&](std::vector<Step> tail) {
            auto p = head;
            p.insert(p.end(), tail.begin(), tail.end());
            return p;
        };
        paths.push_back(with({{"A_CANCELLED", 30.0 * kMin, true}}));
        paths.push_back(with({{"W_Nabellen offertes", 1.0 * kHour, true},
                              {"O_ACCEPTED", 1.0 * kDay, false},
                              {"A_REGISTERED", 20.0 * kMin, false}}));
        paths.push_back(with({{"W_Beoordelen fraude", 2.0 * kHour, true}, {"A_DECLINED", 15.0 * kMin, true}}));
        noise = with({{"A_ACTIVATED", 1.0 * kHour, false}});
    } else {
        const std::vector<Step> head = {{"A_Create Application", 0.0, false},
                                        {"A_Submitted", 1.0 * kMin, false},
                                        {"W_Handle leads", 30.0 * kMin, true},
                                        {"W_Complete application", 1.0 * kHour, true},
                                        {"O_Returned", 6.0 * kDay, false},
                                        {"A_Validating", 2.0 * kHour, false},
                                        {"W_Validate application", 20.0 * kMin, true}};
        auto with = [&](std::vector<Step> tail) {
            auto p = head;
            p.insert(p.end(), tail.begin(), tail.end());
            return p;
        };
        paths.push_back(with({{"A_Denied", 15.0 * kMin, true}}));
        paths.push_back(with({{"W_Call after offers", 30.0 * kMin, true},
                              {"O_Accepted", 3.0 * kDay, false},
                              {"A_Pending", 10.0 * kMin, false}}));
        paths.push_back(with({{"W_Assess potential fraud", 1.0 * kHour, true}, {"A_Cancelled", 10.0 * kMin, true}}));
        noise = with({{"A_Incomplete", 1.0 * kHour, false}});
    }

    const double year_start = before ? 1325376000.0 : 1483228800.0;  // 2012-01-01 / 2017-01-01 UTC
    std::exponential_distribution<double> interarrival(1.0 / 1800.0);

    std::vector<RawTrace> out;
    double case_start = year_start;
    for (std::size_t t = 0; t < traces; ++t) {
        case_start += interarrival(rng);
        const double u = unit(rng);
        const std::vector<Step>& steps = u < 0.45 ? paths[0] : u < 0.80 ? paths[1] : u < 0.97 ? paths[2] : noise;

        RawTrace raw;
        raw.case_id = std::to_string((before ? 173000 : 1700000) + t);
        double clock = case_start;
        for (std::size_t i = 0; i < steps.size(); ++i) {
            if (steps[i].mean_seconds > 0.0) {
                // Gamma(4) durations keep per-path means stable at modest sample sizes.
                std::gamma_distribution<double> dur(4.0, steps[i].mean_seconds / 4.0);
                clock += std::max(1.0, dur(rng));
            }
            std::optional<std::string> res;
            if (steps[i].has_resource) {
                res = std::to_string(clerk(rng));
            }
            raw.events.push_back(make_event(raw.case_id, steps[i].activity, at_seconds(clock), res, i));
        }
        out.push_back(std::move(raw));
    }
    return out;
}

}  // namespace bpprod::fixtures
