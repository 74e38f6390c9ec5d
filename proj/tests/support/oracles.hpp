#pragma once

// Independent re-implementations used as test oracles. Nothing here calls into
// the library's parsing, timestamp or discovery code.

#include <boost/property_tree/ptree.hpp>
#include <boost/property_tree/xml_parser.hpp>

#include <algorithm>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <random>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

namespace oracle {

// Days since 1970-01-01 for a proleptic Gregorian date.
inline std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d)
{
    y -= m <= 2;
    const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
    const unsigned yoe = static_cast<unsigned>(y - era * 400);
    const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
    const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
    return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

/// Epoch microseconds for "YYYY-MM-DDThh:mm:ss[.f+][Z|+hh:mm|-hh:mm]".
inline std::int64_t epoch_micros(const std::string& text)
{
    int y = 0, mo = 0, d = 0, h = 0, mi = 0, s = 0;
    int consumed = 0;
    if (std::sscanf(text.c_str(), "%4d-%2d-%2d%*c%2d:%2d:%2d%n", &y, &mo, &d, &h, &mi, &s, &consumed) != 6) {
        throw std::runtime_error("oracle cannot read time " + text);
    }
    std::size_t pos = static_cast<std::size_t>(consumed);
    std::int64_t frac = 0;
    if (pos < text.size() && text[pos] == '.') {
        ++pos;
        int digits = 0;
        while (pos < text.size() && std::isdigit(static_cast<unsigned char>(text[pos]))) {
            if (digits < 6) {
                frac = frac * 10 + (text[pos] - '0');
                ++digits;
            }
            ++pos;
        }
        for (; digits < 6; ++digits) {
            frac *= 10;
        }
    }
    std::int64_t offset_minutes = 0;
    if (pos < text.size() && (text[pos] == '+' || text[pos] == '-')) {
        const int sign = text[pos] == '-' ? -1 : 1;
        const int oh = std::stoi(text.substr(pos + 1, 2));
        const int om = std::stoi(text.substr(pos + 4, 2));
        offset_minutes = sign * (oh * 60 + om);
    }
    const std::int64_t secs = days_from_civil(y, static_cast<unsigned>(mo), static_cast<unsigned>(d)) * 86400 +
                              h * 3600 + mi * 60 + s - offset_minutes * 60;
    return secs * 1000000 + frac;
}

struct DomEvent {
    std::string activity;
    std::int64_t micros = 0;
    std::optional<std::string> resource;
    std::string lifecycle;
};

struct DomTrace {
    std::string case_id;
    std::vector<DomEvent> events;  // document order
};

/// Reads an XES document through a DOM parser.
inline std::vector<DomTrace> read_xes_dom(const std::string& xml)
{
    namespace pt = boost::property_tree;
    pt::ptree tree;
    std::istringstream in(xml);
    pt::read_xml(in, tree);

    std::vector<DomTrace> out;
    for (const auto& [tag, trace] : tree.get_child("log")) {
        if (tag != "trace") {
            continue;
        }
        DomTrace t;
        for (const auto& [ttag, child] : trace) {
            if (ttag == "string" && child.get<std::string>("<xmlattr>.key") == "concept:name") {
                t.case_id = child.get<std::string>("<xmlattr>.value");
            }
            if (ttag != "event") {
                continue;
            }
            DomEvent e;
            for (const auto& [etag, attr] : child) {
                if (etag == "<xmlattr>") {
                    continue;
                }
                const auto key = attr.get<std::string>("<xmlattr>.key", "");
                const auto value = attr.get<std::string>("<xmlattr>.value", "");
                if (key == "concept:name") {
                    e.activity = value;
                } else if (key == "time:timestamp") {
                    e.micros = epoch_micros(value);
                } else if (key == "org:resource") {
                    e.resource = value;
                } else if (key == "lifecycle:transition") {
                    e.lifecycle = value;
                }
            }
            t.events.push_back(std::move(e));
        }
        out.push_back(std::move(t));
    }
    return out;
}

/// Stable sort of each trace by time, as any reader must order events.
inline void sort_by_time(std::vector<DomTrace>& traces)
{
    for (auto& t : traces) {
        std::stable_sort(t.events.begin(), t.events.end(),
                         [](const DomEvent& a, const DomEvent& b) { return a.micros < b.micros; });
    }
}

using Pair = std::pair<std::string, std::string>;

struct BruteDfg {
    std::map<Pair, std::size_t> edges;
    std::map<Pair, std::size_t> terminal;
};

/// Directly-follows counts by scanning every ordered index pair (i, j) with j == i + 1.
inline BruteDfg brute_force_dfg(const std::vector<DomTrace>& sorted)
{
    BruteDfg g;
    for (const auto& t : sorted) {
        const auto& ev = t.events;
        for (std::size_t i = 0; i < ev.size(); ++i) {
            for (std::size_t j = 0; j < ev.size(); ++j) {
                if (j == i + 1) {
                    g.edges[{ev[i].activity, ev[j].activity}] += 1;
                }
            }
        }
        g.terminal[{ev.front().activity, ev.back().activity}] += 1;
    }
    return g;
}

/// Terminal pairs with share >= min_support, most frequent first; ties keep pair order.
inline std::vector<std::pair<Pair, std::size_t>> brute_force_paths(const BruteDfg& g, std::size_t traces,
                                                                   double min_support)
{
    std::vector<std::pair<Pair, std::size_t>> out;
    for (const auto& [pair, count] : g.terminal) {
        if (static_cast<double>(count) / static_cast<double>(traces) >= min_support) {
            out.emplace_back(pair, count);
        }
    }
    std::stable_sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.second > b.second; });
    return out;
}

class TempDir {
public:
    explicit TempDir(const std::string& stem)
    {
        std::random_device rd;
        path_ = std::filesystem::temp_directory_path() /
                (stem + "_" + std::to_string(rd()) + "_" + std::to_string(rd()));
        std::filesystem::create_directories(path_);
    }
    ~TempDir()
    {
        std::error_code ec;
        std::filesystem::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const std::filesystem::path& path() const { return path_; }
    std::filesystem::path operator/(const std::string& name) const { return path_ / name; }

private:
    std::filesystem::path path_;
};

}  // namespace oracle
