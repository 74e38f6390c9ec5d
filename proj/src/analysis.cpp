#include "bpprod/error.hpp"
#include "bpprod/hash.hpp"
#include "bpprod/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <chrono>
#include <fstream>
#include <future>
#include <set>
#include <sstream>

namespace bpprod {

std::string_view to_string(OutputFormat format)
{
    return format == OutputFormat::json ? "json" : "csv";
}

std::optional<OutputFormat> parse_output_format(std::string_view text)
{
    if (text == "json") return OutputFormat::json;
    if (text == "csv") return OutputFormat::csv;
    return std::nullopt;
}

std::string_view to_string(CustomerVariant variant)
{
    return variant == CustomerVariant::with_customer ? "with_customer" : "without_customer";
}

namespace {

template <class F>
auto tagged(const char* module, F&& f)
{
    try {
        return f();
    } catch (Error& e) {
        if (e.module().empty()) {
            e.set_module(module);
        }
        throw;
    }
}

using json = nlohmann::json;

std::filesystem::path resolve(const std::filesystem::path& base, const std::string& p)
{
    std::filesystem::path path(p);
    if (path.is_relative() && !base.empty()) {
        return base / path;
    }
    return path;
}

std::vector<PathSpec> parse_path_specs(const json& arr, const std::string& where)
{
    if (!arr.is_array()) {
        fail(ErrorKind::InvalidConfig, where + " must be an array");
    }
    std::vector<PathSpec> specs;
    for (const auto& p : arr) {
        if (!p.is_object() || !p.contains("name") || !p.contains("initial") || !p.contains("final")) {
            fail(ErrorKind::InvalidConfig, where + " entries need 'name', 'initial' and 'final'");
        }
        specs.push_back({p["name"].get<std::string>(), p["initial"].get<std::string>(), p["final"].get<std::string>()});
    }
    return specs;
}

json path_specs_json(const std::vector<PathSpec>& specs)
{
    json arr = json::array();
    for (const auto& s : specs) {
        arr.push_back({{"name", s.name}, {"initial", s.initial_activity}, {"final", s.final_activity}});
    }
    return arr;
}

}  // namespace

void AnalysisConfig::validate() const
{
    if (!(alpha > 0.0 && alpha < 1.0)) {
        fail(ErrorKind::InvalidConfig, "alpha must lie strictly inside (0, 1), got " + format_number(alpha));
    }
    if (!(min_support >= 0.0 && min_support <= 1.0)) {
        fail(ErrorKind::InvalidConfig, "min_support must lie in [0, 1], got " + format_number(min_support));
    }
    if (kappa && !(*kappa >= 0.0)) {
        fail(ErrorKind::InvalidConfig, "kappa must be non-negative");
    }
    if (before_log_path.empty() || after_log_path.empty()) {
        fail(ErrorKind::InvalidConfig, "both before and after logs are required");
    }
    if (output_dir.empty()) {
        fail(ErrorKind::InvalidConfig, "output directory is required");
    }
    if (automated_task.empty() && !kappa) {
        fail(ErrorKind::InvalidConfig, "either automated_task or an explicit kappa is required");
    }
    if (before_era.empty() || after_era.empty() || before_era == after_era) {
        fail(ErrorKind::InvalidConfig, "era labels must be non-empty and distinct");
    }
}

void AnalysisConfig::merge_json(std::string_view text, const std::filesystem::path& base_dir)
{
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidConfig, std::string("analysis config is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) {
        fail(ErrorKind::InvalidConfig, "analysis config must be a JSON object");
    }
    static const std::set<std::string> known = {
        "before_log", "after_log", "classification", "automated_task", "automated_task_before", "kappa",
        "alpha", "min_support", "include_customer", "output_dir", "format", "before_era", "after_era",
        "paths", "lenient", "reproducible", "csv_columns"};
    for (const auto& [key, _] : doc.items()) {
        if (!known.contains(key)) {
            fail(ErrorKind::InvalidConfig, "unknown analysis config key '" + key + "'");
        }
    }
    try {
        if (doc.contains("before_log")) before_log_path = resolve(base_dir, doc["before_log"].get<std::string>());
        if (doc.contains("after_log")) after_log_path = resolve(base_dir, doc["after_log"].get<std::string>());
        if (doc.contains("classification")) classification_path = resolve(base_dir, doc["classification"].get<std::string>());
        if (doc.contains("automated_task")) automated_task = doc["automated_task"].get<std::string>();
        if (doc.contains("automated_task_before")) automated_task_before = doc["automated_task_before"].get<std::string>();
        if (doc.contains("kappa")) {
            if (doc["kappa"].is_null()) {
                kappa.reset();
            } else {
                kappa = doc["kappa"].get<double>();
            }
        }
        if (doc.contains("alpha")) alpha = doc["alpha"].get<double>();
        if (doc.contains("min_support")) min_support = doc["min_support"].get<double>();
        if (doc.contains("include_customer")) include_customer = doc["include_customer"].get<bool>();
        if (doc.contains("output_dir")) output_dir = resolve(base_dir, doc["output_dir"].get<std::string>());
        if (doc.contains("format")) {
            auto f = parse_output_format(doc["format"].get<std::string>());
            if (!f) {
                fail(ErrorKind::InvalidConfig, "format must be 'json' or 'csv'");
            }
            format = *f;
        }
        if (doc.contains("before_era")) before_era = doc["before_era"].get<std::string>();
        if (doc.contains("after_era")) after_era = doc["after_era"].get<std::string>();
        if (doc.contains("paths")) {
            const auto& p = doc["paths"];
            if (p.contains("before")) before_paths = parse_path_specs(p["before"], "paths.before");
            if (p.contains("after")) after_paths = parse_path_specs(p["after"], "paths.after");
        }
        if (doc.contains("lenient")) lenient = doc["lenient"].get<bool>();
        if (doc.contains("reproducible")) reproducible = doc["reproducible"].get<bool>();
        if (doc.contains("csv_columns")) {
            const auto& c = doc["csv_columns"];
            csv_columns.case_id = c.value("case_id", csv_columns.case_id);
            csv_columns.activity = c.value("activity", csv_columns.activity);
            csv_columns.timestamp = c.value("timestamp", csv_columns.timestamp);
            csv_columns.resource = c.value("resource", csv_columns.resource);
            csv_columns.lifecycle = c.value("lifecycle", csv_columns.lifecycle);
        }
    } catch (const json::exception& e) {
        fail(ErrorKind::InvalidConfig, std::string("analysis config has a field of the wrong type: ") + e.what());
    }
}

std::string AnalysisConfig::to_json_text() const
{
    json doc;
    doc["before_log"] = before_log_path.string();
    doc["after_log"] = after_log_path.string();
    doc["classification"] = classification_path.string();
    doc["automated_task"] = automated_task;
    doc["automated_task_before"] = automated_task_before;
    doc["kappa"] = kappa ? json(*kappa) : json(nullptr);
    doc["alpha"] = alpha;
    doc["min_support"] = min_support;
    doc["include_customer"] = include_customer;
    doc["output_dir"] = output_dir.string();
    doc["format"] = std::string(to_string(format));
    doc["before_era"] = before_era;
    doc["after_era"] = after_era;
    doc["paths"] = {{"before", path_specs_json(before_paths)}, {"after", path_specs_json(after_paths)}};
    doc["lenient"] = lenient;
    doc["reproducible"] = reproducible;
    doc["csv_columns"] = {{"case_id", csv_columns.case_id},     {"activity", csv_columns.activity},
                          {"timestamp", csv_columns.timestamp}, {"resource", csv_columns.resource},
                          {"lifecycle", csv_columns.lifecycle}};
    return doc.dump(2) + "\n";
}

AnalysisConfig load_analysis_config(const std::filesystem::path& path)
{
    std::ifstream in(path);
    if (!in) {
        fail(ErrorKind::InvalidConfig, "cannot open analysis config " + path.string());
    }
    std::stringstream ss;
    ss << in.rdbuf();
    AnalysisConfig config;
    config.merge_json(ss.str(), path.parent_path());
    return config;
}

namespace {

/// Mean attributed seconds of the task's occurrences on the given traces.
std::optional<double> task_mean(std::span<const Trace* const> traces, const std::string& task)
{
    std::int64_t total = 0;
    std::size_t n = 0;
    for (const Trace* t : traces) {
        const auto micros = attribute_micros(*t);
        const auto events = t->events();
        for (std::size_t i = 0; i < events.size(); ++i) {
            if (events[i].activity == task && events[i].lifecycle != Lifecycle::start &&
                events[i].lifecycle != Lifecycle::schedule) {
                total += micros[i];
                ++n;
            }
        }
    }
    if (n == 0) {
        return std::nullopt;
    }
    return static_cast<double>(total) / 1e6 / static_cast<double>(n);
}

std::vector<const Trace*> all_traces(const EventLog& log)
{
    std::vector<const Trace*> out;
    for (const auto& t : log.traces()) {
        out.push_back(&t);
    }
    return out;
}

struct KappaChoice {
    double value = 0.0;
    std::string source;
};

KappaChoice choose_kappa(const AnalysisConfig& config, const EventLog& before, const EventLog& after,
                         const PathSpec& before_spec, const PathSpec& after_spec)
{
    if (config.kappa) {
        return {*config.kappa, "config"};
    }
    const std::string& task_after = config.automated_task;
    const std::string& task_before = config.automated_task_before.empty() ? task_after : config.automated_task_before;

    auto on_before = traces_on_path(before, before_spec);
    auto on_after = traces_on_path(after, after_spec);
    auto mb = task_mean(on_before, task_before);
    auto ma = task_mean(on_after, task_after);
    if (mb && ma && *mb > 0.0) {
        return {kappa_from_task(*mb, *ma), "task-path"};
    }
    mb = task_mean(all_traces(before), task_before);
    ma = task_mean(all_traces(after), task_after);
    if (mb && ma && *mb > 0.0) {
        return {kappa_from_task(*mb, *ma), "task-log"};
    }
    fail(ErrorKind::UnknownTask, "automated task '" + task_before + "' / '" + task_after +
                                     "' has no timed occurrences in both logs; supply kappa explicitly");
}

/// Distinct activities of the most frequent variant, in first-occurrence order.
std::vector<std::string> main_variant_activities(std::span<const Trace* const> traces)
{
    std::map<std::vector<std::string>, std::size_t> counts;
    for (const Trace* t : traces) {
        std::vector<std::string> seq;
        for (const auto& e : t->events()) {
            seq.push_back(e.activity);
        }
        ++counts[seq];
    }
    const std::vector<std::string>* best = nullptr;
    std::size_t best_count = 0;
    for (const auto& [seq, c] : counts) {
        if (c > best_count) {
            best = &seq;
            best_count = c;
        }
    }
    std::vector<std::string> activities;
    if (best != nullptr) {
        for (const auto& a : *best) {
            if (std::find(activities.begin(), activities.end(), a) == activities.end()) {
                activities.push_back(a);
            }
        }
    }
    return activities;
}

std::optional<double> full_delta_p(double tau_n, double tau_a, const LabourComposition& before,
                                   const LabourComposition& after, double alpha)
{
    if (!after.automated || !after.substitution_rate || !(before.low_skilled > 0.0) ||
        !(before.high_skilled > 0.0)) {
        return std::nullopt;
    }
    ProductionInputs in{before.low_skilled, after.low_skilled, before.high_skilled, after.high_skilled,
                        *after.automated,   *after.substitution_rate, alpha};
    try {
        return delta_p_full(tau_n, tau_a, in);
    } catch (const Error&) {
        return std::nullopt;
    }
}

void progress(const AnalysisConfig& config, const std::string& message)
{
    if (config.progress) {
        config.progress(message);
    }
}

std::string wall_clock_iso()
{
    const auto now = std::chrono::time_point_cast<std::chrono::microseconds>(std::chrono::system_clock::now());
    return format_iso8601(Timestamp{now.time_since_epoch()});
}

}  // namespace

Report build_report(const AnalysisConfig& config)
{
    tagged("config", [&] {
        config.validate();
        for (const auto* p : {&config.before_log_path, &config.after_log_path}) {
            if (!std::filesystem::exists(*p)) {
                fail(ErrorKind::InvalidConfig, "log file not found: " + p->string());
            }
        }
        if (!config.classification_path.empty() && !std::filesystem::exists(config.classification_path)) {
            fail(ErrorKind::InvalidConfig, "classification file not found: " + config.classification_path.string());
        }
        return 0;
    });

    Report report;
    const ActivityClassification classification = tagged("labour", [&] {
        return config.classification_path.empty() ? default_bpic_classification()
                                                  : ActivityClassification::load(config.classification_path);
    });
    if (config.classification_path.empty()) {
        report.notes.push_back("using the built-in BPIC activity classification (non-authoritative)");
    }

    auto read = [&](const std::filesystem::path& path, const std::string& era, std::vector<std::string>& warnings) {
        return tagged("ingest", [&] {
            ParseOptions opts;
            opts.era_label = era;
            opts.lenient = config.lenient;
            opts.on_warning = [&warnings, era](const std::string& w) { warnings.push_back(era + ": " + w); };
            return read_log_file(path, opts, config.csv_columns);
        });
    };
    progress(config, "reading " + config.before_log_path.string() + " and " + config.after_log_path.string());
    std::vector<std::string> before_warnings;
    std::vector<std::string> after_warnings;
    auto pending = std::async(std::launch::async, read, std::cref(config.before_log_path),
                              std::cref(config.before_era), std::ref(before_warnings));
    const EventLog after = read(config.after_log_path, config.after_era, after_warnings);
    const EventLog before = pending.get();
    report.notes.insert(report.notes.end(), before_warnings.begin(), before_warnings.end());
    report.notes.insert(report.notes.end(), after_warnings.begin(), after_warnings.end());
    progress(config, config.before_era + ": " + std::to_string(before.size()) + " traces, " +
                         std::to_string(before.event_count()) + " events; " + config.after_era + ": " +
                         std::to_string(after.size()) + " traces, " + std::to_string(after.event_count()) +
                         " events");

    tagged("discovery", [&] {
        report.before_paths = config.before_paths.empty()
                                  ? extract_terminal_paths(build_dfg(before), config.min_support)
                                  : config.before_paths;
        report.after_paths = config.after_paths.empty() ? extract_terminal_paths(build_dfg(after), config.min_support)
                                                        : config.after_paths;
        check_path_specs(report.before_paths);
        check_path_specs(report.after_paths);
        for (auto* specs : {&report.before_paths, &report.after_paths}) {
            const EventLog& log = specs == &report.before_paths ? before : after;
            for (auto& s : *specs) {
                s.trace_count = traces_on_path(log, s).size();
                s.support = static_cast<double>(s.trace_count) / static_cast<double>(log.size());
            }
        }
        return 0;
    });

    std::vector<std::pair<const PathSpec*, const PathSpec*>> shared;
    for (const auto& b : report.before_paths) {
        auto it = std::find_if(report.after_paths.begin(), report.after_paths.end(),
                               [&](const PathSpec& a) { return a.name == b.name; });
        if (it == report.after_paths.end()) {
            report.era_only_paths.push_back(b.name + " (" + config.before_era + " only)");
        } else {
            shared.emplace_back(&b, &*it);
        }
    }
    for (const auto& a : report.after_paths) {
        auto it = std::find_if(report.before_paths.begin(), report.before_paths.end(),
                               [&](const PathSpec& b) { return a.name == b.name; });
        if (it == report.before_paths.end()) {
            report.era_only_paths.push_back(a.name + " (" + config.after_era + " only)");
        }
    }

    tagged("discovery", [&] {
        for (const auto& s : report.before_paths) {
            if (s.trace_count > 0) {
                report.durations.push_back({config.before_era, s, path_durations(before, s, classification)});
            }
        }
        for (const auto& s : report.after_paths) {
            if (s.trace_count > 0) {
                report.durations.push_back({config.after_era, s, path_durations(after, s, classification)});
            }
        }
        return 0;
    });

    std::vector<CustomerVariant> variants;
    if (config.include_customer) {
        variants.push_back(CustomerVariant::with_customer);
    }
    variants.push_back(CustomerVariant::without_customer);

    for (const auto& [bspec, aspec] : shared) {
        const PathDurations dn = tagged("discovery", [&] { return path_durations(before, *bspec, classification); });
        const PathDurations da = tagged("discovery", [&] { return path_durations(after, *aspec, classification); });
        const KappaChoice kappa = tagged("productivity", [&] { return choose_kappa(config, before, after, *bspec, *aspec); });

        for (CustomerVariant v : variants) {
            const bool with = v == CustomerVariant::with_customer;
            LabourRow lr;
            lr.variant = v;
            tagged("labour", [&] {
                lr.before = aggregate_labour(before, *bspec, classification, with);
                lr.after = aggregate_labour(after, *aspec, classification, with);
                lr.before.path = lr.after.path = bspec->name;
                try {
                    const Displacement d = displacement(lr.before, lr.after);
                    lr.after.substitution_rate = d.substitution_rate;
                    lr.after.redundancy_share = d.redundancy_share;
                    if (d.redundancy_share < 0.0) {
                        lr.note = "negative R and A: the automated era needs additional low-skilled hours";
                    }
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::ZeroAutomatedHours && e.kind() != ErrorKind::ZeroBaselineLabour) {
                        throw;
                    }
                    lr.note = std::string("A and R undefined: ") + e.what();
                }
                return 0;
            });

            MetricsRow mr;
            mr.variant = v;
            mr.alpha = config.alpha;
            mr.kappa_source = kappa.source;
            tagged("productivity", [&] {
                const double tau_n = with ? dn.mean_total_seconds : dn.mean_firm_seconds;
                const double tau_a = with ? da.mean_total_seconds : da.mean_firm_seconds;
                mr.metrics = compute_path_metrics(bspec->name, tau_n, tau_a, kappa.value);
                mr.delta_p_full = full_delta_p(tau_n, tau_a, lr.before, lr.after, config.alpha);
                return 0;
            });
            report.metrics.push_back(std::move(mr));
            report.labour.push_back(std::move(lr));
        }
    }

    progress(config, "estimating queue parameters");
    tagged("queue", [&] {
        const std::string& task_before =
            config.automated_task_before.empty() ? config.automated_task : config.automated_task_before;
        for (const auto& spec : report.before_paths) {
            const auto traces = traces_on_path(before, spec);
            if (traces.empty()) {
                continue;
            }
            const auto activities = main_variant_activities(traces);

            QueueNetwork net;
            net.label = spec.name + "@" + config.before_era;
            std::vector<QueueParamRow> rows;
            for (const auto& activity : activities) {
                const auto kind = station_kind_for(classification.classify(activity));
                if (!kind) {
                    continue;
                }
                try {
                    QueueParamRow row;
                    row.path = spec.name;
                    row.station = activity;
                    row.kind = *kind;
                    row.estimate = estimate_queue_params(before, activity, classification);
                    net.stations.push_back({activity, *kind, row.estimate.lambda, row.estimate.mu});
                    rows.push_back(std::move(row));
                } catch (const Error& e) {
                    if (e.kind() != ErrorKind::InsufficientObservations) {
                        throw;
                    }
                    report.notes.push_back("path " + spec.name + ": station '" + activity + "' skipped: " + e.what());
                }
            }
            if (net.stations.empty()) {
                continue;
            }
            const bool has_task = !task_before.empty() && net.find(task_before) != nullptr;
            if (!has_task) {
                report.notes.push_back("path " + spec.name + ": automated task not on the main variant; "
                                       "factor-derived rates rescale existing stations only");
            }
            auto intervene = [&](const InterventionFactors& f) {
                return has_task ? apply_intervention(net, task_before, f) : rescale_network(net, f);
            };
            const QueueNetwork with = intervene(InterventionFactors::with_customer_time());
            const QueueNetwork without = intervene(InterventionFactors::without_customer_time());
            for (std::size_t i = 0; i < rows.size(); ++i) {
                rows[i].with_customer_factors = with.stations[i];
                rows[i].without_customer_factors = without.stations[i];
                report.queue_params.push_back(std::move(rows[i]));
            }
        }
        return 0;
    });

    Provenance& prov = report.provenance;
    prov.version = BPPROD_VERSION;
    prov.config_json = config.to_json_text();
    auto digest = [](const std::string& role, const std::filesystem::path& path, const EventLog& log) {
        return LogDigest{role, path.string(), sha256_file(path), log.size(), log.event_count()};
    };
    prov.logs.push_back(digest("before", config.before_log_path, before));
    prov.logs.push_back(digest("after", config.after_log_path, after));
    if (!config.classification_path.empty()) {
        prov.logs.push_back(LogDigest{"classification", config.classification_path.string(),
                                      sha256_file(config.classification_path), 0, 0});
    }
    if (config.reproducible) {
        prov.generated_at = format_iso8601(std::max(before.latest_timestamp(), after.latest_timestamp()));
        prov.time_source = "log-content";
    } else {
        prov.generated_at = wall_clock_iso();
        prov.time_source = "wall-clock";
    }
    return report;
}

std::vector<Table> report_tables(const Report& report, const AnalysisConfig& config)
{
    std::vector<Table> tables;
    auto opt = [](const std::optional<double>& v) -> Cell { return v ? Cell(*v) : Cell(std::monostate{}); };
    auto count = [](std::size_t n) -> Cell { return static_cast<std::int64_t>(n); };

    Table paths{"main_paths", {"path", "era", "initial_activity", "final_activity", "trace_count", "support"}, {}, {}};
    for (const auto& s : report.before_paths) {
        paths.add_row({s.name, config.before_era, s.initial_activity, s.final_activity, count(s.trace_count), s.support});
    }
    for (const auto& s : report.after_paths) {
        paths.add_row({s.name, config.after_era, s.initial_activity, s.final_activity, count(s.trace_count), s.support});
    }
    tables.push_back(std::move(paths));

    Table durations{"path_durations", {"path", "era", "trace_count", "mean_total_seconds", "mean_firm_seconds"}, {}, {}};
    durations.meta["unit"] = "s";
    for (const auto& d : report.durations) {
        durations.add_row({d.spec.name, d.era, count(d.durations.trace_count), d.durations.mean_total_seconds,
                           d.durations.mean_firm_seconds});
    }
    tables.push_back(std::move(durations));

    for (CustomerVariant v : {CustomerVariant::with_customer, CustomerVariant::without_customer}) {
        if (v == CustomerVariant::with_customer && !config.include_customer) {
            continue;
        }
        const bool with = v == CustomerVariant::with_customer;
        Table t{with ? "metrics_with_customer" : "metrics_without_customer",
                {"path", "tau_n", "tau_a", "delta_p", "kappa", "psi", "gamma", "theta", "regime", "kappa_source",
                 "delta_p_full", "alpha"},
                {},
                {}};
        t.meta["alpha"] = format_number(config.alpha);
        t.meta["tau_unit"] = "s";
        for (const auto& m : report.metrics) {
            if (m.variant != v) {
                continue;
            }
            const auto& x = m.metrics;
            t.add_row({x.path, x.tau_n, x.tau_a, x.delta_p, x.kappa, x.psi, x.gamma, x.theta,
                       std::string(to_string(x.regime)), m.kappa_source, opt(m.delta_p_full), m.alpha});
        }
        tables.push_back(std::move(t));

        for (const auto& l : report.labour) {
            if (l.variant != v) {
                continue;
            }
            Table lt{"labour_path_" + l.before.path + (with ? "_with" : "_without"),
                     {"variable", "unit", config.before_era, config.after_era},
                     {},
                     {}};
            lt.meta["path"] = l.before.path;
            lt.meta["variant"] = std::string(to_string(v));
            if (!l.note.empty()) {
                lt.meta["note"] = l.note;
            }
            lt.add_row({std::string("H"), std::string("s"), l.before.high_skilled, l.after.high_skilled});
            lt.add_row({std::string("L"), std::string("s"), l.before.low_skilled, l.after.low_skilled});
            lt.add_row({std::string("X"), std::string("s"), opt(l.before.automated), opt(l.after.automated)});
            if (with) {
                lt.add_row({std::string("C"), std::string("s"), opt(l.before.customer), opt(l.after.customer)});
            }
            lt.add_row({std::string("A"), std::string("dimensionless"), std::monostate{}, opt(l.after.substitution_rate)});
            lt.add_row({std::string("R"), std::string("dimensionless"), std::monostate{}, opt(l.after.redundancy_share)});
            tables.push_back(std::move(lt));
        }
    }

    Table q{"queue_parameters",
            {"path", "station", "kind", "observations", "lambda", "mu", "lambda_with_customer", "mu_with_customer",
             "kind_with_customer", "lambda_without_customer", "mu_without_customer", "kind_without_customer"},
            {},
            {}};
    q.meta["unit"] = "customer/s";
    q.meta["era"] = config.before_era;
    for (const auto& r : report.queue_params) {
        auto lam = [](const std::optional<QueueSystem>& s) -> Cell { return s ? Cell(s->lambda) : Cell(std::monostate{}); };
        auto mu = [](const std::optional<QueueSystem>& s) -> Cell { return s ? Cell(s->mu) : Cell(std::monostate{}); };
        auto kind = [](const std::optional<QueueSystem>& s) -> Cell {
            return s ? Cell(std::string(to_string(s->kind))) : Cell(std::monostate{});
        };
        q.add_row({r.path, r.station, std::string(to_string(r.kind)), count(r.estimate.observations), r.estimate.lambda,
                   r.estimate.mu, lam(r.with_customer_factors), mu(r.with_customer_factors), kind(r.with_customer_factors),
                   lam(r.without_customer_factors), mu(r.without_customer_factors), kind(r.without_customer_factors)});
    }
    tables.push_back(std::move(q));
    return tables;
}

namespace {

std::string provenance_json(const Report& report)
{
    nlohmann::ordered_json doc;
    const Provenance& p = report.provenance;
    doc["tool"] = p.tool;
    doc["version"] = p.version;
    doc["generated_at"] = p.generated_at;
    doc["time_source"] = p.time_source;
    doc["config"] = nlohmann::ordered_json::parse(p.config_json);
    // Where results went is not an input; leaving it out keeps reruns into another directory identical.
    doc["config"].erase("output_dir");
    doc["inputs"] = nlohmann::ordered_json::array();
    for (const auto& l : p.logs) {
        doc["inputs"].push_back(
            {{"role", l.role}, {"path", l.path}, {"sha256", l.sha256}, {"traces", l.traces}, {"events", l.events}});
    }
    doc["era_only_paths"] = report.era_only_paths;
    doc["notes"] = report.notes;
    return doc.dump(2) + "\n";
}

}  // namespace

std::vector<std::filesystem::path> write_report(const Report& report, const AnalysisConfig& config)
{
    return tagged("report", [&] {
        std::vector<std::filesystem::path> written;
        const std::string ext = config.format == OutputFormat::json ? ".json" : ".csv";
        for (const auto& t : report_tables(report, config)) {
            std::ostringstream out;
            if (config.format == OutputFormat::json) {
                write_table_json(t, out);
            } else {
                write_table_csv(t, out);
            }
            const auto path = config.output_dir / (t.name + ext);
            write_text_file(path, out.str());
            written.push_back(path);
        }
        const auto prov = config.output_dir / "provenance.json";
        write_text_file(prov, provenance_json(report));
        written.push_back(prov);
        return written;
    });
}

Report run_analysis(const AnalysisConfig& config)
{
    Report report = build_report(config);
    write_report(report, config);
    return report;
}

}  // namespace bpprod
