// bpprod: before/after productivity analysis of business-process event logs.
//
//   bpprod analyze  --config run.json [--before a.xes --after b.xes ...]
//   bpprod simulate --scenario scenario.json [-o out]
//   bpprod discover --log log.xes [-o out]
//   bpprod validate --log log.xes [--json]
//
// Results go to files (or stdout for validate); progress goes to stderr.

#include "bpprod/discovery.hpp"
#include "bpprod/error.hpp"
#include "bpprod/event_log.hpp"
#include "bpprod/report.hpp"
#include "bpprod/table.hpp"

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <iostream>
#include <optional>
#include <sstream>

namespace {

constexpr int kExitOk = 0;
constexpr int kExitValidation = 2;
constexpr int kExitData = 3;
constexpr int kExitInternal = 4;

constexpr const char* kOutputEnv = "BPPROD_OUTPUT_DIR";
constexpr const char* kFallbackOutput = "bpprod_out";

bool g_quiet = false;

void progress(const std::string& message)
{
    if (!g_quiet) {
        std::cerr << "[bpprod] " << message << "\n";
    }
}

std::filesystem::path env_output_dir()
{
    const char* v = std::getenv(kOutputEnv);
    return (v != nullptr && *v != '\0') ? std::filesystem::path(v) : std::filesystem::path(kFallbackOutput);
}

int exit_code_for(bpprod::ErrorCategory category)
{
    switch (category) {
    case bpprod::ErrorCategory::validation: return kExitValidation;
    case bpprod::ErrorCategory::data: return kExitData;
    case bpprod::ErrorCategory::internal: return kExitInternal;
    }
    return kExitInternal;
}

struct AnalyzeFlags {
    std::filesystem::path config;
    std::filesystem::path before, after, classification, output_dir;
    std::string automated_task, automated_task_before, format, before_era, after_era;
    double kappa = 0.0, alpha = 0.0, min_support = 0.0;
    bool include_customer = true;
    bool lenient = false, reproducible = false;
};

struct AnalyzeOptions {
    CLI::Option* before = nullptr;
    CLI::Option* after = nullptr;
    CLI::Option* classification = nullptr;
    CLI::Option* output_dir = nullptr;
    CLI::Option* automated_task = nullptr;
    CLI::Option* automated_task_before = nullptr;
    CLI::Option* format = nullptr;
    CLI::Option* before_era = nullptr;
    CLI::Option* after_era = nullptr;
    CLI::Option* kappa = nullptr;
    CLI::Option* alpha = nullptr;
    CLI::Option* min_support = nullptr;
    CLI::Option* include_customer = nullptr;
    CLI::Option* lenient = nullptr;
    CLI::Option* reproducible = nullptr;
};

// Flags given on the command line win over the config file, which wins over defaults.
bpprod::AnalysisConfig resolve_analysis(const AnalyzeFlags& f, const AnalyzeOptions& o)
{
    bpprod::AnalysisConfig cfg;
    bool output_from_config = false;
    if (!f.config.empty()) {
        cfg = bpprod::load_analysis_config(f.config);
        output_from_config = !cfg.output_dir.empty();
    }
    auto given = [](const CLI::Option* opt) { return opt->count() > 0; };
    if (given(o.before)) cfg.before_log_path = f.before;
    if (given(o.after)) cfg.after_log_path = f.after;
    if (given(o.classification)) cfg.classification_path = f.classification;
    if (given(o.automated_task)) cfg.automated_task = f.automated_task;
    if (given(o.automated_task_before)) cfg.automated_task_before = f.automated_task_before;
    if (given(o.before_era)) cfg.before_era = f.before_era;
    if (given(o.after_era)) cfg.after_era = f.after_era;
    if (given(o.kappa)) cfg.kappa = f.kappa;
    if (given(o.alpha)) cfg.alpha = f.alpha;
    if (given(o.min_support)) cfg.min_support = f.min_support;
    if (given(o.include_customer)) cfg.include_customer = f.include_customer;
    if (given(o.lenient)) cfg.lenient = f.lenient;
    if (given(o.reproducible)) cfg.reproducible = f.reproducible;
    if (given(o.format)) {
        const auto fmt = bpprod::parse_output_format(f.format);
        if (!fmt) {
            bpprod::fail(bpprod::ErrorKind::InvalidConfig, "--format must be json or csv");
        }
        cfg.format = *fmt;
    }
    if (given(o.output_dir)) {
        cfg.output_dir = f.output_dir;
    } else if (!output_from_config) {
        cfg.output_dir = env_output_dir();
    }
    cfg.progress = progress;
    return cfg;
}

int run_analyze(const AnalyzeFlags& f, const AnalyzeOptions& o)
{
    bpprod::AnalysisConfig cfg = resolve_analysis(f, o);
    cfg.validate();
    const bpprod::Report report = bpprod::build_report(cfg);
    progress("writing " + std::string(bpprod::to_string(cfg.format)) + " tables to " + cfg.output_dir.string());
    for (const auto& path : bpprod::write_report(report, cfg)) {
        std::cout << path.string() << "\n";
    }
    for (const auto& m : report.metrics) {
        progress("path " + m.metrics.path + " (" + std::string(bpprod::to_string(m.variant)) +
                 "): delta_p=" + bpprod::format_number(m.metrics.delta_p) + " psi=" +
                 bpprod::format_number(m.metrics.psi));
    }
    for (const auto& n : report.notes) {
        progress("note: " + n);
    }
    return kExitOk;
}

struct SimulateFlags {
    std::filesystem::path scenario, output_dir;
    std::uint64_t seed = 0;
    std::size_t customers = 0;
};

int run_simulate(const SimulateFlags& f, const CLI::Option* seed, const CLI::Option* customers,
                 const CLI::Option* output_dir)
{
    const std::filesystem::path out = output_dir->count() > 0 ? f.output_dir : env_output_dir();
    progress("simulating " + f.scenario.string());
    const auto run = bpprod::run_simulation(f.scenario, out,
                                            seed->count() > 0 ? std::optional<std::uint64_t>(f.seed) : std::nullopt,
                                            customers->count() > 0 ? std::optional<std::size_t>(f.customers)
                                                                   : std::nullopt);
    for (const auto* r : {&run.baseline, &run.intervened}) {
        for (const auto& w : r->warnings) {
            progress("warning (" + r->label + "): " + w);
        }
    }
    progress("tau_n=" + bpprod::format_number(run.baseline.total_mean_sojourn) +
             " tau_a=" + bpprod::format_number(run.intervened.total_mean_sojourn) +
             " delta_p=" + bpprod::format_number(run.delta_p));
    std::cout << (out / "simulation_summary.json").string() << "\n";
    return kExitOk;
}

struct LogFlags {
    std::filesystem::path log, output_dir;
    double min_support = bpprod::kDefaultMinSupport;
    bool lenient = false;
    bool json = false;
};

bpprod::EventLog read_for_cli(const LogFlags& f)
{
    bpprod::ParseOptions opts;
    opts.lenient = f.lenient;
    opts.on_warning = [](const std::string& w) { progress("warning: " + w); };
    progress("reading " + f.log.string());
    bpprod::EventLog log = bpprod::read_log_file(f.log, opts);
    progress(std::to_string(log.size()) + " traces, " + std::to_string(log.event_count()) + " events");
    return log;
}

int run_discover(const LogFlags& f, const CLI::Option* output_dir)
{
    const std::filesystem::path out = output_dir->count() > 0 ? f.output_dir : env_output_dir();
    const bpprod::EventLog log = read_for_cli(f);
    const auto dfg = bpprod::build_dfg(log);
    const auto paths = bpprod::extract_terminal_paths(dfg, f.min_support);

    bpprod::write_text_file(out / "dfg.json", bpprod::dfg_to_json(dfg));
    bpprod::write_text_file(out / "dfg.dot", bpprod::dfg_to_dot(dfg));

    bpprod::Table t;
    t.name = "main_paths";
    t.columns = {"path", "initial_activity", "final_activity", "trace_count", "support"};
    for (const auto& p : paths) {
        t.add_row({p.name, p.initial_activity, p.final_activity, static_cast<std::int64_t>(p.trace_count), p.support});
    }
    std::ostringstream table;
    bpprod::write_table_json(t, table);
    bpprod::write_text_file(out / "main_paths.json", table.str());

    for (const char* name : {"dfg.json", "dfg.dot", "main_paths.json"}) {
        std::cout << (out / name).string() << "\n";
    }
    return kExitOk;
}

int run_validate(const LogFlags& f)
{
    const bpprod::EventLog log = read_for_cli(f);
    const bpprod::ValidationReport report = bpprod::validate_log(log);
    if (f.json) {
        nlohmann::ordered_json doc;
        doc["file"] = f.log.string();
        doc["traces"] = log.size();
        doc["events"] = log.event_count();
        doc["clean"] = report.clean();
        doc["findings"] = nlohmann::ordered_json::array();
        for (const auto& x : report.findings) {
            doc["findings"].push_back(
                {{"kind", std::string(bpprod::to_string(x.kind))}, {"case_id", x.case_id}, {"detail", x.detail}});
        }
        std::cout << doc.dump(2) << "\n";
    } else {
        for (const auto& x : report.findings) {
            std::cout << bpprod::to_string(x.kind) << "\t" << x.case_id << "\t" << x.detail << "\n";
        }
        progress(report.clean() ? "no findings" : std::to_string(report.findings.size()) + " finding(s)");
    }
    return report.clean() ? kExitOk : kExitData;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Productivity analysis of business-process event logs before and after automation"};
    app.set_version_flag("--version", std::string(BPPROD_VERSION));
    app.require_subcommand(1);
    app.fallthrough();
    app.add_flag("-q,--quiet", g_quiet, "Suppress progress messages on stderr");

    AnalyzeFlags af;
    AnalyzeOptions ao;
    auto* analyze = app.add_subcommand("analyze", "Compare a before and an after log and write report tables");
    analyze->add_option("-c,--config", af.config, "Analysis config (JSON)")->check(CLI::ExistingFile);
    ao.before = analyze->add_option("--before", af.before, "Before-automation log (.xes/.csv, optionally .gz)");
    ao.after = analyze->add_option("--after", af.after, "After-automation log");
    ao.classification = analyze->add_option("--classification", af.classification, "Activity classification (JSON)");
    ao.automated_task = analyze->add_option("--automated-task", af.automated_task, "Automated activity in the after log");
    ao.automated_task_before =
        analyze->add_option("--automated-task-before", af.automated_task_before, "Its manual counterpart in the before log");
    ao.kappa = analyze->add_option("--kappa", af.kappa, "Promised task-level improvement (skips estimation)");
    ao.alpha = analyze->add_option("--alpha", af.alpha, "Labour share in the production function, in (0,1)");
    ao.min_support = analyze->add_option("--min-support", af.min_support, "Minimum trace share of a terminal path");
    ao.include_customer = analyze->add_flag("--include-customer,!--no-customer", af.include_customer,
                                            "Also report metrics with customer time");
    ao.output_dir = analyze->add_option("-o,--output-dir", af.output_dir, "Output directory");
    ao.format = analyze->add_option("--format", af.format, "json or csv");
    ao.before_era = analyze->add_option("--before-era", af.before_era, "Label of the before era");
    ao.after_era = analyze->add_option("--after-era", af.after_era, "Label of the after era");
    ao.lenient = analyze->add_flag("--lenient", af.lenient, "Skip events missing required attributes");
    ao.reproducible = analyze->add_flag("--reproducible", af.reproducible, "Take provenance time from log content");

    SimulateFlags sf;
    auto* simulate = app.add_subcommand("simulate", "Simulate a baseline and an intervened tandem queue network");
    simulate->add_option("-s,--scenario", sf.scenario, "Scenario config (JSON)")->required()->check(CLI::ExistingFile);
    auto* sim_out = simulate->add_option("-o,--output-dir", sf.output_dir, "Output directory");
    auto* sim_seed = simulate->add_option("--seed", sf.seed, "Override the scenario seed");
    auto* sim_customers = simulate->add_option("--customers", sf.customers, "Override the number of customers")
                              ->check(CLI::PositiveNumber);
    bool sim_reproducible = false;
    simulate->add_flag("--reproducible", sim_reproducible, "Accepted for symmetry; simulation output is seed-determined");

    LogFlags df;
    auto* discover = app.add_subcommand("discover", "Export the directly-follows graph and terminal paths of a log");
    discover->add_option("-l,--log", df.log, "Event log")->required()->check(CLI::ExistingFile);
    auto* disc_out = discover->add_option("-o,--output-dir", df.output_dir, "Output directory");
    discover->add_option("--min-support", df.min_support, "Minimum trace share of a terminal path");
    discover->add_flag("--lenient", df.lenient, "Skip events missing required attributes");

    LogFlags vf;
    auto* validate = app.add_subcommand("validate", "Lint a log; exits 3 when there are findings");
    validate->add_option("-l,--log", vf.log, "Event log")->required()->check(CLI::ExistingFile);
    validate->add_flag("--lenient", vf.lenient, "Skip events missing required attributes");
    validate->add_flag("--json", vf.json, "Print findings as JSON");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitValidation;
    }

    try {
        if (analyze->parsed()) {
            return run_analyze(af, ao);
        }
        if (simulate->parsed()) {
            return run_simulate(sf, sim_seed, sim_customers, sim_out);
        }
        if (discover->parsed()) {
            return run_discover(df, disc_out);
        }
        return run_validate(vf);
    } catch (const bpprod::Error& e) {
        std::cerr << "error";
        if (!e.module().empty()) {
            std::cerr << " [" << e.module() << "]";
        }
        std::cerr << ": " << e.what() << "\n";
        return exit_code_for(e.category());
    } catch (const std::exception& e) {
        std::cerr << "internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}
