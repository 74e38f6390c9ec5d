#pragma once

#include "bpprod/classification.hpp"
#include "bpprod/discovery.hpp"
#include "bpprod/event_log.hpp"
#include "bpprod/labour.hpp"
#include "bpprod/productivity.hpp"
#include "bpprod/queue.hpp"
#include "bpprod/table.hpp"

#include <filesystem>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace bpprod {

enum class OutputFormat { json, csv };

std::string_view to_string(OutputFormat format);
std::optional<OutputFormat> parse_output_format(std::string_view text);

/// Settings for a before/after analysis. Loaded from a JSON file and/or CLI
/// flags (flag > file > default).
struct AnalysisConfig {
    std::filesystem::path before_log_path;
    std::filesystem::path after_log_path;
    /// Empty: use the built-in BPIC ruleset.
    std::filesystem::path classification_path;
    /// Name of the automated activity in the after log.
    std::string automated_task;
    /// Its manual counterpart in the before log; empty means the same name.
    std::string automated_task_before;
    /// Explicit kappa; when unset it is estimated from the automated task's means.
    std::optional<double> kappa;
    double alpha = kDefaultAlpha;
    double min_support = kDefaultMinSupport;
    /// Emit the with-customer-time variant alongside the customer-free one.
    bool include_customer = true;
    std::filesystem::path output_dir;
    OutputFormat format = OutputFormat::json;
    std::string before_era = "before";
    std::string after_era = "after";
    /// Explicit path specs; when empty they are extracted with min_support.
    std::vector<PathSpec> before_paths;
    std::vector<PathSpec> after_paths;
    bool lenient = false;
    /// Provenance time comes from log content instead of the wall clock.
    bool reproducible = false;
    CsvColumnMap csv_columns;
    /// Diagnostic sink for stage messages; not part of the serialized config.
    std::function<void(const std::string&)> progress;

    /// Range checks that need no file access. Throws InvalidConfig.
    void validate() const;

    /// Fields present in `text` override the current values. Relative paths are
    /// resolved against `base_dir`.
    void merge_json(std::string_view text, const std::filesystem::path& base_dir = {});
    std::string to_json_text() const;
};

AnalysisConfig load_analysis_config(const std::filesystem::path& path);

struct DurationRow {
    std::string era;
    PathSpec spec;
    PathDurations durations;
};

enum class CustomerVariant { with_customer, without_customer };

std::string_view to_string(CustomerVariant variant);

struct MetricsRow {
    CustomerVariant variant = CustomerVariant::without_customer;
    PathMetrics metrics;
    std::string kappa_source;
    /// Full production-function form with the measured labour inputs; unset
    /// when the inputs do not define it (no automated time, zero baselines).
    std::optional<double> delta_p_full;
    double alpha = kDefaultAlpha;
};

struct LabourRow {
    CustomerVariant variant = CustomerVariant::without_customer;
    LabourComposition before;
    LabourComposition after;
    std::string note;
};

struct QueueParamRow {
    std::string path;
    std::string station;
    StationKind kind = StationKind::low_skilled;
    QueueEstimate estimate;
    std::optional<QueueSystem> with_customer_factors;
    std::optional<QueueSystem> without_customer_factors;
};

struct LogDigest {
    std::string role;
    std::string path;
    std::string sha256;
    std::size_t traces = 0;
    std::size_t events = 0;
};

struct Provenance {
    std::string tool = "bpprod";
    std::string version;
    std::string config_json;
    std::vector<LogDigest> logs;
    std::string generated_at;
    std::string time_source;
};

struct Report {
    std::vector<PathSpec> before_paths;
    std::vector<PathSpec> after_paths;
    /// Path names found in only one era.
    std::vector<std::string> era_only_paths;
    std::vector<DurationRow> durations;
    std::vector<MetricsRow> metrics;
    std::vector<LabourRow> labour;
    std::vector<QueueParamRow> queue_params;
    std::vector<std::string> notes;
    Provenance provenance;
};

/// Computes the report without writing anything.
Report build_report(const AnalysisConfig& config);

/// Writes the table files and provenance.json; returns the written paths.
std::vector<std::filesystem::path> write_report(const Report& report, const AnalysisConfig& config);

/// build_report + write_report. Errors carry a module tag.
Report run_analysis(const AnalysisConfig& config);

std::vector<Table> report_tables(const Report& report, const AnalysisConfig& config);

/// Scenario for `simulate`: a baseline tandem network plus an optional intervention.
struct ScenarioConfig {
    QueueNetwork network;
    /// Empty: the intervened network equals the baseline.
    std::string automated_task;
    InterventionFactors factors;
    std::size_t customers = 100000;
    std::uint64_t seed = 1;
    double warmup_fraction = 0.1;
    bool emit_sojourn_csv = false;

    void validate() const;
    static ScenarioConfig from_json_text(std::string_view text);
    static ScenarioConfig load(const std::filesystem::path& path);
};

struct SimulationRun {
    SimulationResult baseline;
    SimulationResult intervened;
    QueueNetwork intervened_network;
    /// Mean sojourn ratio baseline / intervened.
    double delta_p = 1.0;
};

SimulationRun run_scenario(const ScenarioConfig& scenario);

/// Runs the scenario and writes baseline.json, intervened.json,
/// simulation_summary.json (and sojourn CSVs when requested) to `output_dir`.
SimulationRun run_simulation(const std::filesystem::path& scenario_path, const std::filesystem::path& output_dir,
                             std::optional<std::uint64_t> seed_override = std::nullopt,
                             std::optional<std::size_t> customers_override = std::nullopt);

std::string simulation_result_json(const SimulationResult& result, const QueueNetwork& network);

}  // namespace bpprod
