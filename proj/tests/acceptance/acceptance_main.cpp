// Acceptance runner: one PASS/FAIL line per criterion, exit 1 if any fails.

#include "bpprod/discovery.hpp"
#include "bpprod/event_log.hpp"
#include "bpprod/hash.hpp"
#include "bpprod/labour.hpp"
#include "bpprod/productivity.hpp"
#include "bpprod/queue.hpp"
#include "bpprod/report.hpp"
#include "fixtures/synthetic.hpp"
#include "support/oracles.hpp"
#include "support/reference_values.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <filesystem>
#include <functional>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace bpprod;
namespace fs = std::filesystem;
namespace fx = bpprod::fixtures;

namespace {

const fs::path kSource = BPPROD_SOURCE_DIR;

struct Outcome {
    bool pass = true;
    std::string detail;
};

class Detail {
public:
    void fail(const std::string& what)
    {
        if (failures_++ < 3) {
            out_ << (out_.tellp() > 0 ? "; " : "") << what;
        }
    }
    void note(const std::string& what) { notes_ << (notes_.tellp() > 0 ? ", " : "") << what; }
    Outcome done() const
    {
        if (failures_ == 0) {
            return {true, notes_.str()};
        }
        return {false, std::to_string(failures_) + " failure(s): " + out_.str()};
    }

private:
    std::ostringstream out_;
    std::ostringstream notes_;
    int failures_ = 0;
};

std::string fmt(const char* f, double a, double b = 0.0, double c = 0.0)
{
    char buf[160];
    std::snprintf(buf, sizeof buf, f, a, b, c);
    return buf;
}

double seconds_since(std::chrono::steady_clock::time_point t0)
{
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

Outcome labour_reproduction()
{
    Detail d;
    double worst = 0.0;
    for (const auto& row : reference::kLabour) {
        const Displacement got = displacement(row.l_before, row.l_after, row.x_after);
        const double ea = std::abs(got.substitution_rate - row.a);
        const double er = std::abs(got.redundancy_share - row.r);
        worst = std::max({worst, ea, er});
        if (ea > 0.005 || er > 0.005) {
            d.fail(std::string(row.path) + (row.with_customer ? "-with" : "-without") +
                   fmt(" A=%.4f R=%.4f", got.substitution_rate, got.redundancy_share));
        }
    }
    d.note(fmt("6 rows, worst deviation %.4f", worst));
    return d.done();
}

Outcome metrics_consistency()
{
    Detail d;
    double worst_gamma = 0.0;
    double worst_theta = 0.0;
    for (const auto& row : reference::kMetrics) {
        const std::string tag = std::string(row.path) + (row.with_customer ? "-with" : "-without");
        const PsiResult r = psi_from_delta_p(row.delta_p);
        const double gamma = row.kappa * row.psi;
        const double theta = r.regime == Regime::improved ? row.psi - row.gamma : row.psi + row.gamma;
        worst_gamma = std::max(worst_gamma, std::abs(gamma - row.gamma));
        worst_theta = std::max(worst_theta, std::abs(theta - row.theta));
        if (std::abs(gamma - row.gamma) > 0.05) {
            d.fail(tag + fmt(" gamma %.4f vs %.4f", gamma, row.gamma));
        }
        if (std::abs(theta - row.theta) > 0.05) {
            d.fail(tag + fmt(" theta %.4f vs %.4f", theta, row.theta));
        }
        const double psi_tol = row.path == "A" && row.with_customer ? 0.35 : 0.01;
        if (std::abs(r.psi - row.psi) > psi_tol) {
            d.fail(tag + fmt(" psi %.4f vs %.4f", r.psi, row.psi));
        }
    }
    d.note(fmt("worst gamma gap %.3f, worst theta gap %.3f", worst_gamma, worst_theta));
    return d.done();
}

Outcome collapse_property()
{
    Detail d;
    std::mt19937_64 rng(8);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    auto log_uniform = [&](double lo, double hi) { return std::pow(10.0, lo + (hi - lo) * u(rng)); };
    double worst = 0.0;
    for (int i = 0; i < 1000; ++i) {
        const double ln = log_uniform(3.0, 6.0);
        const double la = ln * log_uniform(-0.7, 0.7);
        const double h = log_uniform(3.0, 6.0);
        const double xa = ln * log_uniform(-1.5, 0.5);
        const double tn = log_uniform(2.0, 6.0);
        const double ta = tn / log_uniform(-2.0, 2.0);
        for (int a = 1; a <= 9; ++a) {
            const double err = std::abs(delta_p_full(tn, ta, closed_inputs(ln, la, h, xa, a / 10.0)) - tn / ta);
            worst = std::max(worst, err);
            if (err > 1e-12) {
                d.fail(fmt("instance %.0f alpha %.1f error %.3g", i, a / 10.0, err));
            }
        }
    }
    d.note(fmt("9000 evaluations, worst |error| %.3g", worst));
    return d.done();
}

Outcome round_trip_property()
{
    Detail d;
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> logt(0.0, 6.0);
    std::uniform_real_distribution<double> logdp(-2.0, 2.0);
    double worst = 0.0;
    for (int i = 0; i < 100000; ++i) {
        const double tn = std::pow(10.0, logt(rng));
        const double ta = tn / std::pow(10.0, logdp(rng));
        const PsiResult r = psi_from_delta_p(delta_p_from_times(tn, ta));
        const double rel = std::abs(tau_a_from_psi(tn, r.psi, r.regime) - ta) / ta;
        worst = std::max(worst, rel);
        if (rel > 1e-12) {
            d.fail(fmt("tau_n %.6g tau_a %.6g rel %.3g", tn, ta, rel));
        }
    }
    d.note(fmt("1e5 pairs, worst relative error %.3g", worst));
    return d.done();
}

Outcome queue_closed_form()
{
    Detail d;
    double worst_sojourn = 0.0;
    double worst_little = 0.0;
    for (int k = 1; k <= 9; ++k) {
        const double lambda = k / 10.0;
        const double mu = 1.0;
        QueueNetwork net;
        net.label = "mm1";
        net.stations.push_back({"server", StationKind::low_skilled, lambda, mu});
        SimulationOptions opt;
        opt.customers = 1000000;
        const SimulationResult res = simulate(net, opt);
        const StationStats& s = res.per_station.front();
        const double expected = analytic_mm1(lambda, mu).mean_sojourn;
        const double e_sojourn = std::abs(s.mean_sojourn / expected - 1.0);
        const double e_little = std::abs(s.mean_in_system / (s.throughput * s.mean_sojourn) - 1.0);
        worst_sojourn = std::max(worst_sojourn, e_sojourn);
        worst_little = std::max(worst_little, e_little);
        if (e_sojourn > 0.02) {
            d.fail(fmt("rho %.1f sojourn %.4f vs %.4f", lambda, s.mean_sojourn, expected));
        }
        if (e_little > 0.03) {
            d.fail(fmt("rho %.1f Little's law off by %.3g", lambda, e_little));
        }
    }
    d.note(fmt("worst sojourn error %.2f%%, worst L/(lambda W) error %.2g%%", 100 * worst_sojourn,
               100 * worst_little));
    return d.done();
}

std::vector<std::vector<fx::RawTrace>> small_fixture_logs()
{
    std::vector<std::vector<fx::RawTrace>> logs;
    for (std::uint64_t seed = 1; seed <= 8; ++seed) {
        fx::RandomLogSpec spec;
        spec.seed = 100 + seed;
        spec.traces = 12 * seed;
        spec.min_events = 1;
        spec.alphabet = 3 + seed % 4;
        logs.push_back(fx::random_log(spec));
    }
    logs.push_back(fx::synthetic_bpic(fx::Era::before_2012, 100, 2012));
    logs.push_back(fx::synthetic_bpic(fx::Era::after_2017, 100, 2017));
    return logs;
}

Outcome discovery_oracle()
{
    Detail d;
    const auto logs = small_fixture_logs();
    std::size_t compared = 0;
    for (std::size_t n = 0; n < logs.size(); ++n) {
        const std::string doc = fx::write_xes(logs[n]);
        std::istringstream in(doc);
        const EventLog log = parse_xes(in);
        auto dom = oracle::read_xes_dom(doc);
        oracle::sort_by_time(dom);
        const auto dfg = build_dfg(log);
        const auto brute = oracle::brute_force_dfg(dom);
        const std::string tag = "log " + std::to_string(n);
        if (dfg.edges != brute.edges) {
            d.fail(tag + " edge counts differ");
        }
        if (dfg.terminal_pairs != brute.terminal) {
            d.fail(tag + " terminal-path counts differ");
        }
        for (double support : {0.0, kDefaultMinSupport}) {
            const auto paths = extract_terminal_paths(dfg, support);
            const auto expected = oracle::brute_force_paths(brute, dom.size(), support);
            bool same = paths.size() == expected.size();
            for (std::size_t i = 0; same && i < paths.size(); ++i) {
                same = paths[i].initial_activity == expected[i].first.first &&
                       paths[i].final_activity == expected[i].first.second &&
                       paths[i].trace_count == expected[i].second;
            }
            if (!same) {
                d.fail(tag + " main paths differ");
                continue;
            }
            for (std::size_t t = 0; t < dom.size(); ++t) {
                std::optional<std::string> want;
                for (std::size_t i = 0; i < expected.size() && !want; ++i) {
                    if (expected[i].first.first == dom[t].events.front().activity &&
                        expected[i].first.second == dom[t].events.back().activity) {
                        want = path_name(i);
                    }
                }
                if (classify_trace(log.traces()[t], paths) != want) {
                    d.fail(tag + " trace " + std::to_string(t) + " classified differently");
                }
                ++compared;
            }
        }
    }
    d.note(std::to_string(logs.size()) + " logs, " + std::to_string(compared) + " classifications");
    return d.done();
}

AnalysisConfig synthetic_config(const fs::path& out)
{
    AnalysisConfig c = load_analysis_config(kSource / "config" / "synthetic_analysis.json");
    c.output_dir = out;
    return c;
}

Outcome no_change_baseline()
{
    Detail d;
    oracle::TempDir dir("bpprod_accept_same");
    AnalysisConfig c = synthetic_config(dir.path());
    c.before_log_path = c.after_log_path;
    c.automated_task_before.clear();
    const Report report = run_analysis(c);
    if (report.metrics.size() != 6) {
        d.fail("expected 6 metric rows, got " + std::to_string(report.metrics.size()));
    }
    for (const auto& m : report.metrics) {
        const PathMetrics& p = m.metrics;
        if (p.delta_p != 1.0 || p.psi != 0.0 || p.gamma != 0.0 || p.theta != 0.0) {
            d.fail("path " + p.path + fmt(" dp %.17g psi %.3g theta %.3g", p.delta_p, p.psi, p.theta));
        }
    }
    for (const auto& l : report.labour) {
        if (l.after.substitution_rate != 0.0 || l.after.redundancy_share != 0.0) {
            d.fail("path " + l.after.path + " A/R not zero");
        }
    }
    d.note(std::to_string(report.metrics.size()) + " metric rows, " + std::to_string(report.labour.size()) +
           " labour rows");
    return d.done();
}

Outcome desk_experiment()
{
    Detail d;
    oracle::TempDir dir("bpprod_accept_e2e");
    const auto t0 = std::chrono::steady_clock::now();
    const AnalysisConfig c = synthetic_config(dir.path());
    const Report report = run_analysis(c);
    const double elapsed = seconds_since(t0);
    if (elapsed >= 10.0) {
        d.fail(fmt("analyze took %.2f s", elapsed));
    }
    if (report.after_paths.size() != 3) {
        d.fail("after log has " + std::to_string(report.after_paths.size()) + " main paths");
    }
    std::map<std::string, std::pair<double, double>> dp;
    for (const auto& m : report.metrics) {
        auto& slot = dp[m.metrics.path];
        (m.variant == CustomerVariant::with_customer ? slot.first : slot.second) = m.metrics.delta_p;
    }
    for (const auto& [path, v] : dp) {
        if (!(v.first < 1.0 && v.second > 1.0)) {
            d.fail("path " + path + fmt(" with %.3f without %.3f", v.first, v.second));
        }
    }
    std::ostringstream s;
    for (const auto& [path, v] : dp) {
        s << path << " " << fmt("%.3f/%.3f", v.first, v.second) << " ";
    }
    d.note(fmt("%.2f s; ", elapsed) + "dp with/without: " + s.str());
    return d.done();
}

std::map<std::string, std::string> hash_tree(const fs::path& root)
{
    std::map<std::string, std::string> out;
    for (const auto& e : fs::recursive_directory_iterator(root)) {
        if (e.is_regular_file()) {
            out[fs::relative(e.path(), root).string()] = sha256_file(e.path());
        }
    }
    return out;
}

int run_cli(const std::string& cli, const std::string& args)
{
    const std::string cmd = "\"" + cli + "\" -q " + args + " > /dev/null";
    return std::system(cmd.c_str());
}

Outcome determinism(const std::string& cli)
{
    Detail d;
    oracle::TempDir a("bpprod_accept_det_a");
    oracle::TempDir b("bpprod_accept_det_b");
    const std::string config = (kSource / "config" / "synthetic_analysis.json").string();
    const std::string scenario = (kSource / "config" / "scenario_automated.json").string();
    std::size_t files = 0;
    if (cli.empty()) {
        // library fallback when no CLI path was given
        for (const auto& root : {a.path(), b.path()}) {
            AnalysisConfig c = synthetic_config(root / "analyze");
            write_report(build_report(c), c);
            run_simulation(scenario, root / "simulate", 7, 20000);
        }
    } else {
        for (const auto& root : {a.path(), b.path()}) {
            const std::string r = root.string();
            if (run_cli(cli, "analyze -c \"" + config + "\" -o \"" + r + "/analyze\" --reproducible") != 0 ||
                run_cli(cli, "simulate -s \"" + scenario + "\" -o \"" + r +
                                 "/simulate\" --seed 7 --customers 20000 --reproducible") != 0) {
                d.fail("CLI run failed in " + r);
                return d.done();
            }
        }
    }
    const auto ha = hash_tree(a.path());
    const auto hb = hash_tree(b.path());
    files = ha.size();
    if (ha.empty()) {
        d.fail("no output files");
    }
    if (ha != hb) {
        for (const auto& [name, h] : ha) {
            auto it = hb.find(name);
            if (it == hb.end() || it->second != h) {
                d.fail(name + " differs");
            }
        }
        if (ha.size() != hb.size()) {
            d.fail("file sets differ");
        }
    }
    d.note(std::to_string(files) + " files hashed" + (cli.empty() ? " (library)" : " (CLI)"));
    return d.done();
}

}  // namespace

int main(int argc, char** argv)
{
    std::string cli;
    for (int i = 1; i + 1 < argc; ++i) {
        if (std::string(argv[i]) == "--cli") {
            cli = argv[i + 1];
        }
    }

    struct Criterion {
        std::string name;
        std::function<Outcome()> run;
        double budget_seconds;  // 0: no limit
    };
    const std::vector<Criterion> criteria = {
        {"labour displacement reproduces published A and R", labour_reproduction, 1.0},
        {"published metric tables are internally consistent", metrics_consistency, 1.0},
        {"full production form collapses to the time ratio", collapse_property, 1.0},
        {"tau_a round-trips through psi", round_trip_property, 1.0},
        {"M/M/1 simulation matches the closed form", queue_closed_form, 60.0},
        {"discovery equals brute-force recomputation", discovery_oracle, 5.0},
        {"identical logs give the no-change baseline", no_change_baseline, 0.0},
        {"synthetic desk-scale experiment", desk_experiment, 0.0},
        {"reproducible runs are byte-identical", [&] { return determinism(cli); }, 0.0},
    };

    int failed = 0;
    for (std::size_t i = 0; i < criteria.size(); ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        Outcome o;
        try {
            o = criteria[i].run();
        } catch (const std::exception& e) {
            o = {false, std::string("exception: ") + e.what()};
        }
        const double elapsed = seconds_since(t0);
        if (o.pass && criteria[i].budget_seconds > 0.0 && elapsed > criteria[i].budget_seconds) {
            o = {false, fmt("over the %.0f s budget", criteria[i].budget_seconds)};
        }
        failed += o.pass ? 0 : 1;
        std::printf("%s %zu %s [%.2fs] %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].name.c_str(), elapsed,
                    o.detail.c_str());
        std::fflush(stdout);
    }
    std::printf("%d/%zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
