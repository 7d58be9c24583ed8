// Experiment runner: executes scenarios against the queue disciplines,
// writes packet traces, and produces population-statistics reports and
// two-run hypothesis-test comparisons.

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "aqmsim/report.hpp"
#include "aqmsim/scenario.hpp"
#include "aqmsim/topology.hpp"
#include "aqmsim/trace.hpp"

namespace fs = std::filesystem;
using namespace aqmsim;

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitRuntime = 3;

struct RunOptions {
    std::string scenario_file;
    std::string qdisc;
    double alpha = -1.0;
    double duration = -1.0;
    std::int64_t seed = -1;
    std::string out_dir;
    std::vector<std::string> sets;
};

Scenario load_scenario(const RunOptions& opt) {
    Scenario s;
    if (!opt.scenario_file.empty()) {
        std::ifstream in(opt.scenario_file);
        if (!in) throw std::runtime_error("cannot open scenario file " + opt.scenario_file);
        s = parse_scenario(in);
    }
    if (!opt.qdisc.empty()) s.qdisc = qdisc_kind_from_string(opt.qdisc);
    if (opt.alpha >= 0.0) s.lstfcodel.alpha = opt.alpha;
    if (opt.duration > 0.0) s.duration_s = opt.duration;
    if (opt.seed >= 0) {
        s.seed = static_cast<std::uint64_t>(opt.seed);
    } else if (const char* env = std::getenv("AQMSIM_SEED")) {
        s.seed = std::stoull(env);
    }
    for (const auto& kv : opt.sets) {
        auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error("--set expects key=value, got '" + kv + "'");
        apply_setting(s, kv.substr(0, eq), kv.substr(eq + 1));
    }
    s.validate();
    return s;
}

ExperimentReport execute_run(const Scenario& scenario, const fs::path& out_dir) {
    fs::create_directories(out_dir);

    const fs::path trace_path = out_dir / "trace.csv";
    {
        std::ofstream trace_out(trace_path, std::ios::binary);
        if (!trace_out)
            throw std::runtime_error("cannot write " + trace_path.string());
        TraceWriter writer(trace_out);
        run_scenario(scenario, writer);
    }

    std::string config_echo = scenario.to_text();
    {
        std::ofstream cfg(out_dir / "config.txt", std::ios::binary);
        cfg << config_echo;
    }

    // The report is always derived from the written trace so that
    // regenerating it later from the same file is bit-identical.
    std::ifstream trace_in(trace_path, std::ios::binary);
    auto rows = read_trace(trace_in);
    auto report = build_report(rows, config_echo, scenario.seed);

    {
        std::ofstream rep(out_dir / "report.csv", std::ios::binary);
        write_report_csv(report, rep);
    }
    {
        std::ofstream txt(out_dir / "report.txt", std::ios::binary);
        txt << format_report_table(report);
    }
    return report;
}

ExperimentReport load_report(const fs::path& run_dir) {
    std::ifstream in(run_dir / "report.csv");
    if (!in)
        throw std::runtime_error("cannot open report " + (run_dir / "report.csv").string());
    return read_report_csv(in);
}

std::string fmt_g(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

int cmd_run(const RunOptions& opt, const std::string& format) {
    Scenario scenario = load_scenario(opt);
    auto report = execute_run(scenario, opt.out_dir);
    if (format == "csv") {
        write_report_csv(report, std::cout);
    } else {
        std::cout << "run complete: qdisc=" << to_string(scenario.qdisc)
                  << " seed=" << scenario.seed
                  << " duration_s=" << scenario.duration_s << '\n'
                  << format_report_table(report);
    }
    return 0;
}

int cmd_sweep(const RunOptions& opt, const std::string& alphas_csv) {
    std::vector<std::pair<std::string, double>> alphas;
    std::stringstream ss(alphas_csv);
    std::string tok;
    while (std::getline(ss, tok, ',')) {
        if (tok.empty()) continue;
        alphas.emplace_back(tok, std::stod(tok));
    }
    if (alphas.empty()) throw std::runtime_error("sweep: empty --alphas list");

    fs::path out_dir(opt.out_dir);
    fs::create_directories(out_dir);
    std::ofstream summary(out_dir / "sweep.csv", std::ios::binary);
    summary << "alpha,delay_n,delay_mean,delay_variance,delay_stddev,"
               "qlen_mean,qlen_variance,slack_mean,slack_variance\n";

    for (const auto& [label, value] : alphas) {
        RunOptions run_opt = opt;
        run_opt.alpha = value;
        Scenario scenario = load_scenario(run_opt);
        scenario.qdisc = QdiscKind::LstfCodel;
        auto report = execute_run(scenario, out_dir / ("alpha_" + label));
        summary << label << ',' << report.delay.n << ',' << fmt_g(report.delay.mean)
                << ',' << fmt_g(report.delay.variance) << ','
                << fmt_g(report.delay.stddev) << ',' << fmt_g(report.qlen.mean) << ','
                << fmt_g(report.qlen.variance) << ','
                << fmt_g(report.slack ? report.slack->mean : 0.0) << ','
                << fmt_g(report.slack ? report.slack->variance : 0.0) << '\n';
        std::cout << "alpha=" << label << " delay_mean=" << fmt_g(report.delay.mean)
                  << " delay_var=" << fmt_g(report.delay.variance) << '\n';
    }
    return 0;
}

int cmd_compare(const std::string& run_a, const std::string& run_b, std::size_t n,
                std::int64_t seed_flag, const std::string& out_file,
                const std::string& format) {
    std::uint64_t seed = 1;
    if (seed_flag >= 0)
        seed = static_cast<std::uint64_t>(seed_flag);
    else if (const char* env = std::getenv("AQMSIM_SEED"))
        seed = std::stoull(env);

    auto a = load_report(run_a);
    auto b = load_report(run_b);
    auto cmp = compare_runs(a, b, n, seed);
    if (format == "csv")
        write_comparison_csv(cmp, std::cout);
    else
        std::cout << format_comparison(cmp);
    if (!out_file.empty()) {
        std::ofstream out(out_file, std::ios::binary);
        write_comparison_csv(cmp, out);
    }
    return 0;
}

int cmd_report(const std::string& run_dir, const std::string& out_file,
               const std::string& format) {
    fs::path dir(run_dir);
    std::ifstream cfg(dir / "config.txt");
    if (!cfg)
        throw std::runtime_error("cannot open " + (dir / "config.txt").string());
    std::stringstream cfg_ss;
    cfg_ss << cfg.rdbuf();
    Scenario scenario;
    {
        std::stringstream parse_ss(cfg_ss.str());
        scenario = parse_scenario(parse_ss);
    }

    std::ifstream trace_in(dir / "trace.csv", std::ios::binary);
    if (!trace_in)
        throw std::runtime_error("cannot open " + (dir / "trace.csv").string());
    auto rows = read_trace(trace_in);
    auto report = build_report(rows, cfg_ss.str(), scenario.seed);

    auto emit = [&](std::ostream& out) {
        if (format == "table")
            out << format_report_table(report);
        else
            write_report_csv(report, out);
    };
    if (out_file.empty()) {
        emit(std::cout);
    } else {
        std::ofstream out(out_file, std::ios::binary);
        emit(out);
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Queue-discipline simulator and report generator"};
    app.require_subcommand(1);

    RunOptions opt;
    std::string alphas_csv;
    std::string run_a, run_b, out_file, run_dir;
    std::size_t samples = 500;
    std::int64_t cmp_seed = -1;
    std::string run_format = "table";
    std::string cmp_format = "table";
    std::string report_format = "csv";
    auto format_check = CLI::IsMember({"csv", "table"});

    auto add_run_flags = [&](CLI::App* cmd) {
        cmd->add_option("--scenario", opt.scenario_file, "Scenario file (key = value)");
        cmd->add_option("--qdisc", opt.qdisc, "droptail|red|codel|lstfcodel");
        cmd->add_option("--alpha", opt.alpha, "Slack forgetfulness factor");
        cmd->add_option("--duration", opt.duration, "Run duration, seconds");
        cmd->add_option("--seed", opt.seed, "PRNG seed (fallback: AQMSIM_SEED)");
        cmd->add_option("--set", opt.sets, "Extra key=value overrides")->take_all();
        cmd->add_option("--out", opt.out_dir, "Output directory")->required();
    };

    auto* run = app.add_subcommand("run", "Execute one scenario");
    add_run_flags(run);
    run->add_option("--format", run_format, "Stdout rendering (csv|table)")
        ->check(format_check);

    auto* sweep = app.add_subcommand("sweep", "Run the forgetfulness-factor sweep");
    add_run_flags(sweep);
    sweep->add_option("--alphas", alphas_csv, "Comma-separated alpha values")->required();

    auto* compare = app.add_subcommand("compare", "Hypothesis tests between two runs");
    compare->add_option("run_a", run_a, "First run directory")->required();
    compare->add_option("run_b", run_b, "Second run directory")->required();
    compare->add_option("--samples", samples, "CLT sample size per run");
    compare->add_option("--seed", cmp_seed, "Sampling seed (fallback: AQMSIM_SEED)");
    compare->add_option("--out", out_file, "Write the comparison CSV here");
    compare->add_option("--format", cmp_format, "Stdout rendering (csv|table)")
        ->check(format_check);

    auto* report = app.add_subcommand("report", "Regenerate a report from a stored trace");
    report->add_option("run_dir", run_dir, "Run directory with trace.csv + config.txt")
        ->required();
    report->add_option("--out", out_file, "Report destination (default: stdout)");
    report->add_option("--format", report_format, "Rendering (csv|table)")
        ->check(format_check);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kExitConfig;
    }

    try {
        if (run->parsed()) return cmd_run(opt, run_format);
        if (sweep->parsed()) return cmd_sweep(opt, alphas_csv);
        if (compare->parsed())
            return cmd_compare(run_a, run_b, samples, cmp_seed, out_file, cmp_format);
        if (report->parsed()) return cmd_report(run_dir, out_file, report_format);
    } catch (const std::logic_error& e) {
        std::cerr << "invariant violation: " << e.what() << '\n';
        return kExitRuntime;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kExitConfig;
    }
    return 0;
}
