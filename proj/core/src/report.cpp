#include "aqmsim/report.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "aqmsim/rng.hpp"

namespace aqmsim {
namespace {

constexpr std::uint64_t kCltStreamA = 101;
constexpr std::uint64_t kCltStreamB = 102;

std::string fmt(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

PopulationStats to_population(const std::string& metric, const RunningStats& acc) {
    PopulationStats p;
    p.metric = metric;
    p.n = acc.count();
    p.mean = acc.mean();
    p.variance = acc.variance_population();
    p.stddev = acc.stddev_population();
    return p;
}

void write_population(const PopulationStats& p, std::ostream& out) {
    out << p.metric << ',' << p.n << ',' << fmt(p.mean) << ',' << fmt(p.variance)
        << ',' << fmt(p.stddev) << '\n';
}

}  // namespace

ExperimentReport build_report(const std::vector<TraceRow>& rows,
                              std::string config_echo, std::uint64_t seed) {
    RunningStats delay, qlen, slack;
    for (const TraceRow& row : rows) {
        switch (row.event) {
            case TraceEvent::Enqueue:
            case TraceEvent::Dequeue:
            case TraceEvent::TailDrop:
            case TraceEvent::AqmDrop:
                qlen.push(static_cast<double>(row.qlen_bytes));
                break;
            case TraceEvent::Deliver:
                break;
        }
        if (row.event == TraceEvent::Dequeue) {
            if (row.sojourn_s) delay.push(*row.sojourn_s);
            if (row.gamma_s) slack.push(*row.gamma_s);
        }
    }

    ExperimentReport report;
    report.config_echo = std::move(config_echo);
    report.seed = seed;
    report.delay = to_population("delay_s", delay);
    report.qlen = to_population("qlen_bytes", qlen);
    if (slack.count() > 0) report.slack = to_population("slack_s", slack);
    return report;
}

void write_report_csv(const ExperimentReport& report, std::ostream& out) {
    out << "metric,n,mean,variance,stddev\n";
    write_population(report.delay, out);
    write_population(report.qlen, out);
    if (report.slack) write_population(*report.slack, out);
    out << "# seed=" << report.seed << '\n';
}

ExperimentReport read_report_csv(std::istream& in) {
    ExperimentReport report;
    std::string line;
    if (!std::getline(in, line) || line != "metric,n,mean,variance,stddev")
        throw std::runtime_error("read_report_csv: bad header");
    bool have_delay = false;
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        if (line.rfind("# seed=", 0) == 0) {
            report.seed = std::stoull(line.substr(7));
            continue;
        }
        std::stringstream ss(line);
        std::string field;
        std::vector<std::string> fields;
        while (std::getline(ss, field, ',')) fields.push_back(field);
        if (fields.size() != 5)
            throw std::runtime_error("read_report_csv: malformed row: " + line);
        PopulationStats p;
        p.metric = fields[0];
        p.n = std::stoull(fields[1]);
        p.mean = std::stod(fields[2]);
        p.variance = std::stod(fields[3]);
        p.stddev = std::stod(fields[4]);
        if (p.metric == "delay_s") {
            report.delay = p;
            have_delay = true;
        } else if (p.metric == "qlen_bytes") {
            report.qlen = p;
        } else if (p.metric == "slack_s") {
            report.slack = p;
        } else {
            throw std::runtime_error("read_report_csv: unknown metric " + p.metric);
        }
    }
    if (!have_delay)
        throw std::runtime_error("read_report_csv: missing delay population");
    return report;
}

std::string format_report_table(const ExperimentReport& report) {
    std::ostringstream out;
    auto table = [&](const PopulationStats& p) {
        out << p.metric << " (n=" << p.n << ")\n";
        char buf[96];
        std::snprintf(buf, sizeof(buf), "  %-10s %s\n", "Mean", fmt(p.mean).c_str());
        out << buf;
        std::snprintf(buf, sizeof(buf), "  %-10s %s\n", "Variance", fmt(p.variance).c_str());
        out << buf;
        std::snprintf(buf, sizeof(buf), "  %-10s %s\n", "Std. Dev.", fmt(p.stddev).c_str());
        out << buf;
    };
    table(report.delay);
    table(report.qlen);
    if (report.slack) table(*report.slack);
    return out.str();
}

ComparisonReport compare_runs(const ExperimentReport& a, const ExperimentReport& b,
                              std::size_t n, std::uint64_t seed) {
    if (n < 2)
        throw std::runtime_error("compare_runs: tests need n >= 2 samples");
    if (a.delay.n == 0 || b.delay.n == 0)
        throw std::runtime_error("compare_runs: runs lack delay populations");

    auto rng_a = make_stream(seed, kCltStreamA);
    auto rng_b = make_stream(seed, kCltStreamB);
    auto sample_a = clt_sample(a.delay.mean, a.delay.stddev, n, rng_a);
    auto sample_b = clt_sample(b.delay.mean, b.delay.stddev, n, rng_b);

    ComparisonReport cmp;
    cmp.samples = n;
    cmp.seed = seed;
    cmp.t_test = welch_t_test(sample_a, sample_b);
    cmp.f_test = f_test(sample_a, sample_b);
    return cmp;
}

std::string format_comparison(const ComparisonReport& cmp) {
    std::ostringstream out;
    out << "Welch t-test (one-sided, greater), n=" << cmp.samples << "\n";
    out << "  T-Statistic         " << fmt(cmp.t_test.t_stat) << '\n';
    out << "  Degrees of Freedom  " << fmt(cmp.t_test.df) << '\n';
    out << "  P-Value             " << fmt(cmp.t_test.p_value) << '\n';
    out << "  95% CI Lower Bound  " << fmt(cmp.t_test.ci_lower) << '\n';
    out << "  95% CI Upper Bound  Inf\n";
    out << "F-test of variance ratio\n";
    out << "  F-Statistic         " << fmt(cmp.f_test.f_stat) << '\n';
    out << "  Numerator DoF       " << cmp.f_test.df_num << '\n';
    out << "  Denominator DoF     " << cmp.f_test.df_den << '\n';
    out << "  P-Value             " << fmt(cmp.f_test.p_value) << '\n';
    out << "  95% CI Lower Bound  " << fmt(cmp.f_test.ci_lower) << '\n';
    out << "  95% CI Upper Bound  " << fmt(cmp.f_test.ci_upper) << '\n';
    return out.str();
}

void write_comparison_csv(const ComparisonReport& cmp, std::ostream& out) {
    out << "statistic,value\n";
    out << "samples," << cmp.samples << '\n';
    out << "seed," << cmp.seed << '\n';
    out << "t_stat," << fmt(cmp.t_test.t_stat) << '\n';
    out << "t_df," << fmt(cmp.t_test.df) << '\n';
    out << "t_p_value," << fmt(cmp.t_test.p_value) << '\n';
    out << "t_ci_lower," << fmt(cmp.t_test.ci_lower) << '\n';
    out << "t_ci_upper,inf\n";
    out << "f_stat," << fmt(cmp.f_test.f_stat) << '\n';
    out << "f_df_num," << cmp.f_test.df_num << '\n';
    out << "f_df_den," << cmp.f_test.df_den << '\n';
    out << "f_p_value," << fmt(cmp.f_test.p_value) << '\n';
    out << "f_ci_lower," << fmt(cmp.f_test.ci_lower) << '\n';
    out << "f_ci_upper," << fmt(cmp.f_test.ci_upper) << '\n';
}

}  // namespace aqmsim
